"""Dense reference implementation for small lattices.

Everything here is built explicitly: the full D x D step matrix (D = 8(2N+1)),
the full joint density matrix, and partial traces by index summation. It is
slow on purpose and exists to cross-check the matrix-free engine and the
SVD-based analytics.

The dense shift wraps cyclically at the lattice edge so that the matrix is
exactly unitary. :func:`oracle_evolve` refuses runs long enough for the
wrap-around to carry amplitude.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from tricoin.errors import LatticeError
from tricoin.rules import ShiftRule
from tricoin.state import COIN_DIM, LatticeSpec, WalkState, global_offset

_H = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0)


def hadamard3() -> NDArray[np.float64]:
    return np.kron(np.kron(_H, _H), _H)


@dataclass(frozen=True, eq=False)
class DenseStepMatrix:
    entries: NDArray[np.complex128]
    shift: NDArray[np.complex128]
    coin_layer: NDArray[np.complex128]
    lattice: LatticeSpec
    rule: ShiftRule


def _dense_shift(rule: ShiftRule, lattice: LatticeSpec) -> NDArray[np.complex128]:
    # sum over coins c and sites j of |c><c| (x) |j + d_c><j|
    n = lattice.half_width
    dim = lattice.dim
    shift = np.zeros((dim, dim), dtype=np.complex128)
    for c in range(COIN_DIM):
        for j in range(-n, n + 1):
            target = (j + rule[c] + n) % lattice.site_count - n
            shift[global_offset(c, target, lattice), global_offset(c, j, lattice)] += 1.0
    return shift


def build_step_matrix(rule: ShiftRule, lattice: LatticeSpec) -> DenseStepMatrix:
    coin_layer = np.kron(hadamard3(), np.eye(lattice.site_count)).astype(np.complex128)
    shift = _dense_shift(rule, lattice)
    if rule.condition_basis == "hadamard":
        shift = coin_layer @ shift @ coin_layer
    return DenseStepMatrix(
        entries=shift @ coin_layer,
        shift=shift,
        coin_layer=coin_layer,
        lattice=lattice,
        rule=rule,
    )


def oracle_evolve(state: WalkState, matrix: DenseStepMatrix, steps: int) -> WalkState:
    if state.lattice != matrix.lattice:
        raise LatticeError("state and step matrix live on different lattices")
    reach = state.support_extent() + steps * matrix.rule.speed
    if reach > state.lattice.half_width:
        raise LatticeError(
            f"{steps} steps reach site {reach}, past the cyclic seam of lattice N={state.lattice.half_width}"
        )
    psi = state.amplitudes.copy()
    for _ in range(steps):
        psi = matrix.entries @ psi
    return WalkState(state.lattice, psi)


def joint_density(state: WalkState) -> NDArray[np.complex128]:
    psi = state.amplitudes
    return np.outer(psi, psi.conj())


def _entropy_bits(eigs: NDArray[np.float64]) -> float:
    eigs = eigs[eigs > 1e-15]
    return float(max(0.0, -np.sum(eigs * np.log2(eigs))))


def oracle_joint_entropy(state_or_density: WalkState | NDArray[np.complex128]) -> float:
    """Entropy of the full joint density matrix; accepts a state or an explicit (mixed) density."""
    if isinstance(state_or_density, WalkState):
        rho = joint_density(state_or_density)
    else:
        rho = np.asarray(state_or_density, dtype=np.complex128)
    return _entropy_bits(np.linalg.eigvalsh(rho))


def oracle_reduced_densities(state: WalkState) -> tuple[NDArray[np.complex128], NDArray[np.complex128]]:
    """(rho_C, rho_P) by explicit partial traces of the joint density matrix."""
    s = state.lattice.site_count
    rho = joint_density(state)
    rho_c = np.zeros((COIN_DIM, COIN_DIM), dtype=np.complex128)
    rho_p = np.zeros((s, s), dtype=np.complex128)
    for c in range(COIN_DIM):
        for c2 in range(COIN_DIM):
            for j in range(s):
                rho_c[c, c2] += rho[c * s + j, c2 * s + j]
    for j in range(s):
        for j2 in range(s):
            for c in range(COIN_DIM):
                rho_p[j, j2] += rho[c * s + j, c * s + j2]
    return rho_c, rho_p


def oracle_spectra(state: WalkState) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Descending eigenvalues of rho_C and rho_P from the explicit partial traces."""
    rho_c, rho_p = oracle_reduced_densities(state)
    return np.linalg.eigvalsh(rho_c)[::-1], np.linalg.eigvalsh(rho_p)[::-1]

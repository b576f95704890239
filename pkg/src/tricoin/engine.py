"""Matrix-free walk step: Hadamard on every coin, then the conditional shift.

Both layers cost O(8 * (2N + 1)) per step. The public functions return new
states; :func:`evolve` works on a private buffer it owns and hands the
observer a read-only view of it.
"""

from __future__ import annotations

from typing import Callable, Optional

import numpy as np
from numpy.typing import NDArray

from tricoin.errors import BoundaryError, LatticeError
from tricoin.rules import ShiftRule
from tricoin.state import COIN_DIM, N_COINS, WalkState

BOUNDARY_TOL = 1e-14

_INV_SQRT2 = 1.0 / np.sqrt(2.0)

Observer = Callable[[int, WalkState], None]


def _hadamard_layer_inplace(mat: NDArray[np.complex128]) -> None:
    """H on each of the three coin qubits of an (8, S) block, one butterfly pass per qubit."""
    cube = mat.reshape((2,) * N_COINS + (mat.shape[1],))
    for axis in range(N_COINS):
        lead = (slice(None),) * axis
        a = cube[lead + (0,)]
        b = cube[lead + (1,)]
        diff = a - b
        a += b
        a *= _INV_SQRT2
        diff *= _INV_SQRT2
        b[...] = diff


def _check_boundary(mat: NDArray[np.complex128], rule: ShiftRule) -> None:
    for coin in rule.moving:
        for col in (0, mat.shape[1] - 1):
            mag = abs(mat[coin, col])
            if mag > BOUNDARY_TOL:
                half = (mat.shape[1] - 1) // 2
                raise BoundaryError(mag, col - half, coin)


def _shift_inplace(mat: NDArray[np.complex128], rule: ShiftRule) -> None:
    _check_boundary(mat, rule)
    for coin in rule.moving:
        row = mat[coin]
        if rule[coin] > 0:
            row[1:] = row[:-1]
            row[0] = 0
        else:
            row[:-1] = row[1:]
            row[-1] = 0


def _step_inplace(mat: NDArray[np.complex128], rule: ShiftRule) -> None:
    if rule.condition_basis == "hadamard":
        # (H S H) H = H S since H^2 = I
        _shift_inplace(mat, rule)
        _hadamard_layer_inplace(mat)
    else:
        _hadamard_layer_inplace(mat)
        _shift_inplace(mat, rule)


def apply_coin_layer(state: WalkState) -> WalkState:
    out = state.copy()
    _hadamard_layer_inplace(out.matrix)
    return out


def apply_shift(state: WalkState, rule: ShiftRule) -> WalkState:
    """Move each coin block by its displacement, refusing to push amplitude off the lattice."""
    out = state.copy()
    _shift_inplace(out.matrix, rule)
    return out


def step(state: WalkState, rule: ShiftRule) -> WalkState:
    out = state.copy()
    _step_inplace(out.matrix, rule)
    return out


def evolve(
    state: WalkState,
    rule: ShiftRule,
    steps: int,
    observer: Optional[Observer] = None,
) -> WalkState:
    """Apply ``steps`` walk steps.

    ``observer(t, view)`` is called for ``t = 0 .. steps``; the view aliases the
    working buffer and is only valid during the call.
    """
    if steps < 0:
        raise ValueError(f"steps must be non-negative, got {steps}")
    reach = state.support_extent() + steps * rule.speed
    if reach > state.lattice.half_width:
        raise LatticeError(
            f"lattice half-width {state.lattice.half_width} is too small: "
            f"{steps} steps from extent {state.support_extent()} reach site {reach}"
        )
    buf = state.amplitudes.copy()
    mat = buf.reshape(COIN_DIM, state.lattice.site_count)
    view_arr = buf.view()
    view_arr.flags.writeable = False
    view = WalkState(state.lattice, view_arr)
    if observer is not None:
        observer(0, view)
    for t in range(1, steps + 1):
        _step_inplace(mat, rule)
        if observer is not None:
            observer(t, view)
    return WalkState(state.lattice, buf)

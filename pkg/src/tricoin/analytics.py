"""Entropies, coin-position mutual information and position statistics.

The joint state is pure, so both reduced density operators share the
squared singular values of the 8 x (2N+1) coefficient matrix as their
nonzero spectrum. :func:`record` computes the coin entropy from the 8 x 8
reduced coin density and the position entropy from the singular values,
then checks that the two agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike, NDArray

from tricoin.errors import NumericalError
from tricoin.state import COIN_DIM, WalkState

CLAMP_TOL = 1e-12
RENORM_TOL = 1e-10
DRIFT_FAIL_TOL = 1e-8
ENTROPY_CUTOFF = 1e-15
SCHMIDT_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class DensitySpectrum:
    """Eigenvalues of a reduced density operator, descending, clamped to [0, 1]."""

    probabilities: NDArray[np.float64]

    @classmethod
    def from_eigenvalues(cls, values: ArrayLike) -> DensitySpectrum:
        vals = np.asarray(values, dtype=np.float64).reshape(-1)
        if vals.size and vals.min() < -CLAMP_TOL:
            raise NumericalError(f"eigenvalue {vals.min():.3e} is below the clamping range")
        vals = np.clip(vals, 0.0, 1.0)
        drift = abs(vals.sum() - 1.0)
        if drift > DRIFT_FAIL_TOL:
            raise NumericalError(f"spectrum sums to {vals.sum():.15g} (drift {drift:.3e})")
        if drift <= RENORM_TOL:
            vals = vals / vals.sum()
        return cls(np.sort(vals)[::-1])

    def __len__(self) -> int:
        return self.probabilities.size


def reduced_coin_density(state: WalkState) -> NDArray[np.complex128]:
    """Partial trace over position: ``rho_C = A A^dagger``."""
    a = state.matrix
    return a @ a.conj().T


def schmidt_spectrum(state: WalkState) -> DensitySpectrum:
    """Squared singular values of the coefficient matrix, zero-padded to the coin dimension."""
    sv = np.linalg.svd(state.matrix, compute_uv=False)
    p = np.zeros(COIN_DIM)
    p[: sv.size] = sv**2
    return DensitySpectrum.from_eigenvalues(p)


def coin_spectrum(state: WalkState) -> DensitySpectrum:
    """Spectrum of ``rho_C`` by Hermitian eigendecomposition (independent of the SVD path)."""
    return DensitySpectrum.from_eigenvalues(np.linalg.eigvalsh(reduced_coin_density(state)))


def von_neumann_entropy(spectrum: DensitySpectrum | ArrayLike) -> float:
    """``-sum p log2 p`` in bits, skipping ``p < 1e-15``."""
    p = spectrum.probabilities if isinstance(spectrum, DensitySpectrum) else np.asarray(spectrum, dtype=float)
    p = p[p >= ENTROPY_CUTOFF]
    return float(max(0.0, -np.sum(p * np.log2(p))))


def mutual_information(state: WalkState, verify: bool = False) -> float:
    """``I(C:P) = S(rho_C) + S(rho_P)``, i.e. twice the entanglement entropy.

    With ``verify=True`` the value is recomputed from separate
    eigendecompositions of ``rho_C`` and ``rho_P`` and the two must agree
    within 1e-9. ``rho_P`` is (2N+1) x (2N+1), so keep N modest.
    """
    mi = 2.0 * von_neumann_entropy(schmidt_spectrum(state))
    if verify:
        a = state.matrix
        rho_p = a.T @ a.conj()
        long_way = von_neumann_entropy(coin_spectrum(state)) + von_neumann_entropy(
            DensitySpectrum.from_eigenvalues(np.linalg.eigvalsh(rho_p))
        )
        if abs(long_way - mi) > SCHMIDT_TOL:
            raise NumericalError(f"mutual information mismatch: SVD {mi:.15g} vs eig {long_way:.15g}")
    return mi


def position_distribution(state: WalkState) -> NDArray[np.float64]:
    """Probability of each site ``-N..N``."""
    a = state.matrix
    return np.sum(a.real**2 + a.imag**2, axis=0)


def position_moments(dist: ArrayLike) -> tuple[float, float]:
    """Mean and variance of a distribution indexed by sites ``-N..N``."""
    p = np.asarray(dist, dtype=float)
    half = (p.size - 1) // 2
    sites = np.arange(-half, half + 1)
    mean = float(np.dot(p, sites))
    var = float(np.dot(p, (sites - mean) ** 2))
    return mean, var


@dataclass(frozen=True, eq=False)
class InfoRecord:
    t: int
    coin_entropy: float
    position_entropy: float
    mutual_information: float
    position_distribution: NDArray[np.float64]
    position_mean: float
    position_variance: float

    def scalars(self) -> dict:
        return {
            "t": self.t,
            "coin_entropy_bits": self.coin_entropy,
            "position_entropy_bits": self.position_entropy,
            "mutual_information_bits": self.mutual_information,
            "position_mean": self.position_mean,
            "position_variance": self.position_variance,
        }


def record(t: int, state: WalkState) -> InfoRecord:
    s_coin = von_neumann_entropy(coin_spectrum(state))
    s_pos = von_neumann_entropy(schmidt_spectrum(state))
    if abs(s_coin - s_pos) > SCHMIDT_TOL:
        raise NumericalError(
            f"Schmidt equality violated at t={t}: S(coin) = {s_coin:.15g}, S(position) = {s_pos:.15g}"
        )
    if s_coin > np.log2(COIN_DIM) + SCHMIDT_TOL:
        raise NumericalError(f"coin entropy {s_coin:.15g} exceeds {np.log2(COIN_DIM)} bits at t={t}")
    dist = position_distribution(state)
    mean, var = position_moments(dist)
    return InfoRecord(
        t=t,
        coin_entropy=s_coin,
        position_entropy=s_pos,
        mutual_information=s_coin + s_pos,
        position_distribution=dist,
        position_mean=mean,
        position_variance=var,
    )


@dataclass
class Trajectory:
    records: list[InfoRecord] = field(default_factory=list)

    def __post_init__(self):
        self._check()

    def _check(self):
        for i, rec in enumerate(self.records):
            if rec.t != i:
                raise ValueError(f"trajectory step indices must run 0, 1, 2, ...; got {rec.t} at position {i}")

    def append(self, rec: InfoRecord) -> None:
        if rec.t != len(self.records):
            raise ValueError(f"expected record for t={len(self.records)}, got t={rec.t}")
        self.records.append(rec)

    def __len__(self) -> int:
        return len(self.records)

    def __getitem__(self, t: int) -> InfoRecord:
        return self.records[t]

    def __iter__(self):
        return iter(self.records)

    def mutual_information(self) -> NDArray[np.float64]:
        return np.array([r.mutual_information for r in self.records])

    def observer(self):
        """Callback for :func:`tricoin.engine.evolve` that appends one record per step."""
        return lambda t, state: self.append(record(t, state))

"""Joint coin-position state layout.

Amplitudes are stored coin-major: the amplitude of coin outcome ``c`` at site
``j`` lives at offset ``c * (2N + 1) + (j + N)``. Coin outcomes are the integer
value of the bit string ``c1 c2 c3`` with coin 1 as the most significant bit,
so ``|000>`` is 0 and ``|111>`` is 7.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from tricoin.errors import LatticeError, NormalizationError

N_COINS = 3
COIN_DIM = 2**N_COINS

_COIN_NORM_TOL = 1e-9


@dataclass(frozen=True)
class LatticeSpec:
    """Truncated line with sites ``-half_width .. half_width``."""

    half_width: int

    def __post_init__(self):
        if isinstance(self.half_width, bool) or not isinstance(self.half_width, (int, np.integer)):
            raise LatticeError(f"half_width must be an integer, got {self.half_width!r}")
        if self.half_width < 1:
            raise LatticeError(f"half_width must be >= 1, got {self.half_width}")
        object.__setattr__(self, "half_width", int(self.half_width))

    @property
    def site_count(self) -> int:
        return 2 * self.half_width + 1

    @property
    def dim(self) -> int:
        return COIN_DIM * self.site_count

    @property
    def sites(self) -> NDArray[np.int64]:
        return np.arange(-self.half_width, self.half_width + 1)

    def check_site(self, site: int) -> None:
        if not -self.half_width <= site <= self.half_width:
            raise LatticeError(f"site {site} outside lattice [-{self.half_width}, {self.half_width}]")

    def offset(self, site: int) -> int:
        self.check_site(site)
        return site + self.half_width


@dataclass(frozen=True, eq=False)
class WalkState:
    """Pure state of the walker and its three coins.

    ``amplitudes`` is a flat complex vector of length ``8 * (2N + 1)``.
    The constructor does not check normalization so that linear
    combinations can be formed; :func:`make_state` does.
    """

    lattice: LatticeSpec
    amplitudes: NDArray[np.complex128]

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        if amps.shape != (self.lattice.dim,):
            raise ValueError(
                f"expected {self.lattice.dim} amplitudes for N={self.lattice.half_width}, got shape {amps.shape}"
            )
        object.__setattr__(self, "amplitudes", amps)

    @property
    def matrix(self) -> NDArray[np.complex128]:
        """8 x (2N+1) view onto the amplitudes (no copy)."""
        return self.amplitudes.reshape(COIN_DIM, self.lattice.site_count)

    def copy(self) -> WalkState:
        return WalkState(self.lattice, self.amplitudes.copy())

    def __add__(self, other: WalkState) -> WalkState:
        if other.lattice != self.lattice:
            raise LatticeError("cannot add states on different lattices")
        return WalkState(self.lattice, self.amplitudes + other.amplitudes)

    def __mul__(self, scalar: complex) -> WalkState:
        return WalkState(self.lattice, self.amplitudes * scalar)

    __rmul__ = __mul__

    def support_extent(self) -> int:
        """Largest ``|j|`` carrying nonzero amplitude (0 for the zero vector)."""
        occupied = np.flatnonzero(np.any(self.matrix != 0, axis=0))
        if occupied.size == 0:
            return 0
        return int(np.max(np.abs(occupied - self.lattice.half_width)))


def coin_index(bits: str) -> int:
    """``"011"`` -> 3. Coin 1 is the leftmost character."""
    if len(bits) != N_COINS or any(ch not in "01" for ch in bits):
        raise ValueError(f"coin pattern must be {N_COINS} characters of 0/1, got {bits!r}")
    return int(bits, 2)


def coin_bits(index: int) -> str:
    if not 0 <= index < COIN_DIM:
        raise ValueError(f"coin index must be in [0, {COIN_DIM - 1}], got {index}")
    return format(index, f"0{N_COINS}b")


def global_offset(coin: int, site: int, lattice: LatticeSpec) -> int:
    if not 0 <= coin < COIN_DIM:
        raise ValueError(f"coin index must be in [0, {COIN_DIM - 1}], got {coin}")
    return coin * lattice.site_count + lattice.offset(site)


def make_state(coin_amplitudes: ArrayLike, site: int, lattice: LatticeSpec) -> WalkState:
    """Place a normalized coin vector at a single lattice site."""
    coin = np.asarray(coin_amplitudes, dtype=np.complex128).reshape(-1)
    if coin.shape != (COIN_DIM,):
        raise ValueError(f"coin state must have {COIN_DIM} amplitudes, got {coin.size}")
    norm_sq = float(np.vdot(coin, coin).real)
    if abs(norm_sq - 1.0) > _COIN_NORM_TOL:
        raise NormalizationError(norm_sq)
    col = lattice.offset(site)
    mat = np.zeros((COIN_DIM, lattice.site_count), dtype=np.complex128)
    mat[:, col] = coin
    return WalkState(lattice, mat.reshape(-1))


def norm_squared(state: WalkState) -> float:
    amps = state.amplitudes
    return float(np.vdot(amps, amps).real)


def as_coefficient_matrix(state: WalkState) -> NDArray[np.complex128]:
    """Copy of the amplitudes as an 8 x (2N+1) matrix, rows = coin, columns = site."""
    return state.matrix.copy()


def from_coefficient_matrix(matrix: ArrayLike, lattice: LatticeSpec) -> WalkState:
    mat = np.asarray(matrix, dtype=np.complex128)
    if mat.shape != (COIN_DIM, lattice.site_count):
        raise ValueError(f"expected shape {(COIN_DIM, lattice.site_count)}, got {mat.shape}")
    return WalkState(lattice, mat.reshape(-1).copy())

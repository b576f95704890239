"""Initial coin states: computational basis states, GHZ, and the cos/sin family between them."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from numpy.typing import NDArray

from tricoin.errors import ConfigError, NormalizationError
from tricoin.state import COIN_DIM, coin_index

KINDS = ("separable", "ghz", "theta", "custom")

_NORM_TOL = 1e-9


@dataclass(frozen=True)
class CoinStateSpec:
    """Description of an initial coin state.

    ``separable`` uses ``bits`` (e.g. ``"000"``), ``theta`` uses ``theta``
    in radians on ``[0, pi/2]`` and gives ``cos(theta)|000> + sin(theta)|111>``,
    ``custom`` uses eight complex ``amplitudes``.
    """

    kind: str
    bits: Optional[str] = None
    theta: Optional[float] = None
    amplitudes: Optional[tuple[complex, ...]] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigError(f"unknown initial-state kind {self.kind!r}; expected one of {KINDS}")
        if self.kind == "separable":
            if self.bits is None:
                raise ConfigError("separable initial state needs a 3-bit pattern")
            try:
                coin_index(self.bits)
            except ValueError as exc:
                raise ConfigError(str(exc)) from None
        elif self.kind == "theta":
            if self.theta is None or not 0.0 <= self.theta <= math.pi / 2:
                raise ConfigError(f"theta must lie in [0, pi/2], got {self.theta}")
        elif self.kind == "custom":
            if self.amplitudes is None or len(self.amplitudes) != COIN_DIM:
                raise ConfigError(f"custom initial state needs {COIN_DIM} amplitudes")
            amps = np.asarray(self.amplitudes, dtype=np.complex128)
            norm_sq = float(np.vdot(amps, amps).real)
            if abs(norm_sq - 1.0) > _NORM_TOL:
                raise NormalizationError(norm_sq, "custom coin amplitudes")
            object.__setattr__(self, "amplitudes", tuple(complex(a) for a in amps))

    @classmethod
    def separable(cls, bits: str = "000") -> CoinStateSpec:
        return cls("separable", bits=bits)

    @classmethod
    def ghz(cls) -> CoinStateSpec:
        return cls("ghz")

    @classmethod
    def from_theta(cls, theta: float) -> CoinStateSpec:
        return cls("theta", theta=float(theta))

    @classmethod
    def custom(cls, amplitudes) -> CoinStateSpec:
        return cls("custom", amplitudes=tuple(complex(a) for a in amplitudes))

    @classmethod
    def parse(cls, text: str) -> CoinStateSpec:
        """Parse the command-line form ``separable:000 | ghz | theta:<rad> | custom:<a0,...,a7>``."""
        kind, _, arg = text.strip().partition(":")
        if kind == "ghz" and not arg:
            return cls.ghz()
        if kind == "separable":
            return cls.separable(arg or "000")
        if kind == "theta":
            try:
                return cls.from_theta(parse_angle(arg))
            except ValueError as exc:
                raise ConfigError(f"bad theta {arg!r}: {exc}") from None
        if kind == "custom":
            try:
                amps = [complex(a.strip().replace(" ", "")) for a in arg.split(",")]
            except ValueError:
                raise ConfigError(f"cannot parse custom amplitudes {arg!r}") from None
            return cls.custom(amps)
        raise ConfigError(f"unknown initial state {text!r}")

    def label(self) -> str:
        if self.kind == "separable":
            return f"separable:{self.bits}"
        if self.kind == "theta":
            return f"theta:{self.theta!r}"
        if self.kind == "custom":
            return "custom:" + ",".join(repr(a) for a in self.amplitudes)
        return "ghz"


def parse_angle(text: str) -> float:
    """Float, or a multiple/fraction of pi such as ``pi/8``, ``3pi/8``, ``0.25*pi``."""
    s = text.strip().replace(" ", "")
    if "pi" not in s:
        return float(s)
    num, _, den = s.partition("/")
    coeff = num.replace("*", "").replace("pi", "")
    if coeff in ("", "+"):
        value = math.pi
    elif coeff == "-":
        value = -math.pi
    else:
        value = float(coeff) * math.pi
    if den:
        value /= float(den)
    return value


def _fix_global_phase(vec: NDArray[np.complex128]) -> NDArray[np.complex128]:
    nz = np.flatnonzero(np.abs(vec) > 0)
    if nz.size == 0:
        return vec
    lead = vec[nz[0]]
    return vec * (abs(lead) / lead)


def build_coin_state(spec: CoinStateSpec) -> NDArray[np.complex128]:
    vec = np.zeros(COIN_DIM, dtype=np.complex128)
    if spec.kind == "separable":
        vec[coin_index(spec.bits)] = 1.0
    elif spec.kind == "ghz":
        vec[0] = vec[COIN_DIM - 1] = 1.0 / math.sqrt(2.0)
    elif spec.kind == "theta":
        vec[0] = math.cos(spec.theta)
        vec[COIN_DIM - 1] = math.sin(spec.theta)
    else:
        vec[:] = spec.amplitudes
        vec = _fix_global_phase(vec)
    return vec


def entanglement_of_spec(spec: CoinStateSpec) -> float:
    """Entropy (bits) of coin 1 against coins 2 and 3 in the built state."""
    vec = build_coin_state(spec)
    sv = np.linalg.svd(vec.reshape(2, COIN_DIM // 2), compute_uv=False)
    p = sv**2
    p = p[p > 1e-15]
    return float(max(0.0, -np.sum(p * np.log2(p))))


"""Exception hierarchy shared by the library and the command line."""


class WalkError(Exception):
    """Base class for every error raised by tricoin."""


class NormalizationError(WalkError, ValueError):
    def __init__(self, norm_sq: float, what: str = "coin amplitudes"):
        self.norm_sq = float(norm_sq)
        super().__init__(f"{what} are not normalized: squared norm is {self.norm_sq:.12g}")


class LatticeError(WalkError, ValueError):
    """A site lies outside the lattice, or the lattice is too small for the run."""


class BoundaryError(WalkError):
    """Amplitude reached a lattice edge on a coin outcome that moves."""

    def __init__(self, magnitude: float, site: int, coin: int):
        self.magnitude = float(magnitude)
        self.site = site
        self.coin = coin
        super().__init__(
            f"boundary contamination: |amplitude| = {self.magnitude:.3e} "
            f"at site {site} for moving coin outcome {coin:03b}"
        )


class NumericalError(WalkError, ArithmeticError):
    """A numerical invariant (trace, Schmidt equality, clamping range) was violated."""


class ConfigError(WalkError, ValueError):
    """Invalid run configuration."""


class RuleError(WalkError, ValueError):
    """Base class for rule-file errors; carries the 1-based line and column span."""

    def __init__(self, message: str, line: int = 0, span: tuple[int, int] = (0, 0)):
        self.line = line
        self.span = span
        self.message = message
        where = f"line {line}, col {span[0]}-{span[1]}: " if line else ""
        super().__init__(where + message)


class RuleSyntaxError(RuleError):
    pass


class DuplicateConditionError(RuleError):
    pass


class MissingDefaultError(RuleError):
    pass


class DuplicateDefaultError(RuleError):
    pass


class DisplacementRangeError(RuleError):
    pass


class UnknownBasisError(RuleError):
    pass


class BitPatternError(RuleError):
    pass


class CoinCountError(RuleError):
    pass


class DegenerateRuleError(RuleError):
    pass

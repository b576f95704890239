"""Three-coin discrete-time quantum walk with a unanimous-outcome shift rule.

The walker sits on a truncated line ``j in [-N, N]`` and carries three coin
qubits. Every step applies a Hadamard to each coin and then moves the walker
only for the coin outcomes the shift rule selects. The analytics tools measure
how much information the coins and the position share as the walk unfolds.
"""

from tricoin.errors import (
    BoundaryError,
    ConfigError,
    LatticeError,
    NormalizationError,
    NumericalError,
    RuleError,
)
from tricoin.state import (
    LatticeSpec,
    WalkState,
    as_coefficient_matrix,
    coin_bits,
    coin_index,
    from_coefficient_matrix,
    global_offset,
    make_state,
    norm_squared,
)
from tricoin.rules import (
    ShiftRule,
    builtin_unanimous,
    format_rule,
    load_rule,
    parse_rule,
    rule_diagnostics,
)
from tricoin.engine import apply_coin_layer, apply_shift, evolve, step
from tricoin.initial import CoinStateSpec, build_coin_state, entanglement_of_spec
from tricoin.analytics import (
    DensitySpectrum,
    InfoRecord,
    Trajectory,
    mutual_information,
    position_distribution,
    position_moments,
    record,
    reduced_coin_density,
    schmidt_spectrum,
    von_neumann_entropy,
)

__version__ = "0.1.0"

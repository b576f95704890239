import math
from pathlib import Path

import numpy as np
import pytest
from hypothesis import settings

from tricoin import LatticeSpec, make_state
from tricoin.state import COIN_DIM

settings.register_profile("default", max_examples=50, deadline=None)
settings.load_profile("default")

RULES_DIR = Path(__file__).parent / "rules"

E0 = np.eye(COIN_DIM, dtype=complex)[0]
E7 = np.eye(COIN_DIM, dtype=complex)[7]
GHZ = (E0 + E7) / math.sqrt(2)

# criterion name -> (passed, detail); filled by test_acceptance
ACCEPTANCE: dict[str, tuple[bool, str]] = {}


def random_coin(rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=COIN_DIM) + 1j * rng.normal(size=COIN_DIM)
    return v / np.linalg.norm(v)


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)


@pytest.fixture
def sep_state():
    return make_state(E0, 0, LatticeSpec(4))


@pytest.fixture
def ghz_state():
    return make_state(GHZ, 0, LatticeSpec(4))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, (ok, detail) in sorted(ACCEPTANCE.items(), key=lambda kv: int(kv[0].split(".")[0])):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")

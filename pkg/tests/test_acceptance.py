"""Exit criteria. Each test records one PASS/FAIL line shown in the terminal summary."""

import re
import time

import numpy as np

from tricoin import (
    CoinStateSpec,
    LatticeSpec,
    ShiftRule,
    Trajectory,
    apply_coin_layer,
    build_coin_state,
    builtin_unanimous,
    evolve,
    format_rule,
    make_state,
    norm_squared,
    parse_rule,
    position_distribution,
    schmidt_spectrum,
)
from tricoin import errors
from tricoin.cli import main
from tricoin.experiments import enhancement, reproduce_table1, simulate
from tricoin.oracle import build_step_matrix, oracle_evolve, oracle_joint_entropy, oracle_spectra

from conftest import ACCEPTANCE, GHZ, RULES_DIR, random_coin

RULE = builtin_unanimous()
RULES = (RULE, ShiftRule(RULE.displacement, "hadamard"))


def report(name, ok, detail):
    ACCEPTANCE[name] = (bool(ok), detail)
    print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
    assert ok, detail


def schmidt_gap(traj: Trajectory) -> float:
    return max(abs(r.coin_entropy - r.position_entropy) for r in traj)


def test_01_table1():
    cells = reproduce_table1(50)
    worst = max(c.diff for c in cells)
    detail = ", ".join(f"{c.initial}@t{c.t}={c.computed:.5f}" for c in cells) + f"; max |diff| {worst:.2e} (tol 5e-4)"
    report("1. Table 1 reproduction", len(cells) == 6 and all(c.diff <= 5e-4 for c in cells), detail)


def test_02_crossover():
    sep = simulate(CoinStateSpec.separable("000"), 2)
    ghz = simulate(CoinStateSpec.ghz(), 2)
    s1, s2 = sep[1].mutual_information, sep[2].mutual_information
    g1, g2 = ghz[1].mutual_information, ghz[2].mutual_information
    report(
        "2. Crossover",
        g1 < s1 and g2 > s2,
        f"t=1: ghz {g1:.4f} < sep {s1:.4f}; t=2: ghz {g2:.4f} > sep {s2:.4f}",
    )


def test_03_enhancement():
    res = enhancement(10, 50)
    report("3. Enhancement at t=10", 0.15 <= res.ratio <= 0.21, f"MI_ghz/MI_sep - 1 = {res.ratio:+.4f} (band [0.15, 0.21])")


def test_04_oracle_equivalence(rng):
    worst_state = 0.0
    worst_spec = 0.0
    cases = 0
    for n in range(3, 7):
        lat = LatticeSpec(n)
        mats = [build_step_matrix(rule, lat) for rule in RULES]
        for _ in range(50):
            s0 = make_state(random_coin(rng), 0, lat)
            for rule, mat in zip(RULES, mats):
                for t in range(1, 7):
                    if t > n:  # the light cone would leave the lattice
                        continue
                    eng = evolve(s0, rule, t)
                    ref = oracle_evolve(s0, mat, t)
                    worst_state = max(worst_state, float(np.max(np.abs(eng.amplitudes - ref.amplitudes))))
                    ec, ep = oracle_spectra(ref)
                    sv = schmidt_spectrum(eng).probabilities
                    ep8 = np.zeros(8)
                    ep8[: min(8, ep.size)] = ep[:8]
                    tail = float(np.max(np.abs(ep[8:]), initial=0.0))
                    worst_spec = max(worst_spec, float(np.max(np.abs(sv - ec))), float(np.max(np.abs(sv - ep8))), tail)
                    cases += 1
    report(
        "4. Oracle equivalence",
        worst_state <= 1e-10 and worst_spec <= 1e-9,
        f"{cases} cases; max state diff {worst_state:.1e} (tol 1e-10), max spectrum diff {worst_spec:.1e} (tol 1e-9)",
    )


def test_05_purity_unitarity(rng):
    worst_drift = 0.0
    for coin in (build_coin_state(CoinStateSpec.separable("000")), GHZ, random_coin(rng), random_coin(rng)):
        for rule in RULES:
            prev = [1.0]

            def obs(t, s):
                nrm = norm_squared(s)
                prev.append(nrm)

            evolve(make_state(coin, 0, LatticeSpec(200)), rule, 200, obs)
            worst_drift = max(worst_drift, float(np.max(np.abs(np.diff(prev[1:])))))
    worst_joint = 0.0
    lat = LatticeSpec(5)
    for rule in RULES:
        for _ in range(5):
            gaps = []
            evolve(make_state(random_coin(rng), 0, lat), rule, 5, lambda t, s: gaps.append(oracle_joint_entropy(s)))
            worst_joint = max(worst_joint, max(gaps))
    report(
        "5. Purity and unitarity",
        worst_drift <= 1e-12 and worst_joint <= 1e-9,
        f"max per-step norm drift {worst_drift:.1e} (tol 1e-12); max joint entropy {worst_joint:.1e} bits (tol 1e-9)",
    )


def test_06_schmidt_equality(rng):
    trajs = [simulate(CoinStateSpec.parse(lbl), 2) for lbl in ("separable:000", "separable:111", "ghz")]
    res = enhancement(10, 50)
    trajs += [res.separable, res.ghz]
    for rule in RULES:
        for _ in range(10):
            trajs.append(simulate(CoinStateSpec.custom(random_coin(rng)), 30, 30, rule))
    gap = max(schmidt_gap(t) for t in trajs)
    report("6. Schmidt equality", gap <= 1e-9, f"max |S(rho_C) - S(rho_P)| = {gap:.1e} over {len(trajs)} runs (tol 1e-9)")


def test_07_light_cone(rng):
    worst = 0.0
    lat = LatticeSpec(40)
    for rule in RULES:
        for coin in (GHZ, random_coin(rng), random_coin(rng)):
            def obs(t, s):
                nonlocal worst
                outside = position_distribution(s)[np.abs(lat.sites) > t]
                worst = max(worst, float(outside.sum()))

            evolve(make_state(coin, 0, lat), rule, 40, obs)
    report("7. Light cone", worst == 0.0, f"max probability outside [-t, t] = {worst!r} (must be exactly 0)")


def test_08_ghz_parity():
    col = apply_coin_layer(make_state(GHZ, 0, LatticeSpec(1))).matrix[:, 1]
    even = [0b000, 0b011, 0b101, 0b110]
    odd = [0b001, 0b010, 0b100, 0b111]
    odd_max = float(np.max(np.abs(col[odd])))
    even_err = float(np.max(np.abs(np.abs(col[even]) - 0.5)))
    report(
        "8. GHZ parity structure",
        odd_max == 0.0 and even_err <= 1e-15,
        f"odd-parity max |amp| = {odd_max!r}; even-parity max ||amp| - 1/2| = {even_err:.1e}",
    )


_EXPECT = re.compile(r"#\s*expect:\s*(\w+)\s+(\d+)")


def test_09_rule_corpus():
    valid = sorted((RULES_DIR / "valid").glob("*.rule"))
    invalid = sorted((RULES_DIR / "invalid").glob("*.rule"))
    problems = []
    for path in valid:
        rule = parse_rule(path.read_text())
        again = parse_rule(format_rule(rule))
        if again != rule:
            problems.append(f"{path.name}: round trip changed the rule")
    for path in invalid:
        text = path.read_text()
        cls_name, line = _EXPECT.search(text).groups()
        try:
            parse_rule(text)
            problems.append(f"{path.name}: parsed without error")
        except errors.RuleError as exc:
            if type(exc).__name__ != cls_name or exc.line != int(line):
                problems.append(f"{path.name}: got {type(exc).__name__} at line {exc.line}, want {cls_name} at {line}")
    ok = len(valid) == 10 and len(invalid) == 8 and not problems
    report("9. Rule DSL corpus", ok, f"{len(valid)} valid round-trip, {len(invalid)} invalid checked; {problems or 'no problems'}")


def test_10_determinism(tmp_path):
    outs = []
    for name in ("a", "b"):
        out = tmp_path / f"{name}.csv"
        assert main(["run", "--init", "ghz", "--steps", "10", "--lattice", "50", "--out", str(out)]) == 0
        outs.append((out.read_bytes(), (tmp_path / f"{name}.csv.dist.csv").read_bytes()))
    report("10. Determinism", outs[0] == outs[1], "two identical run configs produce byte-identical CSV and distribution files")


def test_11_performance():
    state = make_state(GHZ, 0, LatticeSpec(1000))
    evolve(make_state(GHZ, 0, LatticeSpec(10)), RULE, 5)  # warm-up
    start = time.perf_counter()
    final = evolve(state, RULE, 1000)
    elapsed = time.perf_counter() - start
    lat = LatticeSpec(12)
    dense = build_step_matrix(RULE, lat)
    s = make_state(GHZ, 0, lat)
    t0 = time.perf_counter()
    oracle_evolve(s, dense, 12)
    dense_time = (time.perf_counter() - t0) / 12
    report(
        "11. Performance sanity",
        elapsed < 1.0 and abs(norm_squared(final) - 1) < 1e-9,
        f"1000 steps at N=1000 (dim 16008) in {elapsed:.3f} s (target < 1 s); "
        f"dense oracle at N=12 (dim 200) takes {dense_time * 1e3:.3f} ms/step",
    )

"""Command-line interface.

Exit codes: 0 success, 2 configuration error, 3 numerical failure,
4 a reproduction check did not pass.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Optional, Sequence

from tricoin import __version__
from tricoin.errors import ConfigError, LatticeError, NormalizationError, NumericalError, RuleError, WalkError
from tricoin.experiments import (
    DEFAULT_LATTICE,
    ENHANCEMENT_BAND,
    ENHANCEMENT_TARGET,
    TABLE1_TOL,
    enhancement,
    reproduce_table1,
    simulate,
    sweep,
)
from tricoin.initial import CoinStateSpec, parse_angle
from tricoin.io import dist_path, fmt, write_csv, write_json
from tricoin.rules import ShiftRule, format_rule, load_rule, rule_diagnostics

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_FAIL = 4

_CONFIG_KEYS = ("init", "rule", "steps", "lattice", "format", "out", "seed")


@dataclass(frozen=True)
class RunConfig:
    initial: CoinStateSpec
    rule: str
    steps: int
    lattice: int
    format: str = "csv"
    out: Optional[str] = None
    seed: Optional[int] = None  # the walk is deterministic; accepted and ignored

    def __post_init__(self):
        if self.steps < 1:
            raise ConfigError(f"steps must be positive, got {self.steps}")
        if self.lattice < 1:
            raise ConfigError(f"lattice must be positive, got {self.lattice}")
        if self.lattice < self.steps:
            raise ConfigError(
                f"lattice too small: N={self.lattice} < steps={self.steps}; the walk would reach the boundary"
            )
        if self.format not in ("csv", "json"):
            raise ConfigError(f"unknown format {self.format!r}")

    def echo(self) -> dict:
        d = asdict(self)
        d["initial"] = self.initial.label()
        d.pop("out")
        d.pop("seed")
        return d


def read_config_file(path: str | Path) -> dict[str, str]:
    """Flat ``key = value`` file; ``#`` comments and blank lines ignored."""
    values: dict[str, str] = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().lstrip("-").replace("_", "-")
        if not sep or key not in _CONFIG_KEYS:
            raise ConfigError(f"{path}:{lineno}: expected one of {', '.join(_CONFIG_KEYS)} as key=value")
        values[key] = value.strip()
    return values


def _as_int(name: str, value) -> int:
    try:
        return int(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{name} must be an integer, got {value!r}") from None


def build_run_config(args: argparse.Namespace) -> RunConfig:
    merged: dict[str, object] = read_config_file(args.config) if args.config else {}
    for key in _CONFIG_KEYS:
        val = getattr(args, key.replace("-", "_"), None)
        if val is not None:
            merged[key] = val
    if "steps" not in merged:
        raise ConfigError("--steps is required")
    return RunConfig(
        initial=CoinStateSpec.parse(str(merged.get("init", "separable:000"))),
        rule=str(merged.get("rule", "unanimous")),
        steps=_as_int("steps", merged["steps"]),
        lattice=_as_int("lattice", merged.get("lattice", DEFAULT_LATTICE)),
        format=str(merged.get("format", "csv")),
        out=None if merged.get("out") is None else str(merged["out"]),
        seed=None if merged.get("seed") is None else _as_int("seed", merged["seed"]),
    )


def _load_rule(name: str) -> ShiftRule:
    try:
        return load_rule(name)
    except OSError as exc:
        raise ConfigError(f"cannot read rule file {name}: {exc}") from None


def cmd_run(config: RunConfig, stdout=None) -> int:
    stdout = stdout or sys.stdout
    rule = _load_rule(config.rule)
    traj = simulate(config.initial, config.steps, config.lattice, rule)
    if config.out is None:
        if config.format == "json":
            write_json(traj, stdout, config.echo(), __version__)
        else:
            write_csv(traj, stdout)
        return EXIT_OK
    out = Path(config.out)
    if config.format == "json":
        with out.open("w", encoding="utf-8", newline="\n") as fh:
            write_json(traj, fh, config.echo(), __version__)
    else:
        with out.open("w", encoding="utf-8", newline="\n") as fh, dist_path(out).open(
            "w", encoding="utf-8", newline="\n"
        ) as dist:
            write_csv(traj, fh, dist)
    return EXIT_OK


def cmd_reproduce_table1(lattice: int = DEFAULT_LATTICE, stdout=None) -> int:
    stdout = stdout or sys.stdout
    cells = reproduce_table1(lattice)
    print(f"Mutual information I(C:P; t) in bits, N={lattice}, tolerance {TABLE1_TOL:g}", file=stdout)
    print(f"{'initial':<15}{'t':>3}{'computed':>12}{'published':>12}{'|diff|':>11}  result", file=stdout)
    for c in cells:
        verdict = "PASS" if c.passed else "FAIL"
        print(
            f"{c.initial:<15}{c.t:>3}{c.computed:>12.6f}{c.published:>12.4f}{c.diff:>11.2e}  {verdict}",
            file=stdout,
        )
    ok = all(c.passed for c in cells)
    print("ALL PASS" if ok else "SOME CELLS FAIL", file=stdout)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_enhancement(
    steps: int = 10,
    lattice: int = DEFAULT_LATTICE,
    rule: str = "unanimous",
    out: Optional[str] = None,
    stdout=None,
) -> int:
    stdout = stdout or sys.stdout
    if lattice < steps:
        raise ConfigError(f"lattice too small: N={lattice} < steps={steps}")
    res = enhancement(steps, lattice, _load_rule(rule))
    lo, hi = ENHANCEMENT_BAND
    print(f"{'t':>3}{'MI separable':>15}{'MI ghz':>12}{'ghz/sep - 1':>14}", file=stdout)
    for rs, rg in zip(res.separable, res.ghz):
        rel = rg.mutual_information / rs.mutual_information - 1.0 if rs.mutual_information > 0 else float("nan")
        print(f"{rs.t:>3}{rs.mutual_information:>15.6f}{rg.mutual_information:>12.6f}{rel:>+14.2%}", file=stdout)
    verdict = "PASS" if res.passed else "FAIL"
    print(
        f"enhancement at t={steps}: {res.ratio:+.2%} "
        f"(expected about {ENHANCEMENT_TARGET:.0%}, band [{lo:.0%}, {hi:.0%}]) {verdict}",
        file=stdout,
    )
    if out is not None:
        with Path(out).open("w", encoding="utf-8", newline="\n") as fh:
            fh.write("initial,t,mutual_information_bits,position_entropy_bits,position_variance\n")
            for label, traj in (("separable:000", res.separable), ("ghz", res.ghz)):
                for r in traj:
                    fh.write(
                        f"{label},{r.t},{fmt(r.mutual_information)},{fmt(r.position_entropy)},"
                        f"{fmt(r.position_variance)}\n"
                    )
    return EXIT_OK if res.passed else EXIT_FAIL


SWEEP_HEADER = "theta,initial_entanglement_bits,t,mutual_information_bits,position_entropy_bits,position_variance"


def cmd_sweep(
    thetas: Sequence[float],
    steps: int,
    lattice: int = DEFAULT_LATTICE,
    rule: str = "unanimous",
    out: Optional[str] = None,
    jobs: int = 1,
    stdout=None,
) -> int:
    stdout = stdout or sys.stdout
    if not thetas:
        raise ConfigError("theta grid is empty")
    if lattice < steps:
        raise ConfigError(f"lattice too small: N={lattice} < steps={steps}")
    try:
        entries = sweep(thetas, steps, lattice, _load_rule(rule), jobs=jobs)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    lines = [SWEEP_HEADER]
    for e in entries:
        for r in e.trajectory:
            lines.append(
                f"{fmt(e.theta)},{fmt(e.initial_entanglement)},{r.t},{fmt(r.mutual_information)},"
                f"{fmt(r.position_entropy)},{fmt(r.position_variance)}"
            )
    text = "\n".join(lines) + "\n"
    if out is None:
        stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")
    return EXIT_OK


def cmd_rule_check(path: str, stdout=None) -> int:
    stdout = stdout or sys.stdout
    rule = _load_rule(path)
    diag = rule_diagnostics(rule)
    stdout.write(format_rule(rule))
    print(
        f"# moving outcomes: {diag.moving}, stationary subspace: {diag.stationary}, "
        f"speed: {diag.speed}, unitary shift: {diag.unitary}",
        file=stdout,
    )
    return EXIT_OK


def _parse_theta_grid(text: str) -> list[float]:
    items = [t for t in text.split(",") if t.strip()]
    try:
        return [parse_angle(t) for t in items]
    except ValueError as exc:
        raise ConfigError(f"bad theta grid {text!r}: {exc}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tricoin", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"tricoin {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="evolve one walk and write its trajectory")
    run.add_argument("--config", help="flat key=value file; command-line flags take precedence")
    run.add_argument("--init", help="separable:000 | ghz | theta:<radians> | custom:<a0,...,a7>")
    run.add_argument("--rule", help="rule file path, or 'unanimous'")
    run.add_argument("--steps", type=int)
    run.add_argument("--lattice", type=int, help=f"half-width N (default {DEFAULT_LATTICE})")
    run.add_argument("--format", choices=("csv", "json"))
    run.add_argument("--out", help="output path (default: stdout)")
    run.add_argument("--seed", type=int, help="accepted for config compatibility; unused")

    t1 = sub.add_parser("reproduce-table1", help="compare I(C:P; t) for t=1,2 with the published table")
    t1.add_argument("--lattice", type=int, default=DEFAULT_LATTICE)

    enh = sub.add_parser("enhancement", help="GHZ vs separable mutual information at a given step")
    enh.add_argument("--steps", type=int, default=10)
    enh.add_argument("--lattice", type=int, default=DEFAULT_LATTICE)
    enh.add_argument("--rule", default="unanimous")
    enh.add_argument("--out", help="write both trajectories as CSV")

    sw = sub.add_parser("sweep", help="trajectories over cos(theta)|000> + sin(theta)|111> starts")
    sw.add_argument("--theta", required=True, help="comma-separated angles, e.g. 0,pi/8,pi/4")
    sw.add_argument("--steps", type=int, required=True)
    sw.add_argument("--lattice", type=int, default=DEFAULT_LATTICE)
    sw.add_argument("--rule", default="unanimous")
    sw.add_argument("--out")
    sw.add_argument("--jobs", type=int, default=1)

    rc = sub.add_parser("rule-check", help="parse a rule file and print diagnostics")
    rc.add_argument("path")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return cmd_run(build_run_config(args))
        if args.command == "reproduce-table1":
            return cmd_reproduce_table1(args.lattice)
        if args.command == "enhancement":
            return cmd_enhancement(args.steps, args.lattice, args.rule, args.out)
        if args.command == "sweep":
            return cmd_sweep(_parse_theta_grid(args.theta), args.steps, args.lattice, args.rule, args.out, args.jobs)
        if args.command == "rule-check":
            return cmd_rule_check(args.path)
    except (ConfigError, RuleError, LatticeError, NormalizationError) as exc:
        print(f"tricoin: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalError as exc:
        print(f"tricoin: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except WalkError as exc:
        print(f"tricoin: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())

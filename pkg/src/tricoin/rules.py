"""Shift rules and the line-oriented rule language.

A rule file lists, for each of the eight coin outcomes, how far the walker
moves when the coins show that outcome::

    # the unanimous rule
    coins 3
    basis computational
    move +1 when 000
    move -1 when 111
    default stay

Keywords are case-sensitive. ``#`` starts a comment. Outcomes not named by a
``move``/``stay`` line take the ``default`` displacement. ``basis hadamard``
evaluates the patterns on ``|+>``/``|->`` instead of ``|0>``/``|1>`` (``0``
stands for ``+``). A rule that never moves is rejected unless the file
contains an ``allow-trivial`` line.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from tricoin.errors import (
    BitPatternError,
    CoinCountError,
    DegenerateRuleError,
    DisplacementRangeError,
    DuplicateConditionError,
    DuplicateDefaultError,
    MissingDefaultError,
    RuleSyntaxError,
    UnknownBasisError,
)
from tricoin.state import COIN_DIM, N_COINS, coin_bits

BASES = ("computational", "hadamard")

_TOKEN = re.compile(r"\S+")
_INT = re.compile(r"[+-]?\d+")
_PATTERN = re.compile(r"[01]{%d}" % N_COINS)


@dataclass(frozen=True)
class ShiftRule:
    displacement: tuple[int, ...]
    condition_basis: str = "computational"
    allow_trivial: bool = False

    def __post_init__(self):
        table = tuple(int(d) for d in self.displacement)
        if len(table) != COIN_DIM:
            raise ValueError(f"shift table must cover all {COIN_DIM} coin outcomes, got {len(table)}")
        if any(d not in (-1, 0, 1) for d in table):
            raise DisplacementRangeError(f"displacements must be in {{-1, 0, +1}}, got {table}")
        if self.condition_basis not in BASES:
            raise UnknownBasisError(f"unknown basis {self.condition_basis!r}")
        if not self.allow_trivial and not any(table):
            raise DegenerateRuleError("rule never moves the walker (add allow-trivial to permit this)")
        object.__setattr__(self, "displacement", table)

    def __getitem__(self, coin: int) -> int:
        return self.displacement[coin]

    @property
    def moving(self) -> tuple[int, ...]:
        return tuple(c for c, d in enumerate(self.displacement) if d)

    @property
    def speed(self) -> int:
        return max(abs(d) for d in self.displacement)

    def same_table(self, other: ShiftRule) -> bool:
        return self.displacement == other.displacement and self.condition_basis == other.condition_basis


@dataclass(frozen=True)
class RuleDiagnostics:
    moving: int
    stationary: int
    speed: int
    unitary: bool

    def as_dict(self) -> dict:
        return {"moving": self.moving, "stationary": self.stationary, "speed": self.speed, "unitary": self.unitary}


def builtin_unanimous() -> ShiftRule:
    """Move right on ``000``, left on ``111``, stay on the other six outcomes."""
    table = [0] * COIN_DIM
    table[0] = 1
    table[COIN_DIM - 1] = -1
    return ShiftRule(tuple(table), "computational")


def canonical_rule_text(name: str = "unanimous") -> str:
    return resources.files("tricoin").joinpath("data", f"{name}.rule").read_text(encoding="utf-8")


def _parse_displacement(tok: str, line: int, span: tuple[int, int], *, allow_stay: bool) -> int:
    if allow_stay and tok == "stay":
        return 0
    if not _INT.fullmatch(tok):
        raise RuleSyntaxError(f"expected a displacement (+1, -1{', stay' if allow_stay else ''}), got {tok!r}", line, span)
    value = int(tok)
    if value not in (-1, 0, 1):
        raise DisplacementRangeError(f"displacement {tok} outside {{-1, 0, +1}}", line, span)
    return value


def _parse_pattern(tok: str, line: int, span: tuple[int, int]) -> int:
    if not _PATTERN.fullmatch(tok):
        raise BitPatternError(f"coin pattern must be {N_COINS} characters of 0/1, got {tok!r}", line, span)
    return int(tok, 2)


def parse_rule(source: str) -> ShiftRule:
    """Parse rule-language text into a validated :class:`ShiftRule`."""
    table: dict[int, int] = {}
    first_seen: dict[int, int] = {}
    default: int | None = None
    basis: str | None = None
    coins_seen = False
    allow_trivial = False
    lines = source.split("\n")

    for lineno, raw in enumerate(lines, start=1):
        text = raw.split("#", 1)[0]
        toks = [(m.group(), (m.start() + 1, m.end())) for m in _TOKEN.finditer(text)]
        if not toks:
            continue
        head, head_span = toks[0]
        words = [t for t, _ in toks]

        def expect(n: int, form: str):
            if len(toks) != n:
                span = toks[min(n, len(toks)) - 1][1] if len(toks) < n else toks[n][1]
                raise RuleSyntaxError(f"expected '{form}'", lineno, span)

        if head == "coins":
            expect(2, "coins <int>")
            if coins_seen:
                raise RuleSyntaxError("repeated 'coins' line", lineno, head_span)
            if not re.fullmatch(r"\d+", words[1]):
                raise RuleSyntaxError(f"expected an integer coin count, got {words[1]!r}", lineno, toks[1][1])
            if int(words[1]) != N_COINS:
                raise CoinCountError(f"only {N_COINS} coins are supported, got {words[1]}", lineno, toks[1][1])
            coins_seen = True
        elif head == "basis":
            expect(2, "basis computational|hadamard")
            if basis is not None:
                raise RuleSyntaxError("repeated 'basis' line", lineno, head_span)
            if words[1] not in BASES:
                raise UnknownBasisError(f"unknown basis {words[1]!r}", lineno, toks[1][1])
            basis = words[1]
        elif head in ("move", "stay"):
            if head == "move":
                expect(4, "move +1|-1 when <pattern>")
                disp = _parse_displacement(words[1], lineno, toks[1][1], allow_stay=False)
                when_tok, pat_tok = toks[2], toks[3]
            else:
                expect(3, "stay when <pattern>")
                disp = 0
                when_tok, pat_tok = toks[1], toks[2]
            if when_tok[0] != "when":
                raise RuleSyntaxError(f"expected 'when', got {when_tok[0]!r}", lineno, when_tok[1])
            coin = _parse_pattern(pat_tok[0], lineno, pat_tok[1])
            if coin in table:
                raise DuplicateConditionError(
                    f"pattern {pat_tok[0]} already assigned on line {first_seen[coin]}", lineno, pat_tok[1]
                )
            table[coin] = disp
            first_seen[coin] = lineno
        elif head == "default":
            expect(2, "default stay|+1|-1")
            if default is not None:
                raise DuplicateDefaultError("only one 'default' clause is permitted", lineno, head_span)
            default = _parse_displacement(words[1], lineno, toks[1][1], allow_stay=True)
        elif head == "allow-trivial":
            expect(1, "allow-trivial")
            allow_trivial = True
        else:
            raise RuleSyntaxError(f"unknown keyword {head!r}", lineno, head_span)

    if len(table) < COIN_DIM and default is None:
        missing = ", ".join(coin_bits(c) for c in range(COIN_DIM) if c not in table)
        last = max((i for i, raw in enumerate(lines, 1) if raw.strip()), default=1)
        raise MissingDefaultError(f"no 'default' clause and outcomes {missing} are unspecified", last, (1, 1))

    full = tuple(table.get(c, default) for c in range(COIN_DIM))
    if not allow_trivial and not any(full):
        raise DegenerateRuleError("rule never moves the walker (add allow-trivial to permit this)", 1, (1, 1))
    return ShiftRule(full, basis or "computational", allow_trivial)


def load_rule(name_or_path: str | Path) -> ShiftRule:
    """``"unanimous"`` gives the built-in rule; anything else is read as a rule file."""
    if str(name_or_path) == "unanimous":
        return builtin_unanimous()
    return parse_rule(Path(name_or_path).read_text(encoding="utf-8"))


def _fmt_disp(d: int) -> str:
    return "stay" if d == 0 else f"{d:+d}"


def format_rule(rule: ShiftRule) -> str:
    """Canonical text for ``rule``; ``parse_rule(format_rule(r))`` reproduces ``r``."""
    counts = Counter(rule.displacement)
    # most common displacement becomes the default; ties prefer stay, then +1
    default = max(counts, key=lambda d: (counts[d], d == 0, d))
    out = [f"coins {N_COINS}", f"basis {rule.condition_basis}"]
    if rule.allow_trivial:
        out.append("allow-trivial")
    for coin, d in enumerate(rule.displacement):
        if d == default:
            continue
        out.append(f"stay when {coin_bits(coin)}" if d == 0 else f"move {d:+d} when {coin_bits(coin)}")
    out.append(f"default {_fmt_disp(default)}")
    return "\n".join(out) + "\n"


def rule_diagnostics(rule: ShiftRule) -> RuleDiagnostics:
    moving = len(rule.moving)
    # unitarity of the induced shift: under cyclic closure it must be a permutation of (coin, site)
    n_sites = 5
    targets = [c * n_sites + (j + rule[c]) % n_sites for c in range(COIN_DIM) for j in range(n_sites)]
    unitary = bool(np.array_equal(np.sort(targets), np.arange(COIN_DIM * n_sites)))
    return RuleDiagnostics(moving=moving, stationary=COIN_DIM - moving, speed=rule.speed, unitary=unitary)

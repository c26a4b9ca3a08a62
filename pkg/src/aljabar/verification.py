"""Self-checks for the color arithmetic against the published game values.

The 8-color combination table below is the one printed in the standard
rulebook, transcribed row by row; `run_verification` recomputes everything
from the group operations and reports any mismatch. The CLI `verify`
command is a thin formatter over this module.
"""

from __future__ import annotations

from dataclasses import dataclass

from .groups import (GroupParams, add, fano_lines, identity, inverse,
                     primaries, spectrum_pieces, standard_palette,
                     sum_multiset)
from .rng import GameRng

# Row/column order K R B Y P O G W; entry [i][j] is row i plus column j.
REFERENCE_TABLE_23 = [
    ["K", "R", "B", "Y", "P", "O", "G", "W"],
    ["R", "K", "P", "O", "B", "Y", "W", "G"],
    ["B", "P", "K", "G", "R", "W", "Y", "O"],
    ["Y", "O", "G", "K", "W", "R", "B", "P"],
    ["P", "B", "R", "W", "K", "G", "O", "Y"],
    ["O", "Y", "W", "R", "G", "K", "P", "B"],
    ["G", "W", "Y", "B", "O", "P", "K", "R"],
    ["W", "G", "O", "P", "Y", "B", "R", "K"],
]
REFERENCE_ORDER_23 = ["K", "R", "B", "Y", "P", "O", "G", "W"]

# Identities every player is asked to verify before the first game.
REFERENCE_IDENTITIES = [
    (["Y", "O"], "R"), (["B", "P"], "R"), (["G", "W"], "R"),
    (["Y", "P", "G"], "R"), (["O", "P", "W"], "R"),
    (["R", "B", "P"], "K"),
    # secondary + composing primary = the other primary
    (["R", "O"], "Y"), (["Y", "O"], "R"), (["B", "P"], "R"),
    (["R", "P"], "B"), (["B", "G"], "Y"), (["Y", "G"], "B"),
    # two secondaries = the third secondary
    (["G", "O"], "P"), (["O", "P"], "G"), (["P", "G"], "O"),
]


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str


def check_reference_table(corrupt: bool = False) -> CheckResult:
    """Compare the generated (2,3) table with the transcribed table."""
    params = GroupParams(2, 3)
    palette = standard_palette(params)
    order = [palette.vector_of(code) for code in REFERENCE_ORDER_23]
    mismatches = []
    expected = [row[:] for row in REFERENCE_TABLE_23]
    if corrupt:
        expected[1][1] = "W"  # deliberately wrong, for exercising failure
    for i, a in enumerate(order):
        for j, b in enumerate(order):
            got = palette.code_of(add(a, b))
            if got != expected[i][j]:
                mismatches.append(
                    f"[{REFERENCE_ORDER_23[i]}][{REFERENCE_ORDER_23[j]}] "
                    f"= {got}, table says {expected[i][j]}")
    total = len(order) ** 2
    if mismatches:
        return CheckResult("combination table (2,3)", False,
                           f"{total - len(mismatches)}/{total} entries match; "
                           + "; ".join(mismatches[:5]))
    return CheckResult("combination table (2,3)", True,
                       f"{total}/{total} table entries match")


def check_identities() -> CheckResult:
    palette = standard_palette(GroupParams(2, 3))
    bad = []
    for codes, expected in REFERENCE_IDENTITIES:
        got = palette.code_of(sum_multiset(palette.vectors_of(codes)))
        if got != expected:
            bad.append(f"{'+'.join(codes)} = {got}, expected {expected}")
    if bad:
        return CheckResult("worked identities", False, "; ".join(bad))
    return CheckResult("worked identities", True,
                       f"{len(REFERENCE_IDENTITIES)} identities hold")


def check_group_axioms(params: GroupParams, assoc_samples: int | None = None,
                       seed: int = 20_260_810) -> CheckResult:
    """Closure/identity/inverse exhaustively; associativity exhaustively
    unless ``assoc_samples`` asks for randomized triples instead."""
    name = f"group axioms ({params.m},{params.n})"
    elements = list(params.elements())
    universe = set(elements)
    ident = identity(params)
    for a in elements:
        if add(a, ident) != a:
            return CheckResult(name, False, f"{a} + K != {a}")
        if add(a, inverse(a)) != ident:
            return CheckResult(name, False, f"{a} + inverse != K")
        if params.m == 2 and add(a, a) != ident:
            return CheckResult(name, False, f"{a} not self-inverse with m=2")
        for b in elements:
            if add(a, b) not in universe:
                return CheckResult(name, False, f"{a}+{b} escaped the group")
            if add(a, b) != add(b, a):
                return CheckResult(name, False, f"{a}+{b} not commutative")
    if assoc_samples is None:
        triples = ((a, b, c) for a in elements for b in elements
                   for c in elements)
        tested = len(elements) ** 3
    else:
        rng = GameRng(seed)
        triples = ((elements[rng.randbelow(len(elements))],
                    elements[rng.randbelow(len(elements))],
                    elements[rng.randbelow(len(elements))])
                   for _ in range(assoc_samples))
        tested = assoc_samples
    for a, b, c in triples:
        if add(add(a, b), c) != add(a, add(b, c)):
            return CheckResult(name, False, f"associativity fails on {a},{b},{c}")
    return CheckResult(name, True,
                       f"closure/identity/inverse on {len(elements)} elements, "
                       f"associativity on {tested} triples")


def check_collinearity() -> CheckResult:
    params = GroupParams(2, 3)
    ident = identity(params)
    lines = fano_lines(params)
    if len(lines) != 7:
        return CheckResult("collinearity triples", False,
                           f"expected 7 lines, got {len(lines)}")
    for line in lines:
        if sum_multiset(sorted(line)) != ident:
            return CheckResult("collinearity triples", False,
                               f"line {sorted(line)} does not sum to K")
    counts = {}
    for line in lines:
        for v in line:
            counts[v] = counts.get(v, 0) + 1
    if any(c != 3 for c in counts.values()) or len(counts) != 7:
        return CheckResult("collinearity triples", False,
                           "some color is not on exactly 3 lines")
    return CheckResult("collinearity triples", True,
                       "7 lines, each summing to K, 3 per color")


def check_formulas() -> CheckResult:
    from .engine import GameConfig, deal_size, pool_spec
    checks = []
    for (m, n, players, copies), want_deal, want_pool in [
            ((2, 3, 4, 10), 13, 70),
            ((2, 4, 4, 10), 29, 150),
            ((3, 2, 2, 10), 23, 80),
    ]:
        config = GameConfig(m=m, n=n, players=players, copies_per_color=copies)
        deal = deal_size(config)
        pool = sum(pool_spec(config).values())
        if deal != want_deal:
            return CheckResult("deal/pool formulas", False,
                               f"deal size ({m},{n}) = {deal}, expected {want_deal}")
        if pool != want_pool:
            return CheckResult("deal/pool formulas", False,
                               f"pool ({m},{n}) A={copies} = {pool}, "
                               f"expected {want_pool}")
        checks.append(f"({m},{n}): deal {deal}, pool {pool}")
    for m, n in [(2, 3), (2, 4), (3, 2)]:
        params = GroupParams(m, n)
        pieces = spectrum_pieces(params)
        if sum_multiset(pieces) != identity(params):
            return CheckResult("deal/pool formulas", False,
                               f"Spectrum set for ({m},{n}) does not sum to K")
        if len(primaries(params)) != n:
            return CheckResult("deal/pool formulas", False,
                               f"expected {n} primaries for ({m},{n})")
    return CheckResult("deal/pool formulas", True,
                       "; ".join(checks) + "; Spectrum sums to K")


def run_verification(corrupt: bool = False) -> list[CheckResult]:
    return [
        check_reference_table(corrupt=corrupt),
        check_identities(),
        check_group_axioms(GroupParams(2, 3)),
        check_group_axioms(GroupParams(2, 4)),
        check_group_axioms(GroupParams(3, 2), assoc_samples=10_000),
        check_collinearity(),
        check_formulas(),
    ]

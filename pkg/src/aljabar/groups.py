"""Color arithmetic: game pieces as elements of the finite abelian group (Z_m)^n.

A piece's color is an n-vector of residues mod m, added componentwise.
The all-zero vector is the black/clear piece (code ``K``), the group
identity: adding or removing it never changes a sum, and m identical
pieces of any color cancel to it.

Palettes attach display names, short codes, and swatch colors to the
group elements; the standard 8-color game is (m=2, n=3) and the
nine-shade variant is (m=3, n=2).
"""

from __future__ import annotations

import colorsys
import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

MAX_GROUP_ORDER = 1 << 20


class DimensionMismatch(ValueError):
    """Two colors from different groups were combined."""


class UnsupportedParams(ValueError):
    """An operation defined only for specific group parameters was misapplied."""


@dataclass(frozen=True)
class GroupParams:
    """Group parameters: vectors of length ``n`` with entries mod ``m``."""

    m: int
    n: int

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("modulus m must be at least 2")
        if self.n < 1:
            raise ValueError("vector length n must be at least 1")
        if self.m ** self.n > MAX_GROUP_ORDER:
            raise ValueError(f"group order {self.m}^{self.n} exceeds the "
                             f"configured limit of 2^20")

    @property
    def order(self) -> int:
        return self.m ** self.n

    def elements(self) -> Iterator["ColorVector"]:
        """All group elements in lexicographic order (identity first)."""
        for entries in itertools.product(range(self.m), repeat=self.n):
            yield ColorVector(self.m, entries)


@dataclass(frozen=True, order=True)
class ColorVector:
    """One color: a vector of residues mod ``m``.

    Ordering is lexicographic on (m, entries); it exists purely to give
    multisets a canonical sorted form.
    """

    m: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("modulus m must be at least 2")
        if not self.entries:
            raise ValueError("color vector needs at least one entry")
        if any(not 0 <= e < self.m for e in self.entries):
            raise ValueError(f"entries {self.entries} not all in [0, {self.m})")

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def params(self) -> GroupParams:
        return GroupParams(self.m, self.n)

    @property
    def is_identity(self) -> bool:
        return not any(self.entries)

    def __add__(self, other: "ColorVector") -> "ColorVector":
        return add(self, other)

    def __neg__(self) -> "ColorVector":
        return inverse(self)

    def __repr__(self):
        return f"Color{self.entries}"


def _check_same_group(a: ColorVector, b: ColorVector) -> None:
    if a.m != b.m or len(a.entries) != len(b.entries):
        raise DimensionMismatch(
            f"cannot combine colors from (Z_{a.m})^{a.n} and (Z_{b.m})^{b.n}")


@lru_cache(maxsize=None)
def identity(params: GroupParams) -> ColorVector:
    """The black/clear piece of the group."""
    return ColorVector(params.m, (0,) * params.n)


def add(a: ColorVector, b: ColorVector) -> ColorVector:
    """Componentwise sum mod m. Commutative and associative."""
    _check_same_group(a, b)
    return ColorVector(a.m, tuple((x + y) % a.m for x, y in zip(a.entries, b.entries)))


def inverse(a: ColorVector) -> ColorVector:
    """The color that cancels ``a``: componentwise negation mod m.

    For m=2 every color is its own inverse.
    """
    return ColorVector(a.m, tuple((-x) % a.m for x in a.entries))


def sum_multiset(pieces: Iterable[ColorVector],
                 params: GroupParams | None = None) -> ColorVector:
    """Group sum of a multiset of pieces; the empty sum is the identity.

    ``params`` is only required when ``pieces`` may be empty.
    """
    total: ColorVector | None = None
    for piece in pieces:
        total = piece if total is None else add(total, piece)
    if total is not None:
        return total
    if params is None:
        raise ValueError("sum of an empty multiset needs explicit group params")
    return identity(params)


def primaries(params: GroupParams) -> list[ColorVector]:
    """The n unit vectors e_1..e_n, in index order.

    For the standard game these are red, yellow, blue.
    """
    return list(_primaries(params))


@lru_cache(maxsize=None)
def _primaries(params: GroupParams) -> tuple[ColorVector, ...]:
    out = []
    for i in range(params.n):
        entries = [0] * params.n
        entries[i] = 1
        out.append(ColorVector(params.m, tuple(entries)))
    return tuple(out)


@lru_cache(maxsize=None)
def spectrum_pieces(params: GroupParams) -> tuple[ColorVector, ...]:
    """The n primaries plus the all-(m-1) vector.

    These n+1 pieces sum to the identity; they are the give-set of the
    Spectrum move. In the standard game: R, Y, B, W.
    """
    white = ColorVector(params.m, (params.m - 1,) * params.n)
    return _primaries(params) + (white,)


# ---------------------------------------------------------------------------
# Palettes

_STANDARD_23 = [
    # (entries, name, code, swatch) in display order; identity first.
    ((0, 0, 0), "black/clear", "K", "#30343a"),
    ((1, 0, 0), "red", "R", "#d62828"),
    ((0, 0, 1), "blue", "B", "#1d4ed8"),
    ((0, 1, 0), "yellow", "Y", "#eab308"),
    ((1, 0, 1), "purple", "P", "#7c3aed"),
    ((1, 1, 0), "orange", "O", "#f97316"),
    ((0, 1, 1), "green", "G", "#16a34a"),
    ((1, 1, 1), "white", "W", "#f4f4f5"),
]

# First entry is the amount of red, second the amount of blue.
_SHADES_32 = [
    ((0, 0), "black/clear", "K", "#30343a"),
    ((0, 1), "light blue", "LB", "#7cc4fa"),
    ((0, 2), "dark blue", "DB", "#1e3a8a"),
    ((1, 0), "light red", "LR", "#fca5a5"),
    ((1, 1), "light purple", "LP", "#c4b5fd"),
    ((1, 2), "bluish purple", "BP", "#6053c8"),
    ((2, 0), "dark red", "DR", "#991b1b"),
    ((2, 1), "reddish purple", "RP", "#a2397f"),
    ((2, 2), "dark purple", "DP", "#4c1d95"),
]


@dataclass(frozen=True)
class Palette:
    """Bijection between group elements and display names/codes/swatches.

    ``order`` fixes the display order used by addition tables and CSV
    exports; the identity always comes first and is always coded ``K``.
    """

    params: GroupParams
    order: tuple[ColorVector, ...]
    names: dict[ColorVector, str]
    codes: dict[ColorVector, str]
    swatches: dict[ColorVector, str]

    def __post_init__(self):
        if len(self.order) != self.params.order:
            raise ValueError("palette must name every group element exactly once")
        if len(set(self.codes.values())) != len(self.codes):
            raise ValueError("palette codes must be unique")
        ident = identity(self.params)
        if self.codes[ident] != "K" or self.order[0] != ident:
            raise ValueError("identity must come first and be coded K")

    def name_of(self, v: ColorVector) -> str:
        return self.names[v]

    def code_of(self, v: ColorVector) -> str:
        return self.codes[v]

    def vector_of(self, code: str) -> ColorVector:
        try:
            return self._by_code[code]
        except KeyError:
            raise KeyError(f"unknown color code {code!r}") from None

    @property
    def _by_code(self) -> dict[str, ColorVector]:
        # Tiny enough to rebuild on demand; keeps the dataclass frozen-simple.
        return {c: v for v, c in self.codes.items()}

    def codes_of(self, pieces: Iterable[ColorVector]) -> list[str]:
        return [self.codes[p] for p in pieces]

    def vectors_of(self, codes: Iterable[str]) -> list[ColorVector]:
        by_code = self._by_code
        out = []
        for code in codes:
            try:
                out.append(by_code[code])
            except KeyError:
                raise KeyError(f"unknown color code {code!r}") from None
        return out

    def to_wire(self) -> dict:
        """JSON-friendly description shipped to clients (hello message).

        Carries everything a client needs so that no group arithmetic has
        to be reimplemented: the full addition table and the Spectrum set.
        """
        return {
            "m": self.params.m,
            "n": self.params.n,
            "order": [self.codes[v] for v in self.order],
            "entries": {self.codes[v]: list(v.entries) for v in self.order},
            "names": {self.codes[v]: self.names[v] for v in self.order},
            "swatches": {self.codes[v]: self.swatches[v] for v in self.order},
            "table": [[self.codes[add(a, b)] for b in self.order]
                      for a in self.order],
            "spectrum": [self.codes[v] for v in spectrum_pieces(self.params)],
        }


def _generic_code(v: ColorVector) -> str:
    if v.is_identity:
        return "K"
    if v.m <= 10:
        return "C" + "".join(str(e) for e in v.entries)
    return "C" + "-".join(str(e) for e in v.entries)


def _generic_swatch(index: int, count: int) -> str:
    hue = (index - 1) / max(count - 1, 1)
    r, g, b = colorsys.hsv_to_rgb(hue, 0.65, 0.88)
    return f"#{int(r * 255):02x}{int(g * 255):02x}{int(b * 255):02x}"


@lru_cache(maxsize=None)
def standard_palette(params: GroupParams) -> Palette:
    """The named palette for (2,3) and (3,2); systematic codes otherwise."""
    if (params.m, params.n) == (2, 3):
        rows = _STANDARD_23
    elif (params.m, params.n) == (3, 2):
        rows = _SHADES_32
    else:
        order = list(params.elements())
        names = {v: "black/clear" if v.is_identity
                 else "C(" + ",".join(str(e) for e in v.entries) + ")"
                 for v in order}
        codes = {v: _generic_code(v) for v in order}
        swatches = {v: "#30343a" if v.is_identity else _generic_swatch(i, len(order))
                    for i, v in enumerate(order)}
        return Palette(params, tuple(order), names, codes, swatches)
    order = tuple(ColorVector(params.m, entries) for entries, _, _, _ in rows)
    names = {ColorVector(params.m, e): name for e, name, _, _ in rows}
    codes = {ColorVector(params.m, e): code for e, _, code, _ in rows}
    swatches = {ColorVector(params.m, e): sw for e, _, _, sw in rows}
    return Palette(params, order, names, codes, swatches)


def addition_table(palette: Palette) -> list[list[ColorVector]]:
    """Full m^n x m^n sum table in the palette's display order."""
    return [[add(a, b) for b in palette.order] for a in palette.order]


def addition_table_csv(palette: Palette) -> str:
    """The addition table as CSV with a header row/column of short codes."""
    header = [""] + [palette.codes[v] for v in palette.order]
    lines = [",".join(header)]
    for a in palette.order:
        row = [palette.codes[a]] + [palette.codes[add(a, b)] for b in palette.order]
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def fano_lines(params: GroupParams) -> list[frozenset[ColorVector]]:
    """The 7 collinear triples {a, b, a+b} of non-identity colors, (2,3) only.

    Every triple sums to black/clear and every non-identity color lies on
    exactly 3 of the 7 lines.
    """
    if (params.m, params.n) != (2, 3):
        raise UnsupportedParams("collinearity triples are defined for (m=2, n=3) only")
    nonzero = [v for v in params.elements() if not v.is_identity]
    lines = {frozenset((a, b, add(a, b)))
             for a, b in itertools.combinations(nonzero, 2)}
    return sorted(lines, key=lambda line: sorted(v.entries for v in line))


# ---------------------------------------------------------------------------
# Reduction traces

@dataclass(frozen=True)
class ReductionStep:
    before: tuple[ColorVector, ...]
    action: str
    after: tuple[ColorVector, ...]


@dataclass(frozen=True)
class ReductionTrace:
    """A human-readable simplification of a multiset down to a single piece.

    Every step preserves the group sum, so ``final`` always equals the sum
    of the original multiset.
    """

    steps: tuple[ReductionStep, ...]
    final: ColorVector

    def render(self, palette: Palette) -> str:
        lines = []
        for step in self.steps:
            before = "+".join(palette.codes_of(step.before))
            after = "+".join(palette.codes_of(step.after)) or palette.codes[self.final]
            lines.append(f"{before} = {after}   ({step.action})")
        lines.append(f"sum = {palette.codes[self.final]}")
        return "\n".join(lines)


def _is_primary(v: ColorVector) -> bool:
    return sum(v.entries) == 1


def _cancel(pieces: tuple[ColorVector, ...], m: int,
            palette: Palette) -> tuple[tuple[ColorVector, ...], str | None]:
    """Drop black/clear pieces and cancel m-tuples of identical colors."""
    removed: list[str] = []
    kept: list[ColorVector] = []
    seen: dict[ColorVector, int] = {}
    for p in pieces:
        seen[p] = seen.get(p, 0) + 1
    for color in sorted(seen):
        count = seen[color]
        if color.is_identity:
            if count:
                removed.append(f"drop {count} {palette.codes[color]}")
            continue
        tuples, rest = divmod(count, m)
        if tuples:
            removed.append(f"cancel {tuples} x {m}-tuple of {palette.codes[color]}")
        kept.extend([color] * rest)
    if not removed:
        return pieces, None
    return tuple(sorted(kept)), "; ".join(removed)


def reduce_trace(pieces: Sequence[ColorVector], palette: Palette) -> ReductionTrace:
    """Reduce a multiset to a single piece the way a player would.

    Alternates cancelling (m-tuples and black/clear pieces) with expanding
    non-primary colors into primary pieces, finishing with one combine step
    when only primaries with small counts remain.
    """
    if not pieces:
        raise ValueError("reduce_trace needs a nonempty multiset")
    m = pieces[0].m
    for p in pieces:
        _check_same_group(pieces[0], p)
    ms = tuple(sorted(pieces))
    steps: list[ReductionStep] = []
    while len(ms) > 1:
        cancelled, action = _cancel(ms, m, palette)
        if action is not None:
            steps.append(ReductionStep(ms, action, cancelled))
            ms = cancelled
            continue
        expandable = [p for p in ms if not p.is_identity and not _is_primary(p)]
        if expandable:
            out: list[ColorVector] = []
            descs = []
            units = primaries(pieces[0].params)
            for p in ms:
                if p.is_identity or _is_primary(p):
                    out.append(p)
                    continue
                expansion = []
                for i, e in enumerate(p.entries):
                    expansion.extend([units[i]] * e)
                descs.append(f"{palette.codes[p]} -> "
                             f"{'+'.join(palette.codes_of(expansion))}")
                out.extend(expansion)
            after = tuple(sorted(out))
            steps.append(ReductionStep(ms, "expand " + "; ".join(sorted(set(descs))), after))
            ms = after
            continue
        # Only distinct-ish primaries left, fewer than m of each: one combine.
        total = sum_multiset(ms)
        steps.append(ReductionStep(
            ms, f"combine {'+'.join(palette.codes_of(ms))} = {palette.codes[total]}",
            (total,)))
        ms = (total,)
    final = ms[0] if ms else identity(pieces[0].params)
    return ReductionTrace(tuple(steps), final)

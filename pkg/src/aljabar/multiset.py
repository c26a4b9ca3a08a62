"""Canonical multiset handling for piece collections.

Hands, the Center, and the bag are multisets of colors. Internally they
are ``Counter`` objects keyed by color; at API boundaries (moves, events,
wire messages) a multiset is the sorted tuple of its pieces, so equal
multisets always serialize identically.
"""

from __future__ import annotations

from collections import Counter
from typing import Iterable, Iterator

from .groups import ColorVector


def canonical(pieces: Iterable[ColorVector]) -> tuple[ColorVector, ...]:
    """Sorted-tuple form; two multisets are equal iff these are equal."""
    return tuple(sorted(pieces))


def counts(pieces: Iterable[ColorVector]) -> Counter:
    return Counter(pieces)


def contains(superset: Counter, pieces: Iterable[ColorVector]) -> bool:
    """True if every piece (with multiplicity) is available in ``superset``."""
    need = Counter(pieces)
    return all(superset.get(color, 0) >= k for color, k in need.items())


def remove(store: Counter, pieces: Iterable[ColorVector]) -> None:
    for piece in pieces:
        left = store.get(piece, 0)
        if left <= 0:
            raise KeyError(f"piece {piece!r} not present")
        if left == 1:
            del store[piece]
        else:
            store[piece] = left - 1


def insert(store: Counter, pieces: Iterable[ColorVector]) -> None:
    for piece in pieces:
        store[piece] = store.get(piece, 0) + 1


def total(store: Counter) -> int:
    return sum(store.values())


def expand(store: Counter) -> list[ColorVector]:
    """Sorted list with multiplicity."""
    out: list[ColorVector] = []
    for color in sorted(store):
        out.extend([color] * store[color])
    return out


def iter_sub_multisets(store: Counter, max_size: int,
                       min_size: int = 1) -> Iterator[tuple[ColorVector, ...]]:
    """All distinct sub-multisets with min_size <= size <= max_size.

    Distinct means distinct as multisets: {R, R} is yielded once however
    many R pieces the store holds. Each multiset corresponds to exactly one
    per-color count assignment, so nothing is yielded twice.
    """
    colors = sorted(c for c, k in store.items() if k > 0)

    def rec(idx: int, acc: list[ColorVector]) -> Iterator[tuple[ColorVector, ...]]:
        if idx == len(colors):
            if len(acc) >= min_size:
                yield tuple(acc)
            return
        color = colors[idx]
        cap = min(store[color], max_size - len(acc))
        for take in range(cap + 1):
            yield from rec(idx + 1, acc + [color] * take)

    yield from rec(0, [])

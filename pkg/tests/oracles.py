"""Independent reference implementations used to pin expected values.

Each oracle recomputes a quantity by a method unrelated to the one the
package uses (exhaustive span closure, union-find, brute-force subset
scans), so agreement between the two is evidence rather than tautology.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Sequence


def rank_gf2_span(columns: Iterable[int]) -> int:
    """Rank of a set of GF(2) columns (int bitmasks) as log2 of the size
    of their linear span, computed by exhaustive closure.

    Only sensible for small column sets (span size is 2^rank).
    """
    span = {0}
    for c in columns:
        span |= {v ^ c for v in span}
    size = len(span)
    rank = size.bit_length() - 1
    assert 1 << rank == size, "span size must be a power of two"
    return rank


def components_union_find(
    nodes: Iterable[int], pairs: Iterable[tuple[int, int]]
) -> int:
    """Connected-component count via hand-rolled union-find."""
    parent = {v: v for v in nodes}

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for u, v in pairs:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    return len({find(v) for v in parent})


def cliques_bruteforce(
    nodes: Iterable[int], pairs: Iterable[tuple[int, int]]
) -> list[tuple[int, ...]]:
    """Every clique (sorted vertex tuple, size >= 1) by scanning all
    vertex subsets and checking all their pairs."""
    edges = {tuple(sorted(p)) for p in pairs}
    ordered = sorted(nodes)
    out: list[tuple[int, ...]] = []
    for r in range(1, len(ordered) + 1):
        for sub in itertools.combinations(ordered, r):
            if all(pq in edges for pq in itertools.combinations(sub, 2)):
                out.append(sub)
    return out


def ordered_set_partitions(
    items: Iterable[str],
) -> Iterator[tuple[tuple[str, ...], ...]]:
    """All ordered sequences of disjoint nonempty blocks covering the
    items, each block reported sorted.  Counts follow the ordered Bell
    numbers: 1, 3, 13, 75, 541 for 1..5 items."""
    pool = frozenset(items)
    if not pool:
        yield ()
        return
    elems = sorted(pool)
    for r in range(1, len(elems) + 1):
        for block in itertools.combinations(elems, r):
            rest = pool - set(block)
            for tail in ordered_set_partitions(rest):
                yield (tuple(block),) + tail


def euler_from_counts(cell_counts: Sequence[int]) -> int:
    """Alternating sum of cell counts."""
    return sum((-1) ** d * c for d, c in enumerate(cell_counts))

"""GF(2) cellular homology of multicomplexes.

Boundary matrices are stored column-wise as Python int bitsets (bit i of
a column = incidence with the i-th (d-1)-cell in canonical order).  Rank
is Gaussian elimination with a deterministic pivot: the first nonzero
row, i.e. the lowest set bit.  Betti numbers come from the usual rank
formula; over GF(2) no orientation bookkeeping is needed and parallel
copies contribute independent columns exactly when their glued
boundaries differ.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import networkx as nx

from .mcomplex import CellKey, Multicell, Multicomplex
from .mgraph import Multigraph, Multilayer

__all__ = [
    "Gf2Basis",
    "gf2_rank",
    "BoundaryMatrix",
    "boundary_matrix",
    "betti",
    "betti_of_cells",
    "betti_sum",
    "euler_characteristic",
    "boundary_squares_to_zero",
    "connected_components",
]

BettiVector = tuple[int, ...]


class Gf2Basis:
    """Row-reduced basis of GF(2) bit vectors, grown one vector at a time."""

    def __init__(self):
        self.pivots: dict[int, int] = {}  # lowest set bit -> reduced vector

    def reduce(self, vec: int) -> int:
        while vec:
            low = vec & -vec
            if low not in self.pivots:
                break
            vec ^= self.pivots[low]
        return vec

    def add(self, vec: int) -> bool:
        """Insert; True iff the vector was independent (rank grew)."""
        residue = self.reduce(vec)
        if residue:
            self.pivots[residue & -residue] = residue
            return True
        return False

    @property
    def rank(self) -> int:
        return len(self.pivots)


def gf2_rank(columns: Iterable[int]) -> int:
    """Rank of a GF(2) matrix given as column bitsets."""
    basis = Gf2Basis()
    for col in columns:
        basis.add(col)
    return basis.rank


@dataclass(frozen=True)
class BoundaryMatrix:
    """d-th boundary matrix: rows are (d-1)-cells, columns are d-cells."""

    row_keys: tuple[CellKey, ...]
    col_keys: tuple[CellKey, ...]
    columns: tuple[int, ...]

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.row_keys), len(self.col_keys))

    def rank(self) -> int:
        return gf2_rank(self.columns)

    def dense(self) -> list[list[int]]:
        return [
            [(col >> i) & 1 for col in self.columns]
            for i in range(len(self.row_keys))
        ]


def _grade(cells: Iterable[Multicell]) -> list[tuple[Multicell, ...]]:
    by_dim: dict[int, list[Multicell]] = {}
    for c in cells:
        by_dim.setdefault(c.dim, []).append(c)
    top = max(by_dim) if by_dim else -1
    return [tuple(sorted(by_dim.get(d, ()))) for d in range(top + 1)]


def _cells_of(x: Multicomplex | Iterable[Multicell]) -> list[tuple[Multicell, ...]]:
    if isinstance(x, Multicomplex):
        return [x.cells(d) for d in range(x.dimension + 1)]
    return _grade(x)


def boundary_matrix(x: Multicomplex | Iterable[Multicell], d: int) -> BoundaryMatrix:
    """Boundary matrix for dimension d >= 1 (columns from multiboundaries)."""
    if d < 1:
        raise ValueError(f"boundary matrices are defined for d >= 1, got {d}")
    grades = _cells_of(x)
    rows = grades[d - 1] if d - 1 < len(grades) else ()
    cols = grades[d] if d < len(grades) else ()
    index = {c.key: i for i, c in enumerate(rows)}
    columns = []
    for c in cols:
        col = 0
        for face_key in c.faces:
            col ^= 1 << index[face_key]
        columns.append(col)
    return BoundaryMatrix(
        tuple(c.key for c in rows), tuple(c.key for c in cols), tuple(columns)
    )


def betti_of_cells(cells: Iterable[Multicell]) -> BettiVector:
    """Betti vector of an explicit, downward-closed cell list."""
    grades = _grade(cells)
    if not grades:
        return ()
    ranks = [0] * (len(grades) + 1)
    for d in range(1, len(grades)):
        ranks[d] = boundary_matrix(
            [c for grade in grades for c in grade], d
        ).rank()
    return tuple(
        len(grades[d]) - ranks[d] - ranks[d + 1] for d in range(len(grades))
    )


def betti(x: Multicomplex) -> BettiVector:
    """Betti numbers beta_0..beta_D via the GF(2) rank formula."""
    if x.dimension < 0:
        return ()
    ranks = [0] * (x.dimension + 2)
    for d in range(1, x.dimension + 1):
        ranks[d] = boundary_matrix(x, d).rank()
    return tuple(
        x.cell_count(d) - ranks[d] - ranks[d + 1] for d in range(x.dimension + 1)
    )


def betti_sum(vectors: Iterable[BettiVector]) -> BettiVector:
    """Componentwise sum with zero padding (homology of a disjoint union)."""
    vectors = list(vectors)
    width = max((len(v) for v in vectors), default=0)
    return tuple(sum(v[d] for v in vectors if d < len(v)) for d in range(width))


def euler_characteristic(x: Multicomplex) -> int:
    return sum((-1) ** d * x.cell_count(d) for d in range(x.dimension + 1))


def boundary_squares_to_zero(x: Multicomplex) -> bool:
    """Check d(d(cell)) = 0 over GF(2) for every cell of dimension >= 2."""
    for d in range(2, x.dimension + 1):
        lower = {c.key: c for c in x.cells(d - 1)}
        for c in x.cells(d):
            acc: set[CellKey] = set()
            for face_key in c.faces:
                acc ^= set(lower[face_key].faces)
            if acc:
                return False
    return True


def connected_components(g: Multigraph | Multilayer) -> int:
    """Components of the underlying simple graph; layers add up."""
    if isinstance(g, Multilayer):
        return sum(connected_components(layer) for layer in g.layers)
    simple = nx.Graph()
    simple.add_nodes_from(g.nodes)
    simple.add_edges_from({e.pair for e in g.edges})
    return nx.number_connected_components(simple)

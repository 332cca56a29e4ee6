"""Edge-coloured multigraphs and the two composition operators.

A multigraph here is a finite node set, a palette of colours, and a
multiset of undirected edges where every parallel copy carries its own
colour.  Two graphs over the same palette compose in two ways:

* ``tensor`` (written ``|`` in chain syntax) places graphs side by side
  as ordered, non-interacting layers;
* ``merge`` (written ``.``) overlays them on a shared node universe:
  nodes with equal labels are identified and multiplicities add per
  endpoint pair.

Graphs are immutable values.  Equality is semantic: node set, palette,
and the colour multiset per endpoint pair — the copy indices used to
tell parallel edges apart are bookkeeping, not identity.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import GraphStructureError, PaletteMismatch, SelfLoopPresent

__all__ = [
    "Color",
    "NodeId",
    "EdgeCopy",
    "Multigraph",
    "Multilayer",
    "tensor",
    "merge",
    "color_count",
    "canonical",
    "vertex_disjoint",
]

Color = str
NodeId = int


@dataclass(frozen=True, order=True)
class EdgeCopy:
    """One copy of an undirected edge; ``copy`` is 1-based within its pair."""

    u: NodeId
    v: NodeId
    copy: int
    color: Color

    def __post_init__(self):
        if self.u == self.v:
            raise SelfLoopPresent(f"self-loop at node {self.u}")
        if self.u > self.v:
            raise GraphStructureError(f"edge endpoints must be ordered: ({self.u}, {self.v})")
        if self.copy < 1:
            raise GraphStructureError(f"copy index must be >= 1, got {self.copy}")

    @property
    def pair(self) -> tuple[NodeId, NodeId]:
        return (self.u, self.v)


def _normalize_pair(u: NodeId, v: NodeId) -> tuple[NodeId, NodeId]:
    if u == v:
        raise SelfLoopPresent(f"self-loop at node {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True, eq=False)
class Multigraph:
    """Immutable edge-coloured multigraph over a fixed palette."""

    nodes: frozenset[NodeId]
    edges: tuple[EdgeCopy, ...]
    palette: frozenset[Color]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(sorted(self.edges)))
        by_pair: dict[tuple[NodeId, NodeId], list[int]] = {}
        for e in self.edges:
            if e.u not in self.nodes or e.v not in self.nodes:
                raise GraphStructureError(f"edge {e.pair} has endpoints outside the node set")
            if e.color not in self.palette:
                raise PaletteMismatch(f"colour {e.color!r} not in palette {sorted(self.palette)}")
            by_pair.setdefault(e.pair, []).append(e.copy)
        for pair, copies in by_pair.items():
            if sorted(copies) != list(range(1, len(copies) + 1)):
                raise GraphStructureError(
                    f"copy indices for pair {pair} must be contiguous 1..m, got {sorted(copies)}"
                )

    # -- construction helpers -------------------------------------------------

    @classmethod
    def build(
        cls,
        nodes: Iterable[NodeId],
        edges: Iterable[tuple[NodeId, NodeId, Color] | tuple[NodeId, NodeId, Color, int]],
        palette: Iterable[Color],
    ) -> "Multigraph":
        """Build from ``(u, v, color)`` or ``(u, v, color, mult)`` rows.

        Copy indices are assigned per endpoint pair in row order, so the
        same row repeated (or a ``mult`` > 1) yields parallel copies.
        """
        counters: dict[tuple[NodeId, NodeId], int] = {}
        out: list[EdgeCopy] = []
        for row in edges:
            if len(row) == 3:
                u, v, color = row  # type: ignore[misc]
                mult = 1
            else:
                u, v, color, mult = row  # type: ignore[misc]
            if mult < 1:
                raise GraphStructureError(f"multiplicity must be >= 1, got {mult}")
            pair = _normalize_pair(u, v)
            for _ in range(mult):
                counters[pair] = counters.get(pair, 0) + 1
                out.append(EdgeCopy(pair[0], pair[1], counters[pair], color))
        return cls(frozenset(nodes), tuple(out), frozenset(palette))

    @classmethod
    def empty(cls, palette: Iterable[Color] = ()) -> "Multigraph":
        return cls(frozenset(), (), frozenset(palette))

    # -- views -----------------------------------------------------------------

    def pairs(self) -> tuple[tuple[NodeId, NodeId], ...]:
        """Distinct endpoint pairs, sorted."""
        return tuple(sorted({e.pair for e in self.edges}))

    def multiplicity(self, pair: tuple[NodeId, NodeId]) -> int:
        return sum(1 for e in self.edges if e.pair == pair)

    def multiplicities(self) -> dict[tuple[NodeId, NodeId], int]:
        out: dict[tuple[NodeId, NodeId], int] = {}
        for e in self.edges:
            out[e.pair] = out.get(e.pair, 0) + 1
        return out

    def copies(self, pair: tuple[NodeId, NodeId]) -> tuple[EdgeCopy, ...]:
        return tuple(e for e in self.edges if e.pair == pair)

    def colors_used(self) -> frozenset[Color]:
        return frozenset(e.color for e in self.edges)

    def color_multiset(self, pair: tuple[NodeId, NodeId]) -> tuple[Color, ...]:
        return tuple(sorted(e.color for e in self.copies(pair)))

    # -- identity ----------------------------------------------------------------

    def _key(self):
        per_pair = tuple((p, self.color_multiset(p)) for p in self.pairs())
        return (self.nodes, self.palette, per_pair)

    def __eq__(self, other):
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"Multigraph(|V|={len(self.nodes)}, |E|={len(self.edges)}, colours={sorted(self.colors_used())})"

    def to_json_dict(self) -> dict:
        """Canonical JSON form: copies grouped by (pair, colour)."""
        rows: dict[tuple[NodeId, NodeId, Color], int] = {}
        for e in self.edges:
            key = (e.u, e.v, e.color)
            rows[key] = rows.get(key, 0) + 1
        return {
            "nodes": sorted(self.nodes),
            "edges": [
                {"u": u, "v": v, "color": c, "mult": m}
                for (u, v, c), m in sorted(rows.items())
            ],
        }


@dataclass(frozen=True)
class Multilayer:
    """Ordered layers produced by ``tensor``; layers do not interact."""

    layers: tuple[Multigraph, ...] = field(default_factory=tuple)

    def __len__(self) -> int:
        return len(self.layers)

    def __iter__(self):
        return iter(self.layers)


def _as_layers(x: Multigraph | Multilayer) -> tuple[Multigraph, ...]:
    return x.layers if isinstance(x, Multilayer) else (x,)


def tensor(g: Multigraph | Multilayer, h: Multigraph | Multilayer) -> Multilayer:
    """Juxtapose as ordered layers; no identification, order is kept."""
    return Multilayer(_as_layers(g) + _as_layers(h))


def merge(g: Multigraph, h: Multigraph) -> Multigraph:
    """Overlay on the shared node universe.

    Nodes union (equal labels identified), per-pair multiplicities add,
    and g's copies keep their indices while h's are appended after, so
    copy identities on the g side are stable across a merge.
    """
    if g.palette != h.palette:
        raise PaletteMismatch(
            f"operands disagree on palette: {sorted(g.palette)} vs {sorted(h.palette)}"
        )
    edges: list[EdgeCopy] = list(g.edges)
    g_mult = g.multiplicities()
    for pair in h.pairs():
        base = g_mult.get(pair, 0)
        for e in h.copies(pair):
            edges.append(EdgeCopy(e.u, e.v, base + e.copy, e.color))
    return Multigraph(g.nodes | h.nodes, tuple(edges), g.palette)


def color_count(g: Multigraph) -> int:
    """Number of distinct colours actually used by edges."""
    return len(g.colors_used())


def canonical(g: Multigraph) -> Multigraph:
    """Re-index copies per pair in colour order; canonical representative
    of the semantic equality class."""
    edges: list[EdgeCopy] = []
    for pair in g.pairs():
        ordered = sorted(g.copies(pair), key=lambda e: (e.color, e.copy))
        for i, e in enumerate(ordered, start=1):
            edges.append(EdgeCopy(e.u, e.v, i, e.color))
    return Multigraph(g.nodes, tuple(edges), g.palette)


def vertex_disjoint(*graphs: Multigraph) -> bool:
    return all(
        not (a.nodes & b.nodes) for a, b in itertools.combinations(graphs, 2)
    )

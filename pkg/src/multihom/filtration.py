"""Interaction filtrations: Hasse diagrams of chains under the flow maps.

Starting from a chain, repeatedly applying flow maps (across tensor-
reordered representatives) merges pairs of layers.  After evaluation the
tensor order is forgotten and merge is commutative, so a node of the
diagram is a multiset of layer complexes; two chains that evaluate to
structurally equal complex multisets collapse to one node.  Levels are
graded by the interaction count (number of merges), each cover raises it
by one, and the top is the single fully merged complex.

The level profile deliberately reports two channels per level — a
closed-form size and the measured size — because they disagree in
general; consumers decide what to make of that.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Mapping, Sequence

from .chainlat import (
    ChainEnv,
    ChainExpr,
    Connective,
    evaluate,
    merge_count,
)
from .errors import IndexOutOfRange
from .homology import BettiVector, betti, betti_sum
from .mcomplex import CANONICAL, Multicomplex, clique_multicomplex
from .mgraph import Multigraph, merge

__all__ = [
    "FiltrationNode",
    "FiltrationPoset",
    "enumerate_chains",
    "build_filtration",
    "level",
    "betti_trace",
    "trace_for_chains",
    "level_profile",
    "chain_betti",
    "chain_complexes",
    "prefix_leq",
]


def chain_complexes(
    x: ChainExpr, env: ChainEnv, policy: str = CANONICAL
) -> tuple[Multicomplex, ...]:
    """One clique complex per tensor layer of the evaluated chain."""
    return tuple(clique_multicomplex(g, policy) for g in evaluate(x, env))


def chain_betti(x: ChainExpr, env: ChainEnv, policy: str = CANONICAL) -> BettiVector:
    """Betti vector of a chain: layers are disjoint, so vectors add."""
    return betti_sum(betti(c) for c in chain_complexes(x, env, policy))


def _canonical_blocks(blocks: Iterable[tuple[str, ...]]) -> tuple[tuple[str, ...], ...]:
    return tuple(sorted(tuple(sorted(b)) for b in blocks))


def _chain_of_blocks(blocks: Sequence[tuple[str, ...]]) -> ChainExpr:
    atoms: list[str] = []
    conns: list[Connective] = []
    for i, block in enumerate(blocks):
        if i:
            conns.append(Connective.TENSOR)
        atoms.extend(block)
        conns.extend([Connective.MERGE] * (len(block) - 1))
    return ChainExpr(tuple(atoms), tuple(conns))


@dataclass(frozen=True)
class FiltrationNode:
    """One configuration: canonical chain, grade, layer complexes, Betti."""

    chain: ChainExpr
    level: int
    complexes: tuple[Multicomplex, ...]
    betti: BettiVector

    @property
    def key(self) -> tuple:
        return tuple(sorted(c.canonical_form() for c in self.complexes))


@dataclass
class FiltrationPoset:
    """Hasse diagram over filtration nodes, graded by interaction count."""

    k: int
    start: ChainExpr
    nodes: tuple[FiltrationNode, ...]
    covers: tuple[tuple[int, int, str], ...]  # (src node idx, dst node idx, f label)
    env: ChainEnv
    policy: str = CANONICAL

    def level(self, j: int) -> tuple[FiltrationNode, ...]:
        if not (0 <= j <= self.k - 1):
            raise IndexOutOfRange(f"level {j} outside 0..{self.k - 1}")
        return tuple(n for n in self.nodes if n.level == j)

    def node_for_chain(self, x: ChainExpr) -> FiltrationNode:
        """Find the node a chain evaluates into (up to layer reordering)."""
        key = tuple(
            sorted(
                c.canonical_form()
                for c in chain_complexes(x, self.env, self.policy)
            )
        )
        for n in self.nodes:
            if n.key == key:
                return n
        raise KeyError(f"chain {x.text()!r} does not evaluate into this filtration")

    def to_dot(self) -> str:
        lines = ["digraph filtration {", "  rankdir=BT;"]
        for i, n in enumerate(self.nodes):
            beta = "(" + ", ".join(str(b) for b in n.betti) + ")"
            lines.append(
                f'  n{i} [label="{n.chain.pretty()} | β = {beta}", shape=box];'
            )
        for src, dst, label in self.covers:
            lines.append(f'  n{src} -> n{dst} [label="{label}"];')
        lines.append("}")
        return "\n".join(lines)

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "start": self.start.text(),
            "policy": self.policy,
            "nodes": [
                {
                    "delta": i,
                    "chain": n.chain.text(),
                    "level": n.level,
                    "betti": list(n.betti),
                    "layers": [c.to_json_dict() for c in n.complexes],
                }
                for i, n in enumerate(self.nodes)
            ],
            "covers": [
                {
                    "from": self.nodes[s].chain.text(),
                    "to": self.nodes[t].chain.text(),
                    "map": label,
                }
                for s, t, label in self.covers
            ],
            "level_profile": level_profile(self),
        }


def build_filtration(
    x: ChainExpr, env: ChainEnv, policy: str = CANONICAL
) -> FiltrationPoset:
    """Close a start chain under the flow maps and dedup evaluated nodes.

    Successors merge one unordered pair of layers at a time; the edge
    label f_j names the flow position realizing the cover against the
    successor's canonical block order.
    """
    for name in x.atoms:
        env.resolve(name)  # fail early on unbound atoms
    k = x.k

    def node_from_blocks(
        blocks: tuple[tuple[str, ...], ...], layers: tuple[Multigraph, ...]
    ) -> FiltrationNode:
        order = sorted(range(len(blocks)), key=lambda i: blocks[i])
        blocks = tuple(blocks[i] for i in order)
        layers = tuple(layers[i] for i in order)
        complexes = tuple(clique_multicomplex(g, policy) for g in layers)
        return FiltrationNode(
            chain=_chain_of_blocks(blocks),
            level=k - len(blocks),
            complexes=complexes,
            betti=betti_sum(betti(c) for c in complexes),
        )

    start_blocks = tuple(tuple(sorted(b)) for b in x.blocks())
    start_layers = tuple(
        reduce(merge, [env.resolve(a) for a in block]) for block in x.blocks()
    )
    order0 = sorted(range(len(start_blocks)), key=lambda i: start_blocks[i])
    start_blocks = tuple(start_blocks[i] for i in order0)
    start_layers = tuple(start_layers[i] for i in order0)
    first = node_from_blocks(start_blocks, start_layers)

    seen: dict[tuple, int] = {first.key: 0}
    nodes: list[FiltrationNode] = [first]
    node_blocks: list[tuple[tuple[str, ...], ...]] = [start_blocks]
    node_layers: list[tuple[Multigraph, ...]] = [start_layers]
    covers: set[tuple[int, int, str]] = set()
    frontier = [0]
    while frontier:
        next_frontier: list[int] = []
        for idx in frontier:
            blocks = node_blocks[idx]
            layers = node_layers[idx]
            if len(blocks) == 1:
                continue
            for i, j in itertools.combinations(range(len(blocks)), 2):
                merged_block = tuple(sorted(blocks[i] + blocks[j]))
                new_blocks = tuple(
                    b for t, b in enumerate(blocks) if t not in (i, j)
                ) + (merged_block,)
                new_layers = tuple(
                    l for t, l in enumerate(layers) if t not in (i, j)
                ) + (merge(layers[i], layers[j]),)
                order = sorted(range(len(new_blocks)), key=lambda t: new_blocks[t])
                new_blocks = tuple(new_blocks[t] for t in order)
                new_layers = tuple(new_layers[t] for t in order)
                succ = node_from_blocks(new_blocks, new_layers)
                if succ.key in seen:
                    dst = seen[succ.key]
                else:
                    dst = len(nodes)
                    seen[succ.key] = dst
                    nodes.append(succ)
                    node_blocks.append(new_blocks)
                    node_layers.append(new_layers)
                    next_frontier.append(dst)
                # f label: position of the seam inside the successor's blocks
                q = new_blocks.index(merged_block)
                offset = sum(len(b) for b in new_blocks[:q])
                seam = offset + len(min(blocks[i], blocks[j]))
                covers.add((idx, dst, f"f{seam}"))
        frontier = next_frontier

    # re-sort nodes by (level, chain text) and remap cover indices
    order = sorted(range(len(nodes)), key=lambda i: (nodes[i].level, nodes[i].chain.text()))
    remap = {old: new for new, old in enumerate(order)}
    nodes_sorted = tuple(nodes[i] for i in order)
    covers_sorted = tuple(
        sorted((remap[s], remap[t], lab) for s, t, lab in covers)
    )
    return FiltrationPoset(
        k=k, start=x, nodes=nodes_sorted, covers=covers_sorted, env=env, policy=policy
    )


def level(p: FiltrationPoset, j: int) -> tuple[FiltrationNode, ...]:
    return p.level(j)


def betti_trace(p: FiltrationPoset, dim: int = 0) -> list[dict]:
    """Rows (delta, chain, level, beta_dim) over all nodes in delta order."""
    rows = []
    for delta, n in enumerate(p.nodes):
        beta = n.betti[dim] if dim < len(n.betti) else 0
        rows.append(
            {"delta": delta, "chain": n.chain.text(), "level": n.level, "beta": beta}
        )
    return rows


def trace_for_chains(
    p: FiltrationPoset, chains: Sequence[ChainExpr], dim: int = 0
) -> list[dict]:
    """Trace restricted to the nodes the given chains evaluate into; this
    is how a drawn sub-diagram (a union of covering chains) is read off."""
    picked = []
    seen_keys = set()
    for x in chains:
        n = p.node_for_chain(x)
        if n.key not in seen_keys:
            seen_keys.add(n.key)
            picked.append(n)
    picked.sort(key=lambda n: (n.level, n.chain.text()))
    rows = []
    for delta, n in enumerate(picked):
        beta = n.betti[dim] if dim < len(n.betti) else 0
        rows.append(
            {"delta": delta, "chain": n.chain.text(), "level": n.level, "beta": beta}
        )
    return rows


def level_profile(p: FiltrationPoset) -> dict:
    """Formula channel vs measured channel, per level and for the fold
    count.  The two disagree in general; both are reported, neither is
    adjusted."""
    k = p.k
    levels = []
    for j in range(k):
        measured = len(p.level(j))
        levels.append(
            {
                "level": j,
                "formula_size": math.comb(k, j + 1),
                "measured_size": measured,
            }
        )
    return {
        "levels": levels,
        "folds": {"formula": 2**k - k, "measured": len(p.nodes)},
    }


# -- enumeration ----------------------------------------------------------------


def enumerate_chains(
    atoms: Sequence[str], include_permutations: bool = False
) -> tuple[ChainExpr, ...]:
    """All chains over the atoms.

    Fixed order: the 2^(k-1) connective patterns.  With permutations:
    chains over every atom order, identified up to merge-commutativity
    (each merge block becomes a sorted group), i.e. ordered set
    partitions of the atoms — 13 of them for k = 3.
    """
    atoms = tuple(atoms)
    if not include_permutations:
        out = []
        for conns in itertools.product(
            (Connective.TENSOR, Connective.MERGE), repeat=len(atoms) - 1
        ):
            out.append(ChainExpr(atoms, conns))
        return tuple(out)
    seen: set[ChainExpr] = set()
    for perm in itertools.permutations(atoms):
        for conns in itertools.product(
            (Connective.TENSOR, Connective.MERGE), repeat=len(atoms) - 1
        ):
            x = ChainExpr(perm, conns)
            blocks = tuple(tuple(sorted(b)) for b in x.blocks())
            seen.add(_chain_of_blocks(blocks))
    return tuple(sorted(seen, key=lambda c: (merge_count(c), c.text())))


def prefix_leq(x: ChainExpr, y: ChainExpr) -> bool:
    """Mixed-length comparison: x embeds as a prefix of y and no prefix
    position downgrades a merge to a tensor."""
    if x.k > y.k:
        return False
    if x.atoms != y.atoms[: x.k]:
        return False
    return not any(
        a is Connective.MERGE and b is Connective.TENSOR
        for a, b in zip(x.connectives, y.connectives[: x.k - 1])
    )

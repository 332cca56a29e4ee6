"""GF(2) rank, boundary matrices, Betti numbers, component counts."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from multihom import (
    Gf2Basis,
    Multicomplex,
    Multigraph,
    betti,
    betti_of_cells,
    betti_sum,
    boundary_matrix,
    boundary_squares_to_zero,
    clique_multicomplex,
    connected_components,
    euler_characteristic,
    gf2_rank,
    tensor,
)
from multihom.randgen import random_multigraph

from conftest import PALETTE, multigraphs
from test_mcomplex import simple_triangle_cells

from oracles import components_union_find, euler_from_counts, rank_gf2_span


def G(nodes, rows, palette=PALETTE):
    return Multigraph.build(nodes, rows, palette)


def filled_triangle():
    return clique_multicomplex(
        G([1, 2, 3], [(1, 2, "red"), (1, 3, "red"), (2, 3, "red")])
    )


def hollow_square():
    return clique_multicomplex(
        G([1, 2, 3, 4], [(1, 2, "red"), (2, 4, "red"), (3, 4, "red"), (1, 3, "red")])
    )


def pillow():
    cells, coloring = simple_triangle_cells(copies_of_top=2)
    return Multicomplex.from_cells(("black",), cells, coloring)


# -- GF(2) rank ------------------------------------------------------------------


class TestRank:
    def test_identity_rank(self):
        assert gf2_rank([1 << i for i in range(5)]) == 5

    def test_dependent_columns(self):
        assert gf2_rank([0b011, 0b101, 0b110]) == 2  # third = xor of first two

    def test_zero_columns_ignored(self):
        assert gf2_rank([0, 0, 0b1]) == 1

    def test_empty(self):
        assert gf2_rank([]) == 0

    def test_basis_reports_membership(self):
        basis = Gf2Basis()
        assert basis.add(0b011)
        assert basis.add(0b101)
        assert not basis.add(0b110)  # already in the span
        assert basis.rank == 2
        assert basis.reduce(0b110) == 0

    @given(st.lists(st.integers(0, (1 << 10) - 1), max_size=10))
    def test_matches_span_oracle(self, columns):
        assert gf2_rank(columns) == rank_gf2_span(columns)


# -- boundary matrices ------------------------------------------------------------


class TestBoundaryMatrix:
    def test_triangle_d1(self):
        m = boundary_matrix(filled_triangle(), 1)
        assert m.shape == (3, 3)
        assert m.rank() == 2
        dense = m.dense()
        assert all(sum(row[j] for row in dense) == 2 for j in range(3))

    def test_pillow_d2_columns_equal(self):
        m = boundary_matrix(pillow(), 2)
        assert m.shape == (3, 2)
        assert m.columns[0] == m.columns[1]
        assert m.rank() == 1

    def test_dimension_above_complex_is_empty(self):
        m = boundary_matrix(filled_triangle(), 3)
        assert m.shape[1] == 0
        assert m.rank() == 0

    def test_rejects_dimension_zero(self):
        with pytest.raises(Exception):
            boundary_matrix(filled_triangle(), 0)


# -- Betti vectors -----------------------------------------------------------------


class TestBetti:
    def test_filled_triangle(self):
        assert betti(filled_triangle()) == (1, 0, 0)

    def test_hollow_triangle(self):
        # hollow = the three edges without the filling 2-cell; such a
        # complex is hand-assembled (a clique complex always fills it)
        cells, coloring = simple_triangle_cells(copies_of_top=0)
        x = Multicomplex.from_cells(("black",), cells, coloring)
        assert betti(x) == (1, 1)

    def test_hollow_square(self):
        assert betti(hollow_square()) == (1, 1)

    def test_two_disjoint_components(self):
        g = G([1, 2, 3, 4], [(1, 2, "red"), (3, 4, "red")])
        assert betti(clique_multicomplex(g))[0] == 2

    def test_two_independent_cycles_one_component(self):
        # two unfilled squares sharing the edge (2,5)
        rows = [
            (1, 2, "red"),
            (1, 4, "red"),
            (4, 5, "red"),
            (2, 5, "red"),
            (2, 3, "red"),
            (3, 6, "red"),
            (5, 6, "red"),
        ]
        x = clique_multicomplex(G([1, 2, 3, 4, 5, 6], rows))
        assert betti(x) == (1, 2)

    def test_pillow(self):
        assert betti(pillow()) == (1, 0, 1)

    def test_doubled_edge_is_a_one_hole(self):
        x = clique_multicomplex(G([1, 2], [(1, 2, "red", 2)]))
        assert betti(x) == (1, 1)

    def test_empty_complex(self):
        assert betti(Multicomplex.empty(PALETTE)) == ()

    def test_betti_of_cells_matches_complex(self):
        x = filled_triangle()
        assert betti_of_cells(x.all_cells()) == betti(x)

    def test_betti_sum_pads(self):
        assert betti_sum([(1, 0, 0), (1, 1)]) == (2, 1, 0)
        assert betti_sum([]) == ()


# -- global invariants ---------------------------------------------------------------


class TestInvariants:
    @given(multigraphs())
    def test_boundary_squares_to_zero(self, g):
        assert boundary_squares_to_zero(clique_multicomplex(g))

    @given(multigraphs())
    def test_euler_poincare(self, g):
        x = clique_multicomplex(g)
        counts = [x.cell_count(d) for d in range(x.dimension + 1)]
        beta = betti(x)
        assert euler_characteristic(x) == euler_from_counts(counts)
        assert euler_from_counts(counts) == sum(
            (-1) ** d * b for d, b in enumerate(beta)
        )

    @given(multigraphs())
    def test_beta0_equals_components(self, g):
        x = clique_multicomplex(g)
        expected = components_union_find(g.nodes, g.pairs())
        assert connected_components(g) == expected
        if expected:
            assert betti(x)[0] == expected

    def test_components_of_multilayer_add(self):
        a = G([1, 2], [(1, 2, "red")])
        b = G([1, 2, 3], [(1, 2, "red")])
        assert connected_components(tensor(a, b)) == 1 + 2

    def test_components_of_empty(self):
        assert connected_components(Multigraph.empty(PALETTE)) == 0

    def test_adding_one_cell_moves_one_betti_entry(self):
        # replay a complex cell by cell; each step must either raise
        # beta_d by one or lower beta_{d-1} by one
        rng = random.Random(5)
        for _ in range(10):
            g = random_multigraph(rng, max_nodes=6, max_mult=2, palette=PALETTE)
            x = clique_multicomplex(g)
            cells = sorted(x.all_cells(), key=lambda c: (c.dim, c.vertices, c.copy))
            pad = x.dimension + 1
            prev = (0,) * pad
            for i in range(1, len(cells) + 1):
                beta = betti_of_cells(cells[:i])
                beta = tuple(beta) + (0,) * (pad - len(beta))
                d = cells[i - 1].dim
                diff = [beta[j] - prev[j] for j in range(pad)]
                expected_up = [0] * pad
                expected_up[d] = 1
                expected_down = [0] * pad
                if d > 0:
                    expected_down[d - 1] = -1
                assert diff in (expected_up, expected_down)
                prev = beta

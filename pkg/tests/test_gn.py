from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from scipy.optimize import Bounds, LinearConstraint, milp

from totdom.errors import TooLargeError
from totdom.families import in_F1
from totdom.gn import (
    EXACT_KN_CAP,
    build_gn,
    gn_bounds_check,
    gn_product_is_td,
    gn_product_tdset,
    gn_quotient_check,
)
from totdom.graph import Graph, cartesian_product, complete_graph, induced_subgraph, is_isomorphic, path_graph
from totdom.solvers import gamma, gamma_t, gamma_t_value


def milp_gamma_t(G: Graph) -> int:
    """Independent integer program: min sum x subject to sum over N(v) of x >= 1."""
    A = np.zeros((G.n, G.n))
    for v in range(G.n):
        for u in range(G.n):
            if G.adj[v] >> u & 1:
                A[v, u] = 1
    res = milp(np.ones(G.n), constraints=LinearConstraint(A, lb=1), integrality=np.ones(G.n),
               bounds=Bounds(0, 1))
    assert res.success
    return round(res.fun)


class TestBuild:
    def test_labels_and_shape(self):
        g = build_gn(3)
        assert g.graph.n == 9 and g.graph.num_edges() == 9
        assert (g.a(1), g.b(1), g.c(1)) == (0, 3, 6)
        sub, _ = induced_subgraph(g.graph, [g.a(i) for i in (1, 2, 3)])
        assert sub == complete_graph(3)
        for i in (1, 2, 3):
            assert g.graph.degree(g.c(i)) == 1
            assert g.graph.adj[g.b(i)] == (1 << g.a(i)) | (1 << g.c(i))

    def test_g2_is_p6(self):
        assert is_isomorphic(build_gn(2).graph, path_graph(6))

    def test_bad_n(self):
        with pytest.raises(ValueError):
            build_gn(0)

    def test_invariants(self):
        for n in range(1, 7):
            G = build_gn(n).graph
            assert gamma_t(G).value == 2 * n
            assert gamma(G).value == n
            if n >= 2:
                assert in_F1(G) is not None


class TestConstruction:
    def test_sizes(self):
        assert len(gn_product_tdset(2, 2)) == 12
        assert len(gn_product_tdset(2, 3)) == 16
        assert len(gn_product_tdset(3, 3)) == 24

    def test_total_dominating_up_to_five(self):
        for n in range(2, 6):
            for k in range(2, n + 1):
                assert len(gn_product_tdset(k, n)) == 2 * k * n + 2 * k
                assert gn_product_is_td(k, n)

    def test_order(self):
        with pytest.raises(ValueError):
            gn_product_tdset(3, 2)
        with pytest.raises(ValueError):
            gn_product_tdset(1, 2)


class TestExact:
    # exact values from the branch-and-bound solver, agreed by the MILP below
    EXACT = {(2, 2): 12, (2, 3): 16}

    def test_dual_solver_agreement(self):
        for (k, n), value in self.EXACT.items():
            P = cartesian_product(build_gn(k).graph, build_gn(n).graph).product
            assert milp_gamma_t(P) == value
            assert gamma_t_value(P) == value

    def test_bounds(self):
        b = gn_bounds_check(2, 2)
        assert (b.lower, b.exact, b.upper) == (10, 12, 12) and b.holds
        b = gn_bounds_check(2, 3)
        assert (b.lower, b.exact, b.upper) == (14, 16, 16) and b.holds

    def test_quotient(self):
        q = gn_quotient_check(2, 2)
        assert (q.lower, q.upper) == (Fraction(5, 8), Fraction(3, 4))
        assert q.qt == Fraction(3, 4) and q.holds
        q = gn_quotient_check(2, 3)
        assert (q.lower, q.upper) == (Fraction(7, 12), Fraction(2, 3))
        assert q.qt == Fraction(2, 3) and q.holds

    def test_trend(self):
        qs = [gn_quotient_check(2, n).qt for n in (2, 3)]
        assert qs[0] > qs[1] > Fraction(1, 2)

    def test_guard(self):
        assert EXACT_KN_CAP == 16
        with pytest.raises(TooLargeError):
            gn_bounds_check(4, 5)

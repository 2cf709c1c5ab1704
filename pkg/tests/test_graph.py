from __future__ import annotations

import itertools

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from totdom.gn import build_gn
from totdom.graph import (
    Graph,
    VertexSet,
    canonical_form,
    cartesian_product,
    closed_neighborhood,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    g_fiber,
    h_fiber,
    has_isolated_vertex,
    induced_subgraph,
    is_connected,
    is_dominating,
    is_isomorphic,
    is_total_dominating,
    k_copies_K2,
    neighborhood,
    path_graph,
    private_neighbors,
    project_G,
    project_H,
    set_neighborhood,
)
from totdom.corpus import enumerate_connected

from conftest import to_nx

K2, P3, P4, K3, C6 = path_graph(2), path_graph(3), path_graph(4), complete_graph(3), cycle_graph(6)


@st.composite
def graphs(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return Graph(n, chosen)


def vs(n, *xs):
    return VertexSet.of(n, xs)


class TestGraphType:
    def test_rejects_loops_and_bad_vertices(self):
        with pytest.raises(ValueError):
            Graph(3, [(1, 1)])
        with pytest.raises(ValueError):
            Graph(3, [(0, 3)])
        with pytest.raises(ValueError):
            Graph(0)

    def test_from_masks_checks_symmetry(self):
        with pytest.raises(ValueError):
            Graph.from_masks([0b10, 0b00])

    def test_vertexset_range(self):
        with pytest.raises(ValueError):
            VertexSet.of(3, [3])

    def test_vertexset_algebra(self):
        a, b = vs(5, 0, 1, 2), vs(5, 2, 3)
        assert (a | b).to_list() == [0, 1, 2, 3]
        assert (a & b).to_list() == [2]
        assert (a - b).to_list() == [0, 1]
        assert a.complement().to_list() == [3, 4]
        assert vs(5, 2) <= a and not b <= a


class TestNeighborhoods:
    def test_examples(self):
        assert neighborhood(K2, 0) == vs(2, 1)
        assert neighborhood(P3, 1) == vs(3, 0, 2)
        g3 = build_gn(3)
        assert neighborhood(g3.graph, g3.b(1)) == vs(9, g3.a(1), g3.c(1))

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            neighborhood(P3, 3)
        with pytest.raises(IndexError):
            closed_neighborhood(P3, -1)

    def test_set_neighborhood(self):
        assert set_neighborhood(P3, vs(3, 1)) == vs(3, 0, 2)
        assert set_neighborhood(P3, vs(3, 0, 2)) == vs(3, 1)
        assert set_neighborhood(C6, vs(6, 0, 1, 3, 4)) == VertexSet.full(6)

    def test_closed(self):
        assert closed_neighborhood(K2, 0) == vs(2, 0, 1)
        assert closed_neighborhood(P3, 1) == vs(3, 0, 1, 2)
        assert closed_neighborhood(C6, 2) == vs(6, 1, 2, 3)

    @given(graphs(), st.integers(0, 255))
    def test_set_neighborhood_is_union(self, G, bits):
        X = VertexSet(G.n, bits & G.full_mask)
        expect = VertexSet(G.n)
        for v in X:
            expect = expect | neighborhood(G, v)
        assert set_neighborhood(G, X) == expect


class TestInduced:
    def test_examples(self):
        sub, old = induced_subgraph(P3, vs(3, 0, 2))
        assert sub.n == 2 and sub.num_edges() == 0 and old == [0, 2]
        sub, _ = induced_subgraph(C6, vs(6, 0, 1, 2))
        assert sub == P3
        g3 = build_gn(3)
        sub, _ = induced_subgraph(g3.graph, [g3.a(i) for i in (1, 2, 3)])
        assert sub == K3

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            induced_subgraph(P3, vs(3))


class TestProduct:
    def test_small_products(self):
        P = cartesian_product(K2, K2)
        assert P.product.n == 4 and P.product.num_edges() == 4
        assert is_isomorphic(P.product, cycle_graph(4))
        prism = cartesian_product(K2, K3).product
        assert (prism.n, prism.num_edges()) == (6, 9)
        big = cartesian_product(path_graph(6), path_graph(6)).product
        assert (big.n, big.num_edges()) == (36, 60)

    def test_indexing(self):
        P = cartesian_product(P3, K3)
        assert P.index(2, 1) == 7 and P.coords(7) == (2, 1)
        with pytest.raises(IndexError):
            P.index(3, 0)

    @given(graphs(max_n=5), graphs(max_n=5))
    @settings(max_examples=60)
    def test_adjacency_invariant(self, G, H):
        P = cartesian_product(G, H)
        assert P.product.num_edges() == G.n * H.num_edges() + H.n * G.num_edges()
        for (g1, h1), (g2, h2) in itertools.combinations(itertools.product(range(G.n), range(H.n)), 2):
            expect = (g1 == g2 and H.has_edge(h1, h2)) or (h1 == h2 and G.has_edge(g1, g2))
            assert P.product.has_edge(P.index(g1, h1), P.index(g2, h2)) == expect

    def test_matches_networkx(self):
        G, H = build_gn(2).graph, C6
        P = cartesian_product(G, H)
        ref = nx.cartesian_product(to_nx(G), to_nx(H))
        relabeled = nx.relabel_nodes(ref, {(g, h): P.index(g, h) for g, h in ref.nodes})
        assert sorted(tuple(sorted(e)) for e in relabeled.edges) == sorted(P.product.edges())

    def test_commutes_up_to_isomorphism(self):
        small = [g for n in range(1, 5) for g in enumerate_connected(n)]
        for G, H in itertools.combinations_with_replacement(small, 2):
            assert is_isomorphic(cartesian_product(G, H).product, cartesian_product(H, G).product)

    @given(graphs(max_n=5), graphs(max_n=5))
    @settings(max_examples=30)
    def test_commutes_random(self, G, H):
        assert is_isomorphic(cartesian_product(G, H).product, cartesian_product(H, G).product)


class TestFibers:
    def test_examples(self):
        P = cartesian_product(K2, K2)
        assert P.pairs(g_fiber(P, 0)) == [(0, 0), (1, 0)]
        assert P.pairs(h_fiber(P, 1)) == [(1, 0), (1, 1)]
        assert project_G(P, P.vertex_set([(0, 0), (0, 1)])) == vs(2, 0)
        assert project_G(P, VertexSet(4)) == VertexSet(2)

    @given(graphs(max_n=5), graphs(max_n=5), st.data())
    @settings(max_examples=50)
    def test_projection_of_fibers(self, G, H, data):
        P = cartesian_product(G, H)
        h = data.draw(st.integers(0, H.n - 1))
        g = data.draw(st.integers(0, G.n - 1))
        assert project_G(P, g_fiber(P, h)) == VertexSet.full(G.n)
        assert project_H(P, h_fiber(P, g)) == VertexSet.full(H.n)
        assert project_H(P, g_fiber(P, h)) == vs(H.n, h)


class TestDomination:
    def test_examples(self):
        assert is_dominating(P3, vs(3, 1)) and not is_total_dominating(P3, vs(3, 1))
        assert is_total_dominating(P4, vs(4, 1, 2))
        assert is_total_dominating(C6, vs(6, 0, 1, 3, 4))

    @given(graphs(), st.integers(0, 255))
    def test_total_implies_dominating(self, G, bits):
        S = VertexSet(G.n, bits & G.full_mask)
        if is_total_dominating(G, S):
            assert is_dominating(G, S)


class TestPrivateNeighbors:
    def test_examples(self):
        # vertex 2 is in X yet its only X-neighbor is 1, so it counts too
        assert private_neighbors(P4, 1, vs(4, 1, 2)) == vs(4, 0, 2)
        assert private_neighbors(P4, 2, vs(4, 1, 2)) == vs(4, 1, 3)
        # 2 sees both members; 1 sees only 0
        assert private_neighbors(K3, 0, vs(3, 0, 1)) == vs(3, 1)
        assert private_neighbors(K3, 0, vs(3, 0, 1, 2)) == VertexSet(3)
        matching = Graph(4, [(0, 1), (2, 3)])
        assert private_neighbors(matching, 0, VertexSet.full(4)) == vs(4, 1)
        # same graph under the i ~ i+k labels
        assert private_neighbors(k_copies_K2(2), 0, VertexSet.full(4)) == vs(4, 2)

    def test_requires_member(self):
        with pytest.raises(ValueError):
            private_neighbors(P4, 0, vs(4, 1, 2))

    @given(graphs(), st.integers(1, 255))
    def test_partition(self, G, bits):
        X = VertexSet(G.n, bits & G.full_mask)
        seen = VertexSet(G.n)
        for u in X:
            pn = private_neighbors(G, u, X)
            assert not (pn & seen)
            for w in pn:
                assert neighborhood(G, w) & X == vs(G.n, u)
            seen = seen | pn


class TestUnions:
    def test_kK2(self):
        assert k_copies_K2(1) == K2
        two = k_copies_K2(2)
        assert two.edges() == [(0, 2), (1, 3)]
        assert k_copies_K2(3).edges() == [(0, 3), (1, 4), (2, 5)]
        with pytest.raises(ValueError):
            k_copies_K2(0)

    def test_disjoint_union(self):
        U = disjoint_union(K2, C6)
        assert U.n == 8 and U.num_edges() == 7 and U.has_edge(0, 1) and U.has_edge(2, 7)

    def test_connectivity(self):
        assert is_connected(K2) and not has_isolated_vertex(K2)
        assert not is_connected(k_copies_K2(2))
        assert has_isolated_vertex(Graph(1)) and has_isolated_vertex(empty_graph(3))


class TestIsomorphism:
    def test_examples(self):
        assert is_isomorphic(build_gn(2).graph, path_graph(6))
        assert not is_isomorphic(K3, P3)
        assert is_isomorphic(cycle_graph(4), cartesian_product(K2, K2).product)

    @given(graphs(max_n=7), st.randoms(use_true_random=False))
    @settings(max_examples=80)
    def test_invariant_under_relabeling(self, G, r):
        perm = list(range(G.n))
        r.shuffle(perm)
        H = Graph(G.n, [(perm[u], perm[v]) for u, v in G.edges()])
        assert canonical_form(G) == canonical_form(H)

    @given(graphs(max_n=6), graphs(max_n=6))
    @settings(max_examples=150)
    def test_agrees_with_networkx(self, G, H):
        assert is_isomorphic(G, H) == nx.is_isomorphic(to_nx(G), to_nx(H))

    def test_structured_products(self):
        a = cartesian_product(complete_graph(5), complete_graph(5)).product
        b = Graph(a.n, [(v, u) for u, v in reversed(a.edges())])
        assert is_isomorphic(a, b)

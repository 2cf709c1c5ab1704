from __future__ import annotations

import io

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from totdom.corpus import (
    GraphRecord,
    connected_corpus,
    enumerate_connected,
    filter_stream,
    parse_graph6,
    read_graph6,
    write_graph6,
)
from totdom.errors import BadCharError, BadLengthError, Graph6Error, TooLargeError, UnsupportedSizeError
from totdom.graph import Graph, canonical_form, complete_graph, empty_graph, is_connected, path_graph

from conftest import to_nx
from test_graph import graphs


def nx_g6(G: Graph) -> str:
    return nx.to_graph6_bytes(to_nx(G), header=False).decode().strip()


class TestGraph6:
    def test_examples(self):
        assert parse_graph6("A_") == path_graph(2)
        assert parse_graph6("@") == Graph(1)
        assert write_graph6(Graph(1)) == "@"
        assert write_graph6(path_graph(2)) == "A_"
        assert write_graph6(empty_graph(2)) == "A?"

    def test_header_skipped(self):
        assert parse_graph6(">>graph6<<A_") == path_graph(2)

    @given(graphs(max_n=20))
    def test_round_trip(self, G):
        assert parse_graph6(write_graph6(G)) == G

    @given(graphs(max_n=20))
    def test_matches_networkx_encoder(self, G):
        assert write_graph6(G) == nx_g6(G)

    def test_errors(self):
        with pytest.raises(BadCharError):
            parse_graph6("A\x7f")
        with pytest.raises(BadLengthError):
            parse_graph6("A")
        with pytest.raises(BadLengthError):
            parse_graph6("A__")
        with pytest.raises(BadLengthError):
            parse_graph6("A`")  # padding bit set
        with pytest.raises(BadLengthError):
            parse_graph6("")
        with pytest.raises(UnsupportedSizeError):
            parse_graph6("~?A?")
        with pytest.raises(UnsupportedSizeError):
            write_graph6(Graph(63))
        assert issubclass(BadCharError, Graph6Error)

    def test_max_size(self):
        G = path_graph(62)
        assert parse_graph6(write_graph6(G)) == G


class TestReadGraph6:
    def test_stream(self):
        src = io.StringIO(">>graph6<<A_\n\nBw\n")
        recs = list(read_graph6(src))
        assert [r.g6 for r in recs] == ["A_", "Bw"]
        assert recs[1].source == "<stream>:3"

    def test_line_numbers_in_errors(self, tmp_path):
        p = tmp_path / "bad.g6"
        p.write_text("A_\nA\n")
        with pytest.raises(BadLengthError, match=r"bad.g6:2"):
            list(read_graph6(p))

    def test_empty_file(self, tmp_path):
        p = tmp_path / "empty.g6"
        p.write_text("")
        assert list(filter_stream(read_graph6(p), ["connected"])) == []


class TestEnumeration:
    def test_counts(self):
        assert [len(enumerate_connected(n)) for n in range(1, 7)] == [1, 1, 2, 6, 21, 112]

    def test_small_classes(self):
        assert {canonical_form(g) for g in enumerate_connected(3)} == {canonical_form(path_graph(3)),
                                                                       canonical_form(complete_graph(3))}

    def test_matches_atlas(self):
        # the networkx atlas lists every graph on at most 7 vertices
        for n in range(1, 7):
            atlas = {nx_g6(_from_nx(g)) for g in nx.graph_atlas_g() if g.number_of_nodes() == n
                     and nx.is_connected(g)}
            ours = enumerate_connected(n)
            assert len(ours) == len(atlas)
            keys = {canonical_form(g) for g in ours}
            assert {canonical_form(parse_graph6(s)) for s in atlas} == keys

    def test_no_duplicates_and_connected(self):
        graphs6 = enumerate_connected(6)
        assert len({canonical_form(g) for g in graphs6}) == len(graphs6)
        assert all(is_connected(g) for g in graphs6)

    def test_deterministic(self):
        assert [write_graph6(g) for g in enumerate_connected(5)] == [write_graph6(g) for g in enumerate_connected(5)]

    def test_guards(self):
        with pytest.raises(TooLargeError):
            enumerate_connected(8)
        with pytest.raises(ValueError):
            enumerate_connected(0)

    def test_corpus_sorted(self):
        recs = connected_corpus(4)
        assert [r.g6 for r in recs] == sorted(r.g6 for r in recs)
        assert len(recs) == 1 + 2 + 6


def _from_nx(g: nx.Graph) -> Graph:
    return Graph(g.number_of_nodes(), list(g.edges()))


class TestFilter:
    def test_predicates(self):
        recs = [GraphRecord(g, write_graph6(g), "t") for g in (Graph(1), path_graph(2), empty_graph(3),
                                                               path_graph(4))]
        assert [r.g6 for r in filter_stream(recs, ["nontrivial"])] == ["A_", "B?", "Ch"]
        assert [r.g6 for r in filter_stream(recs, ["no-isolated-vertices"])] == ["A_", "Ch"]
        assert [r.g6 for r in filter_stream(recs, ["connected", "gamma_t=2"])] == ["A_", "Ch"]
        assert [r.g6 for r in filter_stream(recs, [lambda g: g.n == 3])] == ["B?"]

    def test_gamma_t_two_subset(self):
        kept = list(filter_stream(connected_corpus(6, min_n=6), ["gamma_t=2"]))
        # gamma_t = 2 means two adjacent vertices dominate everything
        from totdom.solvers import gamma_t_naive
        assert all(gamma_t_naive(r.graph).value == 2 for r in kept)
        assert 0 < len(kept) < 112

    def test_lazy(self):
        def source():
            yield GraphRecord(path_graph(2), "A_", "t")
            raise RuntimeError("consumed too far")

        it = filter_stream(source(), ["connected"])
        assert next(it).g6 == "A_"

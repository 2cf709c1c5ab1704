"""graph6 encoding and small connected-graph enumeration."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Iterator, TextIO

from .errors import BadCharError, BadLengthError, TooLargeError, UnsupportedSizeError, Graph6Error
from .graph import Graph, canonical_form, canonical_relabel, has_isolated_vertex, is_connected

log = logging.getLogger(__name__)

HEADER = ">>graph6<<"
MAX_G6_N = 62
MAX_ENUM_N = 7


@dataclass(frozen=True)
class GraphRecord:
    graph: Graph
    g6: str
    source: str


def _upper_bits(n: int) -> Iterator[tuple[int, int]]:
    # column-major upper triangle: x(0,1), x(0,2), x(1,2), x(0,3), ...
    for j in range(1, n):
        for i in range(j):
            yield i, j


def parse_graph6(line: str) -> Graph:
    s = line.strip()
    if s.startswith(HEADER):
        s = s[len(HEADER):]
    if not s:
        raise BadLengthError("empty graph6 line")
    for ch in s:
        if not 63 <= ord(ch) <= 126:
            raise BadCharError(f"byte {ord(ch)} outside 63..126")
    n = ord(s[0]) - 63
    if n > MAX_G6_N:
        raise UnsupportedSizeError("multi-byte graph6 sizes are not supported")
    if n == 0:
        raise BadLengthError("graph6 line encodes zero vertices")
    nbits = n * (n - 1) // 2
    expected = (nbits + 5) // 6
    body = s[1:]
    if len(body) != expected:
        raise BadLengthError(f"expected {expected} data bytes for n={n}, got {len(body)}")
    bits = 0
    for ch in body:
        bits = bits << 6 | (ord(ch) - 63)
    pad = expected * 6 - nbits
    if bits & ((1 << pad) - 1):
        raise BadLengthError("nonzero padding bits")
    bits >>= pad
    edges = []
    for k, (i, j) in enumerate(_upper_bits(n)):
        if bits >> (nbits - 1 - k) & 1:
            edges.append((i, j))
    return Graph(n, edges)


def write_graph6(G: Graph) -> str:
    n = G.n
    if n > MAX_G6_N:
        raise UnsupportedSizeError("multi-byte graph6 sizes are not supported")
    out = [chr(n + 63)]
    acc = nacc = 0
    for i, j in _upper_bits(n):
        acc = acc << 1 | (G.adj[j] >> i & 1)
        nacc += 1
        if nacc == 6:
            out.append(chr(acc + 63))
            acc = nacc = 0
    if nacc:
        out.append(chr((acc << (6 - nacc)) + 63))
    return "".join(out)


def read_graph6(source: str | Path | TextIO) -> Iterator[GraphRecord]:
    """Stream records from a graph6 file; blank lines and the header are skipped."""
    if isinstance(source, (str, Path)):
        with open(source, encoding="ascii") as fh:
            yield from read_graph6(fh)
        return
    name = getattr(source, "name", "<stream>")
    for lineno, raw in enumerate(source, 1):
        line = raw.strip()
        if line.startswith(HEADER):
            line = line[len(HEADER):]
        if not line:
            continue
        try:
            g = parse_graph6(line)
        except Graph6Error as exc:
            raise type(exc)(f"{name}:{lineno}: {exc}") from exc
        yield GraphRecord(g, line, f"{name}:{lineno}")


def enumerate_connected(n: int) -> list[Graph]:
    """One canonical representative per class of connected ``n``-vertex graphs.

    Built by attaching a new vertex to every nonempty subset of each class on
    ``n - 1`` vertices; every connected graph has a non-cut vertex, so nothing
    is missed.  Output is sorted by canonical code.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n > MAX_ENUM_N:
        raise TooLargeError(f"enumeration limited to n <= {MAX_ENUM_N}; ingest a corpus instead")
    layer = {canonical_form(Graph(1)): Graph(1)}
    for m in range(2, n + 1):
        nxt: dict[tuple[int, int], Graph] = {}
        for g in layer.values():
            for attach in range(1, 1 << (m - 1)):
                masks = list(g.adj)
                for v in range(m - 1):
                    if attach >> v & 1:
                        masks[v] |= 1 << (m - 1)
                masks.append(attach)
                h = Graph.from_masks(masks)
                key = canonical_form(h)
                if key not in nxt:
                    nxt[key] = h
        layer = nxt
        log.debug("n=%d: %d classes", m, len(layer))
    return [canonical_relabel(layer[key]) for key in sorted(layer)]


def connected_corpus(max_n: int, min_n: int = 2) -> list[GraphRecord]:
    """Connected graphs with ``min_n..max_n`` vertices, sorted by graph6 string."""
    recs = [
        GraphRecord(g, write_graph6(g), "enumerated")
        for n in range(min_n, max_n + 1)
        for g in enumerate_connected(n)
    ]
    return sorted(recs, key=lambda r: r.g6)


def _gamma_t_equals(c: int) -> Callable[[Graph], bool]:
    from .solvers import gamma_t_value

    return lambda g: not has_isolated_vertex(g) and gamma_t_value(g) == c


PREDICATES: dict[str, Callable[[Graph], bool]] = {
    "connected": is_connected,
    "no-isolated-vertices": lambda g: not has_isolated_vertex(g),
    "nontrivial": lambda g: g.n >= 2,
}


def predicate(name: str) -> Callable[[Graph], bool]:
    """Look up a named filter; ``gamma_t=C`` selects total domination number C."""
    if name.startswith("gamma_t="):
        return _gamma_t_equals(int(name.split("=", 1)[1]))
    return PREDICATES[name]


def filter_stream(
    source: Iterable[GraphRecord],
    predicates: Iterable[str | Callable[[Graph], bool]],
) -> Iterator[GraphRecord]:
    """Lazily keep records satisfying every predicate, in input order."""
    preds = [predicate(p) if isinstance(p, str) else p for p in predicates]
    for rec in source:
        if all(p(rec.graph) for p in preds):
            yield rec

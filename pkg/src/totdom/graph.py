"""Simple undirected graphs on vertices 0..n-1, stored as neighbor bitmasks.

Vertex sets are Python ints used as bit vectors (bit ``v`` set means vertex
``v`` is a member).  :class:`VertexSet` pairs such a mask with the host
vertex count for the public API; hot loops work on the raw masks.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Graph",
    "VertexSet",
    "ProductGraph",
    "iter_bits",
    "mask_of",
    "neighborhood",
    "set_neighborhood",
    "closed_neighborhood",
    "induced_subgraph",
    "cartesian_product",
    "g_fiber",
    "h_fiber",
    "project_G",
    "project_H",
    "is_dominating",
    "is_total_dominating",
    "private_neighbors",
    "disjoint_union",
    "k_copies_K2",
    "is_connected",
    "has_isolated_vertex",
    "components",
    "canonical_form",
    "canonical_relabel",
    "is_isomorphic",
    "complete_graph",
    "path_graph",
    "cycle_graph",
    "empty_graph",
]


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class VertexSet:
    """Immutable subset of the vertices of a graph with ``n`` vertices."""

    __slots__ = ("n", "mask")

    def __init__(self, n: int, mask: int = 0):
        if mask < 0 or mask >> n:
            raise ValueError(f"mask {mask:#x} has members outside 0..{n - 1}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "mask", mask)

    def __setattr__(self, name, value):
        raise AttributeError("VertexSet is immutable")

    @classmethod
    def of(cls, n: int, vertices: Iterable[int]) -> VertexSet:
        vs = list(vertices)
        for v in vs:
            if not 0 <= v < n:
                raise ValueError(f"vertex {v} out of range for n={n}")
        return cls(n, mask_of(vs))

    @classmethod
    def full(cls, n: int) -> VertexSet:
        return cls(n, (1 << n) - 1)

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def __contains__(self, v: object) -> bool:
        return isinstance(v, int) and 0 <= v < self.n and bool(self.mask >> v & 1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VertexSet):
            return NotImplemented
        return self.n == other.n and self.mask == other.mask

    def __hash__(self) -> int:
        return hash((self.n, self.mask))

    def _check(self, other: VertexSet) -> None:
        if self.n != other.n:
            raise ValueError("vertex sets belong to graphs of different order")

    def __or__(self, other: VertexSet) -> VertexSet:
        self._check(other)
        return VertexSet(self.n, self.mask | other.mask)

    def __and__(self, other: VertexSet) -> VertexSet:
        self._check(other)
        return VertexSet(self.n, self.mask & other.mask)

    def __sub__(self, other: VertexSet) -> VertexSet:
        self._check(other)
        return VertexSet(self.n, self.mask & ~other.mask)

    def __le__(self, other: VertexSet) -> bool:
        self._check(other)
        return self.mask & ~other.mask == 0

    def complement(self) -> VertexSet:
        return VertexSet(self.n, ((1 << self.n) - 1) & ~self.mask)

    def to_list(self) -> list[int]:
        return list(iter_bits(self.mask))

    def __repr__(self) -> str:
        return f"VertexSet({self.n}, {{{', '.join(map(str, self))}}})"


class Graph:
    """Finite simple undirected graph; ``adj[v]`` is the neighbor mask of ``v``."""

    __slots__ = ("n", "adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 1:
            raise ValueError("a graph needs at least one vertex")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "adj", tuple(adj))

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    @classmethod
    def from_masks(cls, masks: Sequence[int]) -> Graph:
        n = len(masks)
        full = (1 << n) - 1
        for v, m in enumerate(masks):
            if m & ~full or m >> v & 1:
                raise ValueError(f"bad neighbor mask for vertex {v}")
            for u in iter_bits(m):
                if not masks[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")
        g = cls(n)
        object.__setattr__(g, "adj", tuple(masks))
        return g

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def vertices(self) -> VertexSet:
        return VertexSet.full(self.n)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for v in range(self.n) for u in iter_bits(self.adj[v] & ((1 << v) - 1))]

    def num_edges(self) -> int:
        return sum(m.bit_count() for m in self.adj) // 2

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.adj == other.adj

    def __hash__(self) -> int:
        return hash(self.adj)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


@dataclass(frozen=True)
class ProductGraph:
    """Cartesian product with the fixed indexing ``(g, h) -> g * |V(H)| + h``."""

    product: Graph
    factor_g: Graph
    factor_h: Graph

    def index(self, g: int, h: int) -> int:
        if not (0 <= g < self.factor_g.n and 0 <= h < self.factor_h.n):
            raise IndexError(f"({g}, {h}) out of range")
        return g * self.factor_h.n + h

    def coords(self, i: int) -> tuple[int, int]:
        return divmod(i, self.factor_h.n)

    def vertex_set(self, pairs: Iterable[tuple[int, int]]) -> VertexSet:
        return VertexSet(self.product.n, mask_of(self.index(g, h) for g, h in pairs))

    def pairs(self, s: VertexSet | int) -> list[tuple[int, int]]:
        m = s.mask if isinstance(s, VertexSet) else s
        return [self.coords(i) for i in iter_bits(m)]


def _as_mask(G: Graph, S: VertexSet | Iterable[int]) -> int:
    if isinstance(S, VertexSet):
        if S.n != G.n:
            raise ValueError("vertex set does not belong to this graph")
        return S.mask
    return VertexSet.of(G.n, S).mask


def _check_vertex(G: Graph, v: int) -> None:
    if not 0 <= v < G.n:
        raise IndexError(f"vertex {v} out of range for n={G.n}")


def neighborhood(G: Graph, v: int) -> VertexSet:
    _check_vertex(G, v)
    return VertexSet(G.n, G.adj[v])


def closed_neighborhood(G: Graph, v: int) -> VertexSet:
    _check_vertex(G, v)
    return VertexSet(G.n, G.adj[v] | 1 << v)


def nbhd_mask(G: Graph, X: int) -> int:
    out = 0
    adj = G.adj
    while X:
        low = X & -X
        out |= adj[low.bit_length() - 1]
        X ^= low
    return out


def set_neighborhood(G: Graph, X: VertexSet | Iterable[int]) -> VertexSet:
    """Union of the open neighborhoods of the members of ``X``."""
    return VertexSet(G.n, nbhd_mask(G, _as_mask(G, X)))


def induced_subgraph(G: Graph, X: VertexSet | Iterable[int]) -> tuple[Graph, list[int]]:
    """Return ``G[X]`` relabeled 0..|X|-1 in increasing order, and the new->old map."""
    m = _as_mask(G, X)
    if not m:
        raise ValueError("induced subgraph of the empty set")
    old = list(iter_bits(m))
    pos = {v: i for i, v in enumerate(old)}
    masks = [mask_of(pos[u] for u in iter_bits(G.adj[v] & m)) for v in old]
    return Graph.from_masks(masks), old


def cartesian_product(G: Graph, H: Graph) -> ProductGraph:
    ng, nh = G.n, H.n
    # spread[g] has bit g' * nh set for every neighbor g' of g
    spread = [sum(1 << (u * nh) for u in iter_bits(G.adj[g])) for g in range(ng)]
    masks = []
    for g in range(ng):
        base = g * nh
        for h in range(nh):
            masks.append((H.adj[h] << base) | (spread[g] << h))
    P = Graph(ng * nh)
    object.__setattr__(P, "adj", tuple(masks))
    return ProductGraph(P, G, H)


def g_fiber(P: ProductGraph, h: int) -> VertexSet:
    """The G-fiber at ``h``: all vertices ``(g, h)``."""
    nh = P.factor_h.n
    if not 0 <= h < nh:
        raise IndexError(f"vertex {h} out of range for H")
    return VertexSet(P.product.n, sum(1 << (g * nh + h) for g in range(P.factor_g.n)))


def h_fiber(P: ProductGraph, g: int) -> VertexSet:
    """The H-fiber at ``g``: all vertices ``(g, h)``."""
    nh = P.factor_h.n
    if not 0 <= g < P.factor_g.n:
        raise IndexError(f"vertex {g} out of range for G")
    return VertexSet(P.product.n, ((1 << nh) - 1) << (g * nh))


def project_G(P: ProductGraph, S: VertexSet | Iterable[int]) -> VertexSet:
    m = _as_mask(P.product, S)
    nh = P.factor_h.n
    block = (1 << nh) - 1
    out = 0
    for g in range(P.factor_g.n):
        if m >> (g * nh) & block:
            out |= 1 << g
    return VertexSet(P.factor_g.n, out)


def project_H(P: ProductGraph, S: VertexSet | Iterable[int]) -> VertexSet:
    m = _as_mask(P.product, S)
    nh = P.factor_h.n
    out = 0
    for g in range(P.factor_g.n):
        out |= m >> (g * nh) & ((1 << nh) - 1)
    return VertexSet(nh, out)


def is_dominating(G: Graph, S: VertexSet | Iterable[int]) -> bool:
    m = _as_mask(G, S)
    return (m | nbhd_mask(G, m)) == G.full_mask


def is_total_dominating(G: Graph, S: VertexSet | Iterable[int]) -> bool:
    return nbhd_mask(G, _as_mask(G, S)) == G.full_mask


def private_neighbors(G: Graph, u: int, X: VertexSet | Iterable[int]) -> VertexSet:
    """Vertices ``w`` with ``N(w) & X == {u}``."""
    m = _as_mask(G, X)
    if not m >> u & 1:
        raise ValueError(f"vertex {u} is not a member of X")
    ubit = 1 << u
    out = 0
    for w in iter_bits(G.adj[u]):
        if G.adj[w] & m == ubit:
            out |= 1 << w
    return VertexSet(G.n, out)


def disjoint_union(G: Graph, H: Graph) -> Graph:
    """``G`` on 0..|G|-1 followed by ``H`` shifted up by |G|."""
    shift = G.n
    return Graph.from_masks(list(G.adj) + [m << shift for m in H.adj])


def k_copies_K2(k: int) -> Graph:
    """``k`` disjoint edges ``i -- i + k``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    return Graph(2 * k, [(i, i + k) for i in range(k)])


def components(G: Graph) -> list[int]:
    """Vertex masks of the connected components, ordered by smallest member."""
    seen = 0
    out = []
    for s in range(G.n):
        if seen >> s & 1:
            continue
        comp = 1 << s
        queue = deque([s])
        while queue:
            v = queue.popleft()
            new = G.adj[v] & ~comp
            comp |= new
            queue.extend(iter_bits(new))
        seen |= comp
        out.append(comp)
    return out


def is_connected(G: Graph) -> bool:
    return len(components(G)) == 1


def has_isolated_vertex(G: Graph) -> bool:
    return any(m == 0 for m in G.adj)


def complete_graph(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def empty_graph(n: int) -> Graph:
    return Graph(n)


# -- canonical form -----------------------------------------------------------
#
# Minimum adjacency code over all vertex orders reachable by individualization
# and equitable refinement.  The refined ordered partition is isomorphism
# invariant, so the minimum over its leaves is a canonical form.  Automorphisms
# found as pairs of leaves with equal codes prune sibling branches in the same
# orbit of the prefix stabilizer.


def _refine(adj: Sequence[int], cells: list[list[int]]) -> list[list[int]]:
    while True:
        masks = [mask_of(c) for c in cells]
        new: list[list[int]] = []
        changed = False
        for c in cells:
            if len(c) == 1:
                new.append(c)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in c:
                a = adj[v]
                groups.setdefault(tuple((a & m).bit_count() for m in masks), []).append(v)
            if len(groups) == 1:
                new.append(c)
                continue
            changed = True
            new.extend(groups[key] for key in sorted(groups))
        cells = new
        if not changed:
            return cells


def _code(adj: Sequence[int], order: Sequence[int]) -> int:
    code = 0
    for j in range(1, len(order)):
        row = adj[order[j]]
        for i in range(j):
            code = code << 1 | (row >> order[i] & 1)
    return code


class _Canonizer:
    def __init__(self, adj: Sequence[int]):
        self.adj = adj
        self.best_code = -1
        self.best_order: list[int] = []
        self.autos: list[list[int]] = []

    def _same_orbit(self, v: int, done: list[int], fixed: list[int]) -> bool:
        gens = [a for a in self.autos if all(a[x] == x for x in fixed)]
        if not gens:
            return False
        n = len(self.adj)
        parent = list(range(n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a in gens:
            for x in range(n):
                rx, ry = find(x), find(a[x])
                if rx != ry:
                    parent[rx] = ry
        rv = find(v)
        return any(find(w) == rv for w in done)

    def search(self, cells: list[list[int]], fixed: list[int]) -> None:
        cells = _refine(self.adj, cells)
        target = -1
        for i, c in enumerate(cells):
            if len(c) > 1 and (target < 0 or len(c) < len(cells[target])):
                target = i
        if target < 0:
            order = [c[0] for c in cells]
            code = _code(self.adj, order)
            if self.best_code < 0 or code < self.best_code:
                self.best_code, self.best_order = code, order
            elif code == self.best_code:
                perm = [0] * len(order)
                for a, b in zip(self.best_order, order):
                    perm[a] = b
                self.autos.append(perm)
            return
        cell = cells[target]
        done: list[int] = []
        for v in cell:
            if done and self._same_orbit(v, done, fixed):
                continue
            branch = cells[:target] + [[v], [w for w in cell if w != v]] + cells[target + 1 :]
            self.search(branch, fixed + [v])
            done.append(v)


def _canon_search(adj: Sequence[int], cells: list[list[int]]) -> tuple[int, list[int]]:
    c = _Canonizer(adj)
    c.search(cells, [])
    return c.best_code, c.best_order


def canonical_labeling(G: Graph) -> list[int]:
    """Vertex order (new index -> old vertex) producing the canonical form."""
    return _canon_search(G.adj, [list(range(G.n))])[1]


def canonical_form(G: Graph) -> tuple[int, int]:
    """Hashable certificate ``(n, code)``; equal iff the graphs are isomorphic."""
    return G.n, _canon_search(G.adj, [list(range(G.n))])[0]


def canonical_relabel(G: Graph) -> Graph:
    order = canonical_labeling(G)
    pos = [0] * G.n
    for new, old in enumerate(order):
        pos[old] = new
    return Graph.from_masks([mask_of(pos[u] for u in iter_bits(G.adj[old])) for old in order])


def is_isomorphic(G: Graph, H: Graph) -> bool:
    if G.n != H.n or G.num_edges() != H.num_edges():
        return False
    if sorted(m.bit_count() for m in G.adj) != sorted(m.bit_count() for m in H.adj):
        return False
    return canonical_form(G) == canonical_form(H)

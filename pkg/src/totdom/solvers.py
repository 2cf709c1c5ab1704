"""Exact domination-type invariants with certificates.

``gamma_t`` and ``gamma`` share one covering branch-and-bound: pick the
uncovered vertex with the fewest remaining candidate coverers and branch on
which of them enters the set, excluding earlier siblings so each minimal
cover is reached once.  ``rho_2`` is a maximum independent set search in the
square of the graph.  The ``*_naive`` functions are independent oracles that
enumerate subsets by cardinality.

Certificates are the optimum with the smallest bitmask integer value.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Sequence

from .errors import IsolatedVertexError, LimitExceededError, TooLargeError
from .graph import Graph, VertexSet, components, induced_subgraph, iter_bits, mask_of

__all__ = [
    "SolveResult",
    "gamma_t",
    "gamma",
    "rho_2",
    "gamma_t_value",
    "has_td_set_of_size",
    "all_min_td_sets",
    "min_total_dominators",
    "gamma_t_naive",
    "gamma_naive",
    "rho2_naive",
    "DEFAULT_LIMIT",
    "NAIVE_MAX_N",
]

DEFAULT_LIMIT = 100_000
NAIVE_MAX_N = 24

sys.setrecursionlimit(max(sys.getrecursionlimit(), 10_000))


@dataclass(frozen=True)
class SolveResult:
    value: int
    certificate: VertexSet


class _Found(Exception):
    pass


class _CoverSearch:
    """Minimum cover of ``target`` where choosing ``v`` covers ``cover[v]``.

    ``cand[u]`` lists the vertices whose choice covers ``u``; the caller keeps
    the two tables consistent.
    """

    def __init__(self, cover: Sequence[int], cand: Sequence[int], target: int):
        self.cover = cover
        self.cand = cand
        self.target = target

    def greedy(self, allowed: int, forced: int = 0) -> int | None:
        chosen = forced
        covered = 0
        for v in iter_bits(forced):
            covered |= self.cover[v]
        unc = self.target & ~covered
        while unc:
            best_v, best_gain = -1, 0
            for v in iter_bits(allowed & ~chosen):
                gain = (self.cover[v] & unc).bit_count()
                if gain > best_gain:
                    best_v, best_gain = v, gain
            if best_v < 0:
                return None
            chosen |= 1 << best_v
            unc &= ~self.cover[best_v]
        return chosen

    def run(
        self,
        mode: str,
        limit: int,
        allowed: int,
        forced: int = 0,
        on_solution: Callable[[int], None] | None = None,
    ) -> int | None:
        """Search covers of size <= ``limit`` using only ``allowed`` vertices.

        ``mode`` is ``"min"`` (return a minimum cover, ``None`` if none fits),
        ``"first"`` (return any cover) or ``"all"`` (report every minimal cover
        through ``on_solution``).
        """
        cover, cand, target = self.cover, self.cand, self.target
        state = {"limit": limit, "best": None}

        def rec(chosen: int, covered: int, allowed: int, size: int) -> None:
            unc = target & ~covered
            if not unc:
                if mode == "min":
                    state["best"] = chosen
                    state["limit"] = size - 1
                elif mode == "first":
                    state["best"] = chosen
                    raise _Found
                else:
                    on_solution(chosen)
                return
            lim = state["limit"]
            if size + 1 > lim:
                return
            items = []
            best_k = 1 << 30
            best_c = 0
            m = unc
            while m:
                low = m & -m
                m ^= low
                c = cand[low.bit_length() - 1] & allowed
                if not c:
                    return
                k = c.bit_count()
                if k < best_k:
                    best_k, best_c = k, c
                items.append((k, c))
            if best_k > 1:
                items.sort()
                used = 0
                lb = 0
                for _, c in items:
                    if not c & used:
                        used |= c
                        lb += 1
                if size + lb > lim:
                    return
                # coverage bound only pays off when the packing bound is tight
                if size + lb == lim:
                    gain = 0
                    free = allowed & ~chosen
                    while free:
                        low = free & -free
                        free ^= low
                        g = (cover[low.bit_length() - 1] & unc).bit_count()
                        if g > gain:
                            gain = g
                    if size + -(-unc.bit_count() // gain) > lim:
                        return
            rest = allowed
            c = best_c
            while c:
                low = c & -c
                c ^= low
                rec(chosen | low, covered | cover[low.bit_length() - 1], rest, size + 1)
                rest &= ~low
                if size + 1 > state["limit"]:
                    return

        covered = 0
        for v in iter_bits(forced):
            covered |= cover[v]
        try:
            rec(forced, covered, allowed, forced.bit_count())
        except _Found:
            pass
        return state["best"]

    def minimum(self, allowed: int) -> int | None:
        seed = self.greedy(allowed)
        if seed is None:
            return None
        better = self.run("min", seed.bit_count() - 1, allowed)
        return seed if better is None else better

    def lexmin(self, allowed: int, witness: int) -> int:
        """Smallest-integer cover of the same size as ``witness``.

        Decides vertices from the highest index down, keeping a witness that
        agrees with every decision so far.
        """
        size = witness.bit_count()
        forced = 0
        for v in reversed(range(allowed.bit_length())):
            bit = 1 << v
            if not allowed & bit:
                continue
            if witness & bit:
                sol = self.run("first", size, allowed & ~bit, forced)
                if sol is None:
                    forced |= bit
                    continue
                witness = sol
            allowed &= ~bit
        return witness


def _td_search(G: Graph, target: int | None = None) -> _CoverSearch:
    return _CoverSearch(G.adj, G.adj, G.full_mask if target is None else target)


def _dom_search(G: Graph) -> _CoverSearch:
    closed = tuple(m | 1 << v for v, m in enumerate(G.adj))
    return _CoverSearch(closed, closed, G.full_mask)


def _check_no_isolated(G: Graph) -> None:
    for v, m in enumerate(G.adj):
        if not m:
            raise IsolatedVertexError(f"vertex {v} is isolated; total domination is undefined")


def _by_components(G: Graph, solve: Callable[[Graph], int]) -> int:
    comps = components(G)
    if len(comps) == 1:
        return solve(G)
    out = 0
    for comp in comps:
        sub, old = induced_subgraph(G, VertexSet(G.n, comp))
        out |= mask_of(old[i] for i in iter_bits(solve(sub)))
    return out


def _gamma_t_mask(G: Graph, canonical: bool) -> int:
    def solve(H: Graph) -> int:
        search = _td_search(H)
        best = search.minimum(H.full_mask)
        assert best is not None
        return search.lexmin(H.full_mask, best) if canonical else best

    _check_no_isolated(G)
    return _by_components(G, solve)


def gamma_t(G: Graph) -> SolveResult:
    """Total domination number with the bitmask-least minimum TD-set."""
    m = _gamma_t_mask(G, canonical=True)
    return SolveResult(m.bit_count(), VertexSet(G.n, m))


def gamma_t_value(G: Graph) -> int:
    """``gamma_t(G).value`` without canonicalizing the certificate."""
    return _gamma_t_mask(G, canonical=False).bit_count()


def has_td_set_of_size(G: Graph, k: int) -> bool:
    """Whether ``G`` has a TD-set with at most ``k`` vertices."""
    _check_no_isolated(G)
    search = _td_search(G)
    return search.run("first", k, G.full_mask) is not None


def gamma(G: Graph) -> SolveResult:
    """Domination number with the bitmask-least minimum dominating set."""

    def solve(H: Graph) -> int:
        search = _dom_search(H)
        best = search.minimum(H.full_mask)
        assert best is not None
        return search.lexmin(H.full_mask, best)

    m = _by_components(G, solve)
    return SolveResult(m.bit_count(), VertexSet(G.n, m))


def min_total_dominators(G: Graph, target: VertexSet, *, all_sets: bool = False,
                         limit: int = DEFAULT_LIMIT) -> list[VertexSet]:
    """Minimum vertex sets ``T`` of ``G`` with ``target`` inside ``N(T)``.

    Returns the bitmask-least one, or with ``all_sets`` every one in bitmask
    order.  An empty target has the empty set as its unique answer.
    """
    if not target.mask:
        return [VertexSet(G.n, 0)]
    for u in target:
        if not G.adj[u]:
            raise IsolatedVertexError(f"vertex {u} has no neighbor to dominate it")
    search = _td_search(G, target.mask)
    best = search.minimum(G.full_mask)
    assert best is not None
    if not all_sets:
        return [VertexSet(G.n, search.lexmin(G.full_mask, best))]
    return [VertexSet(G.n, m) for m in _enumerate(search, G.full_mask, best.bit_count(), limit)]


def _enumerate(search: _CoverSearch, allowed: int, size: int, limit: int) -> list[int]:
    found: list[int] = []

    def keep(m: int) -> None:
        found.append(m)
        if len(found) > limit:
            raise LimitExceededError(f"more than {limit} optimal sets")

    search.run("all", size, allowed, on_solution=keep)
    found.sort()
    return found


def all_min_td_sets(G: Graph, limit: int = DEFAULT_LIMIT) -> list[VertexSet]:
    """Every minimum TD-set of ``G`` in increasing bitmask order.

    Raises :class:`LimitExceededError` rather than truncating.
    """
    if limit < 1:
        raise ValueError("limit must be positive")
    _check_no_isolated(G)
    size = gamma_t_value(G)
    return [VertexSet(G.n, m) for m in _enumerate(_td_search(G), G.full_mask, size, limit)]


def _square(G: Graph) -> list[int]:
    closed = [m | 1 << v for v, m in enumerate(G.adj)]
    out = []
    for v in range(G.n):
        reach = 0
        for u in iter_bits(closed[v]):
            reach |= closed[u]
        out.append(reach)
    return out


def rho_2(G: Graph) -> SolveResult:
    """2-packing number: most vertices with pairwise disjoint closed neighborhoods."""
    conflict = _square(G)
    best = {"size": 0, "mask": 0}

    # Highest vertex first, exclusion branch first: sets are visited in
    # increasing integer order, so the first maximum found is the least one.
    def rec(free: int, chosen: int, size: int) -> None:
        if not free:
            if size > best["size"]:
                best["size"], best["mask"] = size, chosen
            return
        if size + free.bit_count() <= best["size"]:
            return
        v = free.bit_length() - 1
        bit = 1 << v
        rec(free & ~bit, chosen, size)
        rec(free & ~conflict[v], chosen | bit, size + 1)

    rec(G.full_mask, 0, 0)
    return SolveResult(best["size"], VertexSet(G.n, best["mask"]))


# -- naive oracles ------------------------------------------------------------


def _guard(G: Graph) -> None:
    if G.n > NAIVE_MAX_N:
        raise TooLargeError(f"naive enumeration limited to {NAIVE_MAX_N} vertices")


def _first_by_cardinality(n: int, sizes, ok: Callable[[int], bool]) -> int:
    for k in sizes:
        hits = [m for m in (mask_of(c) for c in combinations(range(n), k)) if ok(m)]
        if hits:
            return min(hits)
    raise AssertionError("no feasible set")


def _nbhd(adj: Sequence[int], m: int) -> int:
    out = 0
    for v in iter_bits(m):
        out |= adj[v]
    return out


def gamma_t_naive(G: Graph) -> SolveResult:
    _guard(G)
    _check_no_isolated(G)
    full = G.full_mask
    m = _first_by_cardinality(G.n, range(1, G.n + 1), lambda s: _nbhd(G.adj, s) == full)
    return SolveResult(m.bit_count(), VertexSet(G.n, m))


def gamma_naive(G: Graph) -> SolveResult:
    _guard(G)
    full = G.full_mask
    m = _first_by_cardinality(G.n, range(1, G.n + 1), lambda s: (s | _nbhd(G.adj, s)) == full)
    return SolveResult(m.bit_count(), VertexSet(G.n, m))


def rho2_naive(G: Graph) -> SolveResult:
    _guard(G)
    closed = [m | 1 << v for v, m in enumerate(G.adj)]

    def packing(s: int) -> bool:
        seen = 0
        for v in iter_bits(s):
            if closed[v] & seen:
                return False
            seen |= closed[v]
        return True

    m = _first_by_cardinality(G.n, range(G.n, 0, -1), packing)
    return SolveResult(m.bit_count(), VertexSet(G.n, m))

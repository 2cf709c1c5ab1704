"""The graphs G_n: K_n with a pendant two-vertex path hung on every clique vertex.

Labels: ``a_i = i - 1`` (clique), ``b_i = n + i - 1``, ``c_i = 2n + i - 1``
(leaves), for ``i = 1..n``.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from .errors import TooLargeError
from .graph import Graph, VertexSet, cartesian_product, is_total_dominating
from .solvers import gamma_t_value

log = logging.getLogger(__name__)

EXACT_KN_CAP = 16


@dataclass(frozen=True)
class GnGraph:
    n: int
    graph: Graph

    def a(self, i: int) -> int:
        return i - 1

    def b(self, i: int) -> int:
        return self.n + i - 1

    def c(self, i: int) -> int:
        return 2 * self.n + i - 1


def build_gn(n: int) -> GnGraph:
    if n < 1:
        raise ValueError("n must be at least 1")
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    edges += [(i, n + i) for i in range(n)]
    edges += [(n + i, 2 * n + i) for i in range(n)]
    return GnGraph(n, Graph(3 * n, edges))


def _check_order(k: int, n: int) -> None:
    if not 2 <= k <= n:
        raise ValueError(f"need 2 <= k <= n, got k={k}, n={n}")


def gn_product_tdset(k: int, n: int) -> VertexSet:
    """Explicit TD-set of ``G_k x G_n`` with ``2kn + 2k`` vertices.

    With ``x, y, z`` the clique, middle and leaf labels of ``G_n``:
    ``A x {x1, z1}``, ``B x (Y - y1  +  Z - z1)`` and ``C x {x1, y1}``.
    """
    _check_order(k, n)
    gk, gn = build_gn(k), build_gn(n)
    P = cartesian_product(gk.graph, gn.graph)
    x1, y1, z1 = gn.a(1), gn.b(1), gn.c(1)
    rest = [gn.b(j) for j in range(2, n + 1)] + [gn.c(j) for j in range(2, n + 1)]
    pairs = []
    for i in range(1, k + 1):
        pairs += [(gk.a(i), x1), (gk.a(i), z1)]
        pairs += [(gk.b(i), h) for h in rest]
        pairs += [(gk.c(i), x1), (gk.c(i), y1)]
    D = P.vertex_set(pairs)
    assert len(D) == 2 * k * n + 2 * k
    return D


def gn_product_is_td(k: int, n: int) -> bool:
    P = cartesian_product(build_gn(k).graph, build_gn(n).graph).product
    return is_total_dominating(P, gn_product_tdset(k, n))


@dataclass(frozen=True)
class GnBounds:
    k: int
    n: int
    lower: int
    exact: int
    upper: int

    @property
    def holds(self) -> bool:
        return self.lower <= self.exact <= self.upper


def _exact(k: int, n: int, force: bool) -> int:
    _check_order(k, n)
    if k * n > EXACT_KN_CAP:
        if not force:
            raise TooLargeError(f"k*n = {k * n} exceeds the exact-solver cap {EXACT_KN_CAP}")
        log.warning("solving G_%d x G_%d beyond the k*n <= %d cap", k, n, EXACT_KN_CAP)
    P = cartesian_product(build_gn(k).graph, build_gn(n).graph).product
    return gamma_t_value(P)


def gn_bounds_check(k: int, n: int, force: bool = False) -> GnBounds:
    exact = _exact(k, n, force)
    return GnBounds(k, n, 2 * k * n + k, exact, 2 * k * n + 2 * k)


@dataclass(frozen=True)
class GnQuotient:
    k: int
    n: int
    qt: Fraction
    lower: Fraction
    upper: Fraction

    @property
    def holds(self) -> bool:
        return self.lower <= self.qt <= self.upper


def quotient_interval(k: int, n: int, exact: int) -> GnQuotient:
    """``q_t(G_k, G_n)`` from ``gamma_t(G_k x G_n)``; ``gamma_t(G_m) = 2m``."""
    half = Fraction(1, 2)
    return GnQuotient(k, n, Fraction(exact, 4 * k * n), half + Fraction(1, 4 * n), half + Fraction(1, 2 * n))


def gn_quotient_check(k: int, n: int, force: bool = False) -> GnQuotient:
    """Exact ``q_t(G_k, G_n)`` against ``[1/2 + 1/(4n), 1/2 + 1/(2n)]``."""
    return quotient_interval(k, n, _exact(k, n, force))

"""Membership in the families F1, F2, F3 and minimum TD-sets of ``G x H`` with
``gamma_t(H) = 2``.

F1: ``gamma_t(G) = 2 gamma(G)``.
F2: some minimum TD-set splits into nonempty ``D1, D2`` with
``D1 = V - N(D2)`` and ``D2 = V - N(D1)``.
F3: ``V`` splits into ``V1, V2`` with ``G[V1]`` in F1, ``G[V2]`` in F2 and
``gamma_t(G) = gamma_t(G[V1]) + gamma_t(G[V2])``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .errors import (
    HypothesisViolatedError,
    NotInFamiliesError,
    NotMinimumTDSetError,
    TooLargeError,
)
from .graph import (
    Graph,
    ProductGraph,
    VertexSet,
    cartesian_product,
    has_isolated_vertex,
    induced_subgraph,
    is_connected,
    is_dominating,
    is_total_dominating,
    iter_bits,
    mask_of,
    nbhd_mask,
    path_graph,
)
from .solvers import (
    DEFAULT_LIMIT,
    _check_no_isolated,
    all_min_td_sets,
    gamma,
    gamma_t_value,
    min_total_dominators,
)

F3_MAX_N = 14
K2 = path_graph(2)


@dataclass(frozen=True)
class F1Witness:
    dominating_set: VertexSet


@dataclass(frozen=True)
class F2Witness:
    D: VertexSet
    D1: VertexSet
    D2: VertexSet


@dataclass(frozen=True)
class F3Witness:
    """Vertex split plus sub-witnesses, all expressed in the labels of ``G``."""

    V1: VertexSet
    V2: VertexSet
    f1: F1Witness
    f2: F2Witness


@dataclass(frozen=True)
class FamilyClassification:
    f1: F1Witness | None
    f2: F2Witness | None
    f3: F3Witness | None

    @property
    def in_f1(self) -> bool:
        return self.f1 is not None

    @property
    def in_f2(self) -> bool:
        return self.f2 is not None

    @property
    def in_f3(self) -> bool:
        return self.f3 is not None

    @property
    def any(self) -> bool:
        return self.in_f1 or self.in_f2 or self.in_f3

    def labels(self) -> list[str]:
        return [name for name, ok in (("F1", self.in_f1), ("F2", self.in_f2), ("F3", self.in_f3)) if ok]


def _is_k2(G: Graph) -> bool:
    return G.n == 2 and G.adj == (2, 1)


def _f2_split(G: Graph, D: int) -> tuple[int, int] | None:
    full = G.full_mask
    # submasks of D in increasing order, skipping the empty set and D itself
    d1 = (0 - D) & D
    while d1 != D:
        d2 = D ^ d1
        if full & ~nbhd_mask(G, d2) == d1 and full & ~nbhd_mask(G, d1) == d2:
            return d1, d2
        d1 = (d1 - D) & D
    return None


def in_F1(G: Graph) -> F1Witness | None:
    _check_no_isolated(G)
    dom = gamma(G)
    if gamma_t_value(G) == 2 * dom.value:
        return F1Witness(dom.certificate)
    return None


def in_F2(G: Graph, limit: int = DEFAULT_LIMIT) -> F2Witness | None:
    _check_no_isolated(G)
    for D in all_min_td_sets(G, limit):
        split = _f2_split(G, D.mask)
        if split is not None:
            return F2Witness(D, VertexSet(G.n, split[0]), VertexSet(G.n, split[1]))
    return None


def _lift(n: int, old: list[int], vs: VertexSet) -> VertexSet:
    return VertexSet(n, mask_of(old[i] for i in vs))


def in_F3(G: Graph, limit: int = DEFAULT_LIMIT, max_n: int = F3_MAX_N) -> F3Witness | None:
    _check_no_isolated(G)
    if G.n > max_n:
        raise TooLargeError(f"F3 search limited to {max_n} vertices")
    full = G.full_mask
    adj = G.adj
    total = gamma_t_value(G)
    gt_cache: dict[int, int | None] = {}

    def part_gt(mask: int) -> int | None:
        if mask not in gt_cache:
            if any(not adj[v] & mask for v in iter_bits(mask)):
                gt_cache[mask] = None
            else:
                gt_cache[mask] = gamma_t_value(induced_subgraph(G, VertexSet(G.n, mask))[0])
        return gt_cache[mask]

    for v1 in range(1, full):
        v2 = full ^ v1
        a, b = part_gt(v1), part_gt(v2)
        if a is None or b is None or a + b != total:
            continue
        g1, old1 = induced_subgraph(G, VertexSet(G.n, v1))
        w1 = in_F1(g1)
        if w1 is None:
            continue
        g2, old2 = induced_subgraph(G, VertexSet(G.n, v2))
        w2 = in_F2(g2, limit)
        if w2 is None:
            continue
        return F3Witness(
            VertexSet(G.n, v1),
            VertexSet(G.n, v2),
            F1Witness(_lift(G.n, old1, w1.dominating_set)),
            F2Witness(_lift(G.n, old2, w2.D), _lift(G.n, old2, w2.D1), _lift(G.n, old2, w2.D2)),
        )
    return None


def classify(G: Graph, limit: int = DEFAULT_LIMIT, f3_max_n: int = F3_MAX_N) -> FamilyClassification:
    return FamilyClassification(in_F1(G), in_F2(G, limit), in_F3(G, limit, f3_max_n))


def verify_classification(G: Graph, c: FamilyClassification) -> bool:
    """Re-check every present witness against the family definitions."""
    full = G.full_mask
    gt = gamma_t_value(G)

    def f1_ok(H: Graph, dom: VertexSet) -> bool:
        return is_dominating(H, dom) and 2 * len(dom) == gamma_t_value(H) and len(dom) == gamma(H).value

    def f2_ok(H: Graph, w: F2Witness) -> bool:
        hf = H.full_mask
        return (
            is_total_dominating(H, w.D)
            and len(w.D) == gamma_t_value(H)
            and bool(w.D1) and bool(w.D2)
            and w.D1.mask | w.D2.mask == w.D.mask
            and not w.D1.mask & w.D2.mask
            and hf & ~nbhd_mask(H, w.D2.mask) == w.D1.mask
            and hf & ~nbhd_mask(H, w.D1.mask) == w.D2.mask
        )

    if c.f1 is not None and not f1_ok(G, c.f1.dominating_set):
        return False
    if c.f2 is not None and not f2_ok(G, c.f2):
        return False
    if c.f3 is not None:
        w = c.f3
        if not w.V1 or not w.V2 or w.V1.mask | w.V2.mask != full or w.V1.mask & w.V2.mask:
            return False
        g1, old1 = induced_subgraph(G, w.V1)
        g2, old2 = induced_subgraph(G, w.V2)
        pos1 = {o: i for i, o in enumerate(old1)}
        pos2 = {o: i for i, o in enumerate(old2)}

        def down(vs: VertexSet, pos: dict[int, int], n: int) -> VertexSet:
            return VertexSet.of(n, (pos[v] for v in vs))

        if has_isolated_vertex(g1) or has_isolated_vertex(g2):
            return False
        if gamma_t_value(g1) + gamma_t_value(g2) != gt:
            return False
        if not f1_ok(g1, down(w.f1.dominating_set, pos1, g1.n)):
            return False
        sub = F2Witness(*(down(x, pos2, g2.n) for x in (w.f2.D, w.f2.D1, w.f2.D2)))
        if not f2_ok(g2, sub):
            return False
    return True


# -- equality construction ----------------------------------------------------


def build_equality_tdset(
    G: Graph,
    family: str | None = None,
    classification: FamilyClassification | None = None,
) -> VertexSet:
    """TD-set of ``G x K2`` with ``gamma_t(G)`` vertices.

    ``family`` picks the construction (``"F1"``, ``"F2"`` or ``"F3"``); by
    default the first family ``G`` belongs to in that order is used.
    """
    c = classification if classification is not None else classify(G)
    order = [family] if family is not None else ["F1", "F2", "F3"]
    fibers: tuple[int, int] | None = None
    for fam in order:
        if fam == "F1" and c.f1 is not None:
            d = c.f1.dominating_set.mask
            fibers = (d, d)
        elif fam == "F2" and c.f2 is not None:
            fibers = (c.f2.D1.mask, c.f2.D2.mask)
        elif fam == "F3" and c.f3 is not None:
            d = c.f3.f1.dominating_set.mask
            fibers = (d | c.f3.f2.D1.mask, d | c.f3.f2.D2.mask)
        elif fam not in ("F1", "F2", "F3"):
            raise ValueError(f"unknown family {fam!r}")
        if fibers is not None:
            break
    if fibers is None:
        raise NotInFamiliesError(f"graph is not in {'/'.join(order)}")
    P = cartesian_product(G, K2)
    return P.vertex_set([(g, 0) for g in iter_bits(fibers[0])] + [(g, 1) for g in iter_bits(fibers[1])])


# -- Theorem on gamma_t(H) = 2 -------------------------------------------------


def _require(cond: bool, what: str) -> None:
    if not cond:
        raise HypothesisViolatedError(what)


def theorem3_conditions(G: Graph, H: Graph) -> tuple[bool, bool]:
    """Truth of (G = K2 and gamma(H) = 1) and of (H = K2 and G in F1/F2/F3)."""
    _require(G.n >= 2 and is_connected(G), "G must be nontrivial and connected")
    _require(H.n >= 2 and is_connected(H), "H must be nontrivial and connected")
    _require(gamma_t_value(H) == 2, "gamma_t(H) must be 2")
    cond_i = _is_k2(G) and gamma(H).value == 1
    cond_ii = _is_k2(H) and classify(G).any
    return cond_i, cond_ii


def theorem3_rhs(G: Graph, H: Graph) -> bool:
    return any(theorem3_conditions(G, H))


def equality_holds(G: Graph, H: Graph) -> bool:
    """Whether ``gamma_t(G) = gamma_t(G x H)``."""
    _check_no_isolated(G)
    _check_no_isolated(H)
    return gamma_t_value(G) == gamma_t_value(cartesian_product(G, H).product)


# -- decomposition of a minimum TD-set of G x H --------------------------------


class Verdict(str, enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    NOT_APPLICABLE = "n/a"


STATEMENTS = ("A", "B", "C", "D", "E", "E'", "F", "G", "H", "I", "J", "K", "L", "M")


@dataclass
class DecompositionReport:
    """Sets derived from a minimum TD-set ``D`` of ``G x H``.

    ``D`` and its parts are over the product; everything else is over ``V(G)``.
    ``Ddoubleprime_i[i]`` and ``Sdoubleprime_i[i]`` follow the labeling of ``H``.
    """

    D: VertexSet
    Dprime: VertexSet
    Ddoubleprime: VertexSet
    Ddoubleprime_i: list[VertexSet]
    S: VertexSet
    Sprime: VertexSet
    Sdoubleprime: VertexSet
    P: VertexSet
    Pprime: VertexSet
    Pdoubleprime: VertexSet
    Sdoubleprime_i: list[VertexSet]
    Tprime: VertexSet
    X: VertexSet
    statements: dict[str, Verdict] = field(default_factory=dict)

    @property
    def failed(self) -> list[str]:
        return [k for k, v in self.statements.items() if v is Verdict.FAIL]


def _induces_matching(G: Graph, X: int) -> bool:
    """``G[X]`` is ``kK2`` for some ``k >= 1``."""
    return bool(X) and all((G.adj[v] & X).bit_count() == 1 for v in iter_bits(X))


def _no_common_neighbor(G: Graph, X: int) -> bool:
    return all((m & X).bit_count() <= 1 for m in G.adj)


def decompose_product_tdset(G: Graph, H: Graph, D: VertexSet) -> DecompositionReport:
    _require(G.n >= 2 and is_connected(G), "G must be nontrivial and connected")
    _require(H.n >= 2 and is_connected(H), "H must be nontrivial and connected")
    _require(gamma_t_value(H) == 2, "gamma_t(H) must be 2")
    PG: ProductGraph = cartesian_product(G, H)
    P = PG.product
    gt_prod = gamma_t_value(P)
    _require(gamma_t_value(G) == gt_prod, "gamma_t(G) must equal gamma_t(G x H)")
    if D.n != P.n or not is_total_dominating(P, D) or len(D) != gt_prod:
        raise NotMinimumTDSetError("D is not a minimum TD-set of G x H")

    nh = H.n
    block = (1 << nh) - 1
    dp = dpp = 0
    for g in range(G.n):
        fiber = D.mask >> (g * nh) & block
        if fiber.bit_count() >= 2:
            dp |= fiber << (g * nh)
        elif fiber:
            dpp |= fiber << (g * nh)

    def proj(m: int) -> int:
        return mask_of(g for g in range(G.n) if m >> (g * nh) & block)

    gfib = [mask_of(g * nh + h for g in range(G.n)) for h in range(nh)]
    dpp_i = [dpp & gfib[h] for h in range(nh)]
    s, sp, spp = proj(D.mask), proj(dp), proj(dpp)
    t_prime = min_total_dominators(G, VertexSet(G.n, sp))[0].mask
    n = G.n
    report = DecompositionReport(
        D=D,
        Dprime=VertexSet(P.n, dp),
        Ddoubleprime=VertexSet(P.n, dpp),
        Ddoubleprime_i=[VertexSet(P.n, m) for m in dpp_i],
        S=VertexSet(n, s),
        Sprime=VertexSet(n, sp),
        Sdoubleprime=VertexSet(n, spp),
        P=VertexSet(n, nbhd_mask(G, s) & ~s),
        Pprime=VertexSet(n, nbhd_mask(G, sp) & ~sp),
        Pdoubleprime=VertexSet(n, nbhd_mask(G, spp) & ~spp),
        Sdoubleprime_i=[VertexSet(n, proj(m)) for m in dpp_i],
        Tprime=VertexSet(n, t_prime),
        X=VertexSet(n, sp | t_prime | spp),
    )
    report.statements = check_proposition_statements(report, G, H)
    return report


def check_proposition_statements(report: DecompositionReport, G: Graph, H: Graph) -> dict[str, Verdict]:
    """Evaluate statements A..M literally on the sets of ``report``.

    E and F need a nonempty set to induce ``kK2`` with ``k >= 1`` and report
    not-applicable when S'' is empty; K and L report not-applicable on empty
    unions; M is not-applicable when H is K2.
    """
    full = G.full_mask
    adj = G.adj
    s, sp, spp = report.S.mask, report.Sprime.mask, report.Sdoubleprime.mask
    p, pp, ppp = report.P.mask, report.Pprime.mask, report.Pdoubleprime.mask
    spp_i = [x.mask for x in report.Sdoubleprime_i]
    gt = gamma_t_value(G)
    out: dict[str, bool | None] = {}

    out["A"] = s | p == full
    out["B"] = gt == 2 * sp.bit_count() + spp.bit_count()
    out["C"] = all(not adj[v] & sp for v in iter_bits(sp)) and _no_common_neighbor(G, sp)
    out["D"] = not nbhd_mask(G, sp) & spp
    out["E"] = _induces_matching(G, spp) if spp else None

    def e_prime_ok(t: int) -> bool:
        x = sp | t | spp
        if t & ~pp or t.bit_count() != sp.bit_count():
            return False
        if x.bit_count() != gt or nbhd_mask(G, x) != full:
            return False
        for g in iter_bits(spp):
            priv = mask_of(w for w in range(G.n) if adj[w] & x == 1 << g)
            if priv & ~spp or priv.bit_count() != 1:
                return False
        return True

    every_t = min_total_dominators(G, report.Sprime, all_sets=True)
    out["E'"] = all(e_prime_ok(t.mask) for t in every_t)
    out["F"] = all(_induces_matching(G, x) for x in spp_i if x) if spp else None
    out["G"] = all((ppp | x) & ~nbhd_mask(G, x) == 0 for x in spp_i)
    out["H"] = all(_no_common_neighbor(G, x) for x in spp_i)
    out["I"] = all(not (m & sp and m & spp) for m in adj)
    sets = [sp, spp, pp, ppp]
    out["J"] = all(not sets[i] & sets[j] for i in range(4) for j in range(i + 1, 4))

    def sub_graph(m: int) -> Graph | None:
        g, _ = induced_subgraph(G, VertexSet(G.n, m))
        return None if has_isolated_vertex(g) else g

    if sp | pp:
        gk = sub_graph(sp | pp)
        out["K"] = gk is not None and gamma_t_value(gk) == 2 * gamma(gk).value == 2 * sp.bit_count()
    else:
        out["K"] = None
    if spp | ppp:
        gl = sub_graph(spp | ppp)
        out["L"] = gl is not None and gamma_t_value(gl) == spp.bit_count()
    else:
        out["L"] = None
    out["M"] = None if _is_k2(H) else not sp

    def verdict(x: bool | None) -> Verdict:
        if x is None:
            return Verdict.NOT_APPLICABLE
        return Verdict.PASS if x else Verdict.FAIL

    return {k: verdict(out[k]) for k in STATEMENTS}

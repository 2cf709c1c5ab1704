"""Quotient computation and verification campaigns over graph corpora.

A campaign is a deterministic list of work items (graph6 strings) processed
by a pure worker function.  Results go to a JSON-lines file in item order:
one header line, then one record per item.  A checkpoint file stores the
next item index and the byte length of the output at that point, so a
resumed run truncates any partial tail and continues where it stopped.
"""
from __future__ import annotations

import csv
import json
import logging
import multiprocessing
import os
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, partial
from pathlib import Path
from typing import Any, Callable, Iterable, Iterator, Sequence

from .corpus import GraphRecord, connected_corpus, parse_graph6, read_graph6, write_graph6
from .errors import TotDomError
from .families import (
    K2,
    STATEMENTS,
    Verdict,
    classify,
    decompose_product_tdset,
    theorem3_conditions,
)
from .graph import Graph, cartesian_product, has_isolated_vertex, is_connected
from .solvers import all_min_td_sets, gamma_t, gamma_t_value, has_td_set_of_size, rho_2

log = logging.getLogger(__name__)

FORMAT_VERSION = "1"
HALF = Fraction(1, 2)
CAMPAIGNS = ("ho", "q1", "thm2", "thm3", "prop1")


def frac(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class QuotientRecord:
    g6_g: str
    g6_h: str
    n_g: int
    n_h: int
    gt_g: int
    gt_h: int
    gt_product: int

    @property
    def qt(self) -> Fraction:
        return Fraction(self.gt_product, self.gt_g * self.gt_h)

    @property
    def ho_tight(self) -> bool:
        return self.qt == HALF

    @property
    def eq1_tight(self) -> bool:
        return self.gt_g == self.gt_product

    def to_dict(self) -> dict[str, Any]:
        q = self.qt
        return {
            "g6_g": self.g6_g,
            "g6_h": self.g6_h,
            "n_g": self.n_g,
            "n_h": self.n_h,
            "gt_g": self.gt_g,
            "gt_h": self.gt_h,
            "gt_product": self.gt_product,
            "qt": {"num": q.numerator, "den": q.denominator, "text": frac(q)},
            "flags": {"ho_tight": self.ho_tight, "eq1_tight": self.eq1_tight},
        }


CSV_FIELDS = ["g6_g", "g6_h", "n_g", "n_h", "gt_g", "gt_h", "gt_product", "qt", "ho_tight", "eq1_tight"]


def _as_records(corpus: Iterable[GraphRecord | Graph]) -> list[GraphRecord]:
    return [c if isinstance(c, GraphRecord) else GraphRecord(c, write_graph6(c), "memory") for c in corpus]


def quotient(G: Graph, H: Graph) -> QuotientRecord:
    """Exact total domination quotient of ``G`` and ``H``."""
    return QuotientRecord(
        write_graph6(G),
        write_graph6(H),
        G.n,
        H.n,
        gamma_t_value(G),
        gamma_t_value(H),
        gamma_t_value(cartesian_product(G, H).product),
    )


@dataclass(frozen=True)
class EqualityPair:
    record: QuotientRecord
    k2_factor: bool


def find_equality_pairs(
    corpus_g: Iterable[GraphRecord | Graph], corpus_h: Iterable[GraphRecord | Graph]
) -> list[EqualityPair]:
    """All pairs with ``q_t = 1/2``, flagged by whether a factor is K2.

    Ho's bound makes ``gamma_t(G)gamma_t(H)/2`` a lower bound for the product,
    so a TD-set of that size decides equality.
    """
    gs, hs = _as_records(corpus_g), _as_records(corpus_h)
    gts = {r.g6: gamma_t_value(r.graph) for r in gs + hs}
    out = []
    for rg in gs:
        for rh in hs:
            a, b = gts[rg.g6], gts[rh.g6]
            if (a * b) % 2:
                continue
            target = a * b // 2
            P = cartesian_product(rg.graph, rh.graph).product
            if has_td_set_of_size(P, target):
                rec = QuotientRecord(rg.g6, rh.g6, rg.graph.n, rh.graph.n, a, b, target)
                k2 = rg.graph == K2 or rh.graph == K2
                out.append(EqualityPair(rec, k2))
    return out


def qt_inf_over_corpus(G: Graph, corpus_h: Iterable[GraphRecord | Graph]) -> tuple[Fraction, GraphRecord]:
    """Least ``q_t(G, H)`` over the corpus and the first ``H`` attaining it.

    This is a corpus minimum, not the infimum over all graphs.
    """
    hs = _as_records(corpus_h)
    if not hs:
        raise ValueError("empty corpus")
    best: tuple[Fraction, GraphRecord] | None = None
    for rh in hs:
        q = quotient(G, rh.graph).qt
        if best is None or q < best[0]:
            best = (q, rh)
    assert best is not None
    return best


# -- per-item workers ---------------------------------------------------------


@lru_cache(maxsize=None)
def _graph(g6: str) -> Graph:
    return parse_graph6(g6)


@lru_cache(maxsize=None)
def _gt(g6: str) -> int:
    return gamma_t_value(_graph(g6))


@lru_cache(maxsize=None)
def _gt_k2(g6: str) -> int:
    return gamma_t_value(cartesian_product(_graph(g6), K2).product)


@lru_cache(maxsize=None)
def _rho2(g6: str) -> int:
    return rho_2(_graph(g6)).value


def bound_violations(g6_g: str, g6_h: str, gt_product: int) -> list[str]:
    """Ho's bound, Eq. gamma_t(G) <= gamma_t(G x H), q_t >= 1/2 and the 2-packing bound."""
    a, b = _gt(g6_g), _gt(g6_h)
    out = []
    if a * b > 2 * gt_product:
        out.append("ho")
    if a > gt_product or b > gt_product:
        out.append("eq1")
    if Fraction(gt_product, a * b) < HALF:
        out.append("eq2")
    if gt_product < _rho2(g6_g) * b or gt_product < _rho2(g6_h) * a:
        out.append("rho2")
    return out


def _certs(G: Graph, H: Graph) -> dict[str, list]:
    P = cartesian_product(G, H)
    return {
        "cert_g": gamma_t(G).certificate.to_list(),
        "cert_h": gamma_t(H).certificate.to_list(),
        "cert_product": P.pairs(gamma_t(P.product).certificate),
    }


def _pair_item(kind: str, item: tuple[str, str]) -> dict[str, Any]:
    g6_g, g6_h = item
    G, H = _graph(g6_g), _graph(g6_h)
    gt_prod = gamma_t_value(cartesian_product(G, H).product)
    rec = QuotientRecord(g6_g, g6_h, G.n, H.n, _gt(g6_g), _gt(g6_h), gt_prod)
    out = rec.to_dict()
    violations = bound_violations(g6_g, g6_h, gt_prod)
    if kind == "q1":
        gk2 = _gt_k2(g6_g)
        out["gt_g_k2"] = gk2
        if 2 * gt_prod < gk2 * rec.gt_h:
            violations.append("q1")
    out["violations"] = violations
    if violations:
        out.update(_certs(G, H))
    return out


def _thm2_item(g6: str) -> dict[str, Any]:
    G = _graph(g6)
    c = classify(G)
    eq = _gt(g6) == _gt_k2(g6)
    out = {
        "g6": g6,
        "n": G.n,
        "gt": _gt(g6),
        "gt_k2": _gt_k2(g6),
        "equality": eq,
        "families": c.labels(),
        "violations": [] if eq == c.any else ["thm2"],
    }
    if out["violations"]:
        out.update(_certs(G, K2))
    return out


def _thm3_item(item: tuple[str, str]) -> dict[str, Any]:
    g6_g, g6_h = item
    G, H = _graph(g6_g), _graph(g6_h)
    gt_prod = gamma_t_value(cartesian_product(G, H).product)
    cond_i, cond_ii = theorem3_conditions(G, H)
    eq = _gt(g6_g) == gt_prod
    violations = bound_violations(g6_g, g6_h, gt_prod)
    if eq != (cond_i or cond_ii):
        violations.append("thm3")
    out = {
        "g6_g": g6_g,
        "g6_h": g6_h,
        "gt_g": _gt(g6_g),
        "gt_product": gt_prod,
        "equality": eq,
        "cond_i": cond_i,
        "cond_ii": cond_ii,
        "violations": violations,
    }
    if violations:
        out.update(_certs(G, H))
    return out


def _prop1_item(td_cap: int, item: tuple[str, str]) -> dict[str, Any]:
    g6_g, g6_h = item
    G, H = _graph(g6_g), _graph(g6_h)
    PG = cartesian_product(G, H)
    gt_prod = gamma_t_value(PG.product)
    violations = bound_violations(g6_g, g6_h, gt_prod)
    out: dict[str, Any] = {"g6_g": g6_g, "g6_h": g6_h, "gt_product": gt_prod}
    qualifying = is_connected(G) and _gt(g6_g) == gt_prod
    out["qualifying"] = qualifying
    if qualifying:
        na = dict.fromkeys(STATEMENTS, 0)
        failures = []
        sets = all_min_td_sets(PG.product, td_cap)
        for D in sets:
            rep = decompose_product_tdset(G, H, D)
            for k, v in rep.statements.items():
                if v is Verdict.NOT_APPLICABLE:
                    na[k] += 1
            if rep.failed:
                failures.append({"D": PG.pairs(D), "failed": rep.failed})
        out["td_sets"] = len(sets)
        out["not_applicable"] = na
        out["failures"] = failures
        if failures:
            violations.append("prop1")
    out["violations"] = violations
    return out


def _run_item(kind: str, td_cap: int, item) -> dict[str, Any]:
    try:
        if kind in ("ho", "q1"):
            return _pair_item(kind, item)
        if kind == "thm2":
            return _thm2_item(item)
        if kind == "thm3":
            return _thm3_item(item)
        return _prop1_item(td_cap, item)
    except (TotDomError, ValueError) as exc:
        return {"item": list(item) if isinstance(item, tuple) else item,
                "error": f"{type(exc).__name__}: {exc}", "violations": []}


# -- campaigns ----------------------------------------------------------------


@dataclass
class Campaign:
    kind: str
    params: dict[str, Any]
    items: list
    filtered: dict[str, int]
    td_cap: int = 100_000


@dataclass
class CampaignReport:
    campaign: str
    params: dict[str, Any]
    items: int
    records_written: int
    violations: list[dict[str, Any]] = field(default_factory=list)
    errors: list[dict[str, Any]] = field(default_factory=list)
    filtered: dict[str, int] = field(default_factory=dict)
    cursor: int = 0
    completed: bool = False
    wall_clock: float = 0.0

    @property
    def exit_code(self) -> int:
        return 1 if self.violations else 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "campaign": self.campaign,
            "params": self.params,
            "items": self.items,
            "records_written": self.records_written,
            "filtered": self.filtered,
            "violations": self.violations,
            "errors": self.errors,
            "cursor": self.cursor,
            "completed": self.completed,
            "wall_clock_s": round(self.wall_clock, 3),
        }


def _corpus(
    max_n: int | None,
    path: str | Path | None,
    graphs: Iterable[GraphRecord | Graph] | None = None,
    min_n: int = 2,
) -> tuple[list[GraphRecord], str]:
    if graphs is not None:
        recs = sorted(_as_records(graphs), key=lambda r: r.g6)
        return recs, "memory:" + ",".join(r.g6 for r in recs)
    if path is not None:
        recs = sorted(read_graph6(path), key=lambda r: r.g6)
        return recs, f"file:{Path(path).name}"
    assert max_n is not None
    return connected_corpus(max_n, min_n), f"connected:{min_n}..{max_n}"


def _usable(recs: Sequence[GraphRecord]) -> tuple[list[GraphRecord], int]:
    """Keep nontrivial connected graphs; duplicates by graph6 text are dropped."""
    seen: set[str] = set()
    keep = []
    for r in recs:
        if r.g6 in seen or r.graph.n < 2 or not is_connected(r.graph) or has_isolated_vertex(r.graph):
            continue
        seen.add(r.g6)
        keep.append(r)
    return keep, len(recs) - len(keep)


DEFAULT_SCALE = {
    "ho": (6, 5),
    "q1": (6, 5),
    "thm2": (7, None),
    "thm3": (6, 5),
    "prop1": (6, 4),
}


def build_campaign(
    kind: str,
    g_max: int | None = None,
    g_file: str | Path | None = None,
    h_max: int | None = None,
    h_file: str | Path | None = None,
    td_cap: int = 100_000,
    g_graphs: Iterable[GraphRecord | Graph] | None = None,
    h_graphs: Iterable[GraphRecord | Graph] | None = None,
) -> Campaign:
    """Assemble the work items of a campaign.

    Each side comes from ``*_graphs`` (in memory), ``*_file`` (graph6) or
    the enumerated connected graphs on ``2..*_max`` vertices, checked in that
    order.  Items are sorted by graph6 text of G, then of H.
    """
    if kind not in CAMPAIGNS:
        raise ValueError(f"unknown campaign {kind!r}")
    dg, dh = DEFAULT_SCALE[kind]
    if g_file is None and g_max is None:
        g_max = dg
    gs, g_desc = _corpus(g_max, g_file, g_graphs)
    gs, g_drop = _usable(gs)
    params: dict[str, Any] = {"g_corpus": g_desc}
    filtered = {"g_not_connected_or_trivial": g_drop}
    if kind == "thm2":
        return Campaign(kind, params, [r.g6 for r in gs], filtered, td_cap)
    if h_file is None and h_max is None:
        h_max = dh
    hs, h_desc = _corpus(h_max, h_file, h_graphs)
    hs, h_drop = _usable(hs)
    params["h_corpus"] = h_desc
    filtered["h_not_connected_or_trivial"] = h_drop
    if kind in ("thm3", "prop1"):
        before = len(hs)
        hs = [r for r in hs if _gt(r.g6) == 2]
        filtered["h_gamma_t_not_2"] = before - len(hs)
    if kind == "prop1":
        params["td_cap"] = td_cap
    items = [(rg.g6, rh.g6) for rg in gs for rh in hs]
    return Campaign(kind, params, items, filtered, td_cap)


def _atomic_write_json(path: Path, payload: dict[str, Any]) -> None:
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True)
        fh.flush()
        os.fsync(fh.fileno())
    os.replace(tmp, path)


def _dumps(obj: dict[str, Any]) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=True)


def _results(campaign: Campaign, start: int, jobs: int) -> Iterator[dict[str, Any]]:
    work = campaign.items[start:]
    fn = partial(_run_item, campaign.kind, campaign.td_cap)
    if jobs <= 1:
        yield from map(fn, work)
        return
    # imap keeps input order whatever order workers finish in
    with multiprocessing.get_context("fork").Pool(jobs) as pool:
        yield from pool.imap(fn, work, chunksize=1)


def run_campaign(
    campaign: Campaign,
    out: str | Path | None = None,
    checkpoint: str | Path | None = None,
    jobs: int = 1,
    stop_after: int | None = None,
    progress: Callable[[int, int], None] | None = None,
) -> CampaignReport:
    """Run (or resume) a campaign.

    ``stop_after`` processes at most that many items in this call and leaves
    the checkpoint in place, which is how interruption is simulated in tests.
    """
    t0 = time.monotonic()
    header = {
        "kind": "header",
        "format": FORMAT_VERSION,
        "campaign": campaign.kind,
        "params": campaign.params,
        "filtered": campaign.filtered,
        "items": len(campaign.items),
    }
    out_path = Path(out) if out is not None else None
    ck_path = Path(checkpoint) if checkpoint is not None else None
    if ck_path is not None and out_path is None:
        raise ValueError("a checkpoint needs an output file")

    start = 0
    if ck_path is not None and ck_path.exists():
        state = json.loads(ck_path.read_text())
        if state.get("header") != header:
            raise ValueError("checkpoint belongs to a different campaign or corpus")
        start = state["next_index"]
        with open(out_path, "r+b") as fh:
            fh.truncate(state["offset"])
        log.info("resuming %s at item %d", campaign.kind, start)
    elif out_path is not None:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(_dumps(header) + "\n")

    sink = open(out_path, "a", encoding="utf-8", newline="\n") if out_path is not None else None
    index = start
    collected: list[dict[str, Any]] = []
    try:
        if ck_path is not None and start == 0:
            _atomic_write_json(ck_path, {"header": header, "next_index": 0, "offset": sink.tell()})
        for rec in _results(campaign, start, jobs):
            line = {"kind": "record", "index": index, **rec}
            if sink is not None:
                sink.write(_dumps(line) + "\n")
                sink.flush()
            else:
                collected.append(line)
            index += 1
            if ck_path is not None:
                _atomic_write_json(ck_path, {"header": header, "next_index": index, "offset": sink.tell()})
            if progress is not None:
                progress(index, len(campaign.items))
            if stop_after is not None and index - start >= stop_after:
                break
    finally:
        if sink is not None:
            sink.close()

    completed = index >= len(campaign.items)
    if out_path is not None:
        records = [json.loads(x) for x in out_path.read_text(encoding="utf-8").splitlines()[1:]]
    else:
        records = collected
    report = CampaignReport(
        campaign=campaign.kind,
        params=campaign.params,
        items=len(campaign.items),
        records_written=len(records),
        filtered=campaign.filtered,
        cursor=index,
        completed=completed,
    )
    for r in records:
        if r.get("error"):
            report.errors.append({"index": r["index"], "item": r.get("item"), "error": r["error"]})
        if r.get("violations"):
            report.violations.append(r)
    if completed and out_path is not None and campaign.kind in ("ho", "q1"):
        export_csv(records, out_path.with_suffix(".csv"))
    report.wall_clock = time.monotonic() - t0
    return report


def export_csv(records: Iterable[dict[str, Any]], path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_FIELDS)
        for r in records:
            if "qt" not in r:
                continue
            w.writerow([
                r["g6_g"], r["g6_h"], r["n_g"], r["n_h"], r["gt_g"], r["gt_h"], r["gt_product"],
                r["qt"]["text"], r["flags"]["ho_tight"], r["flags"]["eq1_tight"],
            ])


def verify(kind: str, **kwargs) -> CampaignReport:
    """Build and run a campaign in memory (no persistence)."""
    jobs = kwargs.pop("jobs", 1)
    return run_campaign(build_campaign(kind, **kwargs), jobs=jobs)


def verify_question1(**kwargs) -> CampaignReport:
    return verify("q1", **kwargs)


def verify_theorem2(**kwargs) -> CampaignReport:
    return verify("thm2", **kwargs)


def verify_theorem3(**kwargs) -> CampaignReport:
    return verify("thm3", **kwargs)


def verify_proposition1(**kwargs) -> CampaignReport:
    return verify("prop1", **kwargs)

"""Building simple planar marked graphs with a prescribed effective resistance.

For a target resistance ``c/t`` the construction works with the spanning
tree ratio ``zeta = d/c`` where ``d = t - c``, since the resistance is
``1 / (1 + zeta)``.  Routes:

``direct``
    the continued-fraction graph of ``d/c``, simplified if it has multi-edges.
``large`` (``d/c >= 1``)
    decompose ``d/c mod 1`` into signed summands, shift them into positive
    ones using the integer part, and glue continued-fraction graphs.
``mid`` (``d/c >= 1``)
    peel off a summand with denominator ``K`` so that what remains lies in
    ``[1/K, 2/K)``; realize the reciprocal of the remainder, take the plane
    dual, and glue.
``small`` (``d/c < 1``)
    realize ``c/d`` with ``mid`` or ``large`` and take the plane dual.

``realize`` runs every applicable route, keeps the smallest graph, and
checks it against the spanning-tree oracle.
"""

from __future__ import annotations

import math
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Callable, Iterable, Optional, Sequence

from . import bounds
from .cf import RationalLike, as_rational, cf_from_rational, cf_normalize_parity, format_rational, quotient_sum
from .decompose import decompose_search
from .sp import (
    OPEN,
    MarkedGraph,
    MarkedSP,
    dual,
    is_proper,
    is_simple,
    k_duplicate,
    k_subdivide,
    marked_sum,
    materialize,
    simplify,
    term_is_simple,
)
from .tau import tau, tau_contract, tau_delete

__all__ = [
    "STRATEGIES",
    "ConstructorConfig",
    "Certificate",
    "RouteNotApplicable",
    "cf_graph",
    "graph_sum",
    "shifted_parts",
    "realize_direct",
    "realize_large",
    "realize_mid",
    "realize_small",
    "mid_window",
    "realize",
    "candidates",
    "audit_graph",
    "verify_certificate",
    "census",
    "census_targets",
    "sample_numerators",
]

STRATEGIES = ("direct", "large", "mid", "small")


class RouteNotApplicable(ValueError):
    """A route's hypothesis does not hold for the requested ratio."""


@dataclass(frozen=True)
class ConstructorConfig:
    """Knobs for the realization pipeline.

    ``C0_hat`` stands in for the unknown constant in the logarithmic cost
    bound for decompositions; it only sets the default window count ``K`` of the ``mid``
    route.  ``mid_k_max`` adds every ``K`` in ``2..mid_k_max`` to the
    portfolio as well.
    """

    C0_hat: Fraction = Fraction(1)
    max_den: int = 64
    max_quotient: int = 4
    max_terms: int = 3
    portfolio: tuple[str, ...] = STRATEGIES
    always_simplify: bool = False
    mid_k_max: int = 12

    def __post_init__(self) -> None:
        object.__setattr__(self, "C0_hat", Fraction(self.C0_hat))
        if self.C0_hat <= 0:
            raise ValueError("C0_hat must be positive")
        unknown = set(self.portfolio) - set(STRATEGIES)
        if unknown or not self.portfolio:
            raise ValueError(f"bad portfolio {self.portfolio!r}")

    @property
    def C1(self) -> Fraction:
        return 4 * self.C0_hat + 5

    @property
    def C2(self) -> Fraction:
        c1 = self.C1
        return 16 * c1 * c1 + 72 * c1 + 77

    def formula_k(self, c: int, d: int) -> int:
        """``4 * ceil(C1 * log(c + d))``, at least 2."""
        return max(2, 4 * math.ceil(float(self.C1) * math.log(c + d)))

    def k_values(self, q: Fraction) -> list[int]:
        ks = set(range(2, self.mid_k_max + 1))
        ks.add(self.formula_k(q.denominator, q.numerator))
        return sorted(ks)

    @property
    def budgets(self) -> dict:
        return {"max_den": self.max_den, "max_quotient": self.max_quotient, "max_terms": self.max_terms}


DEFAULT_CONFIG = ConstructorConfig()

# the K sweep revisits the same fractional parts many times per target
_decompose = lru_cache(maxsize=8192)(decompose_search)


def _finish(term: MarkedSP, mode: str) -> MarkedSP:
    if mode == "always" or (mode == "if_needed" and not term_is_simple(term)):
        return simplify(term)
    return term


def _inner_mode(config: ConstructorConfig) -> str:
    return "always" if config.always_simplify else "never"


def _final_mode(config: ConstructorConfig) -> str:
    return "always" if config.always_simplify else "if_needed"


def _simplified_size(term: MarkedSP, mode: str) -> tuple[int, int]:
    """``(|V|, |E|)`` after ``_finish`` without building the simplified term."""
    if mode == "always" or (mode == "if_needed" and not term_is_simple(term)):
        return term.n_vertices + 2 * term.leaves, 4 * term.leaves + 1
    return term.n_vertices, term.n_edges


def _positive(q: RationalLike, what: str) -> Fraction:
    q = as_rational(q)
    if q <= 0:
        raise ValueError(f"{what} needs a positive ratio, got {q}")
    return q


# ---------------------------------------------------------------------------
# building blocks


def cf_graph(d_over_c: RationalLike) -> MarkedSP:
    """Marked graph with spanning tree ratio ``d/c`` and ``S(d/c) + 1`` edges.

    Starting from a single edge, duplications and subdivisions alternate from
    the last partial quotient outwards.  The representation is chosen with
    an even number of quotients after ``a0`` so that the first operation is
    a duplication (subdividing the seed would leave the ratio at 0).
    """
    q = _positive(d_over_c, "cf_graph")
    cf = cf_normalize_parity(cf_from_rational(q), even_length=True)
    g = OPEN
    for depth in range(cf.length, -1, -1):
        a = cf.terms[depth]
        g = k_duplicate(g, a) if depth % 2 == 0 else k_subdivide(g, a)
    return g


def _graph_sum(parts: Sequence[Fraction], mode: str) -> MarkedSP:
    if not parts:
        raise ValueError("graph_sum needs at least one part")
    return _finish(marked_sum(*(cf_graph(_positive(q, "graph_sum")) for q in parts)), mode)


def graph_sum(parts: Iterable[RationalLike], always_simplify: bool = True) -> MarkedSP:
    """Simple marked graph with ratio ``sum(parts)``.

    With ``always_simplify`` (the default) the glued graph is simplified
    unconditionally and has exactly ``4 * sum(S(q)) + 1`` edges; otherwise
    simplification happens only when the glued graph has multi-edges.
    """
    parts = [as_rational(q) for q in parts]
    return _graph_sum(parts, "always" if always_simplify else "if_needed")


def shifted_parts(d_over_c: RationalLike, summands: Sequence[Fraction], *, merge: bool = True) -> list[Fraction]:
    """Positive parts summing to ``d/c`` from signed ``summands`` of ``d/c mod 1``.

    The first summand absorbs ``floor(d/c) - k + 1`` and every other one is
    raised by 1.  This needs ``k <= floor(d/c)``; when there are too many
    summands, adjacent ones are merged (cheapest merge first) unless
    ``merge`` is false.
    """
    q = as_rational(d_over_c)
    if q < 1:
        raise RouteNotApplicable(f"shifting needs d/c >= 1, got {q}")
    whole = q.numerator // q.denominator
    parts = [Fraction(s) for s in summands] or [Fraction(0)]
    if sum(parts) != q - whole or any(not -1 < s < 1 for s in parts):
        raise ValueError("summands must lie in (-1, 1) and sum to d/c mod 1")
    while len(parts) > whole:
        if not merge:
            raise RouteNotApplicable(f"{len(parts)} summands exceed floor(d/c) = {whole}")
        best = None
        for i in range(len(parts) - 1):
            s = parts[i] + parts[i + 1]
            if -1 < s < 1:
                cost = quotient_sum(abs(s))
                if best is None or cost < best[0]:
                    best = (cost, i, s)
        if best is None:
            # same-sign neighbours; sort so that opposite signs meet
            parts.sort()
            continue
        _, i, s = best
        parts[i:i + 2] = [s]
    k = len(parts)
    return [whole - k + 1 + parts[0]] + [1 + s for s in parts[1:]]


# ---------------------------------------------------------------------------
# routes (raw builders return terms finished according to ``mode``)


def _direct(q: Fraction, config: ConstructorConfig, mode: str) -> MarkedSP:
    return _finish(cf_graph(q), mode)


def _large(q: Fraction, config: ConstructorConfig, mode: str, *, merge: bool = True) -> MarkedSP:
    if q < 1:
        raise RouteNotApplicable(f"large route needs d/c >= 1, got {q}")
    frac = q - q.numerator // q.denominator
    dec = _decompose(frac, config.max_den, config.max_quotient, config.max_terms)
    return _graph_sum(shifted_parts(q, dec.parts, merge=merge), mode)


def mid_window(d_over_c: RationalLike, K: int) -> tuple[int, Fraction, Fraction]:
    """``(L, d'/c', d/c - d'/c')`` for the unique ``L`` in ``0..K-1`` with
    ``d/c - L/K mod 1`` in ``[1/K, 2/K)``."""
    q = as_rational(d_over_c)
    if K < 2:
        raise ValueError("K must be at least 2")
    scaled = (q - math.floor(q)) * K
    L = (math.floor(scaled) - 1) % K
    rest = q - Fraction(L, K)
    rest -= math.floor(rest)
    return L, rest, q - rest


def _mid_variants(q: Fraction, K: int, config: ConstructorConfig, mode: str) -> list[tuple[str, MarkedSP]]:
    """One candidate per way of realizing the reciprocal of the window remainder."""
    if q < 1:
        raise RouteNotApplicable(f"mid route needs d/c >= 1, got {q}")
    _, rest, piece = mid_window(q, K)
    inner_ratio = 1 / rest
    outer = _graph_sum([piece], mode)
    out = [(f"mid:K={K}", _finish(cf_graph(inner_ratio), mode))]
    out.append((f"mid:K={K}+large", _large(inner_ratio, config, mode)))
    return [(label, _finish(marked_sum(dual(inner), outer), mode)) for label, inner in out]


def _mid(q: Fraction, K: int, config: ConstructorConfig, mode: str) -> MarkedSP:
    return min((term for _, term in _mid_variants(q, K, config, mode)), key=lambda g: (g.n_vertices, g.n_edges))


def _mid_candidates(q: Fraction, config: ConstructorConfig, mode: str) -> list[tuple[str, MarkedSP]]:
    out = []
    for K in config.k_values(q):
        out.extend(_mid_variants(q, K, config, mode))
    return out


def _small_candidates(q: Fraction, config: ConstructorConfig, mode: str, K: Optional[int] = None) -> list[tuple[str, MarkedSP]]:
    if not 0 < q < 1:
        raise RouteNotApplicable(f"small route needs 0 < d/c < 1, got {q}")
    inv = 1 / q
    if K is not None:
        inner = _mid_variants(inv, K, config, mode)
    else:
        inner = _mid_candidates(inv, config, mode) + [("large", _large(inv, config, mode))]
    return [(f"small({label})", _finish(dual(term), mode)) for label, term in inner]


def _route_candidates(q: Fraction, strategy: str, config: ConstructorConfig) -> list[tuple[str, MarkedSP]]:
    mode = _inner_mode(config)
    if strategy == "direct":
        return [("direct", _direct(q, config, mode))]
    if strategy == "large":
        return [("large", _large(q, config, mode))] if q >= 1 else []
    if strategy == "mid":
        return list(_mid_candidates(q, config, mode)) if q >= 1 else []
    if strategy == "small":
        return _small_candidates(q, config, mode) if q < 1 else []
    raise ValueError(f"unknown strategy {strategy!r}")


def _public(term: MarkedSP, config: ConstructorConfig) -> MarkedSP:
    return _finish(term, _final_mode(config))


def realize_direct(d_over_c: RationalLike, config: ConstructorConfig = DEFAULT_CONFIG) -> MarkedSP:
    q = _positive(d_over_c, "realize_direct")
    return _public(_direct(q, config, _inner_mode(config)), config)


def realize_large(d_over_c: RationalLike, config: ConstructorConfig = DEFAULT_CONFIG, *, merge: bool = True) -> MarkedSP:
    """Shift construction for ``d/c >= 1``; raises :class:`RouteNotApplicable`
    below 1, or when ``merge`` is off and the decomposition has more than
    ``floor(d/c)`` summands."""
    q = as_rational(d_over_c)
    return _public(_large(q, config, _inner_mode(config), merge=merge), config)


def realize_mid(d_over_c: RationalLike, config: ConstructorConfig = DEFAULT_CONFIG, K: Optional[int] = None) -> MarkedSP:
    """Window construction for ``d/c >= 1``.  ``K`` defaults to
    ``4 * ceil(C1 * log(c + d))``."""
    q = as_rational(d_over_c)
    if q < 1:
        raise RouteNotApplicable(f"mid route needs d/c >= 1, got {q}")
    if K is None:
        K = config.formula_k(q.denominator, q.numerator)
    return _public(_mid(q, K, config, _inner_mode(config)), config)


def realize_small(d_over_c: RationalLike, config: ConstructorConfig = DEFAULT_CONFIG, K: Optional[int] = None) -> MarkedSP:
    """Dual construction for ``0 < d/c < 1``: realize ``c/d``, then dualize.

    With ``K`` given the inner graph comes from the window construction with
    that ``K``; otherwise the smallest inner candidate is used.
    """
    q = as_rational(d_over_c)
    final = _final_mode(config)
    cands = _small_candidates(q, config, _inner_mode(config), K)
    return _public(min((t for _, t in cands), key=lambda t: _simplified_size(t, final)), config)


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class Certificate:
    target: Fraction
    graph: MarkedGraph
    term: MarkedSP
    tau_g: int
    tau_del: int
    tau_con: int
    zeta: Fraction
    resistance: Fraction
    v_count: int
    e_count: int
    bound_value: Fraction
    size_ratio: Fraction
    strategy: str
    audits: tuple[bounds.Audit, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return all(a.passed for a in self.audits)

    def failed(self) -> list[str]:
        return [a.name for a in self.audits if not a.passed]

    def to_json(self) -> dict:
        return {
            "target": format_rational(self.target),
            "strategy": self.strategy,
            "term": str(self.term),
            "graph": self.graph.to_json(),
            "tau_g": self.tau_g,
            "tau_del": self.tau_del,
            "tau_con": self.tau_con,
            "zeta": format_rational(self.zeta),
            "resistance": format_rational(self.resistance),
            "v_count": self.v_count,
            "e_count": self.e_count,
            "bound_value": format_rational(self.bound_value),
            "size_ratio": format_rational(self.size_ratio),
            "size_ratio_approx": round(float(self.size_ratio), 3),
            "audits": [a.to_json() for a in self.audits],
            "all_pass": self.ok,
        }


def _check_target(c_over_t: RationalLike) -> Fraction:
    q = as_rational(c_over_t)
    if isinstance(c_over_t, str):
        # "3/6" would silently reduce to 1/2; require the reduced spelling
        num, _, den = c_over_t.strip().partition("/")
        if den and gcd(int(num), int(den)) != 1:
            raise ValueError(f"{c_over_t} is not a reduced fraction")
    if not 0 < q < 1:
        raise ValueError(f"target c/t must satisfy t > c >= 1, got {q}")
    return q


def audit_graph(
    graph: MarkedGraph,
    target: RationalLike,
    taus: Optional[tuple[int, int, int]] = None,
) -> list[bounds.Audit]:
    """Every named audit for a graph that should realize resistance ``target``.

    ``taus`` are ``(tau(G), tau(G-e), tau(G/e))``; they are recomputed from
    the graph when omitted.
    """
    target = as_rational(target)
    if taus is None:
        taus = (tau(graph), tau_delete(graph), tau_contract(graph))
    tau_g, tau_del, tau_con = taus
    resistance = Fraction(tau_con, tau_g) if tau_g else None
    audits = [
        bounds.Audit("resistance_exact", resistance == target, resistance or 0, target),
        bounds.Audit("deletion_contraction", tau_g == tau_del + tau_con, tau_g, tau_del + tau_con),
        bounds.Audit("simple", is_simple(graph), int(is_simple(graph)), 1),
        bounds.Audit("proper", is_proper(graph), int(is_proper(graph)), 1),
    ]
    if resistance is None:
        return audits
    audits.append(bounds.audit_commute(graph, resistance))
    audits.append(bounds.audit_lower_bound(graph, target))
    audits.extend(bounds.audit_resistance_chain(graph, target))
    audits.extend(bounds.audit_planar_simple(graph, tau_g))
    audits.append(bounds.audit_tau_growth(graph, tau_g))
    return audits


def verify_certificate(cert: Certificate) -> list[bounds.Audit]:
    """Recompute every count from ``cert.graph`` alone and audit it.

    Consistency of the stored fields with the recomputed ones is audited as
    well, so a tampered certificate fails by name.
    """
    graph = cert.graph
    taus = (tau(graph), tau_delete(graph), tau_contract(graph))
    audits = audit_graph(graph, cert.target, taus)
    stored = (cert.tau_g, cert.tau_del, cert.tau_con)
    audits.append(bounds.Audit("stored_taus", stored == taus, cert.tau_g, taus[0]))
    audits.append(bounds.Audit("term_materializes", materialize(cert.term) == graph, graph.n, cert.term.n_vertices))
    audits.append(bounds.Audit("stored_resistance", cert.resistance == cert.target, cert.resistance, cert.target))
    return audits


def _certify(target: Fraction, term: MarkedSP, strategy: str) -> Certificate:
    graph = materialize(term)
    taus = (tau(graph), tau_delete(graph), tau_contract(graph))
    tau_g, tau_del, tau_con = taus
    bound_value = bounds.upper_bound_value(target)
    return Certificate(
        target=target,
        graph=graph,
        term=term,
        tau_g=tau_g,
        tau_del=tau_del,
        tau_con=tau_con,
        zeta=Fraction(tau_del, tau_con) if tau_con else Fraction(0),
        resistance=Fraction(tau_con, tau_g) if tau_g else Fraction(0),
        v_count=graph.n,
        e_count=graph.n_edges,
        bound_value=bound_value,
        size_ratio=Fraction(graph.n) / bound_value,
        strategy=strategy,
        audits=tuple(audit_graph(graph, target, taus)),
    )


def candidates(c_over_t: RationalLike, config: ConstructorConfig = DEFAULT_CONFIG) -> list[tuple[str, MarkedSP]]:
    """Every finished candidate term from the configured portfolio."""
    target = _check_target(c_over_t)
    q = (1 - target) / target
    mode = _final_mode(config)
    out = []
    for strategy in config.portfolio:
        for label, term in _route_candidates(q, strategy, config):
            out.append((label, _finish(term, mode)))
    return out


def realize(
    c_over_t: RationalLike,
    config: ConstructorConfig = DEFAULT_CONFIG,
    strategy: str = "portfolio",
) -> Certificate:
    """Smallest verified simple planar marked graph with resistance ``c/t``.

    Candidates are ranked by vertex count, then edge count; only the chosen
    one is materialized and counted by the oracle.  If it fails its audits
    the next candidate is tried, so a returned certificate with failing
    audits means every candidate failed.
    """
    target = _check_target(c_over_t)
    if strategy != "portfolio":
        config = replace(config, portfolio=(strategy,))
    q = (1 - target) / target
    mode = _final_mode(config)
    ranked = []
    for order, name in enumerate(config.portfolio):
        for label, term in _route_candidates(q, name, config):
            ranked.append((_simplified_size(term, mode), order, label, term))
    if not ranked:
        raise RouteNotApplicable(f"no route in {config.portfolio} applies to {target}")
    ranked.sort(key=lambda item: item[:3])
    cert = None
    for _, _, label, term in ranked:
        cert = _certify(target, _finish(term, mode), label)
        if cert.ok:
            break
    return cert


# ---------------------------------------------------------------------------
# census


def census_targets(max_t: int, sampler: Optional[Callable[[int], Iterable[int]]] = None) -> list[Fraction]:
    """Reduced ``c/t`` with ``2 <= t <= max_t``, ordered by ``(t, c)``.

    ``sampler(t)`` may restrict which numerators are used for each ``t``.
    """
    if max_t < 2:
        raise ValueError("max_t must be at least 2")
    out = []
    for t in range(2, max_t + 1):
        cs = range(1, t) if sampler is None else sorted(set(sampler(t)))
        out.extend(Fraction(c, t) for c in cs if 1 <= c < t and gcd(c, t) == 1)
    return out


def sample_numerators(per_t: int, seed: int = 0) -> Callable[[int], list[int]]:
    """Sampler for :func:`census_targets`: at most ``per_t`` numerators
    coprime to ``t``, drawn by a generator seeded from ``(seed, t)``."""
    if per_t < 1:
        raise ValueError("per_t must be positive")

    def pick(t: int) -> list[int]:
        cs = [c for c in range(1, t) if gcd(c, t) == 1]
        if len(cs) <= per_t:
            return cs
        return sorted(random.Random(f"{seed}:{t}").sample(cs, per_t))

    return pick


def _census_row(args: tuple[Fraction, ConstructorConfig]) -> dict:
    target, config = args
    try:
        cert = realize(target, config)
    except Exception as exc:  # recorded, never raised: census rows must all be present
        return {"t": target.denominator, "c": target.numerator, "ok": False, "error": repr(exc)}
    return {
        "t": target.denominator,
        "c": target.numerator,
        "strategy": cert.strategy,
        "V": cert.v_count,
        "E": cert.e_count,
        "bound_value": cert.bound_value,
        "size_ratio": cert.size_ratio,
        "ok": cert.ok,
        "failed": cert.failed(),
    }


def census(
    max_t: int,
    config: ConstructorConfig = DEFAULT_CONFIG,
    *,
    targets: Optional[Sequence[Fraction]] = None,
    workers: Optional[int] = None,
) -> dict:
    """Realize and audit every reduced ``c/t`` up to ``max_t``.

    Returns ``{"rows": [...], "summary": {...}}`` with rows ordered by
    ``(t, c)`` whatever the number of workers.
    """
    if targets is None:
        targets = census_targets(max_t)
    workers = workers or os.cpu_count() or 1
    jobs = [(Fraction(x), config) for x in targets]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_census_row, jobs, chunksize=64))
    else:
        rows = [_census_row(job) for job in jobs]
    rows.sort(key=lambda r: (r["t"], r["c"]))
    ratios = [r["size_ratio"] for r in rows if r.get("ok")]
    summary = {
        "count": len(rows),
        "failures": sum(not r["ok"] for r in rows),
        "max_size_ratio": max(ratios) if ratios else None,
        "mean_size_ratio": sum(ratios, Fraction(0)) / len(ratios) if ratios else None,
    }
    return {"rows": rows, "summary": summary}

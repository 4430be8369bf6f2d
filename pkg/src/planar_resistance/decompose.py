"""Cheap signed decompositions ``d/c = q_1 + ... + q_k``.

The constructor needs, for a rational in ``[0, 1)``, a short list of
summands in ``(-1, 1)`` whose partial-quotient sums add up to little.  No
constructive method with a proven logarithmic cost is available, so this
module searches: summands are drawn from a pool of small-denominator
rationals of bounded type (every partial quotient at most ``max_quotient``)
and the last summand is whatever remains.  A single-term decomposition is
always a candidate, so the search never does worse than the trivial answer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .cf import RationalLike, as_rational, format_rational, quotient_sum

__all__ = [
    "Decomposition",
    "DEFAULT_MAX_DEN",
    "DEFAULT_MAX_QUOTIENT",
    "DEFAULT_MAX_TERMS",
    "bounded_type_pool",
    "decompose_trivial",
    "decompose_search",
    "cost_report",
]

DEFAULT_MAX_DEN = 128
DEFAULT_MAX_QUOTIENT = 4
DEFAULT_MAX_TERMS = 3
# remainders kept from the two-term pass when looking for three terms
_BEAM = 8


@dataclass(frozen=True)
class Decomposition:
    target: Fraction
    parts: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "target", Fraction(self.target))
        object.__setattr__(self, "parts", tuple(Fraction(p) for p in self.parts))
        if sum(self.parts, Fraction(0)) != self.target:
            raise ValueError(f"parts {self.parts} do not sum to {self.target}")
        if any(not -1 < p < 1 for p in self.parts):
            raise ValueError("every part must lie strictly between -1 and 1")

    @property
    def cost(self) -> int:
        return sum(quotient_sum(abs(p)) for p in self.parts)

    @property
    def k(self) -> int:
        return len(self.parts)

    def sort_key(self) -> tuple:
        return (self.cost, self.k, tuple(p.denominator for p in self.parts), self.parts)

    def to_json(self) -> dict:
        return {
            "target": format_rational(self.target),
            "parts": [format_rational(p) for p in self.parts],
            "cost": self.cost,
        }


def _check_target(target: Fraction) -> None:
    if not 0 <= target < 1:
        raise ValueError(f"decomposition targets lie in [0, 1), got {target}")


def decompose_trivial(target: RationalLike) -> Decomposition:
    target = as_rational(target)
    _check_target(target)
    return Decomposition(target, () if target == 0 else (target,))


@lru_cache(maxsize=16)
def bounded_type_pool(max_den: int, max_quotient: int) -> tuple[tuple[Fraction, int], ...]:
    """All ``x/b`` in ``(0, 1)`` with ``b <= max_den`` having a continued
    fraction (either of the two) with every partial quotient
    ``<= max_quotient``, paired with their ``S`` and ordered by ``(S, b, x)``."""
    found: dict[Fraction, int] = {}
    # depth-first over [0; a1, ..., aj] carrying the last two convergents
    stack = [(1, 0, 0, 1, 0)]
    while stack:
        p0, q0, p1, q1, s = stack.pop()
        for a in range(1, max_quotient + 1):
            p, q = a * p1 + p0, a * q1 + q0
            if q > max_den:
                break
            if p < q:
                found[Fraction(p, q)] = s + a
            stack.append((p1, q1, p, q, s + a))
    # S is representation independent, so duplicates carry equal sums
    return tuple(sorted(found.items(), key=lambda item: (item[1], item[0].denominator, item[0])))


def _int_quotient_sum(p: int, r: int) -> int:
    # Euclid on an unreduced pair yields the same quotients as the reduced one
    total = 0
    while r:
        a, rem = divmod(p, r)
        total += a
        p, r = r, rem
    return total


@lru_cache(maxsize=16)
def _pool_arrays(max_den: int, max_quotient: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    pool = bounded_type_pool(max_den, max_quotient)
    xn = np.array([x.numerator for x, _ in pool], dtype=np.int64)
    xd = np.array([x.denominator for x, _ in pool], dtype=np.int64)
    cost = np.array([s for _, s in pool], dtype=np.int64)
    return xn, xd, cost


def _capped_quotient_sums(num: np.ndarray, den: np.ndarray, base: np.ndarray, ceiling: int) -> np.ndarray:
    """``base + S(num/den)`` elementwise, or ``ceiling`` once that is reached.

    Elements are dropped from the Euclid loop as soon as their running sum
    hits the ceiling.
    """
    out = np.full(num.shape, ceiling, dtype=np.int64)
    idx = np.arange(num.size)
    p, r, total = num.copy(), den.copy(), base.copy()
    while idx.size:
        q = p // r
        total = total + q
        rem = p - q * r
        done = rem == 0
        out[idx[done & (total < ceiling)]] = total[done & (total < ceiling)]
        live = ~done & (total < ceiling)
        idx, p, r, total = idx[live], r[live], rem[live], total[live]
    return out


_INT64_SAFE = 2 ** 62


def _splits(target: Fraction, max_den: int, max_quotient: int, ceiling: int, keep: int) -> list[tuple[int, Fraction, Fraction]]:
    """The ``keep`` cheapest splits ``target = q + r`` with ``q = +-x`` from the
    pool, ``0 < |r| < 1`` and cost below ``ceiling``, as ``(cost, q, r)``
    ordered by ``(cost, den(q), q)``."""
    p, c = target.numerator, target.denominator
    xn, xd, sx = _pool_arrays(max_den, max_quotient)
    ok = sx + 1 < ceiling
    if not ok.any():
        return []
    if abs(p) * max_den >= _INT64_SAFE // 2 or c * max_den >= _INT64_SAFE // 2:
        return _splits_slow(target, bounded_type_pool(max_den, max_quotient), ceiling, keep)
    xn, xd, sx = xn[ok], xd[ok], sx[ok]
    den = c * xd
    found = []
    for sign in (1, -1):
        # q = sign * x, r = target - q
        num = p * xd - sign * xn * c
        valid = (num != 0) & (np.abs(num) < den)
        cost = np.full(num.shape, ceiling, dtype=np.int64)
        cost[valid] = _capped_quotient_sums(np.abs(num[valid]), den[valid], sx[valid], ceiling)
        for i in np.nonzero(cost < ceiling)[0]:
            found.append((int(cost[i]), int(xd[i]), sign * Fraction(int(xn[i]), int(xd[i]))))
    found.sort(key=lambda item: (item[0], item[1], item[2]))
    return [(cost, q, target - q) for cost, _, q in found[:keep]]


def _splits_slow(target: Fraction, pool: Sequence[tuple[Fraction, int]], ceiling: int, keep: int) -> list[tuple[int, Fraction, Fraction]]:
    p, c = target.numerator, target.denominator
    out = []
    for x, s in pool:
        # S(|r|) >= 1 for r != 0 and the pool is sorted by S
        if s + 1 >= ceiling:
            break
        xn, xd = x.numerator, x.denominator
        for q in (x, -x):
            num = p * xd - q.numerator * c
            if num == 0 or abs(num) >= c * xd:
                continue
            cost = s + _int_quotient_sum(abs(num), c * xd)
            if cost < ceiling:
                out.append((cost, q, target - q))
    out.sort(key=lambda item: (item[0], item[1].denominator, item[1]))
    return out[:keep]


def decompose_search(
    target: RationalLike,
    max_den: int = DEFAULT_MAX_DEN,
    max_quotient: int = DEFAULT_MAX_QUOTIENT,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> Decomposition:
    """Lowest-cost decomposition found within the budgets.

    Ties go to fewer terms, then to lexicographically smaller denominators.
    """
    target = as_rational(target)
    _check_target(target)
    if min(max_den, max_quotient, max_terms) < 1:
        raise ValueError("budgets must be positive")
    best = decompose_trivial(target)
    if target == 0 or max_terms == 1:
        return best
    def consider(parts: Iterable[Fraction]) -> None:
        nonlocal best
        cand = Decomposition(target, tuple(sorted(parts, key=lambda p: (p.denominator, p))))
        if cand.sort_key() < best.sort_key():
            best = cand

    splits = _splits(target, max_den, max_quotient, best.cost, _BEAM if max_terms >= 3 else 1)
    if splits:
        _, q, r = splits[0]
        consider((q, r))
    if max_terms >= 3:
        for _, q, r in splits:
            inner = _splits(r, max_den, max_quotient, best.cost - quotient_sum(abs(q)), 1)
            if inner:
                _, q2, r2 = inner[0]
                consider((q, q2, r2))
    return best


def cost_report(samples: Iterable[RationalLike], **budgets) -> dict:
    """Achieved cost per sample against ``log(c + d)`` (natural log)."""
    rows = []
    for raw in samples:
        target = as_rational(raw)
        dec = decompose_search(target, **budgets)
        size = target.numerator + target.denominator
        if target == 0:
            rows.append({"target": target, "cost": dec.cost, "log": None, "ratio": None, "skipped": True})
            continue
        log = math.log(size)
        rows.append({"target": target, "cost": dec.cost, "log": log, "ratio": dec.cost / log, "skipped": False,
                     "parts": dec.parts})
    ratios = [r["ratio"] for r in rows if not r["skipped"]]
    summary = {
        "count": len(rows),
        "skipped": sum(r["skipped"] for r in rows),
        "max_ratio": max(ratios) if ratios else None,
        "mean_ratio": sum(ratios) / len(ratios) if ratios else None,
    }
    return {"rows": rows, "summary": summary}

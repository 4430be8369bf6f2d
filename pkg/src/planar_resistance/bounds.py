"""Lower-bound checks for marked graphs with a given effective resistance.

Every check here is an inequality that holds for all graphs of the stated
class, so a failure on any input points at a bug upstream.  All comparisons
are exact: logarithms are replaced by bit lengths, and 5.23 is 523/100.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .cf import RationalLike, as_rational, format_rational
from .sp import MarkedGraph, is_simple
from .tau import tau, tau_contract

__all__ = [
    "Audit",
    "LOWER_CONSTANT",
    "TAU_GROWTH_BASE",
    "log2_lower",
    "log2_upper",
    "lower_bound_value",
    "upper_bound_value",
    "check_commute_bound",
    "check_planar_simple_bounds",
    "check_tau_growth",
    "audit_commute",
    "audit_planar_simple",
    "audit_tau_growth",
    "audit_lower_bound",
    "audit_resistance_chain",
]

LOWER_CONSTANT = Fraction(3, 5)
TAU_GROWTH_BASE = Fraction(523, 100)


@dataclass(frozen=True)
class Audit:
    name: str
    passed: bool
    lhs: Fraction | int
    rhs: Fraction | int

    def to_json(self) -> dict:
        def fmt(x):
            return format_rational(Fraction(x))

        return {"name": self.name, "pass": self.passed, "lhs": fmt(self.lhs), "rhs": fmt(self.rhs)}


def _target(c_over_t: RationalLike) -> tuple[int, int]:
    q = as_rational(c_over_t)
    if not 0 < q < 1:
        raise ValueError(f"target must lie strictly between 0 and 1, got {q}")
    return q.numerator, q.denominator


def log2_lower(t: int) -> int:
    """``bitlen(t) - 1 <= log2(t)``."""
    return t.bit_length() - 1


def log2_upper(t: int) -> int:
    """``bitlen(t) >= log2(t)``."""
    return t.bit_length()


def lower_bound_value(c_over_t: RationalLike) -> Fraction:
    """``0.6 * max{t/c, t/(t-c), bitlen(t) - 1}``: the least admissible |V|."""
    c, t = _target(c_over_t)
    return LOWER_CONSTANT * max(Fraction(t, c), Fraction(t, t - c), Fraction(log2_lower(t)))


def upper_bound_value(c_over_t: RationalLike) -> Fraction:
    """``max{t/c, t/(t-c), bitlen(t)}``, the scale against which sizes are reported."""
    c, t = _target(c_over_t)
    return max(Fraction(t, c), Fraction(t, t - c), Fraction(log2_upper(t)))


def _resistance(g: MarkedGraph, resistance: Optional[Fraction]) -> Fraction:
    if resistance is not None:
        return resistance
    total = tau(g)
    if total == 0:
        raise ValueError("graph is disconnected")
    return Fraction(tau_contract(g), total)


def audit_commute(g: MarkedGraph, resistance: Optional[Fraction] = None) -> Audit:
    """Resistance of the marked edge ``(x, y)`` is at least
    ``(1/deg x + 1/deg y) / 2``."""
    x, y = g.marked_edge
    deg = g.degrees()
    rhs = (Fraction(1, deg[x]) + Fraction(1, deg[y])) / 2
    lhs = _resistance(g, resistance)
    return Audit("commute_time", lhs >= rhs, lhs, rhs)


def check_commute_bound(g: MarkedGraph, resistance: Optional[Fraction] = None) -> bool:
    return audit_commute(g, resistance).passed


def audit_planar_simple(g: MarkedGraph, tau_g: Optional[int] = None) -> list[Audit]:
    """Euler bounds for simple planar graphs and ``tau(G) < 2^|E| <= 2^(3|V|)``."""
    if tau_g is None:
        tau_g = tau(g)
    n, m = g.n, g.n_edges
    simple = is_simple(g) and n >= 3
    return [
        Audit("euler_edges", simple and m <= 3 * n - 6, m, 3 * n - 6),
        Audit("euler_faces", simple and g.faces() <= 2 * n - 4, g.faces(), 2 * n - 4),
        Audit("tau_below_2^E", tau_g < 2 ** m, tau_g, 2 ** m),
        Audit("tau_below_2^3V", tau_g < 2 ** (3 * n), tau_g, 2 ** (3 * n)),
    ]


def check_planar_simple_bounds(g: MarkedGraph, tau_g: Optional[int] = None) -> bool:
    return all(a.passed for a in audit_planar_simple(g, tau_g))


def audit_tau_growth(g: MarkedGraph, tau_g: Optional[int] = None) -> Audit:
    if tau_g is None:
        tau_g = tau(g)
    rhs = TAU_GROWTH_BASE ** g.n
    return Audit("tau_below_5.23^V", tau_g < rhs, tau_g, rhs)


def check_tau_growth(g: MarkedGraph, tau_g: Optional[int] = None) -> bool:
    return audit_tau_growth(g, tau_g).passed


def audit_lower_bound(g: MarkedGraph, c_over_t: RationalLike) -> Audit:
    rhs = lower_bound_value(c_over_t)
    return Audit("vertex_lower_bound", g.n >= rhs, g.n, rhs)


def audit_resistance_chain(g: MarkedGraph, c_over_t: RationalLike) -> list[Audit]:
    """``|V| > t/c`` and ``|V| > t / (2(t-c))`` for simple proper graphs."""
    c, t = _target(c_over_t)
    first = Fraction(t, c)
    second = Fraction(t, 2 * (t - c))
    return [
        Audit("vertices_above_t/c", g.n > first, g.n, first),
        Audit("vertices_above_t/2(t-c)", g.n > second, g.n, second),
    ]

"""Exact rationals and finite continued fractions.

Rationals are plain :class:`fractions.Fraction` values, which are always
stored reduced with a positive denominator.  This module adds the
continued-fraction algebra on top: conversion in both directions, the
partial-quotient sum ``S``, switching between the two representations of a
rational, and the ``1 - q`` / ``1 + q`` rewrites used when shifting signed
summands into positive ones.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence, Union

__all__ = [
    "ContinuedFraction",
    "RationalLike",
    "as_rational",
    "parse_rational",
    "format_rational",
    "cf_from_rational",
    "cf_to_rational",
    "cf_normalize_parity",
    "cf_complement",
    "cf_one_plus",
    "quotient_sum",
]

RationalLike = Union[Fraction, int, str]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` into a reduced Fraction.

    Decimal or exponent notation is refused; only exact integer forms are
    accepted.
    """
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"not a rational of the form p/q: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def as_rational(value: RationalLike) -> Fraction:
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


@dataclass(frozen=True)
class ContinuedFraction:
    """A finite continued fraction ``[a0; a1, ..., al]``.

    ``S`` (the sum of all partial quotients) is computed once at
    construction.
    """

    a0: int
    quotients: tuple[int, ...] = ()
    S: int = field(init=False, compare=False)

    def __post_init__(self) -> None:
        qs = tuple(int(a) for a in self.quotients)
        object.__setattr__(self, "quotients", qs)
        if self.a0 < 0:
            raise ValueError("a0 must be non-negative")
        if any(a < 1 for a in qs):
            raise ValueError("partial quotients after a0 must be positive")
        object.__setattr__(self, "S", self.a0 + sum(qs))

    @classmethod
    def from_terms(cls, terms: Sequence[int]) -> "ContinuedFraction":
        if not terms:
            raise ValueError("a continued fraction needs at least a0")
        return cls(int(terms[0]), tuple(terms[1:]))

    @property
    def terms(self) -> tuple[int, ...]:
        return (self.a0,) + self.quotients

    @property
    def length(self) -> int:
        """Number of partial quotients after ``a0``."""
        return len(self.quotients)

    def value(self) -> Fraction:
        return cf_to_rational(self)

    def __str__(self) -> str:
        if not self.quotients:
            return f"[{self.a0}]"
        return f"[{self.a0};{','.join(map(str, self.quotients))}]"


def cf_from_rational(q: RationalLike) -> ContinuedFraction:
    """Canonical (Euclidean) continued fraction of ``q >= 0``."""
    q = as_rational(q)
    if q < 0:
        raise ValueError(f"continued fractions are defined here for q >= 0, got {q}")
    p, r = q.numerator, q.denominator
    a0, p = divmod(p, r)
    quotients = []
    while p:
        a, rem = divmod(r, p)
        quotients.append(a)
        r, p = p, rem
    return ContinuedFraction(a0, tuple(quotients))


def quotient_sum(q: RationalLike) -> int:
    """``S(q)``, the sum of partial quotients of ``q >= 0``; ``S(0) = 0``."""
    q = as_rational(q)
    if q < 0:
        raise ValueError(f"S is defined for q >= 0, got {q}")
    p, r = q.numerator, q.denominator
    total = 0
    while r:
        a, rem = divmod(p, r)
        total += a
        p, r = r, rem
    return total


def cf_to_rational(cf: ContinuedFraction | Iterable[int]) -> Fraction:
    terms = cf.terms if isinstance(cf, ContinuedFraction) else tuple(cf)
    # backward recurrence on (num, den) keeps everything integral
    num, den = terms[-1], 1
    for a in reversed(terms[:-1]):
        num, den = a * num + den, num
    return Fraction(num, den)


def _toggled(cf: ContinuedFraction) -> ContinuedFraction:
    # [.., a_l] <-> [.., a_l - 1, 1]
    terms = list(cf.terms)
    if len(terms) > 1 and terms[-1] == 1:
        terms.pop()
        terms[-1] += 1
    else:
        if terms[-1] < 1:
            raise ValueError("the value 0 has a single representation")
        terms[-1] -= 1
        terms.append(1)
    return ContinuedFraction.from_terms(terms)


def cf_normalize_parity(cf: ContinuedFraction, even_length: bool) -> ContinuedFraction:
    """Return the representation of ``cf``'s value whose length has the
    requested parity (``even_length=True`` means an even number of
    quotients after ``a0``)."""
    if (cf.length % 2 == 0) == even_length:
        return cf
    if cf.a0 == 0 and not cf.quotients:
        raise ValueError("0 has only the representation [0]")
    return _toggled(cf)


def cf_complement(q: RationalLike) -> ContinuedFraction:
    """Continued fraction of ``1 - q`` for ``0 < q < 1``, written without a0.

    If ``q = [a1, ..., al]`` then ``1 - q`` is ``[1, a1 - 1, a2, ..., al]``
    when ``a1 > 1`` and ``[a2 + 1, a3, ..., al]`` when ``a1 == 1``.
    """
    q = as_rational(q)
    if not 0 < q < 1:
        raise ValueError(f"complement needs 0 < q < 1, got {q}")
    a = list(cf_from_rational(q).quotients)
    if a[0] > 1:
        out = [1, a[0] - 1] + a[1:]
    else:
        # a1 == 1 forces l >= 2 in canonical form
        out = [a[1] + 1] + a[2:]
    return ContinuedFraction(0, tuple(out))


def cf_one_plus(q: RationalLike) -> ContinuedFraction:
    """Continued fraction of ``1 + q`` for ``-1 < q < 1`` with
    ``S(result) <= 1 + S(|q|)``."""
    q = as_rational(q)
    if not -1 < q < 1:
        raise ValueError(f"one_plus needs -1 < q < 1, got {q}")
    if q >= 0:
        return ContinuedFraction(1, cf_from_rational(q).quotients)
    return cf_complement(-q)

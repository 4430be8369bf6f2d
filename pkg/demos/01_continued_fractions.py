"""
Continued fractions and the partial-quotient sum
================================================

Every size in the constructions is driven by S(q), the sum of the partial
quotients of q.  This walk-through shows the two representations of a
rational and the rewrites for 1 - q and 1 + q.
"""

from fractions import Fraction

from planar_resistance import (
    cf_complement,
    cf_from_rational,
    cf_normalize_parity,
    cf_one_plus,
    quotient_sum,
)

# %%
# The Euclidean algorithm gives the canonical form.
q = Fraction(3, 7)
cf = cf_from_rational(q)
print(q, "=", cf, "S =", cf.S)

# The last quotient can be split off as a trailing 1 without changing
# the value or S.
other = cf_normalize_parity(cf, even_length=cf.length % 2 == 1)
print(q, "=", other, "S =", other.S, "value", other.value())

# %%
# 1 - q and 1 + q stay cheap: at most one more unit of S.
for x in (Fraction(1, 2), Fraction(3, 7), Fraction(2, 3)):
    comp = cf_complement(x)
    print(f"1 - {x} = {comp.value()} = {comp}   S {comp.S} <= {1 + quotient_sum(x)}")

for x in (Fraction(1, 2), Fraction(-3, 7)):
    one = cf_one_plus(x)
    print(f"1 + ({x}) = {one.value()} = {one}   S {one.S} <= {1 + quotient_sum(abs(x))}")

# %%
# S can be tiny or huge for fractions of the same size.
for x in (Fraction(89, 144), Fraction(1, 144)):
    print(x, "S =", quotient_sum(x))

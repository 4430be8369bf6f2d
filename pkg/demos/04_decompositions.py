"""
Cheap signed decompositions
===========================

A fraction with a large partial-quotient sum can often be written as a
short sum of fractions whose sums are small.  The search draws summands
from bounded-type fractions and never does worse than the fraction itself.
"""

import math
import random
from fractions import Fraction

import numpy as np

from planar_resistance import cost_report, decompose_search, quotient_sum

# %%
# 1/89 costs 89 on its own.
d = decompose_search(Fraction(1, 89))
print(" + ".join(map(str, d.parts)), "=", d.target, "cost", d.cost, "instead of", quotient_sum(d.target))

# %%
# Cost against log(c + d) over random targets with denominators up to 10^5.
rng = random.Random(1)
samples = []
for _ in range(300):
    c = rng.randint(2, 10**5)
    samples.append(Fraction(rng.randrange(1, c), c))
report = cost_report(samples)
ratios = np.array([row["ratio"] for row in report["rows"]])
trivial = np.array([quotient_sum(q) / math.log(q.numerator + q.denominator) for q in samples])
print(f"search : mean {ratios.mean():.2f}, max {ratios.max():.2f}")
print(f"trivial: mean {trivial.mean():.2f}, max {trivial.max():.2f}")

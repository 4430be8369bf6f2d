"""
Realizing a prescribed resistance
=================================

``realize`` builds candidates from every applicable route, keeps the one
with the fewest vertices, and certifies it with exact spanning-tree
counts and lower-bound audits.
"""

from fractions import Fraction

from planar_resistance import candidates, realize

# %%
cert = realize(Fraction(5, 17))
print("resistance", cert.resistance, "via", cert.strategy)
print("|V| =", cert.v_count, "|E| =", cert.e_count, "size ratio", cert.size_ratio)
print("tau(G) =", cert.tau_g, "= tau(G-e) + tau(G/e) =", cert.tau_del, "+", cert.tau_con)
for audit in cert.audits:
    print(f"  {'pass' if audit.passed else 'FAIL'}  {audit.name}: {audit.lhs} vs {audit.rhs}")

# %%
# Every candidate realizes the target; they differ only in size.
sizes = sorted((term.n_vertices, label) for label, term in candidates(Fraction(5, 17)))
for v, label in sizes[:5]:
    print(f"{v:4d} vertices  {label}")
print("...", len(sizes), "candidates in total")

# %%
# Targets near 0 or 1 need on the order of t vertices.
for target in (Fraction(1, 60), Fraction(59, 60), Fraction(29, 60)):
    c = realize(target)
    print(target, c.strategy, c.v_count, "vertices")

"""
Marked graphs as series-parallel terms
======================================

A marked graph is stored as the two-terminal network left after deleting
its marked edge.  Duplication, subdivision, gluing, plane duality and
simplification are all rewrites on that term, and the spanning tree
ratio zeta follows along exactly.
"""

from planar_resistance import (
    LEAF,
    dual,
    is_simple,
    k_duplicate,
    k_subdivide,
    marked_sum,
    materialize,
    simplify,
    single_edge,
)

# %%
# Start from one edge, triple it, then subdivide twice: zeta = 3/7.
g = k_subdivide(k_duplicate(single_edge(), 3), 2)
print("term", g, "zeta", g.zeta, "edges", g.n_edges, "vertices", g.n_vertices)

# %%
# Gluing two graphs along the marked edge adds their zeta values.
tri = k_subdivide(LEAF, 1)
both = marked_sum(g, tri)
print(f"{g.zeta} + {tri.zeta} = {both.zeta}   term {both}")

# %%
# The plane dual swaps series with parallel and inverts zeta.
d = dual(g)
print("dual", d, "zeta", d.zeta)

# %%
# Simplification removes parallel edges at a cost of 4(|E| - 1) + 1 edges.
m = materialize(d)
s = simplify(d)
ms = materialize(s)
print("dual simple?", is_simple(m), "| simplified simple?", is_simple(ms))
print("edges", m.n_edges, "->", ms.n_edges, "| zeta", s.zeta)

# %%
# Concrete graphs export as JSON or DOT; the marked edge is drawn bold.
print(materialize(tri).dumps())
print(materialize(tri).to_dot())

"""
A small census
==============

Realize every reduced c/t with t up to 60 and look at how the vertex count
compares with max{t/c, t/(t-c), log2 t}.
"""

import numpy as np

from planar_resistance import census

# %%
result = census(60)
rows = result["rows"]
print(result["summary"]["count"], "targets,", result["summary"]["failures"], "failures")

ratio = np.array([float(r["size_ratio"]) for r in rows])
t = np.array([r["t"] for r in rows])
print(f"size ratio: mean {ratio.mean():.2f}, max {ratio.max():.2f}")

# %%
# Largest ratio in each band of t.
for lo in range(10, 61, 10):
    window = ratio[(t > lo - 10) & (t <= lo)]
    print(f"t in ({lo - 10:2d}, {lo:2d}]: max {window.max():.2f}")

# %%
# Which routes win?
labels, counts = np.unique([r["strategy"].split(":")[0].split("(")[0] for r in rows], return_counts=True)
for label, count in zip(labels, counts):
    print(f"{label:7s} {count}")

"""
Scores along paths
==================

Two DMUs, one input and one output. The same unit gets very different
scores depending on how the path through it is shaped and which direction
it follows.
"""

# %%
# A technology is built from an m x n input matrix and an s x n output matrix.
import numpy as np

from pathdea import Model, build_technology, evaluate

T = build_technology([[1, 5]], [[5, 1]], ["A", "B"])

# %%
# The linear pair (directional distance function) with data-independent
# directions: B scores -1/3, -1 and -3.
for family in ("g4", "g5", "g6"):
    res = evaluate(T, Model.parse("ddf", family), 1)
    print(f"ddf {family}: theta = {res.theta_star:.6f}")

# %%
# Other psi pairs keep the score inside (0, 1] because their domain is the
# positive half line.
for name in ("hdf", "bcc-i", "bcc-o", "log", "power:2"):
    res = evaluate(T, Model.parse(name, "g1"), 1)
    print(f"{name:8s} g1: theta = {res.theta_star:.6f}  projection x={res.projection.x} y={res.projection.y}")

# %%
# The path itself: points move toward smaller inputs and larger outputs as
# the parameter falls.
p = Model.parse("hdf", "g1").problem(T, T.unit(1))
for t in np.linspace(1.0, 0.2, 5):
    q = p.path.point(t)
    print(f"theta={t:.2f}  x={q.x[0]:.3f}  y={q.y[0]:.3f}")

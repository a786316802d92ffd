"""
Weak frontier points and super-efficiency
=========================================

A unit can score 1 and still carry slack. The second phase finds that
slack and a strongly efficient benchmark. Units outside the technology get
scores above 1, or a certificate that no score exists.
"""

# %%
from pathdea import Model, Unit, build_technology, classify_unit, evaluate, evaluate_super

# two inputs, one output; the constant output row is kept on purpose
T = build_technology([[1, 0], [0, 1]], [[1, 1]], ["A", "B"], constant="keep")
C = Unit([0.5, 0.5], [0.5])

res = evaluate(T, Model.parse("ddf", "g2"), C)
print("score", res.theta_star, "status", res.status.value)
print("slacks", res.slacks_x, res.slacks_y, "benchmark", res.benchmark)
print("class of C:", classify_unit(T, C).value)
print("class of the benchmark:", classify_unit(T, res.benchmark).value)

# %%
# Super-efficiency: the same unit and direction, two psi pairs.
T2 = build_technology([[1, 1]], [[1, 10], [10, 1]], ["A", "B"], constant="keep")
u = Unit([2], [8, 8])
for name in ("hdf", "ddf"):
    r = evaluate_super(T2, Model.parse(name, "custom:1|2;2"), u)
    print(f"{name}: status={r.status.value} theta={r.theta_star} certificate={r.certificate}")
    for note in r.diagnostics:
        print("   ", note)

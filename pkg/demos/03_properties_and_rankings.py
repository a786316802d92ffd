"""
Property checks and a ranking table
===================================

The analysis module tests invariance, monotonicity and homogeneity on a
dataset and stores a replayable counterexample when a property fails. The
bundled 30-DMU dataset has negative outputs, so absolute-value directions
are used by default.
"""

# %%
import numpy as np

from pathdea import Model, evaluate_all
from pathdea.analysis import (
    check_homogeneity,
    check_translation_invariance,
    check_unit_invariance,
    rank_table,
)
from pathdea.instances import random_instance, synthetic30

T = random_instance(np.random.default_rng(7), n=10, m=2, s=2)

# %%
# G6 ignores units of measurement, so rescaling the data changes its scores.
for family in ("g1", "g6"):
    rep = check_unit_invariance(T, Model.parse("ddf", family), [2.0, 3.0], [4.0, 0.5])
    print(family, "unit invariance:", rep.verdict.value, "predicted", rep.predicted.value)
    if rep.counterexample is not None:
        print("   counterexample replays:", rep.counterexample.replay())

# %%
# G1 depends on the position of the unit, so translations change its scores.
for family in ("g1", "g2"):
    rep = check_translation_invariance(T, Model.parse("ddf", family), 3.0, 2.0)
    print(family, "translation invariance:", rep.verdict.value)

# %%
# HDF with G1 scales like mu when inputs shrink by mu and outputs grow by mu.
rep = check_homogeneity(T, Model.parse("hdf", "g1"), -1.0, 1.0)
print("hdf homogeneity:", rep.verdict.value, "worst error", rep.details["worst_relative_error"])

# %%
# Rank the bundled dataset under HDF-G2.
S = synthetic30()
table = rank_table(evaluate_all(S, Model.parse("hdf", "g2")))
for row in sorted(table.rows, key=lambda r: -r.score)[:10]:
    print(f"{row.dmu}  {row.score:.4f}  rank {row.rank:6s} {'*' if row.star else ''}")
print("average", round(table.average, 4), "minimum", round(table.minimum, 4), "correct", table.correct)

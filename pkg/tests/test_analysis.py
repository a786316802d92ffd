import math

import numpy as np
import pytest

from pathdea.analysis import (
    Verdict,
    check_boundedness,
    check_g_homogeneity,
    check_homogeneity,
    check_monotonicity,
    check_translation_invariance,
    check_unit_invariance,
    homogeneity_degree,
    predicted_monotonicity,
    rank_table,
)
from pathdea.core import build_technology
from pathdea.errors import NonPositiveData, NotLinearModel
from pathdea.instances import negative_pair, random_instance, two_unit
from pathdea.paths import make_psi
from pathdea.solver import EfficiencyResult, Model, Status, evaluate_all


def positive(seed, n=8):
    return random_instance(np.random.default_rng(seed), n=n, m=2, s=2)


def test_boundedness_holds_for_hdf():
    rep = check_boundedness(positive(1), Model.parse("hdf", "g1"))
    assert rep.verdict is Verdict.HOLDS and rep.matches_theory


def test_boundedness_fails_for_ddf_g6_on_two_units():
    rep = check_boundedness(two_unit(), Model.parse("ddf", "g6"))
    assert rep.verdict is Verdict.FAILS
    assert rep.counterexample.replay()
    assert rep.counterexample.theta_a == pytest.approx(-3.0, abs=1e-9)


@pytest.mark.parametrize("family", ["g1", "g2", "g3", "g4", "g5", "g6"])
def test_unit_invariance_matches_prediction(family):
    T = positive(3)
    rep = check_unit_invariance(T, Model.parse("ddf", family), [2.0, 4.0], [3.0, 5.0])
    assert rep.matches_theory, rep.details
    if family == "g6":
        assert rep.counterexample is not None and rep.counterexample.replay()


@pytest.mark.parametrize("family", ["g1", "g2", "g3", "g4", "g5", "g6"])
def test_translation_invariance_matches_prediction(family):
    T = positive(5)
    rep = check_translation_invariance(T, Model.parse("ddf", family), [3.0, 2.0], [1.5, 4.0])
    assert rep.matches_theory, rep.details
    if family in ("g1", "g4"):
        assert rep.verdict is Verdict.FAILS and rep.counterexample.replay()


@pytest.mark.parametrize("model,family", [("ddf", "g2"), ("hdf", "g3"), ("ddf", "g1"),
                                          ("hdf", "g1"), ("log", "g6")])
def test_monotonicity_on_positive_data(model, family):
    rep = check_monotonicity(positive(7), Model.parse(model, family), probe_count=10)
    assert rep.verdict is Verdict.HOLDS
    assert rep.details["comparisons"] > 0


def test_monotonicity_prediction_for_g1_on_negative_data():
    m = Model.parse("ddf", "g1")
    assert predicted_monotonicity(m, negative_pair()) is Verdict.INCONCLUSIVE
    assert predicted_monotonicity(m, two_unit()) is Verdict.HOLDS


@pytest.mark.parametrize("model,deg", [("hdf", (-1.0, 1.0)), ("bcc-i", (-1.0, 0.0)),
                                       ("bcc-o", (0.0, 1.0)), ("gdf:0.5", (-0.5, 0.5))])
def test_homogeneity_degrees(model, deg):
    m = Model.parse(model, "g1")
    assert homogeneity_degree(m.psi) == deg
    rep = check_homogeneity(positive(2, n=6), m, *deg)
    assert rep.verdict is Verdict.HOLDS, rep.details
    assert rep.details["comparisons"] > 0


def test_homogeneity_wrong_degree_fails():
    rep = check_homogeneity(positive(2, n=6), Model.parse("hdf", "g1"), -1.0, 0.5)
    assert rep.verdict is Verdict.FAILS and rep.counterexample.replay()


def test_homogeneity_needs_positive_data():
    with pytest.raises(NonPositiveData):
        check_homogeneity(negative_pair(), Model.parse("hdf", "g1"), -1, 1)
    rep = check_homogeneity(negative_pair(), Model.parse("hdf", "g1"), -1, 1, extension=True)
    assert rep.details["extension_mode"]


def test_homogeneity_degree_outside_family():
    assert homogeneity_degree(make_psi("linear", "log")) is None
    assert homogeneity_degree(make_psi("linear", "affine2")) is None


def test_g_homogeneity():
    T = positive(4)
    for u in T.units():
        rep = check_g_homogeneity(T, u, Model.parse("ddf", "g1"))
        assert rep.verdict is Verdict.HOLDS
    u = T.unit(T.n - 1)  # interior unit
    rep = check_g_homogeneity(T, u, Model.parse("hdf", "g1"))
    assert rep.verdict is Verdict.FAILS and rep.matches_theory
    assert rep.counterexample.replay()
    with pytest.raises(NotLinearModel):
        check_g_homogeneity(T, u, Model.parse("hdf", "g1"), require_linear=True)


def test_report_serialises():
    rep = check_unit_invariance(positive(3), Model.parse("ddf", "g6"), 2.0, 3.0)
    d = rep.to_dict()
    assert d["verdict"] == "FailsWithCounterexample" and d["matches_theory"] is True
    assert "counterexample" in d


def r(theta, strong=True, status=Status.SOLVED):
    return EfficiencyResult(theta, status, strongly_efficient_projection=strong)


def test_rank_table_ties_and_summary():
    res = [r(1.0), r(0.5), r(1.0 - 1e-10), r(0.7, strong=False), r(math.inf, status=Status.INFEASIBLE)]
    table = rank_table(res, ["a", "b", "c", "d", "e"])
    assert [row.rank for row in table.rows] == ["1-2", "4", "1-2", "3", "-"]
    assert table.average == pytest.approx((2.0 - 1e-10 + 1.2) / 4)
    assert table.minimum == 0.5
    assert table.correct == 3
    assert table.by_dmu("e").star is False


def test_rank_table_two_unit():
    T = two_unit()
    table = rank_table(evaluate_all(T, Model.parse("ddf", "g6")))
    assert [row.rank for row in table.rows] == ["1", "2"]
    assert table.average == pytest.approx(-1.0)
    assert table.correct == 2


def test_rank_table_on_constant_output_data():
    T = build_technology([[1, 2, 3]], [[1, 2, 2.5]])
    table = rank_table(evaluate_all(T, Model.parse("hdf", "g1")))
    assert table.rows[0].rank == "1-3"

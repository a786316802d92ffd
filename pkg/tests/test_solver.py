import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pathdea.analysis import linear_score_lower_bound
from pathdea.core import Unit, build_technology
from pathdea.directions import DirectionPair
from pathdea.errors import (
    ConfigError,
    NotLinearModel,
    UnitInsideTechnology,
    UnitOutsideTechnology,
)
from pathdea.instances import (
    negative_pair,
    negative_triple,
    random_instance,
    single_dmu,
    two_output,
    two_unit,
    weak_frontier,
)
from pathdea.paths import make_psi
from pathdea.solver import (
    GsProblem,
    Model,
    SolveOptions,
    Status,
    UnitClass,
    classify_unit,
    evaluate,
    evaluate_all,
    evaluate_super,
    leave_one_out_super,
    membership,
    parse_model,
    second_phase,
    second_phase_at,
    solve_gs,
    solve_linear_direct,
    super_efficiency,
)

from oracles import classify_1d, max_slack_by_vertices

MODELS = ["ddf", "hdf", "bcc-i", "bcc-o", "log", "exp", "power:2", "gdf:0.5"]


@pytest.mark.parametrize("family,want", [("g4", -1 / 3), ("g5", -1.0), ("g6", -3.0)])
def test_two_unit_scores(family, want):
    T = two_unit()
    res = evaluate(T, Model.parse("ddf", family), 1)
    assert res.theta_star == pytest.approx(want, abs=1e-9)
    assert res.solved and res.dmu == "B"


def test_negative_data_scores():
    assert evaluate(negative_pair(), Model.parse("ddf", "g1,abs"), 1).theta_star == pytest.approx(
        -1 / 3, abs=1e-9
    )
    T = negative_triple()
    m = Model.parse("ddf", "g1,abs")
    scores = [evaluate(T, m, j).theta_star for j in range(3)]
    assert scores == pytest.approx([1.0, -10.0, -1.0], abs=1e-8)


def test_weak_frontier_unit():
    T, C = weak_frontier()
    res = evaluate(T, Model.parse("ddf", "g2"), C)
    assert res.theta_star == pytest.approx(1.0, abs=1e-9)
    assert res.status is Status.SOLVED_AT_BOUND
    assert res.slack_total > 1e-6
    assert not res.strongly_efficient_projection
    assert classify_unit(T, C) is UnitClass.WEAK_FRONTIER
    assert [classify_unit(T, u) for u in T.units()] == [UnitClass.STRONG_FRONTIER] * 2
    # the benchmark removes the slack and is strongly efficient
    assert classify_unit(T, res.benchmark) is UnitClass.STRONG_FRONTIER


def test_membership_examples():
    T = two_unit()
    assert membership(T, Unit([5], [1]))
    assert membership(T, Unit([3], [3]))
    assert not membership(T, Unit([3], [5.5]))
    assert not membership(T, Unit([0.5], [1]))


def test_unit_outside_is_rejected():
    T = two_unit()
    m = Model.parse("ddf", "g1")
    with pytest.raises(UnitOutsideTechnology):
        solve_gs(m.problem(T, Unit([0.5], [6])))
    with pytest.raises(UnitInsideTechnology):
        super_efficiency(m.problem(T, T.unit(1), super_mode=True))
    with pytest.raises(UnitOutsideTechnology):
        classify_unit(T, Unit([0.5], [6]))


def test_super_single_dmu_infeasible():
    T, B = single_dmu()
    res = evaluate_super(T, Model.parse("hdf", "g1,abs"), B)
    assert res.status is Status.INFEASIBLE and res.theta_star == math.inf
    assert res.certificate is not None


def test_super_two_output():
    T, u = two_output()
    res = evaluate_super(T, Model.parse("hdf", "custom:1|2;2"), u)
    assert res.status is Status.INFEASIBLE and res.certificate == "i"
    res = evaluate_super(T, Model.parse("ddf", "custom:1|2;2"), u)
    assert res.status is Status.SOLVED and res.theta_star > 1.0
    # the path point at the score is on the frontier
    p = Model.parse("ddf", "custom:1|2;2").problem(T, u, super_mode=True)
    assert membership(T, p.path.point(res.theta_star))
    assert not membership(T, p.path.point(res.theta_star - 1e-6))


def test_super_solved_score_is_tight():
    T = build_technology([[2, 4, 6]], [[2, 5, 6]])
    u = Unit([1.5], [5.0])
    res = evaluate_super(T, Model.parse("ddf", "g1"), u)
    assert res.status is Status.SOLVED
    p = Model.parse("ddf", "g1").problem(T, u, super_mode=True)
    assert res.theta_star == pytest.approx(solve_linear_direct(p), abs=1e-9)


def test_unresolved_with_small_cap():
    T = build_technology([[2, 4]], [[2, 5]])
    u = Unit([0.01], [5.0])
    m = Model.parse("ddf", "custom:0.001|0.001")
    res = super_efficiency(m.problem(T, u), SolveOptions(super_bracket_cap=4.0))
    assert res.status is Status.UNRESOLVED and math.isnan(res.theta_star)


def test_leave_one_out():
    T = build_technology([[1, 2, 5]], [[1, 4, 5]], ["a", "b", "c"])
    res = leave_one_out_super(T, Model.parse("ddf", "g1"))
    assert [r.dmu for r in res] == ["a", "b", "c"]
    assert all(r.theta_star >= 1.0 - 1e-9 for r in res if r.solved)


def test_direct_requires_linear_pair():
    T = two_unit()
    with pytest.raises(NotLinearModel):
        solve_linear_direct(Model.parse("hdf", "g1").problem(T, T.unit(1)))


def test_model_presets():
    assert parse_model("bcc-i").text == "linear/absent"
    assert parse_model("gdf:1").text == "linear/hyperbolic"
    assert parse_model("gdf:0.5").psi_x.exponent == -0.5
    with pytest.raises(ConfigError):
        parse_model("ccr")


def test_options_validation():
    with pytest.raises(ConfigError):
        SolveOptions(theta_tol=0)
    with pytest.raises(ConfigError):
        SolveOptions(super_bracket_cap=1.0)


def test_hdf_g2_lower_bound_and_projection():
    rng = np.random.default_rng(11)
    T = random_instance(rng, n=8, m=2, s=2)
    m = Model.parse("hdf", "g2")
    for res in evaluate_all(T, m):
        assert 0.5 - 1e-9 <= res.theta_star <= 1 + 1e-9
        assert membership(T, res.projection)


def test_workers_preserve_order_and_values():
    rng = np.random.default_rng(4)
    T = random_instance(rng, n=10, m=2, s=2)
    m = Model.parse("hdf", "g1")
    a = evaluate_all(T, m)
    b = evaluate_all(T, m, workers=4)
    assert [r.dmu for r in a] == [r.dmu for r in b]
    assert [r.theta_star for r in a] == [r.theta_star for r in b]


def test_determinism():
    rng = np.random.default_rng(9)
    T = random_instance(rng, n=9, m=3, s=2)
    m = Model.parse("log", "g2.0")
    a = [r.theta_star for r in evaluate_all(T, m)]
    b = [r.theta_star for r in evaluate_all(T, m)]
    assert a == b


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 100_000), st.sampled_from(MODELS), st.sampled_from(["g1", "g2", "g3", "g6"]))
def test_scores_of_members_at_most_one(seed, model, family):
    T = random_instance(np.random.default_rng(seed), n=6)
    res = evaluate_all(T, Model.parse(model, family))
    for r in res:
        assert r.theta_star <= 1 + 1e-9
        if parse_model(model).domain_lower == 0:
            assert r.theta_star > 0


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 100_000), st.sampled_from(["g1", "g2", "g3"]), st.booleans())
def test_linear_bound_and_direct_solve(seed, family, negative):
    T = random_instance(np.random.default_rng(seed), n=7, negative=negative)
    m = Model.parse("ddf", family)
    for j in range(T.n):
        res = evaluate(T, m, j)
        try:
            p = m.problem(T, T.unit(j))
        except Exception:
            continue
        assert res.theta_star >= linear_score_lower_bound(T, T.unit(j), p.directions) - 1e-9
        assert abs(res.theta_star - solve_linear_direct(p)) <= 2e-9


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 100_000))
def test_second_phase_against_vertices(seed):
    rng = np.random.default_rng(seed)
    T = random_instance(rng, n=4, m=int(rng.integers(1, 3)), s=int(rng.integers(1, 3)))
    m = Model.parse("ddf", "g1")
    for j in range(T.n):
        res = evaluate(T, m, j)
        q = res.projection
        ref = max_slack_by_vertices(T.X, T.Y, q.x, q.y)
        assert abs(res.slack_total - ref) <= 1e-6
        assert np.all(res.slacks_x >= -1e-9) and np.all(res.slacks_y >= -1e-9)
        assert np.allclose(res.benchmark.x, q.x - res.slacks_x)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 100_000))
def test_classification_against_closed_form(seed):
    rng = np.random.default_rng(seed)
    X = rng.integers(1, 8, size=(1, 5)).astype(float)
    Y = rng.integers(1, 8, size=(1, 5)).astype(float)
    T = build_technology(X, Y, constant="keep")
    for u in T.units() + [Unit(X[:, :2].mean(axis=1), Y[:, :2].mean(axis=1))]:
        assert classify_unit(T, u).value == classify_1d(X[0], Y[0], u.x[0], u.y[0])


def test_second_phase_wrapper_matches_point():
    T, C = weak_frontier()
    p = Model.parse("ddf", "g2").problem(T, C)
    a = second_phase(p, 1.0)
    b = second_phase_at(T, C)
    assert a.total == pytest.approx(b.total)


def test_problem_validates_lengths():
    T = two_unit()
    with pytest.raises(Exception):
        GsProblem(T, T.unit(0), make_psi("linear", "affine2"), DirectionPair([1.0, 1.0], [1.0]))

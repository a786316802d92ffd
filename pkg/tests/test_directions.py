import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pathdea.core import Unit, build_technology
from pathdea.directions import (
    DirectionPair,
    DirectionSpec,
    Family,
    Orientation,
    build_direction,
    default_theta_min,
    g20_direction,
    parse_direction,
    resolve_absolute,
)
from pathdea.errors import ConfigError, NegativeComponent, OutOfDomain, ZeroDirection
from pathdea.instances import negative_pair, two_unit, weak_frontier
from pathdea.paths import make_psi

FAMILIES = [Family.G1, Family.G2, Family.G3, Family.G4, Family.G5, Family.G6]


def spec(text):
    return parse_direction(text)


def test_two_unit_aggregate_directions():
    T = two_unit()
    B = T.unit(1)
    assert build_direction(spec("g4"), T, B).g_x.tolist() == [3.0]
    d5 = build_direction(spec("g5"), T, B)
    assert (d5.g_x[0], d5.g_y[0]) == (2.0, 2.0)
    d6 = build_direction(spec("g6"), T, B)
    assert (d6.g_x[0], d6.g_y[0]) == (1.0, 1.0)


def test_g2_on_weak_frontier_unit():
    T, C = weak_frontier()
    d = build_direction(spec("g2"), T, C)
    assert d.g_x.tolist() == [0.5, 0.5] and d.g_y.tolist() == [0.5]


def test_absolute_g1_on_negative_data():
    T = negative_pair()
    d = build_direction(spec("g1,abs"), T, T.unit(1))
    assert (d.g_x[0], d.g_y[0]) == (3.0, 1.0)
    # A has a negative input; its direction is flipped and a note is kept
    dA = build_direction(spec("g1,abs"), T, T.unit(0))
    assert dA.g_x[0] == 1.0 and dA.notes


def test_negative_component_without_absolute():
    T = negative_pair()
    with pytest.raises(NegativeComponent):
        build_direction(spec("g1,noabs"), T, T.unit(0))


def test_absolute_default():
    assert resolve_absolute(spec("g1"), negative_pair()) is True
    assert resolve_absolute(spec("g1"), two_unit()) is False
    assert resolve_absolute(spec("g1"), two_unit(), super_mode=True) is True
    assert resolve_absolute(spec("g1,noabs"), negative_pair()) is False


def test_zero_direction_at_ideal_point():
    T = build_technology([[1, 2]], [[2, 1]])
    with pytest.raises(ZeroDirection):
        build_direction(spec("g2"), T, T.unit(0))


def test_orientation_and_absent_side():
    T = two_unit()
    d = build_direction(spec("g1,orient=in"), T, T.unit(1))
    assert d.g_y.tolist() == [0.0] and d.g_x.tolist() == [5.0]
    d = build_direction(spec("g1"), T, T.unit(1), make_psi("absent", "hyperbolic"))
    assert d.g_x.tolist() == [0.0] and d.g_y.tolist() == [1.0]


def test_pair_invariants():
    with pytest.raises(ZeroDirection):
        DirectionPair([0.0], [0.0])
    with pytest.raises(NegativeComponent):
        DirectionPair([-1.0], [1.0])


def test_text_encoding_round_trip():
    for text in ["g1", "g2,abs", "g2.0,theta-min=0.5", "g3,orient=out", "g6,noabs",
                 "custom:1;2|3"]:
        s = spec(text)
        assert parse_direction(s.text) == s
    with pytest.raises(ConfigError):
        spec("g7")
    with pytest.raises(ConfigError):
        spec("g1,wobble")
    with pytest.raises(ConfigError):
        spec("g1,theta-min=0.5")
    with pytest.raises(OutOfDomain):
        spec("g2.0,theta-min=1.0")


def test_custom_direction():
    T = two_unit()
    d = build_direction(spec("custom:2|3"), T, T.unit(0))
    assert (d.g_x[0], d.g_y[0]) == (2.0, 3.0)
    with pytest.raises(ConfigError):
        build_direction(spec("custom:2;1|3"), T, T.unit(0))


def test_g20_linear_equals_absolute_g2():
    rng = np.random.default_rng(5)
    T = build_technology(rng.normal(size=(2, 6)), rng.normal(size=(2, 6)))
    psi = make_psi("linear", "affine2")
    for u in T.units():
        try:
            g2 = build_direction(spec("g2,abs"), T, u)
        except ZeroDirection:
            continue
        g20 = g20_direction(T, u, psi, 0.0, absolute=True)
        assert np.array_equal(g2.g_x, g20.g_x) and np.array_equal(g2.g_y, g20.g_y)


def test_g20_table_values():
    T = build_technology([[1, 5, 3]], [[5, 1, 2]])
    u = T.unit(2)
    dx, dy = abs(u.x[0] - 1), abs(5 - u.y[0])
    for p in (0.5, 2.0):
        d = g20_direction(T, u, make_psi("linear", f"power:{p}"), 0.5, True)
        assert d.g_x[0] == pytest.approx(2 * dx)
        assert d.g_y[0] == pytest.approx(dy / (2**p - 1))
    d = g20_direction(T, u, make_psi("linear", "log"), math.exp(-1), True)
    assert d.g_x[0] == pytest.approx(math.e / (math.e - 1) * dx)
    assert d.g_y[0] == pytest.approx(dy)
    with pytest.raises(OutOfDomain):
        g20_direction(T, u, make_psi("linear", "hyperbolic"), 0.0, True)


def test_default_theta_min():
    assert default_theta_min(make_psi("linear", "affine2")) == 0.0
    assert default_theta_min(make_psi("linear", "hyperbolic")) == 0.5
    assert default_theta_min(make_psi("linear", "power:3")) == 0.5
    assert default_theta_min(make_psi("linear", "log")) == math.exp(-1)
    assert default_theta_min(make_psi("linear", "exp")) == 0.0


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from(FAMILIES))
def test_scale_covariance(seed, family):
    rng = np.random.default_rng(seed)
    X, Y = rng.uniform(1, 10, size=(2, 5)), rng.uniform(1, 10, size=(2, 5))
    c, b = rng.uniform(2, 5, size=2), rng.uniform(2, 5, size=2)
    T = build_technology(X, Y)
    T2 = build_technology(X * c[:, None], Y * b[:, None])
    s = DirectionSpec(family)
    j = int(rng.integers(5))
    try:
        d = build_direction(s, T, T.unit(j))
    except ZeroDirection:
        return
    d2 = build_direction(s, T2, T2.unit(j))
    covariant = np.allclose(d2.g_x, c * d.g_x) and np.allclose(d2.g_y, b * d.g_y)
    assert covariant == (family is not Family.G6)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from(FAMILIES))
def test_translation_covariance(seed, family):
    rng = np.random.default_rng(seed)
    X, Y = rng.uniform(1, 10, size=(2, 5)), rng.uniform(1, 10, size=(2, 5))
    c, b = rng.uniform(1, 5, size=2), rng.uniform(1, 5, size=2)
    T = build_technology(X, Y)
    T2 = build_technology(X + c[:, None], Y + b[:, None])
    s = DirectionSpec(family, absolute=False)
    j = int(rng.integers(5))
    try:
        d = build_direction(s, T, T.unit(j))
    except ZeroDirection:
        return
    d2 = build_direction(s, T2, T2.unit(j))
    same = np.allclose(d2.g_x, d.g_x) and np.allclose(d2.g_y, d.g_y)
    assert same == (family in (Family.G2, Family.G3, Family.G5, Family.G6))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from(FAMILIES + [Family.G20]))
def test_built_directions_are_semipositive(seed, family):
    rng = np.random.default_rng(seed)
    T = build_technology(rng.normal(size=(2, 5)), rng.normal(size=(2, 5)))
    u = Unit(rng.normal(size=2), rng.normal(size=2))
    try:
        d = build_direction(DirectionSpec(family), T, u, make_psi("linear", "hyperbolic"))
    except ZeroDirection:
        return
    assert np.all(d.g_x >= 0) and np.all(d.g_y >= 0)
    assert np.any(d.g_x > 0) or np.any(d.g_y > 0)


def test_orientation_enum_values():
    assert Orientation("in") is Orientation.INPUT_ONLY
    assert Orientation("out") is Orientation.OUTPUT_ONLY

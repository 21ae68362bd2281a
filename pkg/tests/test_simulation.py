import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import ID, SHIFT, XOR
from nuca.rules import LocalRule, RuleSet
from nuca.simulation import (
    INFINITE,
    cantor_distance,
    charge_ratio_series,
    first_difference,
    global_charge,
    iterate,
    orbit,
    partial_charge,
    perturbation_cone,
    space_time,
    step,
)
from nuca.words import Configuration, Distribution
from oracles import naive_image

RS = RuleSet.of([ID, SHIFT, XOR, LocalRule.elementary(30, "r30"), LocalRule.elementary(184, "r184")])

small = st.lists(st.integers(0, 4), min_size=1, max_size=3)
rule_words = st.tuples(small, st.lists(st.integers(0, 4), max_size=4), small, st.integers(-4, 4))
bits = st.lists(st.integers(0, 1), min_size=1, max_size=4)
configs = st.tuples(bits, st.lists(st.integers(0, 1), max_size=6), bits, st.integers(-5, 5))


@settings(max_examples=150, deadline=None)
@given(rule_words, configs)
def test_step_matches_cellwise_image(tw, xw):
    theta = Distribution(*tw, rule_set=RS)
    x = Configuration(*xw)
    y = step(theta, x)
    for i in range(-30, 30):
        assert y[i] == naive_image(RS, theta, x, i)


@settings(max_examples=60, deadline=None)
@given(rule_words, configs, st.integers(-8, 8))
def test_step_commutes_with_shift(tw, xw, k):
    theta = Distribution(*tw, rule_set=RS)
    x = Configuration(*xw)
    assert step(theta.shifted(k), x.shifted(k)) == step(theta, x).shifted(k)


@settings(max_examples=60, deadline=None)
@given(rule_words, configs, st.integers(-6, 6), st.integers(1, 6))
def test_light_cone(tw, xw, p, t):
    theta = Distribution(*tw, rule_set=RS)
    cone = perturbation_cone(theta, Configuration(*xw), p, t)
    for k in range(t + 1):
        assert all(abs(i - p) <= k for i in cone.spread(k))


def test_xor_single_cell():
    theta = Distribution.uniform(RS, "xor")
    y = step(theta, Configuration.single(1, 0))
    assert y == Configuration.finite({-1: 1, 1: 1})
    # Pascal triangle mod 2 after four steps
    assert iterate(theta, Configuration.single(1, 0), 4) == Configuration.finite({-4: 1, 4: 1})


def test_shift_moves_left():
    theta = Distribution.uniform(RS, "shift")
    assert step(theta, Configuration.single(1, 5)) == Configuration.single(1, 4)


def test_orbit_and_iterate_agree():
    theta = Distribution((2,), (0, 1), (3,), 0, RS)
    x = Configuration((0, 1), (1, 1, 0), (1,), -2)
    orb = orbit(theta, x, 5)
    assert len(orb) == 6
    assert orb[5] == iterate(theta, x, 5)
    with pytest.raises(ValueError):
        iterate(theta, x, -1)


def test_alphabet_mismatch_rejected():
    theta = Distribution.uniform(RS, 0)
    with pytest.raises(ValueError):
        step(theta, Configuration.zero(3))


def test_cantor_distance():
    x = Configuration.zero()
    assert cantor_distance(x, x) == 0
    assert cantor_distance(x, Configuration.single(1, 0)) == 1
    assert cantor_distance(x, Configuration.single(1, -3)) == Fraction(1, 8)
    assert first_difference(x, Configuration.single(1, 7)) == 7
    far = Configuration((0,), (), (0, 0, 0, 1), 0)
    assert cantor_distance(x, far) == Fraction(1, 8)


def test_charges():
    x = Configuration.finite({-3: 1, 0: 1, 2: 1})
    assert partial_charge(x, 0) == 1
    assert partial_charge(x, 2) == 2
    assert global_charge(x) == 3
    assert global_charge(Configuration.constant(1)) == INFINITE
    with pytest.raises(ValueError):
        partial_charge(x, -1)


def test_charge_ratio_series_for_shift():
    theta = Distribution.uniform(RS, "shift")
    x = Configuration((0, 1), (), (0, 1))
    series = charge_ratio_series(theta, x, 40)
    assert series.n[-1] == 40
    assert np.all(np.abs(series.image_charge - series.charge) <= 1)
    assert math.isclose(series.tail_min, 1, abs_tol=0.1)
    assert math.isclose(series.tail_max, 1, abs_tol=0.1)


def test_space_time_formats():
    theta = Distribution.uniform(RS, "xor")
    d = space_time(theta, Configuration.single(1, 0), -2, 2, 2)
    assert d.rows.tolist() == [[0, 0, 1, 0, 0], [0, 1, 0, 1, 0], [1, 0, 0, 0, 1]]
    assert d.to_pgm() == (
        "P2\n5 3\n255\n"
        "255 255 0 255 255\n"
        "255 0 255 0 255\n"
        "0 255 255 255 0\n"
    )
    assert d.to_csv().splitlines()[0] == "t,-2,-1,0,1,2"
    assert d.to_csv().splitlines()[2] == "1,0,1,0,1,0"


def test_space_time_deterministic():
    theta = Distribution((2,), (0, 3), (4,), 0, RS)
    rng = random.Random(3)
    x = Configuration((1, 0), tuple(rng.randrange(2) for _ in range(9)), (0, 1, 1), -4)
    assert space_time(theta, x, -20, 20, 30).to_pgm() == space_time(theta, x, -20, 20, 30).to_pgm()


def test_perturbation_cone_identity_stays_put():
    theta = Distribution.uniform(RS, "id")
    cone = perturbation_cone(theta, Configuration.zero(), 3, 10)
    assert cone.max_distance() == 0
    assert all(cone.spread(t) == [3] for t in range(11))

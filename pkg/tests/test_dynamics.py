import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import ID, SHIFT, XOR
from nuca.dynamics import (
    EQUICONTINUOUS,
    SENSITIVE,
    classify,
    coefficient_row,
    default_n_max,
    empirical_classify,
    find_tail_wall,
    is_left_wall,
    is_right_wall,
    propagation_radii,
)
from nuca.rules import LocalRule, NotLinearError, RuleSet
from nuca.simulation import iterate, perturbation_cone
from nuca.words import Configuration, Distribution
from oracles import rule_value


def _isolated_orbit_ok(rule_set, psi, v, side):
    """Run the block with zero borders by hand and watch the guarded cells."""
    r, s, n = rule_set.radius, rule_set.s, len(psi)
    guard = range(r) if side == "right" else range(n - r, n)
    inject = [0] * (r + n) + list(v) if side == "right" else list(v) + [0] * (n + r)
    u = [rule_value(rule_set[f], inject[i : i + 2 * r + 1]) for i, f in enumerate(psi)]
    for _ in range(s ** n + 2):
        if any(u[i] for i in guard):
            return False
        w = [0] * r + u + [0] * r
        u = [rule_value(rule_set[f], w[i : i + 2 * r + 1]) for i, f in enumerate(psi)]
    return True


def _wall_by_hand(rule_set, psi, side):
    return all(
        _isolated_orbit_ok(rule_set, psi, v, side)
        for v in itertools.product(range(rule_set.s), repeat=rule_set.radius)
    )


def test_identity_is_a_wall_on_both_sides(xor_id):
    ident = xor_id.index("id")
    assert is_left_wall(xor_id, [ident]).is_wall
    assert is_right_wall(xor_id, [ident]).is_wall
    assert is_right_wall(xor_id, [ident, ident]).is_wall


def test_xor_is_no_wall(xor_id):
    assert not is_left_wall(xor_id, [0]).is_wall
    assert not is_right_wall(xor_id, [0]).is_wall


def test_shift_walls(id_shift):
    shift = id_shift.index("shift")
    # information flows leftward through shift: nothing comes in from the left
    assert is_left_wall(id_shift, [shift]).is_wall
    assert not is_right_wall(id_shift, [shift]).is_wall


def test_wall_needs_radius_many_cells(xor_id):
    wide = xor_id.padded(2)
    with pytest.raises(ValueError):
        is_right_wall(wide, [1])
    assert is_right_wall(wide, [1, 1]).is_wall


def test_nonlinear_rules_rejected(data_dir):
    from nuca.rules import load_rule_set

    rs = load_rule_set(data_dir / "nonlinear.rules")
    with pytest.raises(NotLinearError):
        is_right_wall(rs, [0])
    # table rules that happen to be linear are accepted
    idshift = load_rule_set(data_dir / "idshift.rules")
    assert is_right_wall(idshift, [0]).is_wall


@st.composite
def linear_sets(draw):
    s = draw(st.sampled_from([2, 3]))
    k = draw(st.integers(1, 3))
    rules = [
        LocalRule.linear(f"f{j}", s, draw(st.lists(st.integers(0, s - 1), min_size=3, max_size=3)))
        for j in range(k)
    ]
    return RuleSet.of(rules)


@settings(max_examples=150, deadline=None)
@given(linear_sets(), st.data())
def test_basis_reduction_matches_exhaustive(rs, data):
    psi = data.draw(st.lists(st.integers(0, len(rs) - 1), min_size=1, max_size=4))
    for check in (is_left_wall, is_right_wall):
        assert check(rs, psi).is_wall == check(rs, psi, exhaustive=True).is_wall


@settings(max_examples=100, deadline=None)
@given(linear_sets(), st.data())
def test_walls_match_hand_simulation(rs, data):
    psi = data.draw(st.lists(st.integers(0, len(rs) - 1), min_size=1, max_size=3))
    assert is_right_wall(rs, psi).is_wall == _wall_by_hand(rs, psi, "right")
    assert is_left_wall(rs, psi).is_wall == _wall_by_hand(rs, psi, "left")


def test_xor_radii_grow_linearly(xor_id):
    theta = Distribution.uniform(xor_id, "xor")
    assert propagation_radii(theta, 0, 32) == list(range(33))
    assert coefficient_row(theta, 0, 2) == {-2: 1, 2: 1}


def test_identity_radii_stay_zero(xor_id):
    theta = Distribution.uniform(xor_id, "id")
    assert propagation_radii(theta, 5, 10) == [0] * 11


@settings(max_examples=40, deadline=None)
@given(linear_sets(), st.data())
def test_coefficients_match_simulated_unit_vectors(rs, data):
    part = st.lists(st.integers(0, len(rs) - 1), min_size=1, max_size=2)
    theta = Distribution(data.draw(part), data.draw(part), data.draw(part), 0, rs)
    i = data.draw(st.integers(-3, 3))
    n = data.draw(st.integers(0, 5))
    row = coefficient_row(theta, i, n)
    for off in range(-n - 1, n + 2):
        image = iterate(theta, Configuration.single(1, i + off, rs.s), n)
        assert image[i] == row.get(off, 0)


def test_classify_uniform_identity(xor_id):
    report = classify(Distribution.uniform(xor_id, "id"))
    assert report.verdict == EQUICONTINUOUS
    assert report.left_wall.certificate.is_wall and report.right_wall.certificate.is_wall
    d = report.as_dict()
    assert d["verdict"] == "equicontinuous" and not d["bounded"]
    assert d["certificates"][0]["pattern"] == ["id"]


def test_classify_uniform_xor(xor_id):
    theta = Distribution.uniform(xor_id, "xor")
    report = classify(theta)
    assert report.verdict == SENSITIVE
    assert report.bounded and report.n_max == default_n_max(theta) == 8


def test_classify_uniform_shift(id_shift):
    report = classify(Distribution.uniform(id_shift, "shift"))
    assert report.verdict == SENSITIVE
    assert report.left_wall is not None and report.right_wall is None


def test_xor_block_between_identities(xor_id):
    theta = Distribution.from_names(xor_id, ["id"], ["xor"] * 3, ["id"])
    report = classify(theta, empirical_steps=64)
    assert report.equicontinuous
    assert not report.empirical.escaped
    for p in range(3):
        cone = perturbation_cone(theta, Configuration.zero(), p, 64)
        for t in range(65):
            assert all(-1 <= i <= 3 for i in cone.spread(t))


def test_wall_positions_inside_tails(xor_id):
    theta = Distribution.from_names(xor_id, ["xor", "id"], ["xor"], ["xor", "xor", "id"], 2)
    left = find_tail_wall(theta, "left", 4)
    right = find_tail_wall(theta, "right", 4)
    assert theta[left.start] == xor_id.index("id")
    assert left.start < theta.anchor
    assert theta[right.start] == xor_id.index("id")
    assert right.start >= theta.end


def test_empirical_probe_sees_xor_spread(xor_id):
    summary = empirical_classify(Distribution.uniform(xor_id, "xor"), steps=32, window=8)
    assert summary.escaped and summary.max_distance == 32


def test_nmax_validated(xor_id):
    with pytest.raises(ValueError):
        classify(Distribution.uniform(xor_id.padded(2), "id"), n_max=1)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_walls_shield_the_interior(data):
    """Perturbations outside a pair of certified walls never reach the cells between them."""
    rs = RuleSet.of([ID, SHIFT, XOR])
    part = st.lists(st.integers(0, 2), min_size=1, max_size=2)
    theta = Distribution(
        data.draw(part), data.draw(st.lists(st.integers(0, 2), max_size=3)), data.draw(part), 0, rs
    )
    report = classify(theta)
    if not report.equicontinuous:
        return
    lw, rw = report.left_wall, report.right_wall
    inner_lo, inner_hi = lw.start + lw.length - 1, rw.start
    outside = [lw.start - k for k in range(1, 6)] + [rw.start + rw.length - 1 + k for k in range(1, 6)]
    x = Configuration((0, 1), (1, 1, 0), (1, 0, 0), -1)
    for p in outside:
        cone = perturbation_cone(theta, x, p, 40)
        for t in range(41):
            assert not any(inner_lo <= i <= inner_hi for i in cone.spread(t)), (p, t)

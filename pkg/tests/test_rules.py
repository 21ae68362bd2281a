import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import ID, SHIFT, XOR
from nuca.rules import (
    LocalRule,
    NotLinearError,
    RuleFileError,
    RuleSet,
    apply_partial,
    apply_partial_all,
    format_rule_set,
    index_word,
    load_rule_set,
    pad_rule,
    parse_rule_set,
    preimage_counts,
    word_index,
)
from oracles import rule_value


def test_word_index_leftmost_most_significant():
    assert word_index((1, 0, 0), 2) == 4
    assert word_index((0, 0, 1), 2) == 1
    assert word_index((2, 1), 3) == 7
    assert index_word(7, 3, 2) == (2, 1)


def test_elementary_matches_wolfram_numbering():
    r90 = LocalRule.elementary(90)
    assert r90.table == XOR.table
    assert LocalRule.elementary(204).table == ID.table
    assert LocalRule.elementary(170).table == SHIFT.table


def test_table_size_checked():
    with pytest.raises(ValueError):
        LocalRule("bad", 2, 1, (0, 1, 0))


def test_linear_rule_table_matches_coefficients():
    f = LocalRule.linear("f", 3, [2, 1, 0])
    for u in itertools.product(range(3), repeat=3):
        assert f(u) == (2 * u[0] + u[1]) % 3


@pytest.mark.parametrize("s,coeffs", [(2, (1, 0, 1)), (3, (1, 2, 0)), (3, (2, 0, 0, 1, 1))])
def test_linear_rules_are_additive(s, coeffs):
    f = LocalRule.linear("f", s, coeffs)
    words = list(itertools.product(range(s), repeat=len(coeffs)))
    for u in words:
        for v in words:
            w = tuple((a + b) % s for a, b in zip(u, v))
            assert f(w) == (f(u) + f(v)) % s


def test_inferred_linear():
    table_xor = LocalRule.elementary(90, "xor")
    assert table_xor.inferred_linear().linear_coeffs == (1, 0, 1)
    with pytest.raises(NotLinearError):
        LocalRule.elementary(184).inferred_linear()


def test_pad_identity_moves_to_center():
    g = pad_rule(ID, 2)
    assert g.radius == 2
    for w in itertools.product(range(2), repeat=5):
        assert g(w) == w[2]


def test_pad_to_own_radius_is_noop():
    assert pad_rule(XOR, 1) == XOR


def test_pad_linear_coefficients():
    g = pad_rule(XOR, 2)
    assert g.linear_coeffs == (0, 1, 0, 1, 0)
    # the padded table is the table of the zero-extended coefficient vector
    assert g.table == LocalRule.linear("xor", 2, (0, 1, 0, 1, 0)).table
    for w in itertools.product(range(2), repeat=5):
        assert g(w) == rule_value(XOR, w[1:4])


def test_pad_down_rejected():
    with pytest.raises(ValueError):
        pad_rule(pad_rule(ID, 2), 1)


@settings(max_examples=40, deadline=None)
@given(
    st.integers(2, 3).flatmap(
        lambda s: st.tuples(
            st.just(s), st.lists(st.integers(0, s - 1), min_size=s**3, max_size=s**3)
        )
    ),
    st.integers(1, 2),
)
def test_pad_preserves_behavior(rule_data, extra):
    s, table = rule_data
    f = LocalRule("f", s, 1, tuple(table))
    g = pad_rule(f, 1 + extra)
    for w in itertools.product(range(s), repeat=g.width):
        assert g(w) == f(w[extra : extra + 3])


def test_rule_set_pads_to_max_radius():
    rs = RuleSet.of([LocalRule("c", 2, 0, (0, 1)), XOR])
    assert rs.radius == 1
    assert rs[0].original_radius == 0
    assert rs[0].table == ID.table


def test_rule_set_rejects_duplicate_names():
    with pytest.raises(ValueError):
        RuleSet.of([XOR, XOR])


def test_apply_partial_examples(xor_id):
    xor, ident = xor_id.index("xor"), xor_id.index("id")
    assert apply_partial(xor_id, [ident], (0, 1, 0)) == (1,)
    assert apply_partial(xor_id, [xor, ident], (1, 0, 1, 1)) == (0, 1)
    shift_rs = RuleSet.of([SHIFT])
    assert apply_partial(shift_rs, [0], (0, 0, 1)) == (1,)


def test_apply_partial_length_checked(xor_id):
    with pytest.raises(ValueError):
        apply_partial(xor_id, [0, 1], (0, 1, 0))


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_apply_partial_locality(data):
    rs = RuleSet.of([XOR, ID, SHIFT, LocalRule.elementary(30)])
    n = data.draw(st.integers(1, 6))
    psi = data.draw(st.lists(st.integers(0, 3), min_size=n, max_size=n))
    w = data.draw(st.lists(st.integers(0, 1), min_size=n + 2, max_size=n + 2))
    i = data.draw(st.integers(0, n - 1))
    out = apply_partial(rs, psi, w)
    # flip every letter outside cell i's window
    mutated = [a if i <= k <= i + 2 else 1 - a for k, a in enumerate(w)]
    assert apply_partial(rs, psi, mutated)[i] == out[i]


def test_apply_partial_all_matches_loop(xor_id):
    psi = (0, 1, 1, 0)
    rows = apply_partial_all(xor_id, psi)
    for k, w in enumerate(itertools.product(range(2), repeat=6)):
        assert tuple(rows[k]) == apply_partial(xor_id, psi, w)


def test_preimage_counts_sum(four):
    for psi in itertools.product(range(4), repeat=3):
        assert preimage_counts(four, psi).sum() == 2**5


def test_parse_rule_file(data_dir):
    rs = load_rule_set(data_dir / "idshift.rules")
    assert rs.names == ("id", "shift")
    assert rs[0].table == ID.table and rs[1].table == SHIFT.table
    assert not rs[0].is_linear


def test_parse_mixed_radius(data_dir):
    rs = load_rule_set(data_dir / "mixed_radius.rules")
    assert rs.radius == 1
    assert rs[0].original_radius == 0
    assert rs[0].table == ID.table


def test_parse_errors_carry_line_numbers(data_dir):
    with pytest.raises(RuleFileError, match="line 3"):
        load_rule_set(data_dir / "bad.rules")
    with pytest.raises(RuleFileError, match="line 2"):
        parse_rule_set("alphabet 2\nfoo bar\n")
    with pytest.raises(RuleFileError):
        parse_rule_set("radius 1\n")


def test_format_round_trip(four):
    assert parse_rule_set(format_rule_set(four)) == four


def test_tables_array(four):
    assert np.array_equal(four.tables[2], XOR.array)

from pathlib import Path

import pytest

from nuca.rules import LocalRule, RuleSet

DATA = Path(__file__).parent / "data"

XOR = LocalRule.linear("xor", 2, [1, 0, 1])
ID = LocalRule.linear("id", 2, [0, 1, 0])
SHIFT = LocalRule.linear("shift", 2, [0, 0, 1])
ZERO = LocalRule.linear("zero", 2, [0, 0, 0])


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def xor_id():
    return RuleSet.of([XOR, ID])


@pytest.fixture
def id_shift():
    return RuleSet.of([ID, SHIFT])


@pytest.fixture
def four():
    return RuleSet.of([ID, SHIFT, XOR, ZERO])

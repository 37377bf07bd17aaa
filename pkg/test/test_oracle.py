"""
Unit tests for oracle.py
"""

import pytest

from fishprint.core import build_dataset
from fishprint.enumeration import GENERAL, MINKEY, TARGETED
from fishprint.errors import BudgetExceeded, InvalidParameter
from fishprint.oracle import OracleResult, count_subsets, exact_general, exact_minimum_key, \
    exact_targeted
from fishprint.targeted import TargetProfile

from conftest import A2, A3, A4, U1

__author__ = 'Stephen Brown (Little Fish Solutions LTD)'


def test_count_subsets():
    assert count_subsets(4, 2) == 11
    assert count_subsets(4, 10) == 16
    assert count_subsets(6, 3) == 1 + 6 + 15 + 20


def test_exact_targeted_u1(table1):
    result = exact_targeted(table1, TargetProfile.of_profile(table1, U1), 2)
    assert result.best_subset == (A2, A4)
    assert result.best_objective == 1
    assert result.mode is TARGETED
    assert result.target_id == 'U1'
    # Stops at the first subset reaching the floor of one profile
    assert result.subsets_examined == 10


def test_exact_targeted_twins():
    dataset = build_dataset([('a', ['x']), ('b', ['x']), ('c', ['y'])])
    result = exact_targeted(dataset, TargetProfile.of_profile(dataset, 0), 2)
    assert result.best_objective == 2
    assert result.best_subset == (0,)


def test_exact_general(table1):
    result = exact_general(table1, 1)
    assert result.best_subset == (A4,)
    assert result.best_objective == 9
    assert result.mode is GENERAL

    result = exact_general(table1, 3)
    assert result.best_subset == (A2, A3, A4)
    assert result.best_objective == 15


def test_exact_minimum_key(table1):
    result = exact_minimum_key(table1)
    assert result.best_subset == (A2, A3, A4)
    assert result.best_objective == 15
    assert result.mode is MINKEY
    assert result.max_size is None
    assert result.subsets_examined == 1 + 4 + 6 + 4


def test_minimum_key_with_duplicates():
    dataset = build_dataset([('a', ['x', 'z']), ('b', ['x', 'z']), ('c', ['y', 'z'])])
    result = exact_minimum_key(dataset)
    assert result.best_subset == (0,)
    assert result.best_objective == 2


def test_budget(table1):
    with pytest.raises(BudgetExceeded) as e:
        exact_general(table1, 2, budget=10)
    assert e.value.required == 11
    assert e.value.budget == 10
    assert e.value.exit_status == 3

    with pytest.raises(BudgetExceeded):
        exact_targeted(table1, TargetProfile.of_profile(table1, U1), 4, budget=15)

    # The minimum key needs 15 subsets; 11 would do up to size 2
    with pytest.raises(BudgetExceeded):
        exact_minimum_key(table1, budget=11)

    assert exact_general(table1, 2, budget=11).best_objective == 13


def test_invalid(table1):
    with pytest.raises(InvalidParameter):
        exact_general(table1, 0)

    with pytest.raises(InvalidParameter):
        exact_general(table1, 2, budget=0)


def test_result_dict(table1):
    result = exact_general(table1, 3)
    doc = result.to_dict(table1)
    assert doc['best_subset'] == ['A2', 'A3', 'A4']
    assert doc['mode'] == 'general'
    assert OracleResult.from_dict(doc, table1) == result

    result = exact_targeted(table1, TargetProfile.of_profile(table1, U1), 2)
    assert OracleResult.from_dict(result.to_dict(table1), table1) == result

"""
Unit tests for targeted.py
"""

import pytest

from fishprint.core import build_dataset
from fishprint.errors import InvalidParameter, ReportError
from fishprint.targeted import TargetProfile, Fingerprint, agreement_set, targeted_fingerprint, \
    targeted_fingerprint_batch

from conftest import A1, A2, A3, A4, U1, U2, U4, U5

__author__ = 'Stephen Brown (Little Fish Solutions LTD)'


def fingerprint_of(dataset, profile_id, max_size):
    return targeted_fingerprint(dataset, TargetProfile.of_profile(dataset, profile_id), max_size)


def test_u1_two_queries(table1):
    fp = fingerprint_of(table1, U1, 2)
    assert fp.queries == [(A2, 0), (A4, 1)]
    assert fp.anonymity_set == (U1,)
    assert fp.is_unique
    assert not fp.terminated_early
    assert fp.target_id == 'U1'


def test_u5_three_queries(table1):
    fp = fingerprint_of(table1, U5, 3)
    assert fp.queries == [(A4, 0), (A2, 1), (A3, 1)]
    assert fp.anonymity_set == (U5,)


def test_u2_budget_too_small(table1):
    fp = fingerprint_of(table1, U2, 2)
    assert fp.queries == [(A4, 1), (A1, 1)]
    assert fp.anonymity_set == (U1, U2)
    assert not fp.is_unique
    assert not fp.terminated_early


def test_u2_three_queries(table1):
    fp = fingerprint_of(table1, U2, 3)
    assert fp.queries == [(A4, 1), (A1, 1), (A2, 1)]
    assert fp.anonymity_set == (U2,)


def test_single_profile_dataset():
    dataset = build_dataset([('only', ['x', 'y'])])
    fp = fingerprint_of(dataset, 0, 5)
    assert fp.queries == []
    assert fp.anonymity_set == (0,)
    assert not fp.terminated_early


def test_identical_twin_terminates_early():
    dataset = build_dataset([('a', ['x']), ('b', ['x']), ('c', ['y'])])
    fp = fingerprint_of(dataset, 0, 3)
    assert fp.queries == [(0, 1)]
    assert fp.anonymity_set == (0, 1)
    assert fp.terminated_early


def test_target_outside_dataset():
    dataset = build_dataset([('a', ['x']), ('b', ['y']), ('c', ['x', 'y'])],
                            universe=['x', 'y', 'z'])
    target = TargetProfile.from_labels(dataset, ['z'], external_id='victim')
    fp = targeted_fingerprint(dataset, target, 3)
    assert fp.queries == [(2, 1)]
    assert fp.anonymity_set == ()
    assert fp.is_empty
    assert fp.target_id == 'victim'


def test_budget_is_respected(random_dataset):
    for seed in range(20):
        dataset = random_dataset(seed, num_profiles=10, universe_size=8)
        for s in (1, 2, 3):
            for p in range(dataset.num_profiles):
                assert fingerprint_of(dataset, p, s).length <= s


def test_membership_soundness(random_dataset):
    for seed in range(20):
        dataset = random_dataset(seed, num_profiles=12, universe_size=6)
        for p in range(dataset.num_profiles):
            fp = fingerprint_of(dataset, p, 4)
            assert list(agreement_set(dataset, fp.queries)) == list(fp.anonymity_set)
            assert p in fp.anonymity_set
            # Queried values are the target's own values
            row = set(dataset.profile_items(p).tolist())
            assert all(value == int(item in row) for item, value in fp.queries)


def test_items_are_distinct(random_dataset):
    dataset = random_dataset(3, num_profiles=20, universe_size=6)
    for p in range(dataset.num_profiles):
        fp = fingerprint_of(dataset, p, 6)
        assert len(set(fp.items)) == fp.length


def test_batch(table1):
    results = targeted_fingerprint_batch(table1, 2)
    assert [fp.set_size for fp in results] == [1, 2, 1, 1, 2, 1]
    assert [fp.target_id for fp in results] == ['U1', 'U2', 'U3', 'U4', 'U5', 'U6']

    results = targeted_fingerprint_batch(table1, 3)
    assert all(fp.is_unique for fp in results)


def test_batch_threads_do_not_change_results(random_dataset):
    dataset = random_dataset(11, num_profiles=30, universe_size=10)
    assert targeted_fingerprint_batch(dataset, 3, threads=1) == \
        targeted_fingerprint_batch(dataset, 3, threads=4)


def test_invalid_parameters(table1):
    target = TargetProfile.of_profile(table1, U1)
    with pytest.raises(InvalidParameter):
        targeted_fingerprint(table1, target, 0)

    with pytest.raises(InvalidParameter):
        targeted_fingerprint(table1, TargetProfile([7]), 2)

    with pytest.raises(InvalidParameter):
        TargetProfile.from_labels(table1, ['A9'])

    with pytest.raises(InvalidParameter):
        targeted_fingerprint_batch(table1, 2, threads=0)


def test_fingerprint_dict(table1):
    fp = fingerprint_of(table1, U1, 2)
    doc = fp.to_dict(table1)
    assert doc['queries'] == [{'item': 'A2', 'value': 0}, {'item': 'A4', 'value': 1}]
    assert doc['anonymity_set'] == ['U1']
    assert doc['set_size'] == 1
    assert not doc['empty']
    assert Fingerprint.from_dict(doc, table1) == fp

    del doc['queries']
    with pytest.raises(ReportError):
        Fingerprint.from_dict(doc, table1)


def test_stops_once_unique(table1):
    fp = fingerprint_of(table1, U4, 4)
    assert fp.queries == [(A2, 0), (A4, 0)]
    assert fp.anonymity_set == (U4,)

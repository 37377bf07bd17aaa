"""
Randomised property checks: greedy results against the exact solvers, structural invariants over
many seeded instances, and a large scale run.

Instances come from fixed seeds so every run checks the same ones.
"""

import logging
import math

import numpy as np
import pytest

from fishprint.core import build_dataset
from fishprint.general import duplicate_classes, general_fingerprint, minimum_key, \
    partition_by_items, separated_pairs
from fishprint.oracle import exact_general, exact_minimum_key, exact_targeted
from fishprint.synth import SynthConfig, generate_synthetic
from fishprint.targeted import TargetProfile, agreement_set, targeted_fingerprint, \
    targeted_fingerprint_batch

from conftest import TABLE1_RECORDS, make_random_dataset

__author__ = 'Stephen Brown (Little Fish Solutions LTD)'

log = logging.getLogger(__name__)

GREEDY_RATIO = 1 - 1 / math.e


def random_target(seed, universe_size):
    rng = np.random.Generator(np.random.PCG64(10000 + seed))
    return TargetProfile(np.flatnonzero(rng.random(universe_size) < 0.4), external_id='outsider')


def test_targeted_approximation_bound():
    instances = 0
    for seed in range(100):
        dataset = make_random_dataset(seed, num_profiles=8, universe_size=6)
        targets = [
            TargetProfile.of_profile(dataset, seed % dataset.num_profiles),
            random_target(seed, dataset.universe_size),
        ]
        for target in targets:
            for s in (1, 2, 3):
                greedy = targeted_fingerprint(dataset, target, s)
                optimal = exact_targeted(dataset, target, s)

                covered_greedy = dataset.num_profiles - greedy.set_size
                covered_optimal = dataset.num_profiles - optimal.best_objective
                assert covered_optimal >= covered_greedy
                assert covered_greedy >= GREEDY_RATIO * covered_optimal - 1e-9, (seed, s)
                assert list(agreement_set(dataset, greedy.queries)) == list(greedy.anonymity_set)
                instances += 1

    assert instances >= 500


def test_general_approximation_bound():
    instances = 0
    for seed in range(170):
        dataset = make_random_dataset(1000 + seed, num_profiles=10, universe_size=6)
        for s in (1, 2, 3):
            greedy = general_fingerprint(dataset, s)
            optimal = exact_general(dataset, s)

            assert optimal.best_objective >= greedy.separated_pairs
            assert greedy.separated_pairs >= GREEDY_RATIO * optimal.best_objective - 1e-9, \
                (seed, s)
            assert greedy.partitioning == partition_by_items(dataset, greedy.queries)
            instances += 1

    assert instances >= 500


def oracle_corpus():
    """
    Table 1 plus 200 seeded random instances with at most 12 items and 12 profiles
    """
    yield build_dataset(TABLE1_RECORDS), 3
    for seed in range(200):
        dataset = make_random_dataset(2000 + seed, num_profiles=4 + seed % 9,
                                      universe_size=3 + seed % 10, density=0.25 + (seed % 5) / 10)
        yield dataset, 1 + seed % 3


def test_oracle_subsets_reevaluated():
    instances = 0
    for number, (dataset, s) in enumerate(oracle_corpus()):
        targets = [
            TargetProfile.of_profile(dataset, number % dataset.num_profiles),
            random_target(number, dataset.universe_size),
        ]
        for target in targets:
            result = exact_targeted(dataset, target, s)
            assert len(result.best_subset) <= s
            queries = [(i, int(i in target.items)) for i in result.best_subset]
            assert len(agreement_set(dataset, queries)) == result.best_objective, number

        result = exact_general(dataset, s)
        assert len(result.best_subset) <= s
        assert separated_pairs(partition_by_items(dataset, result.best_subset)) == \
            result.best_objective, number
        instances += 1

    assert instances == 201


def test_targeted_sets_shrink_strictly():
    cases = 0
    for seed in range(500):
        dataset = make_random_dataset(3000 + seed, num_profiles=5 + seed % 12,
                                      universe_size=4 + seed % 7)
        for target in (TargetProfile.of_profile(dataset, seed % dataset.num_profiles),
                       random_target(seed, dataset.universe_size)):
            fp = targeted_fingerprint(dataset, target, 1 + seed % 5)
            previous = set(range(dataset.num_profiles))
            for k in range(1, len(fp.queries) + 1):
                current = set(agreement_set(dataset, fp.queries[:k]).tolist())
                assert current < previous, (seed, k)
                previous = current

            assert previous == set(fp.anonymity_set)
            cases += 1

    assert cases == 1000


def refines(fine, coarse, num_profiles):
    coarse_labels = coarse.block_labels(num_profiles)
    return all(len({int(coarse_labels[p]) for p in block}) == 1 for block in fine.blocks)


def test_general_partitions_refine():
    for seed in range(1000):
        dataset = make_random_dataset(4000 + seed, num_profiles=4 + seed % 14,
                                      universe_size=3 + seed % 8)
        result = general_fingerprint(dataset, 1 + seed % 5)

        previous = partition_by_items(dataset, [])
        for k in range(1, len(result.queries) + 1):
            current = partition_by_items(dataset, result.queries[:k])
            assert refines(current, previous, dataset.num_profiles), (seed, k)
            assert separated_pairs(current) > separated_pairs(previous), (seed, k)
            previous = current

        assert previous == result.partitioning
        result.partitioning.validate(dataset.num_profiles)


def distinct_dataset(seed, num_profiles, universe_size):
    """
    Random dataset with no two identical rows
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    rows = set()
    while len(rows) < num_profiles:
        rows.add(tuple(np.flatnonzero(rng.random(universe_size) < 0.5).tolist()))

    labels = ['x{}'.format(i) for i in range(universe_size)]
    records = [('r{:02d}'.format(p), [labels[i] for i in row]) for p, row in enumerate(sorted(rows))]
    return build_dataset(records, universe=labels)


def test_minimum_key_against_exact():
    ratios = []
    for seed in range(100):
        dataset = distinct_dataset(seed, 14, 14)
        greedy = minimum_key(dataset)
        exact = exact_minimum_key(dataset)

        assert len(greedy.partitioning) == 14
        assert exact.best_objective == separated_pairs(greedy.partitioning)
        assert len(greedy.queries) >= len(exact.best_subset)
        # k binary items can tell apart at most 2 ** k rows
        assert len(exact.best_subset) >= math.ceil(math.log2(14))
        ratios.append(len(greedy.queries) / len(exact.best_subset))

    log.info('Greedy / exact minimum key length over {} instances: mean {:.3f}, worst {:.3f}'.format(
        len(ratios), sum(ratios) / len(ratios), max(ratios)
    ))


def test_minimum_key_with_duplicates_separates_everything_possible():
    for seed in range(20):
        dataset = make_random_dataset(seed, num_profiles=30, universe_size=5, density=0.5)
        greedy = minimum_key(dataset)
        classes = duplicate_classes(dataset)
        assert greedy.partitioning == classes
        assert len(greedy.queries) >= math.ceil(math.log2(len(classes)))


def test_general_results_refine_with_budget():
    dataset = make_random_dataset(77, num_profiles=50, universe_size=10, density=0.3)
    previous = None
    for s in range(1, 8):
        result = general_fingerprint(dataset, s)
        if previous is not None:
            assert result.queries[:len(previous.queries)] == previous.queries
            assert result.separated_pairs >= previous.separated_pairs
        previous = result


@pytest.mark.slow
def test_scale():
    config = SynthConfig(50000, 90000, popularity_exponent=1.0, mean_profile_size=42,
                         random_seed=2017)
    dataset = generate_synthetic(config)
    assert 42 * 0.85 <= dataset.profile_sizes.mean() <= 42 * 1.15

    general = general_fingerprint(dataset, 50, threads=4)
    assert len(general.queries) <= 50
    general.partitioning.validate(dataset.num_profiles)

    batch = targeted_fingerprint_batch(dataset, 50, threads=4)
    assert len(batch) == dataset.num_profiles
    assert all(1 <= fp.set_size for fp in batch)

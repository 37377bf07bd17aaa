"""
Exact solvers for small instances, by enumerating every item subset of size <= s.  These are the
ground truth that the greedy results are checked against.

Subsets are visited by size and then lexicographically, and only a strict improvement replaces
the best so far, so the answer is the smallest (then lexicographically first) optimal subset.
Enumeration stops as soon as the best objective any subset could reach is found.
"""

import logging
from itertools import combinations
from math import comb

import numpy as np

from .config import DEFAULT_BUDGET
from .core import check_max_size
from .enumeration import GENERAL, MINKEY, TARGETED, Mode
from .errors import BudgetExceeded, InvalidParameter, ReportError
from .general import duplicate_classes, pairs, separated_pairs

__author__ = 'Stephen Brown (Little Fish Solutions LTD)'

log = logging.getLogger(__name__)

# Above this many columns the subset keys no longer fit in an int64
_MAX_PACKED_COLUMNS = 62


class OracleResult(object):
    def __init__(self, best_subset, best_objective, subsets_examined, mode, max_size,
                 target_id=None):
        """
        :param best_subset: Sorted ItemIds of the optimal subset
        :param best_objective: Targeted: smallest anonymity set size.  General / minimum key:
                               largest number of separated pairs
        :param subsets_examined: How many subsets were evaluated
        :param mode: TARGETED, GENERAL or MINKEY
        :param max_size: The budget s (None for minimum key)
        :param target_id: External id of the target in targeted mode
        """
        self.best_subset = tuple(sorted(int(i) for i in best_subset))
        self.best_objective = int(best_objective)
        self.subsets_examined = int(subsets_examined)
        self.mode = mode
        self.max_size = max_size
        self.target_id = target_id

    def __eq__(self, other):
        if not isinstance(other, OracleResult):
            return NotImplemented

        return self.__dict__ == other.__dict__

    def __repr__(self):
        return '<OracleResult {} {} -> {}>'.format(self.mode, self.best_subset, self.best_objective)

    def to_dict(self, dataset):
        return {
            'mode': self.mode.code,
            'max_size': self.max_size,
            'target': self.target_id,
            'best_subset': [dataset.item_labels[i] for i in self.best_subset],
            'best_objective': self.best_objective,
            'subsets_examined': self.subsets_examined,
        }

    @classmethod
    def from_dict(cls, doc, dataset):
        try:
            return cls([dataset.item_id(label) for label in doc['best_subset']],
                       doc['best_objective'], doc['subsets_examined'], Mode.from_code(doc['mode']),
                       doc['max_size'], target_id=doc['target'])
        except (KeyError, TypeError, ValueError) as e:
            raise ReportError('Malformed oracle document: {}'.format(e))


def count_subsets(n, max_size):
    """
    Number of subsets of an n item universe with at most max_size items (including the empty one)
    """
    return sum(comb(n, k) for k in range(min(max_size, n) + 1))


def _check_budget(required, budget):
    if budget < 1:
        raise InvalidParameter('Budget must be positive, got {}'.format(budget))

    if required > budget:
        raise BudgetExceeded(required, budget)


def _subsets(n, max_size):
    for k in range(min(max_size, n) + 1):
        yield from combinations(range(n), k)


def _separated(dense, subset, total_pairs):
    if not subset:
        return 0

    columns = dense[:, list(subset)]
    if len(subset) <= _MAX_PACKED_COLUMNS:
        weights = np.left_shift(np.int64(1), np.arange(len(subset), dtype=np.int64))
        _, counts = np.unique(columns @ weights, return_counts=True)
    else:
        _, counts = np.unique(columns, axis=0, return_counts=True)

    return total_pairs - int((counts * (counts - 1) // 2).sum())


def exact_targeted(dataset, target, max_size, budget=DEFAULT_BUDGET):
    """
    Item subset of size <= s minimising the number of profiles agreeing with the target on it

    :raises BudgetExceeded: If more than budget subsets would need enumerating
    """
    max_size = check_max_size(max_size)
    mask = target.mask(dataset)
    _check_budget(count_subsets(dataset.universe_size, max_size), budget)

    agrees = dataset.to_dense() == mask
    # No subset can do better than the rows identical to the target on every item
    floor = int(agrees.all(axis=1).sum())

    best_subset = ()
    best = dataset.num_profiles
    examined = 0
    for subset in _subsets(dataset.universe_size, max_size):
        examined += 1
        size = int(agrees[:, list(subset)].all(axis=1).sum())
        if size < best:
            best, best_subset = size, subset
        if best == floor:
            break

    log.debug('Exact targeted optimum {} after {} subsets'.format(best, examined))
    return OracleResult(best_subset, best, examined, TARGETED, max_size,
                        target_id=target.external_id)


def exact_general(dataset, max_size, budget=DEFAULT_BUDGET):
    """
    Item subset of size <= s maximising the number of separated profile pairs

    :raises BudgetExceeded: If more than budget subsets would need enumerating
    """
    max_size = check_max_size(max_size)
    _check_budget(count_subsets(dataset.universe_size, max_size), budget)

    dense = dataset.to_dense().astype(np.int64)
    total_pairs = pairs(dataset.num_profiles)
    ceiling = separated_pairs(duplicate_classes(dataset))

    best_subset = ()
    best = 0
    examined = 0
    for subset in _subsets(dataset.universe_size, max_size):
        examined += 1
        objective = _separated(dense, subset, total_pairs)
        if objective > best:
            best, best_subset = objective, subset
        if best == ceiling:
            break

    log.debug('Exact general optimum {} after {} subsets'.format(best, examined))
    return OracleResult(best_subset, best, examined, GENERAL, max_size)


def exact_minimum_key(dataset, budget=DEFAULT_BUDGET):
    """
    Smallest item subset separating every pair of profiles that can be separated at all

    :raises BudgetExceeded: As soon as the next subset size would take the count over budget
    """
    n = dataset.universe_size
    dense = dataset.to_dense().astype(np.int64)
    total_pairs = pairs(dataset.num_profiles)
    ceiling = separated_pairs(duplicate_classes(dataset))

    examined = 0
    for k in range(n + 1):
        _check_budget(examined + comb(n, k), budget)
        for subset in combinations(range(n), k):
            examined += 1
            if _separated(dense, subset, total_pairs) == ceiling:
                log.debug('Exact minimum key has {} items ({} subsets)'.format(k, examined))
                return OracleResult(subset, ceiling, examined, MINKEY, None)

    # The full universe always reaches the ceiling
    raise AssertionError('Minimum key search exhausted the universe')

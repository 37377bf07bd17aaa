"""
Targeted fingerprinting: pick at most s items whose values make one target profile as unique as
possible in the dataset.

The greedy loop keeps the anonymity set of the target (profiles agreeing with it on every query
so far) and at each step queries the item that leaves the fewest profiles in it.  This is the
greedy Maximum Coverage heuristic so the number of profiles excluded is within (1 - 1/e) of
the best possible for the same budget.
"""

import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .core import ID_DTYPE, check_max_size, check_threads, matching_profiles
from .errors import InvalidParameter, ReportError

__author__ = 'Stephen Brown (Little Fish Solutions LTD)'

log = logging.getLogger(__name__)


class TargetProfile(object):
    """
    The profile being fingerprinted.  It need not be a member of the dataset
    """

    def __init__(self, items, external_id=None):
        """
        :param items: ItemIds of the items the target has (value 1); all others are 0
        :param external_id: Label used in reports, if known
        """
        self.items = tuple(sorted({int(i) for i in items}))
        self.external_id = external_id

    def __eq__(self, other):
        if not isinstance(other, TargetProfile):
            return NotImplemented

        return self.items == other.items and self.external_id == other.external_id

    def __repr__(self):
        return 'TargetProfile({!r}, external_id={!r})'.format(self.items, self.external_id)

    @classmethod
    def from_labels(cls, dataset, labels, external_id=None):
        """
        :raises InvalidParameter: If a label is not in the dataset universe
        """
        return cls([dataset.item_id(label) for label in labels], external_id=external_id)

    @classmethod
    def of_profile(cls, dataset, profile_id):
        profile = dataset.profile(profile_id)
        return cls(profile.items, external_id=profile.external_id)

    def check(self, dataset):
        for item in self.items:
            if not 0 <= item < dataset.universe_size:
                raise InvalidParameter('Target item {} is outside the universe (size {})'.format(
                    item, dataset.universe_size
                ))

    def mask(self, dataset):
        """
        :return: Boolean array of length n, True where the target has the item
        """
        self.check(dataset)
        mask = np.zeros(dataset.universe_size, dtype=bool)
        mask[list(self.items)] = True
        return mask


class Fingerprint(object):
    def __init__(self, queries, anonymity_set, terminated_early, max_size, target_id=None):
        """
        :param queries: Ordered list of (ItemId, value) pairs
        :param anonymity_set: Sorted ProfileIds agreeing with the target on every query
        :param terminated_early: True if the loop stopped because no item could shrink the set
        :param max_size: The budget s the fingerprint was built with
        :param target_id: External id of the target, if it has one
        """
        self.queries = [(int(i), int(v)) for i, v in queries]
        self.anonymity_set = tuple(int(p) for p in anonymity_set)
        self.terminated_early = bool(terminated_early)
        self.max_size = max_size
        self.target_id = target_id

    def __eq__(self, other):
        if not isinstance(other, Fingerprint):
            return NotImplemented

        return (self.queries, self.anonymity_set, self.terminated_early, self.max_size,
                self.target_id) == (other.queries, other.anonymity_set, other.terminated_early,
                                    other.max_size, other.target_id)

    def __repr__(self):
        return '<Fingerprint {} queries, set size {}>'.format(len(self.queries), self.set_size)

    @property
    def items(self):
        return [i for i, _ in self.queries]

    @property
    def length(self):
        return len(self.queries)

    @property
    def set_size(self):
        return len(self.anonymity_set)

    @property
    def is_unique(self):
        return self.set_size == 1

    @property
    def is_empty(self):
        """
        Only possible for targets outside the dataset: no profile matches the fingerprint
        """
        return self.set_size == 0

    def to_dict(self, dataset):
        return {
            'target': self.target_id,
            'max_size': self.max_size,
            'queries': [
                {'item': dataset.item_labels[i], 'value': v} for i, v in self.queries
            ],
            'anonymity_set': [dataset.external_ids[p] for p in self.anonymity_set],
            'set_size': self.set_size,
            'terminated_early': self.terminated_early,
            'empty': self.is_empty,
        }

    @classmethod
    def from_dict(cls, doc, dataset):
        try:
            queries = [(dataset.item_id(q['item']), q['value']) for q in doc['queries']]
            members = sorted(dataset.profile_id(ext) for ext in doc['anonymity_set'])
            return cls(queries, members, doc['terminated_early'], doc['max_size'],
                       target_id=doc['target'])
        except (KeyError, TypeError, InvalidParameter) as e:
            raise ReportError('Malformed fingerprint document: {}'.format(e))


def agreement_set(dataset, queries):
    """
    Recompute from scratch the profiles that match every (item, value) pair

    :return: Sorted array of ProfileIds
    """
    members = np.arange(dataset.num_profiles, dtype=ID_DTYPE)
    for item, value in queries:
        members = np.intersect1d(members, matching_profiles(dataset, item, value),
                                 assume_unique=True)

    return members


def targeted_fingerprint(dataset, target, max_size):
    """
    Greedy targeted fingerprint.

    Each iteration picks the unselected item minimising the number of anonymity set members that
    agree with the target on it (ties go to the smallest ItemId) and intersects the set with that
    item's matching profiles.  Stops when s items are selected, when the set has at most one
    member, or when no item would shrink it (terminated_early).

    :param dataset: The Dataset
    :param target: TargetProfile
    :param max_size: Maximum number of queries, s >= 1
    :return: Fingerprint
    """
    max_size = check_max_size(max_size)
    in_target = target.mask(dataset)

    selected = np.zeros(dataset.universe_size, dtype=bool)
    anon_set = np.arange(dataset.num_profiles, dtype=ID_DTYPE)
    queries = []
    terminated_early = False

    while len(queries) < max_size and len(anon_set) > 1:
        size = len(anon_set)
        present = dataset.item_counts(anon_set)
        # Agreeing members: those having the item if the target has it, the rest otherwise
        agreeing = np.where(in_target, present, size - present)
        agreeing[selected] = size

        # argmin returns the first minimum, i.e. the smallest ItemId on ties
        best = int(np.argmin(agreeing)) if len(agreeing) else None
        if best is None or agreeing[best] >= size:
            terminated_early = True
            break

        value = int(in_target[best])
        postings = dataset.posting_list(best)
        if value:
            anon_set = np.intersect1d(anon_set, postings, assume_unique=True)
        else:
            anon_set = np.setdiff1d(anon_set, postings, assume_unique=True)

        selected[best] = True
        queries.append((best, value))
        log.debug('Selected item {} = {}, {} profiles left'.format(best, value, len(anon_set)))

    if len(anon_set) == 0:
        log.debug('Target {} matches no profile in the dataset'.format(target.external_id))

    return Fingerprint(queries, anon_set, terminated_early, max_size, target_id=target.external_id)


def targeted_fingerprint_batch(dataset, max_size, threads=1):
    """
    Fingerprint every profile of the dataset as a target, independently

    :param threads: Number of worker threads.  Results are the same for any value
    :return: List of Fingerprints in ProfileId order
    """
    max_size = check_max_size(max_size)
    threads = check_threads(threads)

    def fingerprint_of(profile_id):
        return targeted_fingerprint(dataset, TargetProfile.of_profile(dataset, profile_id), max_size)

    log.info('Fingerprinting {} profiles with s = {}'.format(dataset.num_profiles, max_size))

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            results = list(executor.map(fingerprint_of, range(dataset.num_profiles)))
    else:
        results = [fingerprint_of(p) for p in range(dataset.num_profiles)]

    log.info('{} of {} profiles have a unique fingerprint'.format(
        sum(1 for r in results if r.is_unique), len(results)
    ))

    return results

"""
Anonymity set statistics over fingerprinting results: how many profiles are unique, almost
unique (set size <= k), the distribution of set sizes and of fingerprint lengths.

All counts are per profile.  Targeted anonymity sets are not disjoint (each target has its own)
so a set of size 10 in a targeted batch may concern only one profile.
"""

import logging
from collections import Counter

import numpy as np

from .config import DEFAULT_CHUNK_ENTRIES, DEFAULT_K_THRESHOLD
from .core import check_max_size
from .enumeration import TARGETED, Mode
from .errors import InvalidParameter, ReportError
from .general import duplicate_classes, general_fingerprint

__author__ = 'Stephen Brown (Little Fish Solutions LTD)'

log = logging.getLogger(__name__)

# Sets at least this big are reported separately as "large"
LARGE_SET_SIZE = 10


class AnalysisReport(object):
    # Document keys, in the order the constructor takes them
    FIELDS = [
        'mode', 'max_size', 'dataset', 'num_profiles', 'k_threshold', 'set_size_histogram',
        'fingerprint_length_histogram', 'unique_fraction', 'almost_unique_fraction',
        'average_set_size', 'block_average_set_size', 'num_sets', 'average_fingerprint_length',
        'non_unique_count', 'large_set_count', 'empty_set_count',
    ]

    def __init__(self, mode, max_size, num_profiles, k_threshold, set_size_histogram,
                 unique_fraction, almost_unique_fraction, average_set_size, non_unique_count,
                 large_set_count, dataset=None, fingerprint_length_histogram=None,
                 block_average_set_size=None, num_sets=None, average_fingerprint_length=None,
                 empty_set_count=0):
        """
        :param mode: TARGETED or GENERAL / MINKEY
        :param set_size_histogram: Dict anonymity set size -> number of profiles in such sets
        :param fingerprint_length_histogram: Dict length -> number of profiles (targeted only)
        :param average_set_size: Mean over profiles of their set size (for disjoint sets this is
                                 sum of |set|^2 / |B|)
        :param block_average_set_size: Mean over sets of their size (general only)
        :param dataset: Dataset descriptor dict, see Dataset.describe()
        """
        self.mode = mode
        self.max_size = max_size
        self.num_profiles = int(num_profiles)
        self.k_threshold = int(k_threshold)
        self.set_size_histogram = {int(k): int(v) for k, v in set_size_histogram.items()}
        self.unique_fraction = float(unique_fraction)
        self.almost_unique_fraction = float(almost_unique_fraction)
        self.average_set_size = float(average_set_size)
        self.non_unique_count = int(non_unique_count)
        self.large_set_count = int(large_set_count)
        self.dataset = dataset
        self.fingerprint_length_histogram = None
        if fingerprint_length_histogram is not None:
            self.fingerprint_length_histogram = {
                int(k): int(v) for k, v in fingerprint_length_histogram.items()
            }
        self.block_average_set_size = None if block_average_set_size is None \
            else float(block_average_set_size)
        self.num_sets = None if num_sets is None else int(num_sets)
        self.average_fingerprint_length = None if average_fingerprint_length is None \
            else float(average_fingerprint_length)
        self.empty_set_count = int(empty_set_count)

    def __eq__(self, other):
        if not isinstance(other, AnalysisReport):
            return NotImplemented

        return self.to_dict() == other.to_dict()

    def __repr__(self):
        return '<AnalysisReport {} s={} unique={:.4f}>'.format(self.mode, self.max_size,
                                                               self.unique_fraction)

    def to_dict(self):
        doc = {name: getattr(self, name) for name in self.FIELDS}
        doc['mode'] = self.mode.code
        return doc

    @classmethod
    def from_dict(cls, doc):
        try:
            kwargs = {name: doc[name] for name in cls.FIELDS}
            kwargs['mode'] = Mode.from_code(kwargs['mode'])
            return cls(**kwargs)
        except (KeyError, TypeError, ValueError, AttributeError) as e:
            raise ReportError('Malformed analysis document: {}'.format(e))


def _check_k_threshold(k_threshold):
    if k_threshold < 1:
        raise InvalidParameter('Almost unique threshold must be at least 1, got {}'.format(
            k_threshold
        ))


def analyze_targeted_batch(results, num_profiles, k_threshold=DEFAULT_K_THRESHOLD, dataset=None):
    """
    :param results: One Fingerprint per dataset profile
    :param num_profiles: |B|
    :param dataset: Optional dataset descriptor for the report parameters
    """
    _check_k_threshold(k_threshold)
    if len(results) != num_profiles:
        raise InvalidParameter('Expected {} fingerprints (one per profile), got {}'.format(
            num_profiles, len(results)
        ))
    if not num_profiles:
        raise InvalidParameter('Nothing to analyse')

    sizes = np.array([r.set_size for r in results])
    lengths = np.array([r.length for r in results])

    return AnalysisReport(
        TARGETED,
        results[0].max_size,
        num_profiles,
        k_threshold,
        Counter(sizes.tolist()),
        unique_fraction=np.count_nonzero(sizes == 1) / num_profiles,
        almost_unique_fraction=np.count_nonzero((sizes >= 1) & (sizes <= k_threshold)) / num_profiles,
        average_set_size=sizes.mean(),
        non_unique_count=np.count_nonzero(sizes > 1),
        large_set_count=np.count_nonzero(sizes >= LARGE_SET_SIZE),
        dataset=dataset,
        fingerprint_length_histogram=Counter(lengths.tolist()),
        average_fingerprint_length=lengths.mean(),
        empty_set_count=np.count_nonzero(sizes == 0),
    )


def analyze_general(result, num_profiles, k_threshold=DEFAULT_K_THRESHOLD, dataset=None):
    """
    :param result: GeneralResult
    :param num_profiles: |B|
    """
    _check_k_threshold(k_threshold)
    result.partitioning.validate(num_profiles)

    block_sizes = np.array(result.partitioning.sizes)
    # Every profile in a block of size k sees an anonymity set of size k
    histogram = Counter()
    for size in block_sizes.tolist():
        histogram[size] += size

    return AnalysisReport(
        result.mode,
        result.max_size,
        num_profiles,
        k_threshold,
        histogram,
        unique_fraction=np.count_nonzero(block_sizes == 1) / num_profiles,
        almost_unique_fraction=block_sizes[block_sizes <= k_threshold].sum() / num_profiles,
        average_set_size=(block_sizes ** 2).sum() / num_profiles,
        non_unique_count=block_sizes[block_sizes > 1].sum(),
        large_set_count=block_sizes[block_sizes >= LARGE_SET_SIZE].sum(),
        dataset=dataset,
        block_average_set_size=num_profiles / len(block_sizes),
        num_sets=len(block_sizes),
    )


def sweep_general(dataset, s_values, threads=1, k_threshold=DEFAULT_K_THRESHOLD,
                  chunk_entries=DEFAULT_CHUNK_ENTRIES, source=None):
    """
    Run general fingerprinting independently for each budget

    :param s_values: Sorted positive budgets
    :return: List of (s, AnalysisReport)
    """
    s_values = [check_max_size(s) for s in s_values]
    if not s_values:
        raise InvalidParameter('No budgets given for the sweep')
    if s_values != sorted(s_values):
        raise InvalidParameter('Sweep budgets must be sorted, got {}'.format(s_values))

    descriptor = dataset.describe(source)
    entries = []
    for s in s_values:
        result = general_fingerprint(dataset, s, threads=threads, chunk_entries=chunk_entries)
        report = analyze_general(result, dataset.num_profiles, k_threshold=k_threshold,
                                 dataset=descriptor)
        log.info('s = {}: average set size {:.2f}, {:.2%} unique'.format(
            s, report.average_set_size, report.unique_fraction
        ))
        entries.append((s, report))

    return entries


class DatasetSummary(object):
    FIELDS = [
        'dataset', 'records', 'universe_size', 'items_in_use', 'max_record_size',
        'min_record_size', 'average_record_size', 'std_record_size', 'distinct_rows',
        'duplicated_profiles',
    ]

    def __init__(self, **kwargs):
        for name in self.FIELDS:
            setattr(self, name, kwargs[name])

    def __eq__(self, other):
        if not isinstance(other, DatasetSummary):
            return NotImplemented

        return self.to_dict() == other.to_dict()

    def to_dict(self):
        return {name: getattr(self, name) for name in self.FIELDS}

    @classmethod
    def from_dict(cls, doc):
        try:
            return cls(**{name: doc[name] for name in cls.FIELDS})
        except (KeyError, TypeError) as e:
            raise ReportError('Malformed dataset summary document: {}'.format(e))


def summarize_dataset(dataset, source=None):
    """
    Record size statistics and the number of rows shared by several profiles
    """
    record_sizes = dataset.profile_sizes
    class_sizes = np.array(duplicate_classes(dataset).sizes)

    return DatasetSummary(
        dataset=dataset.describe(source),
        records=dataset.num_profiles,
        universe_size=dataset.universe_size,
        items_in_use=int(np.count_nonzero(dataset.item_frequencies)),
        max_record_size=int(record_sizes.max()),
        min_record_size=int(record_sizes.min()),
        average_record_size=float(record_sizes.mean()),
        std_record_size=float(record_sizes.std()),
        distinct_rows=len(class_sizes),
        duplicated_profiles=int(class_sizes[class_sizes > 1].sum()),
    )

"""
Core data model shared by all of the algorithms.

A dataset is a set of profiles over a universe of items.  Each profile is a sparse binary vector,
stored as the sorted list of items it contains.  Items and profiles are referred to by dense
integer ids (ItemId, ProfileId); the string labels only appear at the I/O boundary.

Internally the rows are kept in CSR form (row_ptr / row_items) and the inverted index (item ->
sorted profiles containing it) in the same form (posting_ptr / postings).  Value-0 posting lists
are never stored, they are computed as complements when needed.
"""

import logging

import numpy as np

from .errors import DatasetError, InvalidParameter
from . import fileutil

__author__ = 'Stephen Brown (Little Fish Solutions LTD)'

log = logging.getLogger(__name__)

ID_DTYPE = np.int64


def _read_only(array):
    array.flags.writeable = False
    return array


class Profile(object):
    """
    One individual: an external label and the sorted ItemIds of the items they have
    """
    __slots__ = ('external_id', 'items')

    def __init__(self, external_id, items):
        self.external_id = external_id
        self.items = tuple(int(i) for i in items)

    def __eq__(self, other):
        if not isinstance(other, Profile):
            return NotImplemented

        return self.external_id == other.external_id and self.items == other.items

    def __hash__(self):
        return hash((self.external_id, self.items))

    def __repr__(self):
        return 'Profile({!r}, {!r})'.format(self.external_id, self.items)


class Dataset(object):
    """
    Immutable collection of profiles plus the inverted index.  Use build_dataset() to create one.
    """

    def __init__(self, item_labels, external_ids, row_ptr, row_items):
        """
        :param item_labels: Sequence of n item labels, in ItemId order
        :param external_ids: Sequence of profile labels, in ProfileId order
        :param row_ptr: CSR row pointer, length num_profiles + 1
        :param row_items: CSR column indices; strictly increasing within each row
        """
        self._item_labels = tuple(item_labels)
        self._external_ids = tuple(external_ids)

        n = len(self._item_labels)
        num_profiles = len(self._external_ids)

        row_ptr = np.asarray(row_ptr, dtype=ID_DTYPE)
        row_items = np.asarray(row_items, dtype=ID_DTYPE)

        if len(row_ptr) != num_profiles + 1 or row_ptr[0] != 0 or row_ptr[-1] != len(row_items):
            raise DatasetError('Inconsistent row pointer for {} profiles'.format(num_profiles))

        if len(row_items) and (row_items.min() < 0 or row_items.max() >= n):
            raise DatasetError('Item id out of range for universe of size {}'.format(n))

        self._row_ptr = _read_only(row_ptr)
        self._row_items = _read_only(row_items)

        # Stable sort on the item column keeps each posting list in ascending profile order
        row_of_entry = np.repeat(np.arange(num_profiles, dtype=ID_DTYPE), np.diff(row_ptr))
        order = np.argsort(row_items, kind='stable')
        frequencies = np.bincount(row_items, minlength=n).astype(ID_DTYPE)
        posting_ptr = np.zeros(n + 1, dtype=ID_DTYPE)
        np.cumsum(frequencies, out=posting_ptr[1:])

        self._postings = _read_only(row_of_entry[order])
        self._posting_ptr = _read_only(posting_ptr)
        self._frequencies = _read_only(frequencies)

        self._item_index = {label: i for i, label in enumerate(self._item_labels)}
        self._profile_index = {ext: p for p, ext in enumerate(self._external_ids)}
        self._digest = None

    def __eq__(self, other):
        if not isinstance(other, Dataset):
            return NotImplemented

        return self._item_labels == other._item_labels \
            and self._external_ids == other._external_ids \
            and np.array_equal(self._row_ptr, other._row_ptr) \
            and np.array_equal(self._row_items, other._row_items)

    __hash__ = None

    def __len__(self):
        return self.num_profiles

    def __repr__(self):
        return '<Dataset {} profiles, {} items>'.format(self.num_profiles, self.universe_size)

    @property
    def universe_size(self):
        return len(self._item_labels)

    @property
    def num_profiles(self):
        return len(self._external_ids)

    @property
    def num_entries(self):
        return len(self._row_items)

    @property
    def item_labels(self):
        return self._item_labels

    @property
    def external_ids(self):
        return self._external_ids

    @property
    def item_frequencies(self):
        """
        :return: Array of n counts - the length of each posting list
        """
        return self._frequencies

    @property
    def profile_sizes(self):
        """
        :return: Array with the number of items in each profile
        """
        return np.diff(self._row_ptr)

    def check_item(self, item):
        if not 0 <= item < self.universe_size:
            raise InvalidParameter('Item {} is outside the universe (size {})'.format(
                item, self.universe_size
            ))

    def check_profile(self, profile_id):
        if not 0 <= profile_id < self.num_profiles:
            raise InvalidParameter('Profile {} is outside the dataset (size {})'.format(
                profile_id, self.num_profiles
            ))

    def item_label(self, item):
        self.check_item(item)
        return self._item_labels[item]

    def item_id(self, label):
        try:
            return self._item_index[label]
        except KeyError:
            raise InvalidParameter('Item "{}" is not in the universe'.format(label))

    def profile_id(self, external_id):
        try:
            return self._profile_index[external_id]
        except KeyError:
            raise InvalidParameter('Profile "{}" is not in the dataset'.format(external_id))

    def profile_items(self, profile_id):
        """
        :return: Read only array of the ItemIds in the profile
        """
        self.check_profile(profile_id)
        return self._row_items[self._row_ptr[profile_id]:self._row_ptr[profile_id + 1]]

    def profile(self, profile_id):
        return Profile(self._external_ids[profile_id], self.profile_items(profile_id))

    @property
    def profiles(self):
        return [self.profile(p) for p in range(self.num_profiles)]

    def posting_list(self, item):
        """
        :return: Read only sorted array of the ProfileIds containing the item
        """
        self.check_item(item)
        return self._postings[self._posting_ptr[item]:self._posting_ptr[item + 1]]

    @property
    def inverted_index(self):
        return [self.posting_list(i) for i in range(self.universe_size)]

    def gather_items(self, profile_ids):
        """
        Concatenate the item lists of several profiles

        :param profile_ids: Array of ProfileIds
        :return: Tuple (items, lengths) where lengths[k] is the number of items contributed by
                 profile_ids[k]
        """
        profile_ids = np.asarray(profile_ids, dtype=ID_DTYPE)
        starts = self._row_ptr[profile_ids]
        lengths = self._row_ptr[profile_ids + 1] - starts
        total = int(lengths.sum())
        if total == 0:
            return np.zeros(0, dtype=ID_DTYPE), lengths

        # Entry j of the result belongs to profile k at offset j - (entries before k)
        offsets = np.repeat(starts - (np.cumsum(lengths) - lengths), lengths)
        return self._row_items[offsets + np.arange(total, dtype=ID_DTYPE)], lengths

    def item_counts(self, profile_ids):
        """
        :param profile_ids: Distinct ProfileIds
        :return: Array of n counts, counts[i] = how many of profile_ids contain item i
        """
        if len(profile_ids) == self.num_profiles:
            return self._frequencies.copy()

        items, _ = self.gather_items(profile_ids)
        return np.bincount(items, minlength=self.universe_size).astype(ID_DTYPE)

    def to_dense(self):
        """
        :return: num_profiles x n boolean matrix.  Only sensible for small datasets
        """
        dense = np.zeros((self.num_profiles, self.universe_size), dtype=bool)
        rows = np.repeat(np.arange(self.num_profiles), np.diff(self._row_ptr))
        dense[rows, self._row_items] = True
        return dense

    def records(self):
        """
        :return: List of (external_id, [item labels]) in ProfileId order
        """
        return [
            (ext, [self._item_labels[i] for i in self.profile_items(p)])
            for p, ext in enumerate(self._external_ids)
        ]

    def to_text(self):
        """
        Canonical dataset file text: one "external_id<TAB>label,label,..." line per profile
        """
        lines = ['{}\t{}\n'.format(ext, ','.join(labels)) for ext, labels in self.records()]
        return ''.join(lines)

    @property
    def digest(self):
        if self._digest is None:
            # The universe is part of the identity: it may hold items no profile has
            text = '\n'.join(self._item_labels) + '\n\n' + self.to_text()
            self._digest = fileutil.bytes_md5sum(text.encode('utf-8'))

        return self._digest

    def describe(self, source=None):
        """
        :return: Dict identifying this dataset in report parameters
        """
        return {
            'source': source,
            'profiles': self.num_profiles,
            'items': self.universe_size,
            'digest': self.digest,
        }


def _check_label(label, what):
    if not isinstance(label, str) or not label:
        raise DatasetError('{} must be a non-empty string, got {!r}'.format(what, label))


def build_dataset(records, universe=None):
    """
    Build a Dataset from (external_id, item labels) records.

    The universe is the sorted union of all labels that appear in a record, plus any labels
    listed in universe.  ItemIds follow lexicographic label order so they only depend on the
    labels, never on record order.  Duplicate labels within one record are collapsed.

    :param records: Iterable of (external_id, list of item labels)
    :param universe: Optional iterable of labels declaring the full universe.  Every label
                     used by a record must be in it
    """
    records = list(records)
    if not records:
        raise DatasetError('Dataset is empty')

    seen_ids = set()
    observed = set()
    for external_id, labels in records:
        _check_label(external_id, 'Profile id')
        if external_id in seen_ids:
            raise DatasetError('Duplicate profile id "{}"'.format(external_id))
        seen_ids.add(external_id)

        for label in labels:
            _check_label(label, 'Item label in profile "{}"'.format(external_id))
            observed.add(label)

    all_labels = set(observed)
    if universe is not None:
        declared = set()
        for label in universe:
            _check_label(label, 'Universe label')
            declared.add(label)

        missing = sorted(observed - declared)
        if missing:
            raise DatasetError('Universe does not contain item "{}"{}'.format(
                missing[0], ' (and {} more)'.format(len(missing) - 1) if len(missing) > 1 else ''
            ))
        all_labels |= declared

    item_labels = sorted(all_labels)
    index = {label: i for i, label in enumerate(item_labels)}

    row_ptr = np.zeros(len(records) + 1, dtype=ID_DTYPE)
    rows = []
    for p, (_, labels) in enumerate(records):
        row = sorted({index[label] for label in labels})
        rows.extend(row)
        row_ptr[p + 1] = row_ptr[p] + len(row)

    dataset = Dataset(item_labels, [r[0] for r in records], row_ptr,
                      np.array(rows, dtype=ID_DTYPE))

    log.debug('Built dataset: {} profiles, {} items, {} entries'.format(
        dataset.num_profiles, dataset.universe_size, dataset.num_entries
    ))

    return dataset


def check_value(value):
    if value not in (0, 1):
        raise InvalidParameter('Queried value must be 0 or 1, got {!r}'.format(value))

    return int(value)


def matching_profiles(dataset, item, value):
    """
    The profiles whose value at item equals value

    :return: Sorted array of ProfileIds.  For value 1 this is the posting list, for value 0 its
             complement
    """
    dataset.check_item(item)
    value = check_value(value)

    postings = dataset.posting_list(item)
    if value == 1:
        return postings

    mask = np.ones(dataset.num_profiles, dtype=bool)
    mask[postings] = False
    return np.flatnonzero(mask).astype(ID_DTYPE)


def check_max_size(max_size):
    """
    Validate the fingerprint size budget s
    """
    if isinstance(max_size, bool) or not isinstance(max_size, (int, np.integer)) or max_size < 1:
        raise InvalidParameter('Maximum fingerprint size must be a positive integer, got {!r}'.format(
            max_size
        ))

    return int(max_size)


def check_threads(threads):
    if isinstance(threads, bool) or not isinstance(threads, (int, np.integer)) or threads < 1:
        raise InvalidParameter('Thread count must be a positive integer, got {!r}'.format(threads))

    return int(threads)

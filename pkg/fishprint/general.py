"""
General fingerprinting: pick at most s items that split every profile of the dataset into
anonymity sets that are as small as possible, i.e. that separate as many pairs of profiles as
possible.

The greedy loop keeps the current partitioning (the leaves of a binary splitting tree).  Each
iteration scores every item by the number of same-block pairs it would separate,

    separation[i] = sum over blocks S of t_S[i] * (|S| - t_S[i])

where t_S[i] is the number of profiles in S having item i, picks the best item and splits every
block into the members that have it and the members that don't.  Only the last partitioning is
kept, so working state is O(n + |B|) on top of the dataset.

Running with s = n gives a greedy answer to the Minimum Key Problem (minimum_key).
"""

import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .config import DEFAULT_CHUNK_ENTRIES
from .core import ID_DTYPE, check_max_size, check_threads
from .enumeration import GENERAL, MINKEY, Mode
from .errors import InvalidParameter, InvalidPartitioning, ReportError

__author__ = 'Stephen Brown (Little Fish Solutions LTD)'

log = logging.getLogger(__name__)


def pairs(size):
    return size * (size - 1) // 2


def _refine(labels, has):
    """
    Split every block by a membership mask.  Returns compact block labels
    """
    _, refined = np.unique(labels * 2 + has, return_inverse=True)
    return refined.reshape(-1).astype(ID_DTYPE)


class Partitioning(object):
    """
    Disjoint, non-empty blocks of ProfileIds covering the whole dataset.  Blocks are stored sorted
    internally and ordered by their smallest member
    """

    def __init__(self, blocks):
        blocks = [tuple(sorted(int(p) for p in block)) for block in blocks]
        if any(len(block) == 0 for block in blocks):
            raise InvalidPartitioning('Partitioning contains an empty block')

        self.blocks = tuple(sorted(blocks, key=lambda block: block[0]))

    def __eq__(self, other):
        if not isinstance(other, Partitioning):
            return NotImplemented

        return self.blocks == other.blocks

    def __len__(self):
        return len(self.blocks)

    def __repr__(self):
        return '<Partitioning {} blocks over {} profiles>'.format(len(self.blocks),
                                                                   self.num_profiles)

    @property
    def num_profiles(self):
        return sum(len(block) for block in self.blocks)

    @property
    def sizes(self):
        return [len(block) for block in self.blocks]

    def validate(self, num_profiles):
        """
        :raises InvalidPartitioning: If the blocks overlap or don't cover 0..num_profiles-1
        """
        seen = np.zeros(num_profiles, dtype=bool)
        for block in self.blocks:
            for p in block:
                if not 0 <= p < num_profiles:
                    raise InvalidPartitioning('Profile {} is outside the dataset (size {})'.format(
                        p, num_profiles
                    ))
                if seen[p]:
                    raise InvalidPartitioning('Profile {} appears in more than one block'.format(p))
                seen[p] = True

        if not seen.all():
            raise InvalidPartitioning('Profile {} is not in any block'.format(
                int(np.flatnonzero(~seen)[0])
            ))

    def block_labels(self, num_profiles):
        """
        :return: Array mapping each ProfileId to the index of its block
        """
        self.validate(num_profiles)
        labels = np.empty(num_profiles, dtype=ID_DTYPE)
        for index, block in enumerate(self.blocks):
            labels[list(block)] = index

        return labels

    @classmethod
    def from_block_labels(cls, labels):
        labels = np.asarray(labels)
        order = np.argsort(labels, kind='stable')
        boundaries = np.flatnonzero(np.diff(labels[order])) + 1
        return cls(np.split(order, boundaries))

    @classmethod
    def trivial(cls, num_profiles):
        return cls([range(num_profiles)])

    def to_dict(self, dataset):
        return [[dataset.external_ids[p] for p in block] for block in self.blocks]

    @classmethod
    def from_dict(cls, doc, dataset):
        return cls([[dataset.profile_id(ext) for ext in block] for block in doc])


class SplitStep(object):
    """
    One level of the splitting tree: the item selected and, for every block it actually split,
    (block size, members with the item, members without it)
    """

    def __init__(self, item, separation, splits):
        self.item = int(item)
        self.separation = int(separation)
        self.splits = [tuple(int(x) for x in split) for split in splits]

    def __eq__(self, other):
        if not isinstance(other, SplitStep):
            return NotImplemented

        return (self.item, self.separation, self.splits) == \
            (other.item, other.separation, other.splits)

    def __repr__(self):
        return 'SplitStep({}, {}, {})'.format(self.item, self.separation, self.splits)

    def to_dict(self, dataset):
        return {
            'item': dataset.item_labels[self.item],
            'separation': self.separation,
            'splits': [list(split) for split in self.splits],
        }

    @classmethod
    def from_dict(cls, doc, dataset):
        return cls(dataset.item_id(doc['item']), doc['separation'], doc['splits'])


class GeneralResult(object):
    def __init__(self, queries, partitioning, split_tree, terminated_early, max_size, mode=GENERAL):
        """
        :param queries: Selected ItemIds in selection order
        :param partitioning: Final Partitioning (the anonymity sets)
        :param split_tree: List of SplitStep, one per selected item
        :param terminated_early: True if the loop stopped because no item separated anything
        :param max_size: The budget s
        :param mode: GENERAL or MINKEY
        """
        self.queries = [int(i) for i in queries]
        self.partitioning = partitioning
        self.split_tree = list(split_tree)
        self.terminated_early = bool(terminated_early)
        self.max_size = max_size
        self.mode = mode

    def __eq__(self, other):
        if not isinstance(other, GeneralResult):
            return NotImplemented

        return (self.queries, self.partitioning, self.split_tree, self.terminated_early,
                self.max_size, self.mode) == (other.queries, other.partitioning, other.split_tree,
                                              other.terminated_early, other.max_size, other.mode)

    def __repr__(self):
        return '<GeneralResult {} queries, {} sets>'.format(len(self.queries),
                                                            len(self.partitioning))

    @property
    def separated_pairs(self):
        return separated_pairs(self.partitioning)

    def to_dict(self, dataset):
        return {
            'mode': self.mode.code,
            'max_size': self.max_size,
            'queries': [dataset.item_labels[i] for i in self.queries],
            'anonymity_sets': self.partitioning.to_dict(dataset),
            'num_sets': len(self.partitioning),
            'separated_pairs': self.separated_pairs,
            'split_tree': [step.to_dict(dataset) for step in self.split_tree],
            'terminated_early': self.terminated_early,
        }

    @classmethod
    def from_dict(cls, doc, dataset):
        try:
            return cls(
                [dataset.item_id(label) for label in doc['queries']],
                Partitioning.from_dict(doc['anonymity_sets'], dataset),
                [SplitStep.from_dict(step, dataset) for step in doc['split_tree']],
                doc['terminated_early'],
                doc['max_size'],
                Mode.from_code(doc['mode'])
            )
        except (KeyError, TypeError, ValueError) as e:
            raise ReportError('Malformed general fingerprint document: {}'.format(e))


def separated_pairs(partitioning):
    """
    Number of profile pairs in different blocks: C(|B|, 2) - sum of C(|block|, 2)
    """
    return pairs(partitioning.num_profiles) - sum(pairs(size) for size in partitioning.sizes)


def _membership(dataset, item):
    has = np.zeros(dataset.num_profiles, dtype=bool)
    has[dataset.posting_list(item)] = True
    return has


def partition_by_items(dataset, items):
    """
    Group profiles that agree on every one of the items, computed from scratch
    """
    labels = np.zeros(dataset.num_profiles, dtype=ID_DTYPE)
    for item in items:
        dataset.check_item(item)
        labels = _refine(labels, _membership(dataset, item))

    return Partitioning.from_block_labels(labels)


def duplicate_classes(dataset):
    """
    Group profiles with identical rows.  Same result as partition_by_items over the whole
    universe, without a pass per item
    """
    groups = {}
    for p in range(dataset.num_profiles):
        groups.setdefault(dataset.profile_items(p).tobytes(), []).append(p)

    return Partitioning(groups.values())


def separation_of(dataset, partitioning, item):
    """
    :return: Number of same-block profile pairs that item tells apart
    """
    dataset.check_item(item)
    labels = partitioning.block_labels(dataset.num_profiles)

    sizes = np.bincount(labels)
    present = np.bincount(labels[_membership(dataset, item)], minlength=len(sizes))
    return int((present * (sizes - present)).sum())


def _chunk_bounds(dataset, members, member_blocks, chunk_entries):
    """
    Cut the block-ordered members into runs of whole blocks holding about chunk_entries items
    """
    block_starts = np.flatnonzero(np.r_[True, member_blocks[1:] != member_blocks[:-1]])
    entries_before = np.r_[0, np.cumsum(dataset.profile_sizes[members])[:-1]]
    chunk_of_block = entries_before[block_starts] // chunk_entries
    cuts = block_starts[np.flatnonzero(np.r_[True, np.diff(chunk_of_block) != 0])]
    return list(zip(cuts, np.r_[cuts[1:], len(members)]))


def _count_chunk(dataset, members, member_blocks, sizes):
    n = dataset.universe_size
    items, lengths = dataset.gather_items(members)
    if not len(items):
        return np.zeros(n, dtype=np.float64)

    keys = np.repeat(member_blocks, lengths) * n + items
    keys, present = np.unique(keys, return_counts=True)
    contribution = present * (sizes[keys // n] - present)
    return np.bincount(keys % n, weights=contribution, minlength=n)


def separation_table(dataset, labels, threads=1, chunk_entries=DEFAULT_CHUNK_ENTRIES):
    """
    Separation of every item over the partitioning given by block labels.

    Singleton blocks contribute nothing and are skipped.  The remaining profiles are processed in
    chunks of whole blocks, optionally on several threads; the per-chunk counts are summed so the
    result doesn't depend on the chunking or the thread count.

    :param labels: Array mapping each ProfileId to a block index, or a Partitioning
    :return: Array of n separations (int64)
    """
    n = dataset.universe_size
    if isinstance(labels, Partitioning):
        labels = labels.block_labels(dataset.num_profiles)
    labels = np.asarray(labels, dtype=ID_DTYPE)
    sizes = np.bincount(labels)

    active = np.flatnonzero(sizes[labels] > 1)
    if not len(active) or n == 0:
        return np.zeros(n, dtype=ID_DTYPE)

    members = active[np.argsort(labels[active], kind='stable')]
    member_blocks = labels[members]
    bounds = _chunk_bounds(dataset, members, member_blocks, chunk_entries)

    def count(bound):
        lo, hi = bound
        return _count_chunk(dataset, members[lo:hi], member_blocks[lo:hi], sizes)

    if threads > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            parts = list(executor.map(count, bounds))
    else:
        parts = [count(bound) for bound in bounds]

    # Each part holds whole numbers well below 2**53 so the float sum is exact
    return np.rint(np.sum(parts, axis=0)).astype(ID_DTYPE)


def general_fingerprint(dataset, max_size, threads=1, chunk_entries=DEFAULT_CHUNK_ENTRIES,
                        mode=GENERAL):
    """
    Greedy general fingerprint.

    :param dataset: The Dataset
    :param max_size: Maximum number of items, s >= 1
    :param threads: Worker threads for the separation counts.  Results are the same for any value
    :param chunk_entries: Approximate number of items counted per chunk
    :param mode: Recorded on the result (GENERAL or MINKEY)
    :return: GeneralResult
    """
    max_size = check_max_size(max_size)
    threads = check_threads(threads)
    if chunk_entries < 1:
        raise InvalidParameter('Chunk size must be positive, got {}'.format(chunk_entries))

    labels = np.zeros(dataset.num_profiles, dtype=ID_DTYPE)
    selected = np.zeros(dataset.universe_size, dtype=bool)
    queries = []
    split_tree = []
    terminated_early = False

    while len(queries) < max_size:
        separation = separation_table(dataset, labels, threads=threads,
                                      chunk_entries=chunk_entries)
        separation[selected] = 0

        # argmax returns the first maximum, i.e. the smallest ItemId on ties
        best = int(np.argmax(separation)) if len(separation) else None
        if best is None or separation[best] == 0:
            terminated_early = True
            break

        has = _membership(dataset, best)
        sizes = np.bincount(labels)
        present = np.bincount(labels[has], minlength=len(sizes))
        split = np.flatnonzero((present > 0) & (present < sizes))
        # Labels are compact and assigned in sorted key order; list splits by smallest member
        _, first_member = np.unique(labels, return_index=True)
        split = split[np.argsort(first_member[split])]
        split_tree.append(SplitStep(best, separation[best], [
            (sizes[b], present[b], sizes[b] - present[b]) for b in split
        ]))

        labels = _refine(labels, has)
        selected[best] = True
        queries.append(best)
        log.debug('Selected item {} separating {} pairs, {} blocks'.format(
            best, separation[best], labels.max() + 1
        ))

    result = GeneralResult(queries, Partitioning.from_block_labels(labels), split_tree,
                           terminated_early, max_size, mode=mode)

    log.info('{} fingerprint: {} items, {} anonymity sets over {} profiles'.format(
        mode.code, len(queries), len(result.partitioning), dataset.num_profiles
    ))

    return result


def minimum_key(dataset, threads=1, chunk_entries=DEFAULT_CHUNK_ENTRIES):
    """
    Greedy minimum key: general fingerprinting with an unlimited budget (s = n).  Stops once every
    distinguishable pair is separated; any block left with more than one member is a set of
    identical rows
    """
    return general_fingerprint(dataset, max(1, dataset.universe_size), threads=threads,
                               chunk_entries=chunk_entries, mode=MINKEY)

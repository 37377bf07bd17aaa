"""
Dataset files.

A dataset file has one profile per line:

    external_id<TAB>label,label,...

Lines starting with "#" and blank lines are ignored.  Files are UTF-8, read with LF or CRLF
line endings and always written with LF.  A universe file lists one item label per line.  A
target file is a dataset file with exactly one record.
"""

import logging

from . import fileutil
from .core import build_dataset
from .errors import DatasetError, InvalidParameter
from .targeted import TargetProfile

__author__ = 'Stephen Brown (Little Fish Solutions LTD)'

log = logging.getLogger(__name__)

COMMENT_PREFIX = '#'
FIELD_SEPARATOR = '\t'
LABEL_SEPARATOR = ','


def _lines(text):
    """
    Yield (line number, line) for the lines that carry data
    """
    for number, line in enumerate(text.split('\n'), 1):
        if line.endswith('\r'):
            line = line[:-1]

        if not line or line.startswith(COMMENT_PREFIX):
            continue

        yield number, line


def parse_records(text, source='<string>'):
    """
    Parse dataset file text into records

    :param text: The file contents
    :param source: Name used in error messages
    :return: List of (external_id, [labels])
    :raises DatasetError: On the first malformed line, naming it
    """
    records = []
    line_numbers = {}
    for number, line in _lines(text):
        where = '{}:{}'.format(source, number)

        if FIELD_SEPARATOR not in line:
            raise DatasetError('{}: expected "external_id<TAB>labels"'.format(where))

        external_id, _, labels = line.partition(FIELD_SEPARATOR)
        if FIELD_SEPARATOR in labels:
            raise DatasetError('{}: more than one tab'.format(where))
        if not external_id:
            raise DatasetError('{}: empty profile id'.format(where))
        if external_id in line_numbers:
            raise DatasetError('{}: duplicate profile id "{}" (first seen on line {})'.format(
                where, external_id, line_numbers[external_id]
            ))
        line_numbers[external_id] = number

        labels = labels.split(LABEL_SEPARATOR) if labels else []
        if any(not label for label in labels):
            raise DatasetError('{}: empty item label'.format(where))

        records.append((external_id, labels))

    return records


def parse_universe(text, source='<string>'):
    labels = []
    for number, line in _lines(text):
        if FIELD_SEPARATOR in line or LABEL_SEPARATOR in line:
            raise DatasetError('{}:{}: item label contains a tab or comma'.format(source, number))
        labels.append(line)

    return labels


def load_dataset(path, universe_path=None):
    """
    :param path: Dataset file, or "-" for standard input
    :param universe_path: Optional file declaring the full item universe
    :return: Dataset
    """
    records = parse_records(fileutil.read_text(path), source=path)
    if not records:
        raise DatasetError('{} contains no profiles'.format(path))

    universe = None
    if universe_path is not None:
        universe = parse_universe(fileutil.read_text(universe_path), source=universe_path)

    try:
        dataset = build_dataset(records, universe=universe)
    except DatasetError as e:
        raise DatasetError('{}: {}'.format(path, e))

    log.info('Loaded {}: {} profiles, {} items'.format(path, dataset.num_profiles,
                                                      dataset.universe_size))
    return dataset


def _check_writable(label, what, line_start=False):
    if any(c in label for c in (FIELD_SEPARATOR, LABEL_SEPARATOR, '\n', '\r')) \
            or (line_start and label.startswith(COMMENT_PREFIX)):
        raise DatasetError('{} "{}" cannot be written to a dataset file'.format(what, label))


def format_dataset(dataset):
    for label in dataset.item_labels:
        _check_writable(label, 'Item label')
    for external_id in dataset.external_ids:
        _check_writable(external_id, 'Profile id', line_start=True)

    return dataset.to_text()


def format_universe(dataset):
    for label in dataset.item_labels:
        _check_writable(label, 'Item label', line_start=True)

    return ''.join('{}\n'.format(label) for label in dataset.item_labels)


def save_dataset(dataset, path, universe_path=None):
    """
    Write the dataset file.  Items no profile has only survive a round trip through the universe
    file, so pass universe_path when the dataset declares any

    :param path: Output path, or "-" for standard output
    """
    outputs = [(path, format_dataset(dataset))]
    if universe_path is not None:
        outputs.append((universe_path, format_universe(dataset)))

    fileutil.write_texts(outputs)


def load_target(path, dataset):
    """
    Read a one record dataset file as the target profile.  The target doesn't have to be in the
    dataset, but all of its items must be in the dataset's universe

    :return: TargetProfile labelled with the record's external id
    """
    records = parse_records(fileutil.read_text(path), source=path)
    if len(records) != 1:
        raise DatasetError('{} must contain exactly one profile, found {}'.format(
            path, len(records)
        ))

    external_id, labels = records[0]
    try:
        return TargetProfile.from_labels(dataset, labels, external_id=external_id)
    except InvalidParameter as e:
        raise DatasetError('{}: {}'.format(path, e))

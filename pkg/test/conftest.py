"""
Shared fixtures: the six profile example dataset and seeded random datasets
"""

import numpy as np
import pytest

from fishprint.core import build_dataset

__author__ = 'Stephen Brown (Little Fish Solutions LTD)'

# Rows by (A1, A2, A3, A4): U1 1011, U2 1111, U3 0101, U4 1010, U5 1110, U6 1100
TABLE1_RECORDS = [
    ('U1', ['A1', 'A3', 'A4']),
    ('U2', ['A1', 'A2', 'A3', 'A4']),
    ('U3', ['A2', 'A4']),
    ('U4', ['A1', 'A3']),
    ('U5', ['A1', 'A2', 'A3']),
    ('U6', ['A1', 'A2']),
]

TABLE1_TEXT = ''.join('{}\t{}\n'.format(ext, ','.join(labels)) for ext, labels in TABLE1_RECORDS)

A1, A2, A3, A4 = range(4)
U1, U2, U3, U4, U5, U6 = range(6)


def make_random_dataset(seed, num_profiles=8, universe_size=6, density=0.4):
    """
    Dense-ish random dataset, every item declared in the universe.  Same seed, same dataset
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    rows = rng.random((num_profiles, universe_size)) < density
    labels = ['x{:02d}'.format(i) for i in range(universe_size)]
    records = [
        ('r{:03d}'.format(p), [labels[i] for i in np.flatnonzero(row)])
        for p, row in enumerate(rows)
    ]
    return build_dataset(records, universe=labels)


@pytest.fixture
def table1():
    return build_dataset(TABLE1_RECORDS)


@pytest.fixture
def random_dataset():
    return make_random_dataset


@pytest.fixture
def table1_file(tmp_path):
    path = tmp_path / 'table1.tsv'
    path.write_text(TABLE1_TEXT, encoding='utf-8')
    return str(path)

"""
Synthetic datasets with heavy tailed item popularity.

Item popularity follows a truncated power law: the item of rank r (0 based) has weight
1 / (r + 1) ** exponent, so exponent 0 is uniform.  Each profile's size comes from a geometric
distribution with the requested mean (clipped to the universe), and its items are drawn without
replacement proportionally to popularity.

Randomness comes from numpy's PCG64 bit generator seeded with random_seed, so a config always
produces the same dataset.
"""

import logging

import numpy as np

from .config import FLOAT, INT, NON_NEGATIVE_FLOAT, POSITIVE_INT, ConfigField, load_fields
from .core import build_dataset
from .errors import InvalidParameter

__author__ = 'Stephen Brown (Little Fish Solutions LTD)'

log = logging.getLogger(__name__)

# Rejection sampling rounds before falling back to numpy's weighted choice without replacement
_MAX_DRAW_ROUNDS = 32

SYNTH_FIELDS = [
    ConfigField('num_profiles', POSITIVE_INT, optional=False),
    ConfigField('universe_size', POSITIVE_INT, optional=False),
    ConfigField('popularity_exponent', NON_NEGATIVE_FLOAT, default=1.0),
    ConfigField('mean_profile_size', FLOAT, default=42.0),
    ConfigField('random_seed', INT, default=0),
]


class SynthConfig(object):
    def __init__(self, num_profiles, universe_size, popularity_exponent=1.0,
                 mean_profile_size=42.0, random_seed=0):
        self.num_profiles = num_profiles
        self.universe_size = universe_size
        self.popularity_exponent = popularity_exponent
        self.mean_profile_size = mean_profile_size
        self.random_seed = random_seed

    def __repr__(self):
        return 'SynthConfig({})'.format(', '.join(
            '{}={!r}'.format(k, v) for k, v in sorted(self.to_dict().items())
        ))

    def __eq__(self, other):
        if not isinstance(other, SynthConfig):
            return NotImplemented

        return self.to_dict() == other.to_dict()

    def to_dict(self):
        return {field.name: getattr(self, field.name) for field in SYNTH_FIELDS}

    @classmethod
    def from_yaml(cls, data_dict, source='synth settings'):
        """
        :param data_dict: Parsed yaml mapping with the SYNTH_FIELDS keys
        """
        return cls(**load_fields(data_dict, SYNTH_FIELDS, source=source))

    def validate(self):
        for name in ('num_profiles', 'universe_size'):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < 1:
                raise InvalidParameter('{} must be a positive integer, got {!r}'.format(name, value))

        if self.popularity_exponent < 0:
            raise InvalidParameter('popularity_exponent must not be negative, got {}'.format(
                self.popularity_exponent
            ))

        if self.mean_profile_size < 1:
            raise InvalidParameter('mean_profile_size must be at least 1, got {}'.format(
                self.mean_profile_size
            ))

        if self.mean_profile_size >= self.universe_size:
            raise InvalidParameter('mean_profile_size ({}) must be less than universe_size ({})'.format(
                self.mean_profile_size, self.universe_size
            ))

        if isinstance(self.random_seed, bool) or not isinstance(self.random_seed, (int, np.integer)) \
                or self.random_seed < 0:
            raise InvalidParameter('random_seed must be a non-negative integer, got {!r}'.format(
                self.random_seed
            ))


def popularity_weights(universe_size, exponent):
    """
    :return: Normalised item probabilities, most popular first
    """
    weights = np.arange(1, universe_size + 1, dtype=np.float64) ** -float(exponent)
    return weights / weights.sum()


def _draw_items(rng, cdf, probabilities, size):
    """
    Draw size distinct items.  Weighted draws with replacement keep the first size distinct items
    in draw order, which is the same distribution as drawing without replacement
    """
    n = len(cdf)
    drawn = np.zeros(0, dtype=np.int64)
    for _ in range(_MAX_DRAW_ROUNDS):
        draws = np.searchsorted(cdf, rng.random(2 * size + 8), side='right')
        combined = np.concatenate([drawn, np.minimum(draws, n - 1)])
        _, first = np.unique(combined, return_index=True)
        drawn = combined[np.sort(first)]
        if len(drawn) >= size:
            return np.sort(drawn[:size])

    # Very skewed popularity with big profiles: rejection would take too long
    return np.sort(rng.choice(n, size=size, replace=False, p=probabilities))


def item_label(item, universe_size):
    return 'i{:0{}d}'.format(item, len(str(universe_size - 1)))


def profile_label(profile, num_profiles):
    return 'p{:0{}d}'.format(profile, len(str(num_profiles - 1)))


def generate_synthetic(config):
    """
    :param config: SynthConfig
    :return: Dataset whose universe is all universe_size items, including any never drawn
    """
    config.validate()
    n = int(config.universe_size)
    num_profiles = int(config.num_profiles)

    rng = np.random.Generator(np.random.PCG64(int(config.random_seed)))
    probabilities = popularity_weights(n, config.popularity_exponent)
    cdf = np.cumsum(probabilities)
    cdf /= cdf[-1]

    sizes = np.minimum(rng.geometric(1.0 / config.mean_profile_size, size=num_profiles), n)

    item_labels = [item_label(i, n) for i in range(n)]
    records = []
    for p, size in enumerate(sizes.tolist()):
        items = _draw_items(rng, cdf, probabilities, size)
        records.append((profile_label(p, num_profiles), [item_labels[i] for i in items]))

    dataset = build_dataset(records, universe=item_labels)
    log.info('Generated {} profiles over {} items, average size {:.1f}'.format(
        num_profiles, n, float(sizes.mean())
    ))

    return dataset

"""
Typed settings files.  A settings file is a YAML mapping; each key is described by a
ConfigField with a DataType that converts and validates the raw YAML value.
"""

import logging

import yaml

from .errors import UsageError

__author__ = 'Stephen Brown (Little Fish Solutions LTD)'

log = logging.getLogger(__name__)

DEFAULT_THREADS = 1
DEFAULT_BUDGET = 10 ** 7
DEFAULT_K_THRESHOLD = 3
# Upper bound on (profile, item) entries counted in one go by the general algorithm
DEFAULT_CHUNK_ENTRIES = 1 << 20


class DataType(object):
    def __init__(self, name, from_yaml):
        """
        :param name: The name of the type (used in error messages)
        :param from_yaml: Function to convert from yaml variable to Python datatype
        """
        self.name = name
        self.from_yaml = from_yaml


def load_int(i):
    if isinstance(i, bool) or not isinstance(i, int):
        raise ValueError('Integer required, got "{}"'.format(i))

    return i


def load_positive_int(i):
    i = load_int(i)
    if i < 1:
        raise ValueError('Positive integer required, got {}'.format(i))

    return i


def load_float(f):
    if isinstance(f, bool) or not isinstance(f, (int, float)):
        raise ValueError('Number required, got "{}"'.format(f))

    return float(f)


def load_non_negative_float(f):
    f = load_float(f)
    if f < 0:
        raise ValueError('Non-negative number required, got {}'.format(f))

    return f


def load_boolean(b):
    if not isinstance(b, bool):
        raise ValueError('Boolean required, got "{}"'.format(b))

    return b


def load_mapping(m):
    if not isinstance(m, dict):
        raise ValueError('Mapping required, got "{}"'.format(m))

    return m


INT = DataType('int', load_int)
POSITIVE_INT = DataType('positive int', load_positive_int)
FLOAT = DataType('float', load_float)
NON_NEGATIVE_FLOAT = DataType('non-negative float', load_non_negative_float)
BOOLEAN = DataType('bool', load_boolean)
MAPPING = DataType('mapping', load_mapping)


class ConfigField(object):
    def __init__(self, name, data_type, optional=True, default=None):
        """
        :param name: The key in the yaml file, also the key in the loaded dict
        :param data_type: A DataType defining the type of this field
        :param optional: If False, loading fails when the key is missing
        :param default: Value used for optional keys that are not present
        """
        if default is not None and not optional:
            raise ValueError('Only optional fields can have a default!')

        self.name = name
        self.data_type = data_type
        self.optional = optional
        self.default = default

    def from_yaml(self, value):
        try:
            return self.data_type.from_yaml(value)
        except Exception as e:
            raise UsageError('Error reading field "{}": {}'.format(self.name, e))


SETTINGS_FIELDS = [
    ConfigField('threads', POSITIVE_INT, default=DEFAULT_THREADS),
    ConfigField('budget', POSITIVE_INT, default=DEFAULT_BUDGET),
    ConfigField('k_threshold', POSITIVE_INT, default=DEFAULT_K_THRESHOLD),
    ConfigField('chunk_entries', POSITIVE_INT, default=DEFAULT_CHUNK_ENTRIES),
    ConfigField('colour', BOOLEAN),
    ConfigField('synth', MAPPING),
]


def load_fields(data_dict, fields, source='settings'):
    """
    Convert a parsed yaml mapping using a list of ConfigFields

    :param data_dict: Dictionary obtained by parsing the yaml file
    :param fields: List of ConfigFields defining the structure of the file
    :param source: Name used in error messages
    :return: Dict mapping field name -> converted value, with defaults filled in
    """
    if data_dict is None:
        data_dict = {}

    if not isinstance(data_dict, dict):
        raise UsageError('{} must be a YAML mapping'.format(source))

    known = {field.name for field in fields}
    for key in data_dict:
        if key not in known:
            raise UsageError('Unknown field "{}" found in {}'.format(key, source))

    data = {}
    for field in fields:
        if field.name in data_dict and data_dict[field.name] is not None:
            data[field.name] = field.from_yaml(data_dict[field.name])
        elif field.optional:
            data[field.name] = field.default
        else:
            raise UsageError('Required field "{}" not present in {}'.format(field.name, source))

    return data


def read_yaml_file(path):
    try:
        with open(path, 'r', encoding='utf-8') as stream:
            return yaml.safe_load(stream)
    except OSError as e:
        raise UsageError('Could not read settings file {}: {}'.format(path, e.strerror))
    except yaml.YAMLError as e:
        raise UsageError('Settings file {} is not valid YAML: {}'.format(path, e))


def load_settings(path=None):
    """
    :param path: YAML settings file, or None for the built in defaults
    :return: Dict of settings
    """
    if path is None:
        return load_fields({}, SETTINGS_FIELDS)

    log.info('Loading settings from {}'.format(path))
    return load_fields(read_yaml_file(path), SETTINGS_FIELDS, source=path)

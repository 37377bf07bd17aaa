"""
Base type for fixed sets of codes - fingerprinting modes, report kinds etc.  Instances register
themselves on their class so that they can be looked up from the codes used in report documents
and on the command line.
"""

import logging

__author__ = 'Stephen Brown (Little Fish Solutions LTD)'

log = logging.getLogger(__name__)


class MetaEnumeration(type):
    def __call__(cls, *args, **kwargs):
        instance = super().__call__(*args, **kwargs)

        # Each subclass gets its own registry, otherwise codes would clash between types
        if 'instances' not in cls.__dict__:
            cls.instances = {}

        if instance.code in cls.instances:
            raise ValueError('Code must unique. An instance of {} already exists '
                             'with code {}'.format(cls.__name__, instance.code))

        cls.instances[instance.code] = instance

        return instance


class Enumeration(metaclass=MetaEnumeration):
    """
    Subclass this and create module level instances, i.e.:

        class Mode(Enumeration):
            pass

        TARGETED = Mode('targeted', 'Isolate one profile')

    Mode.from_code('targeted') returns the instance, Mode.codes() the codes in creation order.
    """

    def __init__(self, code, description):
        self.code = code
        self.description = description

    def __str__(self):
        return self.code

    def __repr__(self):
        return '{}({!r})'.format(type(self).__name__, self.code)

    @classmethod
    def from_code(cls, code):
        if 'instances' not in cls.__dict__ or code not in cls.instances:
            raise ValueError('Code "{}" is not a valid {}'.format(
                code, cls.__name__
            ))

        return cls.instances[code]

    @classmethod
    def values(cls):
        return list(cls.instances.values())

    @classmethod
    def codes(cls):
        return list(cls.instances.keys())


class Mode(Enumeration):
    pass


TARGETED = Mode('targeted', 'Isolate a single target profile')
GENERAL = Mode('general', 'Shatter every profile into small anonymity sets')
MINKEY = Mode('minkey', 'Smallest item set separating every distinguishable pair')


class ReportKind(Enumeration):
    pass


FINGERPRINT_REPORT = ReportKind('targeted_fingerprint', 'Fingerprint of one target')
BATCH_REPORT = ReportKind('targeted_batch', 'One fingerprint per dataset profile')
GENERAL_REPORT = ReportKind('general_fingerprint', 'Partitioning produced by general fingerprinting')
ORACLE_REPORT = ReportKind('oracle', 'Exact optimum from exhaustive enumeration')
ANALYSIS_REPORT = ReportKind('analysis', 'Anonymity set statistics')
SWEEP_REPORT = ReportKind('general_sweep', 'Anonymity set statistics for several budgets')
SUMMARY_REPORT = ReportKind('dataset_summary', 'Dataset characteristics')

"""
Exceptions raised by fishprint.  Each one carries the exit status that the command line tool
reports when it escapes to the top level
"""

import logging

__author__ = 'Stephen Brown (Little Fish Solutions LTD)'

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_BUDGET = 3


class FishprintError(Exception):
    exit_status = EXIT_DATA


class UsageError(FishprintError):
    """
    The caller asked for something that doesn't make sense (bad flag, bad parameter)
    """
    exit_status = EXIT_USAGE


class InvalidParameter(UsageError, ValueError):
    """
    A function argument violates a precondition, i.e. s < 1 or an item out of range
    """
    pass


class DatasetError(FishprintError):
    """
    Input data is malformed, empty or unreadable
    """
    exit_status = EXIT_DATA


class InvalidPartitioning(DatasetError):
    """
    Blocks overlap, leave a gap or are empty
    """
    pass


class ReportError(FishprintError):
    """
    A report or dataset could not be written or parsed
    """
    exit_status = EXIT_DATA


class BudgetExceeded(FishprintError):
    exit_status = EXIT_BUDGET

    def __init__(self, required, budget):
        super().__init__('Exhaustive search needs {} subsets but the budget is {}'.format(
            required, budget
        ))
        self.required = required
        self.budget = budget

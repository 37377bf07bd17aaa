"""
Logging setup for the command line tool.  Library modules only ever call logging.getLogger, the
handlers are installed here
"""

import logging
import sys

__author__ = 'Stephen Brown (Little Fish Solutions LTD)'

log = logging.getLogger(__name__)

DATE_FORMAT = '%Y-%m-%d %H:%M:%S'

# ANSI escape sequences
GREEN = '\033[0;32m'
BLUE = '\033[0;34m'
CYAN = '\033[0;36m'
DARK_GREY = '\033[1;30m'
LIGHT_RED = '\033[1;31m'
LIGHT_GREEN = '\033[1;32m'
YELLOW = '\033[1;33m'
RESET = '\033[0m'

LEVEL_COLOURS = {
    logging.DEBUG: GREEN,
    logging.INFO: LIGHT_GREEN,
    logging.WARNING: YELLOW,
    logging.ERROR: LIGHT_RED,
    logging.CRITICAL: LIGHT_RED,
}


class ColourLogHandler(logging.StreamHandler):
    def __init__(self, show_timestamps, *args, **kwargs):
        super().__init__(*args, **kwargs)

        self.formatters = {
            level: logging.Formatter(
                get_coloured_logging_format(colour, show_timestamps=show_timestamps),
                datefmt=DATE_FORMAT
            )
            for level, colour in LEVEL_COLOURS.items()
        }
        self.default_formatter = logging.Formatter(
            get_coloured_logging_format(DARK_GREY, show_timestamps=show_timestamps),
            datefmt=DATE_FORMAT
        )

    def format(self, record):
        formatter = self.formatters.get(record.levelno, self.default_formatter)
        return formatter.format(record)


def get_base_logging_format_template(show_timestamps):
    time = ''
    if show_timestamps:
        time = '{time_colour}%(asctime)s{reset} '

    return '{time}{{level_colour}}%(levelname)s{{colon_colour}}:{{name_colour}}%(name)s' \
           '{{colon_colour}}:{{reset}}%(message)s'.format(time=time)


def get_coloured_logging_format(level_colour, show_timestamps=False):
    """
    :return: Logging format for one level, with escape codes
    """
    return get_base_logging_format_template(show_timestamps).format(
        time_colour=CYAN,
        reset=RESET,
        level_colour=level_colour,
        colon_colour=DARK_GREY,
        name_colour=BLUE
    )


def get_logging_format(show_timestamps=False):
    """
    :return: Plain logging format
    """
    return get_base_logging_format_template(show_timestamps).format(
        time_colour='',
        reset='',
        level_colour='',
        colon_colour='',
        name_colour=''
    )


def initialise_logging(verbose=False, show_timestamps=False, colour=None, stream=None):
    """
    Send log output to standard error (never standard output, which may carry a report)

    :param verbose: Log at DEBUG instead of INFO
    :param show_timestamps: Prefix each line with the time
    :param colour: Use ANSI colours.  None means colour only if the stream is a terminal
    :param stream: Override the output stream (defaults to sys.stderr)
    """
    if stream is None:
        stream = sys.stderr

    if colour is None:
        colour = hasattr(stream, 'isatty') and stream.isatty()

    for handler in logging.root.handlers[:]:
        logging.root.removeHandler(handler)

    if colour:
        handler = ColourLogHandler(show_timestamps, stream)
    else:
        handler = logging.StreamHandler(stream)
        handler.setFormatter(logging.Formatter(get_logging_format(show_timestamps), DATE_FORMAT))

    level = logging.DEBUG if verbose else logging.INFO
    logging.root.addHandler(handler)
    logging.root.setLevel(level)

    log.debug('Logging at {}'.format(logging.getLevelName(level)))

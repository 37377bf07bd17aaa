"""
Utility functions for reading and writing files.  A path of "-" means standard input / output
"""

import logging
import hashlib
import os
import sys
import tempfile

from .errors import DatasetError, ReportError

__author__ = 'Stephen Brown (Little Fish Solutions LTD)'

log = logging.getLogger(__name__)

STDIO_PATH = '-'
BYTE_ORDER_MARK = '\ufeff'


def read_text(path):
    """
    Read a UTF-8 text file.  A leading byte order mark is dropped, line endings are left for the
    caller to handle
    """
    if path == STDIO_PATH:
        text = sys.stdin.read()
        return text[1:] if text.startswith(BYTE_ORDER_MARK) else text

    try:
        with open(path, 'rb') as f:
            data = f.read()
    except OSError as e:
        raise DatasetError('Could not read {}: {}'.format(path, e.strerror))

    try:
        return data.decode('utf-8-sig')
    except UnicodeDecodeError as e:
        raise DatasetError('{} is not valid UTF-8 (byte {})'.format(path, e.start))


def write_text(path, text):
    """
    Write text as UTF-8 with whatever line endings it already has.  The file is written to a
    temporary file in the same directory and moved into place, so a failure never leaves a
    partial file behind
    """
    write_texts([(path, text)])


def _remove_quietly(path):
    try:
        os.remove(path)
    except OSError:
        log.warning('Could not remove {}'.format(path))


def write_texts(outputs):
    """
    Write several files as one unit: either all of them are written or none are.

    Every file is first written to a temporary file next to its destination.  Only when all of
    those succeed are they moved into place.  Standard output ("-") is written last.

    :param outputs: List of (path, text)
    """
    staged = []
    stdout_texts = []
    try:
        for path, text in outputs:
            if path == STDIO_PATH:
                stdout_texts.append(text)
                continue

            directory = os.path.dirname(os.path.abspath(path))
            try:
                fd, tmp_path = tempfile.mkstemp(prefix='.fishprint-', dir=directory)
            except OSError as e:
                raise ReportError('Could not write {}: {}'.format(path, e.strerror))

            staged.append((tmp_path, path))
            try:
                with os.fdopen(fd, 'wb') as f:
                    f.write(text.encode('utf-8'))
            except OSError as e:
                raise ReportError('Could not write {}: {}'.format(path, e.strerror))

        replaced = []
        for tmp_path, path in staged:
            try:
                os.replace(tmp_path, path)
            except OSError as e:
                for done in replaced:
                    _remove_quietly(done)
                raise ReportError('Could not write {}: {}'.format(path, e.strerror))
            replaced.append(path)
        staged = []
    finally:
        for tmp_path, _ in staged:
            if os.path.exists(tmp_path):
                _remove_quietly(tmp_path)

    for path, _ in outputs:
        if path != STDIO_PATH:
            log.info('Wrote {}'.format(path))

    for text in stdout_texts:
        sys.stdout.write(text)
        sys.stdout.flush()


def bytes_md5sum(bytes_):
    hash_md5 = hashlib.md5()
    hash_md5.update(bytes_)
    return hash_md5.hexdigest()

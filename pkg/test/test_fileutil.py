"""
Unit tests for fileutil.py
"""

import os

import pytest

from fishprint.errors import DatasetError, ReportError
from fishprint.fileutil import bytes_md5sum, read_text, write_text, write_texts

__author__ = 'Stephen Brown (Little Fish Solutions LTD)'


def test_write_and_read(tmp_path):
    path = str(tmp_path / 'out.txt')
    write_text(path, 'café\n')
    with open(path, 'rb') as f:
        assert f.read() == b'caf\xc3\xa9\n'
    assert read_text(path) == 'café\n'

    write_text(path, 'replaced\n')
    assert read_text(path) == 'replaced\n'
    assert os.listdir(str(tmp_path)) == ['out.txt']


def test_errors(tmp_path):
    with pytest.raises(DatasetError):
        read_text(str(tmp_path / 'missing.txt'))

    with pytest.raises(ReportError):
        write_text(str(tmp_path / 'missing' / 'out.txt'), 'x')


def test_byte_order_mark_dropped(tmp_path):
    path = tmp_path / 'bom.txt'
    path.write_bytes(b'\xef\xbb\xbfU1\tA1\n')
    assert read_text(str(path)) == 'U1\tA1\n'


def test_write_texts(tmp_path):
    first = str(tmp_path / 'first.txt')
    second = str(tmp_path / 'second.txt')
    write_texts([(first, 'one\n'), (second, 'two\n')])
    assert read_text(first) == 'one\n'
    assert read_text(second) == 'two\n'


def test_write_texts_all_or_nothing(tmp_path):
    first = str(tmp_path / 'first.txt')
    with pytest.raises(ReportError) as e:
        write_texts([(first, 'one\n'), (str(tmp_path / 'missing' / 'second.txt'), 'two\n')])
    assert 'second.txt' in str(e.value)

    # Neither the first file nor any temporary file is left behind
    assert os.listdir(str(tmp_path)) == []


def test_stdout(capsys):
    write_text('-', 'to stdout\n')
    assert capsys.readouterr().out == 'to stdout\n'


def test_md5():
    assert bytes_md5sum(b'') == 'd41d8cd98f00b204e9800998ecf8427e'

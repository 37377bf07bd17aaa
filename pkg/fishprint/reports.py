"""
Report documents.

Every result is written as a YAML mapping with a schema_version and a kind (a ReportKind code)
next to the result itself.  Keys are sorted and nothing run dependent (thread count, timings,
log output) goes into a document, so the same inputs always produce the same bytes.

    schema_version: 1
    kind: targeted_fingerprint
    dataset: {source, profiles, items, digest}
    fingerprint: {...}

Items and profiles appear by label, so documents need the dataset to be turned back into
results (see read_report).
"""

import csv
import io
import logging

import yaml

from . import fileutil
from .analysis import AnalysisReport, DatasetSummary
from .enumeration import (ANALYSIS_REPORT, BATCH_REPORT, FINGERPRINT_REPORT, GENERAL_REPORT,
                          ORACLE_REPORT, SUMMARY_REPORT, SWEEP_REPORT, ReportKind)
from .errors import DatasetError, ReportError
from .general import GeneralResult
from .oracle import OracleResult
from .targeted import Fingerprint

__author__ = 'Stephen Brown (Little Fish Solutions LTD)'

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1

SWEEP_TABLE_HEADER = [
    's', 'average_set_size', 'block_average_set_size', 'unique_fraction',
    'almost_unique_fraction', 'num_sets',
]


def _document(kind, **body):
    doc = {'schema_version': SCHEMA_VERSION, 'kind': kind.code}
    doc.update(body)
    return doc


def _require_dataset(dataset, what):
    if dataset is None:
        raise ReportError('A dataset is needed to write or read {} reports'.format(what))


def fingerprint_document(fingerprint, dataset, source=None):
    _require_dataset(dataset, 'fingerprint')
    return _document(FINGERPRINT_REPORT, dataset=dataset.describe(source),
                     fingerprint=fingerprint.to_dict(dataset))


def batch_document(fingerprints, analysis, dataset, source=None):
    """
    :param fingerprints: One Fingerprint per profile, from targeted_fingerprint_batch
    :param analysis: The AnalysisReport of the batch
    """
    _require_dataset(dataset, 'batch')
    return _document(BATCH_REPORT, dataset=dataset.describe(source),
                     fingerprints=[fp.to_dict(dataset) for fp in fingerprints],
                     analysis=analysis.to_dict())


def general_document(result, dataset, source=None, analysis=None):
    _require_dataset(dataset, 'general fingerprint')
    doc = _document(GENERAL_REPORT, dataset=dataset.describe(source),
                    result=result.to_dict(dataset))
    if analysis is not None:
        doc['analysis'] = analysis.to_dict()

    return doc


def oracle_document(result, dataset, source=None):
    _require_dataset(dataset, 'oracle')
    return _document(ORACLE_REPORT, dataset=dataset.describe(source),
                     result=result.to_dict(dataset))


def analysis_document(report):
    return _document(ANALYSIS_REPORT, analysis=report.to_dict())


def sweep_document(entries, dataset, source=None):
    """
    :param entries: List of (s, AnalysisReport), as returned by sweep_general
    """
    _require_dataset(dataset, 'sweep')
    return _document(SWEEP_REPORT, dataset=dataset.describe(source), entries=[
        {'s': s, 'analysis': report.to_dict()} for s, report in entries
    ])


def summary_document(summary):
    return _document(SUMMARY_REPORT, summary=summary.to_dict())


def to_document(report, dataset=None, source=None):
    """
    Build the document for any single result object, or a sweep (list of (s, AnalysisReport))
    """
    if isinstance(report, Fingerprint):
        return fingerprint_document(report, dataset, source)
    if isinstance(report, GeneralResult):
        return general_document(report, dataset, source)
    if isinstance(report, OracleResult):
        return oracle_document(report, dataset, source)
    if isinstance(report, AnalysisReport):
        return analysis_document(report)
    if isinstance(report, DatasetSummary):
        return summary_document(report)
    if isinstance(report, list) and all(isinstance(e, tuple) and len(e) == 2 for e in report):
        return sweep_document(report, dataset, source)

    raise ReportError('Don\'t know how to write a report for {!r}'.format(report))


def format_document(doc):
    return yaml.safe_dump(doc, sort_keys=True, default_flow_style=False, allow_unicode=True,
                          width=100)


def emit_document(doc, path):
    fileutil.write_text(path, format_document(doc))


def emit_report(report, path, dataset=None, source=None):
    """
    Write a result as a report document

    :param report: Fingerprint, GeneralResult, OracleResult, AnalysisReport, DatasetSummary or a
                   sweep
    :param path: Output path, or "-" for standard output
    :param dataset: The dataset the result was computed on (not needed for AnalysisReport and
                    DatasetSummary)
    :param source: Where the dataset came from, recorded in the document
    """
    emit_document(to_document(report, dataset, source), path)


def parse_report(text, source='<string>'):
    """
    :return: The document as a dict, after checking the schema version and kind
    """
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise ReportError('{} is not valid YAML: {}'.format(source, e))

    if not isinstance(doc, dict):
        raise ReportError('{} is not a report document'.format(source))

    if doc.get('schema_version') != SCHEMA_VERSION:
        raise ReportError('{} has schema version {!r}, expected {}'.format(
            source, doc.get('schema_version'), SCHEMA_VERSION
        ))

    if doc.get('kind') not in ReportKind.codes():
        raise ReportError('{} has unknown report kind {!r}'.format(source, doc.get('kind')))

    return doc


def load_report(path):
    try:
        text = fileutil.read_text(path)
    except DatasetError as e:
        raise ReportError(str(e))

    return parse_report(text, source=path)


def read_report(doc, dataset=None):
    """
    Turn a parsed document back into result objects

    :return: Fingerprint, GeneralResult, OracleResult, AnalysisReport or DatasetSummary.  Batch
             documents give (list of Fingerprint, AnalysisReport) and sweeps a list of
             (s, AnalysisReport)
    """
    kind = ReportKind.from_code(doc['kind'])
    try:
        if kind is ANALYSIS_REPORT:
            return AnalysisReport.from_dict(doc['analysis'])
        if kind is SUMMARY_REPORT:
            return DatasetSummary.from_dict(doc['summary'])
        if kind is SWEEP_REPORT:
            return [(entry['s'], AnalysisReport.from_dict(entry['analysis']))
                    for entry in doc['entries']]

        _require_dataset(dataset, kind.code)
        if doc['dataset']['digest'] != dataset.digest:
            raise ReportError('Report was written for a different dataset')

        if kind is FINGERPRINT_REPORT:
            return Fingerprint.from_dict(doc['fingerprint'], dataset)
        if kind is BATCH_REPORT:
            return ([Fingerprint.from_dict(fp, dataset) for fp in doc['fingerprints']],
                    AnalysisReport.from_dict(doc['analysis']))
        if kind is GENERAL_REPORT:
            return GeneralResult.from_dict(doc['result'], dataset)
        if kind is ORACLE_REPORT:
            return OracleResult.from_dict(doc['result'], dataset)
    except (KeyError, TypeError) as e:
        raise ReportError('Malformed {} document: {}'.format(kind.code, e))

    raise ReportError('Unhandled report kind {}'.format(kind.code))


def format_sweep_table(entries):
    outfile = io.StringIO()
    writer = csv.writer(outfile, lineterminator='\n')
    writer.writerow(SWEEP_TABLE_HEADER)
    for s, report in entries:
        writer.writerow([
            s,
            repr(report.average_set_size),
            repr(report.block_average_set_size),
            repr(report.unique_fraction),
            repr(report.almost_unique_fraction),
            report.num_sets,
        ])

    return outfile.getvalue()


def write_sweep_table(entries, path):
    """
    Flat CSV of a sweep, one row per budget, for plotting
    """
    fileutil.write_text(path, format_sweep_table(entries))

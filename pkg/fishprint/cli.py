"""
The fishprint command line tool.

    fishprint target  --dataset D (--target-id ID | --profile P | --all) -s S
    fishprint general --dataset D (-s S | --sweep S1,S2,... [--table CSV])
    fishprint minkey  --dataset D
    fishprint stats   --dataset D [-s S --mode targeted|general]
    fishprint oracle  --dataset D --mode targeted|general|minkey [-s S] [--budget N]
    fishprint gen     --num-profiles N --universe-size M [...]

Each invocation writes one report document (or dataset file for gen) to --output, standard
output by default.  Exit status: 0 success, 1 usage error, 2 data error, 3 oracle budget
exceeded.  Diagnostics and logging go to standard error.
"""

import argparse
import logging
import sys

from . import analysis, dataio, fileutil, general, oracle, reports, synth, targeted
from .config import load_settings
from .errors import EXIT_DATA, EXIT_OK, FishprintError, UsageError
from .fileutil import STDIO_PATH
from .loggingutil import initialise_logging

__author__ = 'Stephen Brown (Little Fish Solutions LTD)'

log = logging.getLogger(__name__)

PROG = 'fishprint'


class ArgumentParser(argparse.ArgumentParser):
    """
    Raises UsageError instead of exiting with argparse's status 2
    """

    def error(self, message):
        raise UsageError(message)


def parse_size_list(text):
    try:
        return [int(part) for part in text.split(',')]
    except ValueError:
        raise argparse.ArgumentTypeError('expected comma separated integers, got "{}"'.format(text))


def _add_dataset_arguments(parser):
    parser.add_argument('--dataset', required=True, metavar='PATH',
                        help='Dataset file ("-" for standard input)')
    parser.add_argument('--universe', metavar='PATH',
                        help='File listing every item label, one per line')
    parser.add_argument('--output', '-o', default=STDIO_PATH, metavar='PATH',
                        help='Where to write the report (default: standard output)')
    parser.add_argument('--threads', type=int, metavar='INT',
                        help='Worker threads.  Never changes the output')


def _add_target_arguments(parser, required):
    group = parser.add_mutually_exclusive_group(required=required)
    group.add_argument('--target-id', metavar='ID', help='Fingerprint this dataset profile')
    group.add_argument('--profile', metavar='PATH',
                       help='Fingerprint the one record in this file (need not be in the dataset)')
    return group


def _add_k_threshold(parser):
    parser.add_argument('--k-threshold', type=int, metavar='K',
                        help='Sets of at most K profiles count as almost unique')


def build_parser():
    parser = ArgumentParser(prog=PROG, description='Greedy fingerprinting of sparse binary '
                                                   'profile datasets')
    parser.add_argument('--config', metavar='PATH', help='YAML settings file')
    parser.add_argument('--verbose', '-v', action='store_true', help='Debug logging')
    parser.add_argument('--colour', dest='colour', action='store_true',
                        help='Colour log output')
    parser.add_argument('--no-colour', dest='colour', action='store_false',
                        help='Plain log output')
    parser.set_defaults(colour=None)

    subparsers = parser.add_subparsers(dest='command', metavar='COMMAND')
    subparsers.required = True

    p = subparsers.add_parser('target', help='Targeted fingerprint of one profile or every profile')
    _add_dataset_arguments(p)
    group = _add_target_arguments(p, required=True)
    group.add_argument('--all', action='store_true',
                       help='Fingerprint every profile of the dataset in turn')
    p.add_argument('--max-size', '-s', type=int, required=True, metavar='S')
    _add_k_threshold(p)
    p.set_defaults(handler=run_target)

    p = subparsers.add_parser('general', help='General fingerprint of the whole dataset')
    _add_dataset_arguments(p)
    sizes = p.add_mutually_exclusive_group(required=True)
    sizes.add_argument('--max-size', '-s', type=int, metavar='S')
    sizes.add_argument('--sweep', type=parse_size_list, metavar='S1,S2,...',
                       help='Analyse several budgets in one report')
    p.add_argument('--table', metavar='PATH', help='Also write the sweep as CSV')
    _add_k_threshold(p)
    p.set_defaults(handler=run_general)

    p = subparsers.add_parser('minkey', help='Greedy minimum key')
    _add_dataset_arguments(p)
    _add_k_threshold(p)
    p.set_defaults(handler=run_minkey)

    p = subparsers.add_parser('stats', help='Dataset summary, or anonymity set statistics for s')
    _add_dataset_arguments(p)
    p.add_argument('--max-size', '-s', type=int, metavar='S')
    p.add_argument('--mode', choices=['targeted', 'general'], default='general')
    _add_k_threshold(p)
    p.set_defaults(handler=run_stats)

    p = subparsers.add_parser('oracle', help='Exact optimum by exhaustive search (small inputs)')
    _add_dataset_arguments(p)
    p.add_argument('--mode', choices=['targeted', 'general', 'minkey'], required=True)
    p.add_argument('--max-size', '-s', type=int, metavar='S')
    p.add_argument('--budget', type=int, metavar='N', help='Most subsets to enumerate')
    _add_target_arguments(p, required=False)
    p.set_defaults(handler=run_oracle)

    p = subparsers.add_parser('gen', help='Write a synthetic dataset')
    p.add_argument('--num-profiles', type=int, metavar='N')
    p.add_argument('--universe-size', type=int, metavar='N')
    p.add_argument('--exponent', type=float, dest='popularity_exponent', metavar='X')
    p.add_argument('--mean-size', type=float, dest='mean_profile_size', metavar='X')
    p.add_argument('--seed', type=int, dest='random_seed', metavar='INT')
    p.add_argument('--output', '-o', default=STDIO_PATH, metavar='PATH')
    p.add_argument('--universe-output', metavar='PATH',
                   help='Also write the universe file, keeping items no profile has')
    p.set_defaults(handler=run_gen)

    return parser


def _setting(args, settings, name):
    """
    Command line flag if given, otherwise the settings file, otherwise the built in default
    """
    value = getattr(args, name, None)
    return settings[name] if value is None else value


def _load(args):
    return dataio.load_dataset(args.dataset, universe_path=args.universe)


def _target(args, dataset):
    if args.profile is not None:
        return dataio.load_target(args.profile, dataset)

    return targeted.TargetProfile.of_profile(dataset, dataset.profile_id(args.target_id))


def _require_max_size(args, why):
    if args.max_size is None:
        raise UsageError('-s/--max-size is required {}'.format(why))


def run_target(args, settings):
    dataset = _load(args)
    k_threshold = _setting(args, settings, 'k_threshold')

    if args.all:
        results = targeted.targeted_fingerprint_batch(dataset, args.max_size,
                                                      threads=_setting(args, settings, 'threads'))
        report = analysis.analyze_targeted_batch(results, dataset.num_profiles,
                                                 k_threshold=k_threshold,
                                                 dataset=dataset.describe(args.dataset))
        return reports.batch_document(results, report, dataset, source=args.dataset)

    fingerprint = targeted.targeted_fingerprint(dataset, _target(args, dataset), args.max_size)
    return reports.fingerprint_document(fingerprint, dataset, source=args.dataset)


def _general_options(args, settings):
    return {
        'threads': _setting(args, settings, 'threads'),
        'chunk_entries': settings['chunk_entries'],
    }


def run_general(args, settings):
    dataset = _load(args)
    k_threshold = _setting(args, settings, 'k_threshold')

    if args.sweep is not None:
        entries = analysis.sweep_general(dataset, args.sweep, k_threshold=k_threshold,
                                         source=args.dataset, **_general_options(args, settings))
        doc = reports.sweep_document(entries, dataset, source=args.dataset)
        if args.table is None:
            return doc

        # The table and the report are written together or not at all
        fileutil.write_texts([
            (args.table, reports.format_sweep_table(entries)),
            (args.output, reports.format_document(doc)),
        ])
        return None

    if args.table is not None:
        raise UsageError('--table only applies to --sweep')

    result = general.general_fingerprint(dataset, args.max_size, **_general_options(args, settings))
    report = analysis.analyze_general(result, dataset.num_profiles, k_threshold=k_threshold,
                                      dataset=dataset.describe(args.dataset))
    return reports.general_document(result, dataset, source=args.dataset, analysis=report)


def run_minkey(args, settings):
    dataset = _load(args)
    result = general.minimum_key(dataset, **_general_options(args, settings))
    report = analysis.analyze_general(result, dataset.num_profiles,
                                      k_threshold=_setting(args, settings, 'k_threshold'),
                                      dataset=dataset.describe(args.dataset))
    return reports.general_document(result, dataset, source=args.dataset, analysis=report)


def run_stats(args, settings):
    dataset = _load(args)
    if args.max_size is None:
        return reports.summary_document(analysis.summarize_dataset(dataset, source=args.dataset))

    k_threshold = _setting(args, settings, 'k_threshold')
    descriptor = dataset.describe(args.dataset)
    if args.mode == 'targeted':
        results = targeted.targeted_fingerprint_batch(dataset, args.max_size,
                                                      threads=_setting(args, settings, 'threads'))
        report = analysis.analyze_targeted_batch(results, dataset.num_profiles,
                                                 k_threshold=k_threshold, dataset=descriptor)
    else:
        result = general.general_fingerprint(dataset, args.max_size,
                                             **_general_options(args, settings))
        report = analysis.analyze_general(result, dataset.num_profiles, k_threshold=k_threshold,
                                          dataset=descriptor)

    return reports.analysis_document(report)


def run_oracle(args, settings):
    budget = _setting(args, settings, 'budget')
    has_target = args.target_id is not None or args.profile is not None

    if args.mode == 'targeted':
        if not has_target:
            raise UsageError('Targeted oracle needs --target-id or --profile')
        _require_max_size(args, 'for the targeted oracle')
    elif has_target:
        raise UsageError('--target-id and --profile only apply to --mode targeted')

    if args.mode == 'general':
        _require_max_size(args, 'for the general oracle')
    elif args.mode == 'minkey' and args.max_size is not None:
        raise UsageError('The minimum key oracle takes no -s/--max-size')

    dataset = _load(args)
    if args.mode == 'targeted':
        result = oracle.exact_targeted(dataset, _target(args, dataset), args.max_size,
                                       budget=budget)
    elif args.mode == 'general':
        result = oracle.exact_general(dataset, args.max_size, budget=budget)
    else:
        result = oracle.exact_minimum_key(dataset, budget=budget)

    return reports.oracle_document(result, dataset, source=args.dataset)


def run_gen(args, settings):
    fields = dict(settings['synth'] or {})
    for field in synth.SYNTH_FIELDS:
        value = getattr(args, field.name)
        if value is not None:
            fields[field.name] = value

    config = synth.SynthConfig.from_yaml(fields, source='gen options')
    dataset = synth.generate_synthetic(config)
    dataio.save_dataset(dataset, args.output, universe_path=args.universe_output)


def _error(message):
    sys.stderr.write('{}: error: {}\n'.format(PROG, message))


def run(argv=None):
    """
    Parse the arguments, run the command and write its output.  Errors propagate
    """
    args = build_parser().parse_args(argv)
    settings = load_settings(args.config)

    colour = args.colour if args.colour is not None else settings['colour']
    initialise_logging(verbose=args.verbose, colour=colour)

    doc = args.handler(args, settings)
    if doc is not None:
        reports.emit_document(doc, args.output)


def main(argv=None):
    """
    Entry point.  Returns the exit status rather than exiting so that it can be tested
    """
    try:
        run(argv)
    except FishprintError as e:
        _error(e)
        return e.exit_status
    except KeyboardInterrupt:
        _error('interrupted')
        return EXIT_DATA
    except Exception as e:
        log.exception('Unexpected error')
        _error('unexpected {}: {}'.format(type(e).__name__, e))
        return EXIT_DATA

    return EXIT_OK

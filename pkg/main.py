"""
Main entry point for the toolkit

Subcommands:
    check       Knill-Laflamme check and detection categories of the declared errors
    synthesize  Capacity plan, syndrome table, Paulian generators and certification
    measure     One syndrome extraction and recovery on a supplied or default state
    simulate    Monte Carlo error-correction statistics over the code file's channel
    concat      Concatenate two stabilizer code files (--outer over --inner)

Exit status: 0 on success, 2 validation, 3 not correctable, 4 capacity
exceeded, 5 certification failure, 1 anything else.
"""
import argparse
import json
import sys
from typing import Optional, Sequence

from config.settings import settings
from layer_5_reporting.code_file import load_code_file, materialize
from layer_5_reporting.report import write_report
from layer_5_reporting.run import COMMANDS, CommandRunner
from utils.errors import InvalidInput, PaulianError
from utils.logger import get_logger

logger = get_logger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='paulian',
        description='Synthesize and exercise Paulian stabilizers for quantum codes',
    )
    parser.add_argument('command', choices=COMMANDS)
    parser.add_argument('codefile', nargs='?', help='JSON code file (not used by concat)')
    parser.add_argument('--tol', type=float, default=None,
                        help=f'equality tolerance (default {settings.TOLERANCE:g})')
    parser.add_argument('--mode', choices=['minimal', 'extended-full'], default=None,
                        help='syndrome-table mode')
    parser.add_argument('--trials', type=int, default=settings.MC_TRIALS)
    parser.add_argument('--seed', type=int, default=settings.MC_SEED)
    parser.add_argument('--workers', type=int, default=settings.MC_WORKERS)
    parser.add_argument('--out', default=None, help='write the report here instead of stdout')
    parser.add_argument('--format', choices=['human', 'machine'], default='human')
    parser.add_argument('--site', type=int, default=None, help='CWS: restrict the family to one qubit (1-based)')
    parser.add_argument('--target', choices=['correct', 'detect'], default=None)
    parser.add_argument('--state', default=None, help='JSON amplitude list for measure/simulate')
    parser.add_argument('--error', default=None, help='operator applied before measure')
    parser.add_argument('--outer', default=None, help='outer code file for concat')
    parser.add_argument('--inner', default=None, help='inner code file for concat')
    return parser


def _load(path: Optional[str], what: str):
    if not path:
        raise InvalidInput(f"missing {what}")
    return materialize(load_code_file(path))


def _state(text: Optional[str]):
    if text is None:
        return None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InvalidInput(f"--state is not a JSON amplitude list: {e}")


def dispatch(args: argparse.Namespace) -> dict:
    """Run the selected command and return its report"""
    mode = args.mode.replace('-', '_') if args.mode else None
    runner = CommandRunner(args.tol, mode, args.workers)

    if args.command == 'concat':
        return runner.concat(_load(args.outer, '--outer code file'), _load(args.inner, '--inner code file'))

    loaded = _load(args.codefile, 'code file')
    if args.command == 'check':
        return runner.check(loaded, args.target, args.site)
    if args.command == 'synthesize':
        return runner.synthesize(loaded, args.target, args.site)
    if args.command == 'measure':
        return runner.measure(loaded, _state(args.state), args.error, args.seed, args.target, args.site)
    return runner.simulate(loaded, args.trials, args.seed, _state(args.state), args.target, args.site)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse arguments, run one command, emit its report

    Returns:
        Process exit status
    """
    args = build_parser().parse_args(argv)
    try:
        logger.info("=" * 60)
        logger.info(f"paulian {args.command}")
        logger.info("=" * 60)

        report = dispatch(args)
        text = write_report(report, args.format, args.out)
        if not args.out:
            sys.stdout.write(text)
        return 0

    except PaulianError as e:
        logger.error(f"{type(e).__name__}: {e.message}")
        if args.format == 'machine' and not args.out:
            sys.stdout.write(json.dumps({'error': e.to_dict()}, indent=2, sort_keys=True) + "\n")
        return e.exit_code
    except Exception as e:
        logger.error(f"Unexpected failure in '{args.command}': {e}", exc_info=True)
        return 1


if __name__ == "__main__":
    sys.exit(main())

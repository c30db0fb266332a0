#!/usr/bin/env python3
"""
hyperseries: digits of e, π and ζ(3) by linear-space binary splitting.

Usage:
    python hyperseries.py compute --constant e --bits 4096 --base 10 --out e.txt
    python hyperseries.py verify --constant zeta3 --bits 4096
    python hyperseries.py sweep --constant e --bits-min 4096 --bits-max 65536 --stats logs/e_sweep.jsonl
    python hyperseries.py describe --file catalog/data/geometric.json --bits 64

Environment Variables:
    HYPERSERIES_ASSERT_LEMMA3   - 1 checks the Horner magnitude bound at every step (default 0)
    HYPERSERIES_BACKEND         - auto | gmpy2 | python (default auto)
    HYPERSERIES_ACCOUNTING      - 0 disables big-integer memory accounting (default 1)
    HYPERSERIES_LOG_DIR         - directory for log files (default logs)

Exit codes: 0 ok, 1 mismatch or unexpected error, 2 usage, 3 descriptor, 4 internal assertion.
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional

import dotenv

from bench.runner import EXIT_USAGE, BenchRunner, run_guarded
from bigfix.backend import select_backend
from catalog.constants import available_constants


def add_source_arguments(parser: argparse.ArgumentParser, required: bool = True):
    source = parser.add_mutually_exclusive_group(required=required)
    source.add_argument('--constant', type=str,
                        help=f"Bundled constant: {', '.join(available_constants())}")
    source.add_argument('--file', type=str,
                        help='JSON series or formula descriptor')
    parser.add_argument('--tight-tail', action='store_true',
                        help='Use the factorial tail bound for e (default: off)')


def parse_arguments(argv: Optional[List[str]] = None) -> argparse.Namespace:
    """Parse command line arguments."""
    parser = argparse.ArgumentParser(
        description='Hypergeometric constants by linear-space binary splitting',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
    # 64 bits of e in decimal
    python hyperseries.py compute --constant e --bits 64 --base 10

    # π in binary, classical splitting, with a stats record
    python hyperseries.py compute --constant pi --bits 16 --base 2 --algo classical --stats logs/pi.jsonl

    # Misprinted ζ(3) descriptor against the catalog value
    python hyperseries.py verify --file catalog/data/zeta3_misprint.json --against zeta3 --bits 32
        """
    )
    commands = parser.add_subparsers(dest='command', required=True)

    compute = commands.add_parser('compute', help='Evaluate a constant and write its digits')
    add_source_arguments(compute)
    compute.add_argument('--bits', type=int, required=True, help='Target precision in fractional bits')
    compute.add_argument('--algo', choices=['classical', 'linspace'], default='linspace',
                         help='Summation algorithm (default: linspace)')
    compute.add_argument('--base', type=int, choices=[2, 10], default=10, help='Output base (default: 10)')
    compute.add_argument('--digits', type=int, default=None,
                         help='Digits to emit (default: floor(bits*log_base(2)) - 1)')
    compute.add_argument('--out', type=str, default=None, help='Digits file (default: stdout)')
    compute.add_argument('--stats', type=str, default=None, help='Line-delimited JSON stats file')

    verify = commands.add_parser('verify', help='Cross-check classical and linspace')
    add_source_arguments(verify)
    verify.add_argument('--bits', type=int, required=True, help='Precision to compare at')
    verify.add_argument('--against', type=str, default=None,
                        help='Compare the source with this bundled constant instead')
    verify.add_argument('--stats', type=str, default=None, help='Line-delimited JSON stats file')

    sweep = commands.add_parser('sweep', help='Time/space scaling sweep')
    add_source_arguments(sweep)
    sweep.add_argument('--bits-min', type=int, required=True, help='First n (at least 1024)')
    sweep.add_argument('--bits-max', type=int, required=True, help='Largest n')
    sweep.add_argument('--factor', type=int, default=2, help='Growth factor between steps (default: 2)')
    sweep.add_argument('--algo', choices=['classical', 'linspace', 'both'], default='both',
                       help='Algorithms to run (default: both)')
    sweep.add_argument('--stats', type=str, default=None, help='Line-delimited JSON stats file')

    describe = commands.add_parser('describe', help='Plan and validation report of a descriptor')
    add_source_arguments(describe)
    describe.add_argument('--bits', type=int, default=32, help='Probe precision (default: 32)')

    return parser.parse_args(argv)


def validate_args(args: argparse.Namespace) -> Optional[str]:
    """Error message for arguments argparse cannot check, else None."""
    if args.file and not Path(args.file).is_file():
        return f"Descriptor file not found: {args.file}"
    if args.command == 'compute' and args.digits is not None and args.digits < 0:
        return f"--digits must be non-negative, got {args.digits}"
    return None


def run_command(runner: BenchRunner, args: argparse.Namespace) -> int:
    formula = runner.resolve(args.constant, args.file, args.tight_tail)

    if args.command == 'compute':
        return runner.compute(formula, args.bits, args.algo, args.base, args.out, args.stats, args.digits)

    if args.command == 'verify':
        if args.against:
            other = runner.resolve(args.against, tight_tail=args.tight_tail)
            return runner.verify_against(formula, other, args.bits)
        return runner.verify(formula, args.bits, args.stats)

    if args.command == 'sweep':
        algorithms = ('classical', 'linspace') if args.algo == 'both' else (args.algo,)
        return runner.sweep(formula, args.bits_min, args.bits_max, args.factor, args.stats, algorithms)

    reference, tolerance = runner.catalog_reference(args.constant) if args.constant else (None, 0)
    return runner.describe(formula, args.bits, reference, tolerance)


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point."""
    try:
        args = parse_arguments(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    # Load environment variables
    dotenv.load_dotenv()

    try:
        select_backend()
    except ValueError as e:
        print(f"Error: {e}")
        return EXIT_USAGE

    error = validate_args(args)
    if error:
        print(f"Error: {error}")
        return EXIT_USAGE

    name = args.constant.strip().lower() if args.constant else Path(args.file).stem
    runner = BenchRunner(name)
    try:
        return run_guarded(runner, run_command, runner, args)
    finally:
        runner.close()


if __name__ == "__main__":
    sys.exit(main())

"""
Benchmark orchestrator behind the command line.

compute  - evaluate one constant and write its digits (and a stats record)
verify   - classical vs linspace, or a descriptor file vs a catalog constant
sweep    - both algorithms over n = bits_min, bits_min·factor, … ≤ bits_max
describe - plan and validation report of a descriptor
"""

import logging
import os
import sys
import traceback
from fractions import Fraction
from time import perf_counter
from typing import Dict, Iterable, Optional, Tuple

from bigfix.backend import backend_name
from bigfix.dyadic import Dyadic, digit_count, render_digits
from catalog.constants import get_constant, reference_tolerance, reference_value
from catalog.descriptor_io import load_descriptor
from catalog.validation import validate_descriptor, validate_formula
from evaluators import ALGORITHMS, EvalResult
from evaluators.linspace import HornerBoundError
from series.descriptor import ConstantFormula, DescriptorError, SeriesDescriptor
from series.planner import plan_evaluation

from .memory_tracker import peak_mem_accounting, rss_max_kb
from .report import EvalReport
from .scaling import ScalingTracker
from .stats_logger import StatsLogger, write_digits

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_DESCRIPTOR = 3
EXIT_ASSERTION = 4

SWEEP_MIN_BITS = 1024
VERIFY_MIN_BITS = 8

# leading decimals shown by verify
PREVIEW_DIGITS = 40


def exit_code_for(error: BaseException) -> int:
    """CLI exit code of a failed run."""
    if isinstance(error, AssertionError):
        return EXIT_ASSERTION
    if isinstance(error, DescriptorError):
        return EXIT_DESCRIPTOR
    if isinstance(error, (ValueError, LookupError)):
        return EXIT_USAGE
    return EXIT_FAILURE


def first_disagreement(a: Dyadic, b: Dyadic, bits: int) -> Optional[int]:
    """1-based index of the first fractional bit where a and b differ (≤ 0: integer part), or None."""
    x = (abs(a.mantissa) << bits) >> a.frac_bits
    y = (abs(b.mantissa) << bits) >> b.frac_bits
    if a.sign * b.sign < 0 and (x or y):
        return 0
    if x == y:
        return None
    return bits - int((x ^ y).bit_length()) + 1


def log_dir_from_env() -> str:
    return os.getenv('HYPERSERIES_LOG_DIR', 'logs')


class BenchRunner:
    """Runs evaluations for one constant and records their cost."""

    def __init__(self, name: str, log_dir: Optional[str] = None):
        self.name = name
        self.log_dir = log_dir or log_dir_from_env()
        self._setup_logger()

        self.total_runs = 0
        self.failed_runs = 0

    def _setup_logger(self):
        """Setup logging configuration."""
        os.makedirs(self.log_dir, exist_ok=True)
        self.log_filename = os.path.join(self.log_dir, f"hyperseries_{self.name}.log")

        self.logger = logging.getLogger(f"hyperseries_{self.name}")
        self.logger.setLevel(logging.INFO)
        self.close()

        file_handler = logging.FileHandler(self.log_filename)
        file_handler.setLevel(logging.INFO)
        file_handler.setFormatter(logging.Formatter('%(asctime)s - %(levelname)s - %(message)s'))

        console_handler = logging.StreamHandler(sys.stdout)
        console_handler.setLevel(logging.INFO)
        console_handler.setFormatter(logging.Formatter('%(levelname)s: %(message)s'))

        self.logger.addHandler(file_handler)
        self.logger.addHandler(console_handler)
        self.logger.propagate = False

    def close(self):
        """Detach and close this runner's handlers."""
        for handler in list(self.logger.handlers):
            handler.close()
            self.logger.removeHandler(handler)

    @staticmethod
    def resolve(constant: Optional[str] = None, file: Optional[str] = None,
                tight_tail: bool = False) -> ConstantFormula:
        """Catalog constant or descriptor file, always as a formula."""
        if file:
            loaded = load_descriptor(file)
            if isinstance(loaded, SeriesDescriptor):
                return ConstantFormula.single(loaded)
            return loaded
        if not constant:
            raise ValueError("Either a constant name or a descriptor file is required")
        return get_constant(constant, tight_tail=tight_tail)

    def measure(self, formula: ConstantFormula, n: int, algorithm: str) -> Tuple[EvalResult, EvalReport]:
        """Evaluate once under memory accounting and a wall clock."""
        if algorithm not in ALGORITHMS:
            raise ValueError(f"Unknown algorithm '{algorithm}', expected one of {', '.join(ALGORITHMS)}")

        evaluator = ALGORITHMS[algorithm]()
        evaluator.set_logger(self.logger)
        self.total_runs += 1

        with peak_mem_accounting(self.logger) as memory:
            start = perf_counter()
            result = evaluator.run(formula, n)
            wall_time = perf_counter() - start

        extra = {
            'rss_max_kb': rss_max_kb(),
            'success': result.success,
            'error_message': result.error_message,
            'plans': [{'series': s.name, **p.to_dict()} for s, p in zip(formula.series, result.plans)],
        }
        if result.plan is not None:
            report = EvalReport.from_plan(formula.name, n, algorithm, result.plan,
                                          wall_time, memory.peak_bytes, backend_name(), **extra)
        else:
            report = EvalReport(formula.name, n, algorithm, 0, 0, 0, 0, wall_time,
                                memory.peak_bytes, 0, backend_name(), **extra)

        if not result.success:
            self.failed_runs += 1
            self.logger.error(f"❌ {algorithm} failed on {formula.name} at n={n}: {result.error_message}")
        return result, report

    def compute(self, formula: ConstantFormula, bits: int, algorithm: str = 'linspace', base: int = 10,
                out_path: Optional[str] = None, stats_path: Optional[str] = None,
                digits: Optional[int] = None) -> int:
        """Evaluate to `bits` and emit truncated digits; returns the exit code."""
        if bits < 1:
            self.logger.error(f"❌ --bits must be at least 1, got {bits}")
            return EXIT_USAGE

        count = digit_count(bits, base) if digits is None else digits
        if count < 0:
            self.logger.error(f"❌ --digits must be non-negative, got {count}")
            return EXIT_USAGE

        self.logger.info(f"🚀 Computing {formula.name} to {bits} bits with {algorithm} ({backend_name()} integers)")
        result, report = self.measure(formula, bits, algorithm)
        if not result.success:
            return exit_code_for(result.error)

        report.digits = count
        text = render_digits(result.value, base, count)
        if out_path:
            write_digits(out_path, text)
            self.logger.info(f"✅ Wrote {count} base-{base} digits to {out_path}")
        else:
            print(text)

        StatsLogger(stats_path, self.logger).log_report(report)
        return EXIT_OK

    def _compare(self, label_a: str, a: Dyadic, label_b: str, b: Dyadic, bits: int) -> int:
        diff = abs(a.to_fraction() - b.to_fraction())
        preview = min(PREVIEW_DIGITS, digit_count(bits, 10))
        self.logger.info(f"   {label_a}: {render_digits(a, 10, preview)}")
        self.logger.info(f"   {label_b}: {render_digits(b, 10, preview)}")

        if diff <= Fraction(1, 1 << (bits - 1)):
            self.logger.info(f"✅ Agree to 2^-{bits - 1}")
            return EXIT_OK

        position = first_disagreement(a, b, bits)
        self.logger.error(f"❌ Mismatch: |difference| = {float(diff):.3e}, first differing fractional bit {position}")
        return EXIT_FAILURE

    def verify(self, formula: ConstantFormula, bits: int, stats_path: Optional[str] = None) -> int:
        """Classical vs linspace on the same formula; 0 when |Δ| ≤ 2^(-(bits-1))."""
        if bits < VERIFY_MIN_BITS:
            self.logger.error(f"❌ verify needs --bits >= {VERIFY_MIN_BITS}, got {bits}")
            return EXIT_USAGE

        self.logger.info(f"🚀 Verifying {formula.name} at {bits} bits: classical vs linspace")
        stats = StatsLogger(stats_path, self.logger)
        values: Dict[str, Dyadic] = {}
        for algorithm in ('classical', 'linspace'):
            result, report = self.measure(formula, bits, algorithm)
            if not result.success:
                return exit_code_for(result.error)
            stats.log_report(report)
            values[algorithm] = result.value

        return self._compare('classical', values['classical'], 'linspace', values['linspace'], bits)

    def verify_against(self, formula: ConstantFormula, other: ConstantFormula, bits: int) -> int:
        """A descriptor's value vs a catalog constant, both by linspace."""
        if bits < VERIFY_MIN_BITS:
            self.logger.error(f"❌ verify needs --bits >= {VERIFY_MIN_BITS}, got {bits}")
            return EXIT_USAGE

        self.logger.info(f"🚀 Verifying {formula.name} against {other.name} at {bits} bits")
        values = []
        for item in (formula, other):
            result, _ = self.measure(item, bits, 'linspace')
            if not result.success:
                return exit_code_for(result.error)
            values.append(result.value)

        return self._compare(formula.name, values[0], other.name, values[1], bits)

    def sweep(self, formula: ConstantFormula, bits_min: int, bits_max: int, factor: int = 2,
              stats_path: Optional[str] = None, algorithms: Iterable[str] = ('classical', 'linspace')) -> int:
        """Time and memory of each algorithm at n = bits_min·factor^i ≤ bits_max."""
        if bits_min < SWEEP_MIN_BITS:
            self.logger.error(f"❌ --bits-min must be at least {SWEEP_MIN_BITS}, got {bits_min}")
            return EXIT_USAGE
        if factor < 2:
            self.logger.error(f"❌ --factor must be at least 2, got {factor}")
            return EXIT_USAGE
        if bits_max < bits_min:
            self.logger.error(f"❌ --bits-max ({bits_max}) is below --bits-min ({bits_min})")
            return EXIT_USAGE

        algorithms = list(algorithms)
        for algorithm in algorithms:
            if algorithm not in ALGORITHMS:
                self.logger.error(f"❌ Unknown algorithm '{algorithm}'")
                return EXIT_USAGE

        self.logger.info(f"🚀 Sweeping {formula.name}: n = {bits_min}..{bits_max} x{factor}, "
                         f"algorithms {', '.join(algorithms)}")
        stats = StatsLogger(stats_path, self.logger)
        tracker = ScalingTracker(self.logger)
        status = EXIT_OK

        n = bits_min
        while n <= bits_max:
            for algorithm in algorithms:
                result, report = self.measure(formula, n, algorithm)
                stats.log_report(report)
                tracker.add(report)
                if not result.success and status == EXIT_OK:
                    status = exit_code_for(result.error)

            if len(algorithms) > 1:
                peaks = {a: tracker.peak_at(a, n) for a in algorithms}
                self.logger.info(f"📊 n={n} peak_mem: " + ', '.join(f"{a}={p}" for a, p in peaks.items()))
            n *= factor

        tracker.log_ratios()
        stats.log_summary(tracker.summary())
        self._log_summary()
        return status

    def describe(self, item: ConstantFormula, bits: int, reference: Optional[Fraction] = None,
                 tolerance: Fraction = Fraction(0)) -> int:
        """Print the plan of every series at `bits` and the validation report."""
        if bits < VERIFY_MIN_BITS:
            self.logger.error(f"❌ describe needs --bits >= {VERIFY_MIN_BITS}, got {bits}")
            return EXIT_USAGE

        self.logger.info(f"🚀 Describing {item.name} at {bits} bits")
        for coeff, series in item.terms:
            try:
                plan = plan_evaluation(series, bits)
            except DescriptorError as e:
                self.logger.error(f"❌ {series.name}: {e}")
                continue
            self.logger.info(
                f"📊 {coeff} x {series.name}: r={plan.r}, k1={plan.k1}, r1={plan.r1}, "
                f"W={plan.W}, omega={plan.omega}, m={plan.m}"
            )

        if len(item.terms) == 1 and item.terms[0][0] == 1:
            report = validate_descriptor(item.terms[0][1], bits, reference, tolerance)
        else:
            report = validate_formula(item, bits, reference, tolerance)

        for check in report.checks:
            marker = '✅' if check.passed else '❌'
            self.logger.info(f"{marker} {check.name}: {check.detail}")

        if report.passed:
            self.logger.info(f"✅ {item.name} passed validation at {bits} bits")
            return EXIT_OK
        self.logger.error(f"❌ {item.name} failed validation at {bits} bits")
        return EXIT_DESCRIPTOR

    def catalog_reference(self, name: str) -> Tuple[Optional[Fraction], Fraction]:
        value = reference_value(name)
        if value is None:
            return None, Fraction(0)
        return value, reference_tolerance(name)

    def _log_summary(self):
        self.logger.info("=" * 50)
        self.logger.info("📊 Run Summary:")
        self.logger.info(f"   Total runs: {self.total_runs}")
        self.logger.info(f"   Failed: {self.failed_runs}")
        self.logger.info("=" * 50)


def run_guarded(runner: BenchRunner, action, *args, **kwargs) -> int:
    """Call a runner action, mapping escaped exceptions to exit codes."""
    try:
        return action(*args, **kwargs)
    except HornerBoundError as e:
        runner.logger.error(f"❌ Internal bound check failed: {e}")
        return EXIT_ASSERTION
    except DescriptorError as e:
        runner.logger.error(f"❌ Descriptor error: {e}")
        return EXIT_DESCRIPTOR
    except (ValueError, LookupError) as e:
        runner.logger.error(f"❌ {e}")
        return EXIT_USAGE
    except Exception as e:
        runner.logger.error(f"❌ Unexpected error: {e}")
        runner.logger.error(traceback.format_exc())
        return EXIT_FAILURE

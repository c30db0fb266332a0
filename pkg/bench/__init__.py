"""Benchmark runner, stats records and memory accounting."""

from .memory_tracker import MemoryMeasurement, accounting_enabled, peak_mem_accounting, rss_max_kb
from .report import EvalReport
from .runner import BenchRunner, exit_code_for, first_disagreement, run_guarded
from .scaling import ScalingTracker, StepRatio
from .stats_logger import StatsLogger, read_stats, write_digits

__all__ = [
    'MemoryMeasurement',
    'accounting_enabled',
    'peak_mem_accounting',
    'rss_max_kb',
    'EvalReport',
    'BenchRunner',
    'exit_code_for',
    'first_disagreement',
    'run_guarded',
    'ScalingTracker',
    'StepRatio',
    'StatsLogger',
    'read_stats',
    'write_digits',
]

"""Scaling state of a sweep: reports per algorithm and step ratios."""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional

from .report import EvalReport


@dataclass(frozen=True)
class StepRatio:
    """time(n_next)/time(n) and mem(n_next)/mem(n) between consecutive sweep points."""
    algorithm: str
    n: int
    n_next: int
    time_ratio: Optional[float]
    mem_ratio: Optional[float]

    def to_dict(self) -> dict:
        return {
            'algorithm': self.algorithm, 'n': self.n, 'n_next': self.n_next,
            'time_ratio': self.time_ratio, 'mem_ratio': self.mem_ratio,
        }


def _ratio(a, b) -> Optional[float]:
    if a is None or b is None or a <= 0:
        return None
    return b / a


class ScalingTracker:
    """Collects sweep reports and derives the growth ratios between steps."""

    def __init__(self, logger: logging.Logger):
        self.logger = logger
        self.reports: Dict[str, List[EvalReport]] = {}

    def add(self, report: EvalReport):
        runs = self.reports.setdefault(report.algorithm, [])
        runs.append(report)
        runs.sort(key=lambda r: r.n)

    def ratios(self, algorithm: str) -> List[StepRatio]:
        runs = [r for r in self.reports.get(algorithm, []) if r.success]
        return [
            StepRatio(algorithm, a.n, b.n, _ratio(a.wall_time, b.wall_time), _ratio(a.peak_mem, b.peak_mem))
            for a, b in zip(runs, runs[1:])
        ]

    def is_monotone(self, algorithm: str) -> bool:
        """wall_time and peak_mem never decrease as n grows."""
        for step in self.ratios(algorithm):
            if step.time_ratio is not None and step.time_ratio < 1:
                return False
            if step.mem_ratio is not None and step.mem_ratio < 1:
                return False
        return True

    def peak_at(self, algorithm: str, n: int) -> Optional[int]:
        for r in self.reports.get(algorithm, []):
            if r.n == n:
                return r.peak_mem
        return None

    def summary(self) -> dict:
        return {
            'kind': 'sweep_summary',
            'ratios': {algo: [s.to_dict() for s in self.ratios(algo)] for algo in sorted(self.reports)},
            'monotone': {algo: self.is_monotone(algo) for algo in sorted(self.reports)},
        }

    def log_ratios(self):
        for algo in sorted(self.reports):
            for step in self.ratios(algo):
                time_text = f"{step.time_ratio:.2f}" if step.time_ratio is not None else 'n/a'
                mem_text = f"{step.mem_ratio:.2f}" if step.mem_ratio is not None else 'n/a'
                self.logger.info(f"📊 {algo} n={step.n}->{step.n_next}: time x{time_text}, mem x{mem_text}")
            if not self.is_monotone(algo):
                self.logger.warning(f"⚠️ {algo}: wall_time or peak_mem decreased along the sweep")

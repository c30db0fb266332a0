"""Stats and digits output for benchmark runs."""

import json
import logging
import os
from typing import List, Optional

from .report import EvalReport


class StatsLogger:
    """Appends one JSON object per run to a line-delimited stats file."""

    def __init__(self, path: Optional[str], logger: logging.Logger):
        self.path = path
        self.logger = logger
        self.records = 0

        if path:
            directory = os.path.dirname(path)
            if directory:
                os.makedirs(directory, exist_ok=True)

    def log_report(self, report: EvalReport):
        """Append a report; without a stats path this only logs the summary."""
        self.logger.info(
            f"📊 {report.constant} {report.algorithm} n={report.n}: r={report.r}, k1={report.k1}, "
            f"r1={report.r1}, m={report.m}, time={report.wall_time:.4f}s, peak_mem={report.peak_mem}"
        )
        if not self.path:
            return

        try:
            with open(self.path, 'a', encoding='utf-8') as f:
                f.write(json.dumps(report.to_dict(), sort_keys=True) + '\n')
            self.records += 1
        except OSError as e:
            self.logger.error(f"Error writing stats to {self.path}: {e}")

    def log_summary(self, summary: dict):
        """Append a non-run record (e.g. sweep doubling ratios), tagged with kind."""
        if not self.path:
            return
        try:
            with open(self.path, 'a', encoding='utf-8') as f:
                f.write(json.dumps(summary, sort_keys=True) + '\n')
        except OSError as e:
            self.logger.error(f"Error writing stats to {self.path}: {e}")


def read_stats(path: str) -> List[dict]:
    """All records of a stats file, in order."""
    with open(path, encoding='utf-8') as f:
        return [json.loads(line) for line in f if line.strip()]


def write_digits(path: str, text: str):
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        f.write(text + '\n')

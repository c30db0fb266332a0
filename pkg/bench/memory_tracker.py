"""Peak big-integer memory of a code block."""

import logging
import os
import sys
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Iterator, Optional

from bigfix.accounting import MemoryAccountant, accounting_scope

try:
    import resource
except ImportError:  # not available on Windows
    resource = None


def accounting_enabled() -> bool:
    return os.getenv('HYPERSERIES_ACCOUNTING', '1').strip() != '0'


def rss_max_kb() -> Optional[int]:
    """Process max RSS in KiB (informational; Linux reports KiB, macOS bytes)."""
    if resource is None:
        return None
    usage = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
    if sys.platform == 'darwin':
        usage //= 1024
    return int(usage)


@dataclass
class MemoryMeasurement:
    """Filled in when the peak_mem_accounting scope exits."""
    peak_bytes: Optional[int] = None
    accountant: Optional[MemoryAccountant] = None

    @property
    def available(self) -> bool:
        return self.accountant is not None

    def _finish(self):
        if self.accountant is not None:
            self.peak_bytes = self.accountant.peak_bytes


@contextmanager
def peak_mem_accounting(logger: Optional[logging.Logger] = None) -> Iterator[MemoryMeasurement]:
    """
    High-water mark of live big-integer payload bytes inside the block.

    With HYPERSERIES_ACCOUNTING=0 nothing is tracked: peak_bytes stays None
    and a warning goes to `logger`.
    """
    measurement = MemoryMeasurement()

    if not accounting_enabled():
        if logger:
            logger.warning("⚠️ Memory accounting disabled (HYPERSERIES_ACCOUNTING=0); peak_mem will be null")
        yield measurement
        return

    with accounting_scope() as accountant:
        measurement.accountant = accountant
        try:
            yield measurement
        finally:
            measurement._finish()

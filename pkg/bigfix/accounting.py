"""Payload accounting hook for the big integers the evaluators hold."""

from contextlib import contextmanager
from contextvars import ContextVar
from typing import Any, Iterator, Optional


class MemoryAccountant:
    """High-water mark of live big-integer payload bytes inside one scope."""

    def __init__(self):
        self.live_bytes = 0
        self.peak_bytes = 0

    def charge(self, nbytes: int):
        self.live_bytes += nbytes
        if self.live_bytes > self.peak_bytes:
            self.peak_bytes = self.live_bytes

    def release(self, nbytes: int):
        self.live_bytes = max(0, self.live_bytes - nbytes)


_active: ContextVar[Optional[MemoryAccountant]] = ContextVar('hyperseries_accountant', default=None)


def payload_bytes(*values: Any) -> int:
    """Bytes needed for the magnitudes of the given integers."""
    return sum((int(abs(v).bit_length()) + 7) // 8 for v in values)


def charge(*values: Any):
    """Record that the caller now holds these integers."""
    accountant = _active.get()
    if accountant is not None:
        accountant.charge(payload_bytes(*values))


def release(*values: Any):
    """Record that the caller dropped these integers."""
    accountant = _active.get()
    if accountant is not None:
        accountant.release(payload_bytes(*values))


def active_accountant() -> Optional[MemoryAccountant]:
    return _active.get()


@contextmanager
def accounting_scope() -> Iterator[MemoryAccountant]:
    """Install a fresh accountant for the duration of the block."""
    accountant = MemoryAccountant()
    token = _active.set(accountant)
    try:
        yield accountant
    finally:
        _active.reset(token)

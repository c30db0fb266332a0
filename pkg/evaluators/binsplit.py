"""
Classical binary splitting.

For an index range [i1, i2] the quadruple

    P = p(i1)…p(i2),  Q = q(i1)…q(i2),  B = b(i1)…b(i2),
    T = B·Q·Σ_{i=i1..i2} a(i)·p(i1)…p(i)/(b(i)·q(i1)…q(i))

is built by halving the range and combining the halves. No GCD reduction
happens on the way up.
"""

from dataclasses import dataclass
from typing import Any, Tuple

from bigfix.accounting import charge, release
from bigfix.backend import to_big
from bigfix.dyadic import Ratio
from series.descriptor import DescriptorError, SeriesDescriptor


@dataclass(frozen=True)
class PQBT:
    """Exact splitting quadruple; T/(B·Q) is the range sum."""
    P: Any
    Q: Any
    B: Any
    T: Any

    def ratio(self) -> Ratio:
        return Ratio(self.T, self.B * self.Q)

    def parts(self) -> Tuple[Any, Any, Any, Any]:
        return self.P, self.Q, self.B, self.T


def _leaf(series: SeriesDescriptor, i: int) -> PQBT:
    p = series.p(i)
    q = series.q(i)
    b = series.b(i)
    if q == 0:
        raise DescriptorError(f"{series.name}: q({i}) = 0")
    if b == 0:
        raise DescriptorError(f"{series.name}: b({i}) = 0")

    p = to_big(p)
    return PQBT(p, to_big(q), to_big(b), to_big(series.a(i)) * p)


def combine(left: PQBT, right: PQBT) -> PQBT:
    """Join adjacent ranges: left covers [i1, k], right covers [k+1, i2]."""
    return PQBT(
        P=left.P * right.P,
        Q=left.Q * right.Q,
        B=left.B * right.B,
        T=right.B * right.Q * left.T + left.B * left.P * right.T
    )


def split_sum(series: SeriesDescriptor, i1: int, i2: int) -> PQBT:
    """(P, Q, B, T) over [i1, i2], split at the midpoint."""
    if not 0 <= i1 <= i2:
        raise ValueError(f"split_sum needs 0 <= i1 <= i2, got [{i1}, {i2}]")
    return _split_sum(series, i1, i2)


def _split_sum(series: SeriesDescriptor, i1: int, i2: int) -> PQBT:
    if i1 == i2:
        leaf = _leaf(series, i1)
        charge(*leaf.parts())
        return leaf

    mid = (i1 + i2) // 2
    left = _split_sum(series, i1, mid)
    right = _split_sum(series, mid + 1, i2)

    node = combine(left, right)
    charge(*node.parts())
    release(*left.parts(), *right.parts())
    return node


def split_product(series: SeriesDescriptor, j1: int, j2: int) -> Tuple[Any, Any]:
    """P = p(j1)…p(j2) and Q = q(j1)…q(j2) by balanced splitting."""
    if not 0 <= j1 <= j2:
        raise ValueError(f"split_product needs 0 <= j1 <= j2, got [{j1}, {j2}]")
    return _split_product(series, j1, j2)


def _split_product(series: SeriesDescriptor, j1: int, j2: int) -> Tuple[Any, Any]:
    if j1 == j2:
        q = series.q(j1)
        if q == 0:
            raise DescriptorError(f"{series.name}: q({j1}) = 0")
        P, Q = to_big(series.p(j1)), to_big(q)
        charge(P, Q)
        return P, Q

    mid = (j1 + j2) // 2
    P_l, Q_l = _split_product(series, j1, mid)
    P_r, Q_r = _split_product(series, mid + 1, j2)

    P, Q = P_l * P_r, Q_l * Q_r
    charge(P, Q)
    release(P_l, Q_l, P_r, Q_r)
    return P, Q

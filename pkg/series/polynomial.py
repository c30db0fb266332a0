"""Integer-coefficient polynomials with per-index value overrides."""

from dataclasses import dataclass, field
from typing import Dict, Iterable, Sequence, Tuple

from typing_extensions import Self


@dataclass(frozen=True)
class Polynomial:
    """
    Σ coeffs[k]·i^k, ascending degree.

    `overrides` pins the value at individual indices, e.g. p(0)=1 for a
    p(j) = -j^5 that would otherwise vanish at zero.
    """
    coeffs: Tuple[int, ...]
    overrides: Tuple[Tuple[int, int], ...] = ()
    _override_map: Dict[int, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        if not coeffs:
            raise ValueError("Polynomial needs at least one coefficient")

        overrides = tuple(sorted((int(i), int(v)) for i, v in self.overrides))
        indices = [i for i, _ in overrides]
        if any(i < 0 for i in indices):
            raise ValueError(f"Override indices must be non-negative: {indices}")
        if len(set(indices)) != len(indices):
            raise ValueError(f"Duplicate override index in {indices}")

        object.__setattr__(self, 'coeffs', coeffs)
        object.__setattr__(self, 'overrides', overrides)
        object.__setattr__(self, '_override_map', dict(overrides))

    @classmethod
    def constant(cls, value: int) -> Self:
        return cls((value,))

    @classmethod
    def build(cls, coeffs: Sequence[int], overrides: Iterable[Tuple[int, int]] = ()) -> Self:
        return cls(tuple(coeffs), tuple(overrides))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, i: int) -> int:
        return poly_eval(self, i)


def poly_eval(poly: Polynomial, i: int) -> int:
    """Value at index i: the override when one is set, else Horner evaluation."""
    if i < 0:
        raise ValueError(f"Polynomial index must be non-negative, got {i}")

    override = poly._override_map.get(i)
    if override is not None:
        return override

    acc = 0
    for c in reversed(poly.coeffs):
        acc = acc * i + c
    return acc

"""Order values: exact rationals, lower bounds, and +infinity."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

from .errors import PrecisionExhausted

FINITE = "finite"
AT_LEAST = "at_least"
INFINITE = "infinity"


@dataclass(frozen=True)
class Order:
    """An order of vanishing.

    ``kind`` is one of ``"finite"``, ``"at_least"`` or ``"infinity"``.  For
    ``at_least`` the value is a lower bound known from a truncated
    computation; the true order may be anything at or above it.
    """

    kind: str
    value: Optional[Fraction] = None

    @classmethod
    def finite(cls, value: Union[int, Fraction]) -> "Order":
        return cls(FINITE, Fraction(value))

    @classmethod
    def at_least(cls, value: Union[int, Fraction]) -> "Order":
        return cls(AT_LEAST, Fraction(value))

    @property
    def is_finite(self) -> bool:
        return self.kind == FINITE

    @property
    def is_infinite(self) -> bool:
        return self.kind == INFINITE

    @property
    def is_bound(self) -> bool:
        return self.kind == AT_LEAST

    def __truediv__(self, weight: Union[int, Fraction]) -> "Order":
        if self.kind == INFINITE:
            return self
        return Order(self.kind, self.value / weight)

    def __add__(self, other: "Order") -> "Order":
        if self.is_infinite or other.is_infinite:
            return INFINITY
        kind = FINITE if self.is_finite and other.is_finite else AT_LEAST
        return Order(kind, self.value + other.value)

    def __str__(self) -> str:
        if self.kind == FINITE:
            return str(self.value)
        if self.kind == AT_LEAST:
            return f">={self.value}"
        return "inf"


INFINITY = Order(INFINITE)


def min_order(values: Iterable[Order]) -> Order:
    """Minimum of order values.

    Raises :class:`PrecisionExhausted` when a lower bound lies strictly below
    the smallest known finite value (or no finite value exists), since the
    minimum is then undetermined.
    """
    values = list(values)
    finite = [v.value for v in values if v.is_finite]
    bounds = [v.value for v in values if v.is_bound]
    if not finite and not bounds:
        return INFINITY
    best = min(finite) if finite else None
    for b in bounds:
        if best is None or b < best:
            raise PrecisionExhausted(
                f"order only known to be >= {b}; working precision too small"
            )
    return Order.finite(best)

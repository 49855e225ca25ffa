"""Univariate formal power series in ``t`` over Q.

A series is either *exact* (finitely supported, known completely) or
*truncated* at some precision ``p``: coefficients of ``t^0 .. t^p`` are known
and everything beyond is unknown.
"""

from __future__ import annotations

import os
from fractions import Fraction
from typing import Dict, Mapping, Optional, Union

from .errors import DivisionByNonUnit, PrecisionExhausted
from .order import INFINITY, Order

Scalar = Union[int, Fraction]

# ARC_CONTACT_PREC overrides the default working precision
DEFAULT_PRECISION = int(os.environ.get("ARC_CONTACT_PREC") or 64)


def default_precision() -> int:
    return DEFAULT_PRECISION


class FormalSeries:
    __slots__ = ("_terms", "precision")

    def __init__(self, terms: Mapping[int, Scalar] = (), precision: Optional[int] = None):
        if precision is not None and precision < 0:
            raise ValueError("precision must be non-negative")
        clean: Dict[int, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for e, c in items:
            if e < 0:
                raise ValueError(f"negative exponent {e}")
            if precision is not None and e > precision:
                continue
            c = Fraction(c)
            if c:
                c = clean.get(e, 0) + c
                if c:
                    clean[e] = c
                else:
                    clean.pop(e, None)
        self._terms = clean
        self.precision = precision

    @classmethod
    def _raw(cls, terms: Dict[int, Fraction], precision: Optional[int]) -> "FormalSeries":
        s = cls.__new__(cls)
        s._terms = terms
        s.precision = precision
        return s

    @classmethod
    def monomial(cls, exponent: int, c: Scalar = 1) -> "FormalSeries":
        return cls({exponent: c})

    @classmethod
    def zero(cls) -> "FormalSeries":
        return cls._raw({}, None)

    @property
    def exact(self) -> bool:
        return self.precision is None

    @property
    def mode(self) -> str:
        return "exact" if self.precision is None else "truncated"

    @property
    def terms(self) -> Dict[int, Fraction]:
        return dict(self._terms)

    def coefficient(self, e: int) -> Fraction:
        if self.precision is not None and e > self.precision:
            raise PrecisionExhausted(f"coefficient of t^{e} beyond precision {self.precision}")
        return self._terms.get(e, Fraction(0))

    def constant_term(self) -> Fraction:
        return self._terms.get(0, Fraction(0))

    def is_zero(self) -> bool:
        """True only for the exactly-known zero series."""
        return self.precision is None and not self._terms

    def is_single_term(self) -> bool:
        return self.precision is None and len(self._terms) == 1

    def order(self) -> Order:
        if self._terms:
            return Order.finite(min(self._terms))
        if self.precision is None:
            return INFINITY
        return Order.at_least(self.precision + 1)

    def _low(self) -> Union[int, float]:
        # lower bound on the order, used for precision propagation
        if self._terms:
            return min(self._terms)
        if self.precision is None:
            return float("inf")
        return self.precision + 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, FormalSeries):
            return NotImplemented
        return self.precision == other.precision and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.precision, frozenset(self._terms.items())))

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _combine_prec(a: Optional[int], b: Optional[int]) -> Optional[int]:
        if a is None:
            return b
        if b is None:
            return a
        return min(a, b)

    def __add__(self, other: "FormalSeries") -> "FormalSeries":
        prec = self._combine_prec(self.precision, other.precision)
        out = {e: c for e, c in self._terms.items() if prec is None or e <= prec}
        for e, c in other._terms.items():
            if prec is not None and e > prec:
                continue
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return FormalSeries._raw(out, prec)

    def __neg__(self) -> "FormalSeries":
        return FormalSeries._raw({e: -c for e, c in self._terms.items()}, self.precision)

    def __sub__(self, other: "FormalSeries") -> "FormalSeries":
        return self + (-other)

    def __mul__(self, other) -> "FormalSeries":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        a_low, b_low = self._low(), other._low()
        if a_low == float("inf") or b_low == float("inf"):
            # exact zero annihilates, whatever the other precision
            return FormalSeries.zero()
        candidates = []
        if self.precision is not None:
            candidates.append(self.precision + b_low)
        if other.precision is not None:
            candidates.append(other.precision + a_low)
        prec = int(min(candidates)) if candidates else None
        out: Dict[int, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                if prec is not None and e > prec:
                    continue
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
        return FormalSeries._raw(out, prec)

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "FormalSeries":
        c = Fraction(c)
        if not c:
            return FormalSeries.zero()
        return FormalSeries._raw({e: v * c for e, v in self._terms.items()}, self.precision)

    def __pow__(self, k: int) -> "FormalSeries":
        if k < 0:
            raise ValueError("negative power")
        result = FormalSeries.monomial(0)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def shift_down(self, k: int) -> "FormalSeries":
        """Divide by ``t^k``; every stored exponent must be >= k."""
        if k == 0:
            return self
        if self._terms and min(self._terms) < k:
            raise DivisionByNonUnit(f"series has order < {k}; not divisible by t^{k}")
        prec = None
        if self.precision is not None:
            prec = self.precision - k
            if prec < 0:
                raise PrecisionExhausted(f"dividing by t^{k} exhausts precision {self.precision}")
        return FormalSeries._raw({e - k: c for e, c in self._terms.items()}, prec)

    def div_unit(self, unit: "FormalSeries", precision: Optional[int] = None) -> "FormalSeries":
        """Divide by a series with nonzero constant term."""
        b0 = unit._terms.get(0)
        if not b0:
            raise DivisionByNonUnit("divisor has zero constant term")
        if unit.exact and len(unit._terms) == 1:
            return self.scale(1 / b0)
        work = default_precision() if precision is None else precision
        prec = min(p for p in (self.precision, unit.precision, work) if p is not None)
        b = unit._terms
        q: Dict[int, Fraction] = {}
        for k in range(prec + 1):
            acc = self._terms.get(k, Fraction(0))
            for j, bj in b.items():
                if 1 <= j <= k:
                    qk = q.get(k - j)
                    if qk:
                        acc -= bj * qk
            if acc:
                q[k] = acc / b0
        return FormalSeries._raw(q, prec)

    def divide(self, other: "FormalSeries", precision: Optional[int] = None) -> "FormalSeries":
        """Quotient ``self / other`` when it is again a power series."""
        order = other.order()
        if order.is_infinite:
            raise DivisionByNonUnit("division by the zero series")
        if order.is_bound:
            raise PrecisionExhausted("divisor order unknown at working precision")
        k = int(order.value)
        return self.shift_down(k).div_unit(other.shift_down(k), precision)

    def truncate(self, precision: int) -> "FormalSeries":
        if self.precision is not None and self.precision <= precision:
            return self
        return FormalSeries({e: c for e, c in self._terms.items() if e <= precision}, precision)

    # -- printing ---------------------------------------------------------

    def to_str(self, var: str = "t") -> str:
        if not self._terms:
            body = "0"
        else:
            parts = []
            for e in sorted(self._terms):
                c = self._terms[e]
                if e == 0:
                    mono = str(c)
                else:
                    tpow = var if e == 1 else f"{var}^{e}"
                    mono = tpow if c == 1 else f"{c}*{tpow}"
                parts.append(mono)
            body = " + ".join(parts)
        if self.precision is not None:
            body += f" + O({var}^{self.precision + 1})"
        return body

    def __repr__(self) -> str:
        return f"FormalSeries({self.to_str()!r})"

"""Sparse multivariate polynomials over Q.

A polynomial is a mapping from exponent tuples to nonzero ``Fraction``
coefficients, with a fixed number of variables.  Instances are immutable.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple, Union

from .errors import NonExactStrictTransform, VariableMismatch
from .order import INFINITY, Order

Monomial = Tuple[int, ...]
Scalar = Union[int, Fraction]


def grevlex_key(m: Monomial):
    """Sort key: larger key means larger monomial in graded reverse-lex."""
    return (sum(m), tuple(-e for e in reversed(m)))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


class Polynomial:
    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Monomial, Scalar] = ()):
        clean: Dict[Monomial, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for mono, c in items:
            mono = tuple(mono)
            if len(mono) != nvars:
                raise VariableMismatch(
                    f"monomial {mono} has {len(mono)} exponents, expected {nvars}"
                )
            if any(e < 0 for e in mono):
                raise ValueError(f"negative exponent in {mono}")
            c = Fraction(c)
            if c:
                c = clean.get(mono, 0) + c
                if c:
                    clean[mono] = c
                else:
                    clean.pop(mono, None)
        self.nvars = nvars
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: Dict[Monomial, Fraction]) -> "Polynomial":
        # terms must already be clean (no zero coefficients)
        p = cls.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c: Scalar) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, index: int) -> "Polynomial":
        if not 0 <= index < nvars:
            raise IndexError(f"variable index {index} out of range for {nvars} variables")
        mono = tuple(1 if i == index else 0 for i in range(nvars))
        return cls._raw(nvars, {mono: Fraction(1)})

    @classmethod
    def monomial(cls, exponents: Sequence[int], c: Scalar = 1) -> "Polynomial":
        return cls(len(exponents), {tuple(exponents): c})

    # -- mapping-like access ---------------------------------------------

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(self._terms.items())

    def monomials(self) -> List[Monomial]:
        return list(self._terms)

    def coefficient(self, mono: Monomial) -> Fraction:
        return self._terms.get(tuple(mono), Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise VariableMismatch(
                    f"variable count mismatch: {self.nvars} vs {other.nvars}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.nvars, other)
        raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.nvars, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Polynomial._raw(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c: Scalar) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return Polynomial.zero(self.nvars)
        return Polynomial._raw(self.nvars, {m: v * c for m, v in self._terms.items()})

    def mul_monomial(self, mono: Monomial, c: Scalar = 1) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return Polynomial.zero(self.nvars)
        return Polynomial._raw(
            self.nvars, {mono_mul(m, mono): v * c for m, v in self._terms.items()}
        )

    # -- calculus and structure ---------------------------------------------

    def derivative(self, index: int, times: int = 1) -> "Polynomial":
        if not 0 <= index < self.nvars:
            raise IndexError(f"variable index {index} out of range for {self.nvars} variables")
        out: Dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            e = m[index]
            if e < times:
                continue
            factor = 1
            for j in range(times):
                factor *= e - j
            nm = m[:index] + (e - times,) + m[index + 1:]
            out[nm] = c * factor
        return Polynomial._raw(self.nvars, out)

    def order(self) -> Order:
        """Order at the origin (lowest total degree)."""
        if not self._terms:
            return INFINITY
        return Order.finite(min(sum(m) for m in self._terms))

    def order_int(self) -> int:
        if not self._terms:
            raise ValueError("the zero polynomial has infinite order")
        return min(sum(m) for m in self._terms)

    def degree(self) -> int:
        return max((sum(m) for m in self._terms), default=-1)

    def homogeneous_part(self, degree: int) -> "Polynomial":
        return Polynomial._raw(
            self.nvars, {m: c for m, c in self._terms.items() if sum(m) == degree}
        )

    def support(self) -> frozenset:
        """Indices of variables that occur in some term."""
        return frozenset(i for m in self._terms for i, e in enumerate(m) if e)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.nvars, Fraction(0))

    def leading(self) -> Tuple[Monomial, Fraction]:
        """Leading monomial and coefficient in graded reverse-lex order."""
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self._terms, key=grevlex_key)
        return m, self._terms[m]

    def monic(self) -> "Polynomial":
        if not self._terms:
            return self
        return self.scale(1 / self.leading()[1])

    def sorted_terms(self) -> List[Tuple[Monomial, Fraction]]:
        return sorted(self._terms.items(), key=lambda mc: grevlex_key(mc[0]), reverse=True)

    # -- substitutions ----------------------------------------------------

    def compose(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Substitute ``images[i]`` for variable ``i``."""
        if len(images) != self.nvars:
            raise VariableMismatch(f"expected {self.nvars} images, got {len(images)}")
        if not images:
            return self
        target = images[0].nvars
        powers: List[Dict[int, Polynomial]] = [{0: Polynomial.constant(target, 1)} for _ in images]

        def power(i: int, e: int) -> Polynomial:
            cache = powers[i]
            if e not in cache:
                cache[e] = images[i] ** e
            return cache[e]

        out = Polynomial.zero(target)
        for m, c in self._terms.items():
            term = Polynomial.constant(target, c)
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            out = out + term
        return out

    def translate(self, point: Sequence[Scalar]) -> "Polynomial":
        """Replace each variable ``v`` by ``v + point[v]``."""
        if len(point) != self.nvars:
            raise VariableMismatch(f"point has {len(point)} coordinates, expected {self.nvars}")
        point = [Fraction(c) for c in point]
        if not any(point):
            return self
        out: Dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            # expand prod (x_i + c_i)^e_i one variable at a time
            partial: Dict[Monomial, Fraction] = {m: c}
            for i, e in enumerate(m):
                ci = point[i]
                if not e or not ci:
                    continue
                nxt: Dict[Monomial, Fraction] = {}
                for pm, pc in partial.items():
                    for k in range(e + 1):
                        nm = pm[:i] + (k,) + pm[i + 1:]
                        nxt[nm] = nxt.get(nm, 0) + pc * comb(e, k) * ci ** (e - k)
                partial = nxt
            for pm, pc in partial.items():
                out[pm] = out.get(pm, 0) + pc
        return Polynomial(self.nvars, out)

    def divide_by_variable_power(self, index: int, k: int) -> "Polynomial":
        """Exact division by ``x_index ** k``."""
        out = {}
        for m, c in self._terms.items():
            if m[index] < k:
                raise NonExactStrictTransform(
                    f"term {m} is not divisible by variable {index} to power {k}"
                )
            out[m[:index] + (m[index] - k,) + m[index + 1:]] = c
        return Polynomial._raw(self.nvars, out)

    def extend(self, extra: int = 1) -> "Polynomial":
        """The same polynomial in ``nvars + extra`` variables (new ones last)."""
        pad = (0,) * extra
        return Polynomial._raw(self.nvars + extra, {m + pad: c for m, c in self._terms.items()})

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        total = Fraction(0)
        for m, c in self._terms.items():
            v = c
            for x, e in zip(point, m):
                if e:
                    v *= Fraction(x) ** e
            total += v
        return total

    # -- printing ---------------------------------------------------------

    def to_str(self, names: Sequence[str]) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            factors = []
            for name, e in zip(names, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not factors:
                body = str(a)
            elif a == 1:
                body = "*".join(factors)
            else:
                body = f"{a}*" + "*".join(factors)
            parts.append((sign, body))
        head_sign, head = parts[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        names = [f"x{i}" for i in range(self.nvars)]
        return f"Polynomial({self.to_str(names)!r}, nvars={self.nvars})"


def variables(nvars: int) -> List[Polynomial]:
    return [Polynomial.var(nvars, i) for i in range(nvars)]


def multi_indices(nvars: int, total: int) -> Iterable[Tuple[int, ...]]:
    """All exponent tuples of length ``nvars`` with the given sum."""
    if nvars == 0:
        if total == 0:
            yield ()
        return
    if nvars == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in multi_indices(nvars - 1, total - first):
            yield (first,) + rest

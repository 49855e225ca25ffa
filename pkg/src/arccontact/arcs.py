"""Arcs through the origin, parametrized families of arcs, and varieties."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .errors import ArcNotOnVariety, InvalidArc, VariableMismatch
from .order import Order, min_order
from .polynomial import Polynomial
from .series import FormalSeries


class Arc:
    """Images of the ambient coordinates in Q[[t]].

    Every image has zero constant term and at least one image is nonzero.
    """

    __slots__ = ("images",)

    def __init__(self, images: Sequence[FormalSeries]):
        images = tuple(images)
        if not images:
            raise InvalidArc("an arc needs at least one coordinate")
        for i, s in enumerate(images):
            if s.constant_term():
                raise InvalidArc(f"image of coordinate {i} has nonzero constant term")
        if all(s.is_zero() for s in images):
            raise InvalidArc("the trivial arc (all images zero) is not allowed")
        self.images = images

    @classmethod
    def monomial(cls, exponents: Sequence[Optional[int]], coefficients: Sequence = None) -> "Arc":
        """Arc with images ``c_i * t^e_i``; ``None`` means the zero image."""
        if coefficients is None:
            coefficients = [1] * len(exponents)
        return cls(
            FormalSeries.zero() if e is None else FormalSeries.monomial(e, c)
            for e, c in zip(exponents, coefficients)
        )

    @property
    def nvars(self) -> int:
        return len(self.images)

    @property
    def exact(self) -> bool:
        return all(s.exact for s in self.images)

    def is_monomial(self) -> bool:
        return all(s.is_zero() or s.is_single_term() for s in self.images)

    def project(self, keep: Sequence[int]) -> "Arc":
        return Arc([self.images[i] for i in keep])

    def __eq__(self, other) -> bool:
        return isinstance(other, Arc) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def to_str(self, names: Sequence[str]) -> str:
        return ", ".join(f"{n} -> {s.to_str()}" for n, s in zip(names, self.images))

    def __repr__(self) -> str:
        return f"Arc({[s.to_str() for s in self.images]})"


def arc_order(arc: Arc) -> Order:
    """Least t-order among the coordinate images."""
    return min_order(s.order() for s in arc.images)


def substitute(poly: Polynomial, arc: Arc) -> FormalSeries:
    """The series obtained by plugging the arc into ``poly``."""
    if poly.nvars != arc.nvars:
        raise VariableMismatch(f"polynomial has {poly.nvars} variables, arc has {arc.nvars}")
    if arc.is_monomial():
        return _substitute_monomial(poly, arc)
    powers: List[Dict[int, FormalSeries]] = [{0: FormalSeries.monomial(0)} for _ in arc.images]
    total = FormalSeries.zero()
    for mono, c in poly.items():
        term = FormalSeries.monomial(0, c)
        for i, e in enumerate(mono):
            if not e:
                continue
            cache = powers[i]
            if e not in cache:
                cache[e] = arc.images[i] ** e
            term = term * cache[e]
        total = total + term
    return total


def _substitute_monomial(poly: Polynomial, arc: Arc) -> FormalSeries:
    exps: List[Optional[int]] = []
    coefs: List[Fraction] = []
    for s in arc.images:
        if s.is_zero():
            exps.append(None)
            coefs.append(Fraction(0))
        else:
            (e, c), = s.terms.items()
            exps.append(e)
            coefs.append(c)
    out: Dict[int, Fraction] = {}
    for mono, c in poly.items():
        e_total = 0
        value = c
        for i, e in enumerate(mono):
            if not e:
                continue
            if exps[i] is None:
                value = 0
                break
            e_total += exps[i] * e
            value *= coefs[i] ** e
        if value:
            out[e_total] = out.get(e_total, 0) + value
    return FormalSeries(out)


@dataclass(frozen=True)
class Variety:
    variables: Tuple[str, ...]
    polynomials: Tuple[Polynomial, ...]

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "polynomials", tuple(self.polynomials))
        if not self.polynomials:
            raise ValueError("a variety needs at least one defining polynomial")
        for p in self.polynomials:
            if p.nvars != len(self.variables):
                raise VariableMismatch("polynomial variable count differs from variety")
            if p.is_zero():
                raise ValueError("defining polynomials must be nonzero")
            if p.constant_term():
                raise ValueError("defining polynomials must vanish at the origin")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def is_hypersurface(self) -> bool:
        return len(self.polynomials) == 1

    def index(self, name: str) -> int:
        return self.variables.index(name)


@dataclass(frozen=True)
class Valid:
    pass


@dataclass(frozen=True)
class ValidUpToPrecision:
    precision: int


Validation = Union[Valid, ValidUpToPrecision]


def validate_on_variety(arc: Arc, variety: Variety) -> Validation:
    """Check that the arc factors through the variety.

    Raises :class:`ArcNotOnVariety` when some defining polynomial pulls back
    to a series with a nonzero known coefficient.
    """
    if arc.nvars != variety.nvars:
        raise VariableMismatch(f"arc has {arc.nvars} coordinates, variety has {variety.nvars}")
    known = None
    for k, p in enumerate(variety.polynomials):
        s = substitute(p, arc)
        if s.terms:
            e = min(s.terms)
            raise ArcNotOnVariety(
                f"defining polynomial #{k + 1} pulls back with nonzero coefficient at t^{e}"
            )
        if s.precision is not None:
            known = s.precision if known is None else min(known, s.precision)
    return Valid() if known is None else ValidUpToPrecision(known)


def graph(arc: Arc) -> Arc:
    """Append the coordinate of the affine line, mapped to ``t``."""
    return Arc(arc.images + (FormalSeries.monomial(1),))


@dataclass(frozen=True)
class ArcFamily:
    """Monomial arcs ``v -> c_v * t^(a_v*N + b_v)`` for ``N`` in a range.

    ``terms`` holds one ``(coefficient, a, b)`` triple per variable;
    a ``None`` entry maps that variable to zero.
    """

    terms: Tuple[Optional[Tuple[Fraction, int, int]], ...]
    start: int
    stop: int

    def __post_init__(self):
        object.__setattr__(
            self,
            "terms",
            tuple(None if t is None else (Fraction(t[0]), int(t[1]), int(t[2])) for t in self.terms),
        )
        if self.start > self.stop:
            raise ValueError(f"empty range {self.start}..{self.stop}")
        for t in self.terms:
            if t is None:
                continue
            c, a, b = t
            if a < 0:
                raise ValueError("slope of an exponent must be non-negative")
            if not c:
                raise ValueError("zero coefficient; use a zero image instead")
            if min(a * self.start + b, a * self.stop + b) < 1:
                raise InvalidArc(f"exponent {a}*N{b:+d} is not positive on {self.start}..{self.stop}")
        if all(t is None for t in self.terms):
            raise InvalidArc("family of trivial arcs")

    def exponents(self, n: int) -> Tuple[Optional[int], ...]:
        return tuple(None if t is None else t[1] * n + t[2] for t in self.terms)

    def values(self) -> range:
        return range(self.start, self.stop + 1)


def instantiate_family(family: ArcFamily, n: int) -> Arc:
    if not family.start <= n <= family.stop:
        raise ValueError(f"N={n} outside {family.start}..{family.stop}")
    images = []
    for t in family.terms:
        if t is None:
            images.append(FormalSeries.zero())
            continue
        c, a, b = t
        e = a * n + b
        if e < 1:
            raise InvalidArc(f"nonpositive exponent {e} at N={n}")
        images.append(FormalSeries.monomial(e, c))
    return Arc(images)

"""Buchberger's algorithm over Q in graded reverse-lex order."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .errors import VariableMismatch
from .polynomial import (
    Monomial,
    Polynomial,
    grevlex_key,
    mono_div,
    mono_divides,
    mono_lcm,
)

DEFAULT_EXPONENT_CAP = 64


def _lead(terms: Dict[Monomial, Fraction]) -> Monomial:
    return max(terms, key=grevlex_key)


def normal_form(p: Polynomial, basis: Sequence[Polynomial]) -> Polynomial:
    """Fully reduced remainder of ``p`` modulo ``basis``."""
    leads = [(g.leading(), g) for g in basis if not g.is_zero()]
    work = dict(p.items())
    rem: Dict[Monomial, Fraction] = {}
    while work:
        lm = _lead(work)
        lc = work[lm]
        for (glm, glc), g in leads:
            if mono_divides(glm, lm):
                q = mono_div(lm, glm)
                factor = lc / glc
                for m, c in g.items():
                    nm = tuple(a + b for a, b in zip(m, q))
                    v = work.get(nm, 0) - factor * c
                    if v:
                        work[nm] = v
                    else:
                        work.pop(nm, None)
                break
        else:
            rem[lm] = lc
            del work[lm]
    return Polynomial(p.nvars, rem)


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    (fm, fc), (gm, gc) = f.leading(), g.leading()
    lcm = mono_lcm(fm, gm)
    return f.mul_monomial(mono_div(lcm, fm), 1 / fc) - g.mul_monomial(mono_div(lcm, gm), 1 / gc)


@dataclass(frozen=True)
class GroebnerBasis:
    generators: Tuple[Polynomial, ...]
    basis: Tuple[Polynomial, ...]
    order: str = "grevlex"

    def reduce(self, p: Polynomial) -> Polynomial:
        return normal_form(p, self.basis)

    def contains(self, p: Polynomial) -> bool:
        return self.reduce(p).is_zero()

    def leading_monomials(self) -> List[Monomial]:
        return [g.leading()[0] for g in self.basis]

    def is_groebner(self) -> bool:
        """Buchberger criterion: all S-polynomials reduce to zero."""
        return all(
            normal_form(s_polynomial(f, g), self.basis).is_zero()
            for f, g in combinations(self.basis, 2)
        )


def groebner(generators: Sequence[Polynomial]) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``generators``."""
    gens = tuple(generators)
    nonzero = [g.monic() for g in gens if not g.is_zero()]
    if not nonzero:
        return GroebnerBasis(gens, ())
    n = nonzero[0].nvars
    if any(g.nvars != n for g in nonzero):
        raise VariableMismatch("generators live in different polynomial rings")
    basis: List[Polynomial] = []
    for g in nonzero:
        r = normal_form(g, basis)
        if not r.is_zero():
            basis.append(r.monic())
    pairs = [(i, j) for i in range(len(basis)) for j in range(i)]
    while pairs:
        i, j = pairs.pop()
        fm, gm = basis[i].leading()[0], basis[j].leading()[0]
        if all(a == 0 or b == 0 for a, b in zip(fm, gm)):
            # coprime leading monomials: S-polynomial reduces to zero
            continue
        r = normal_form(s_polynomial(basis[i], basis[j]), basis)
        if not r.is_zero():
            basis.append(r.monic())
            k = len(basis) - 1
            pairs.extend((k, m) for m in range(k))
    return GroebnerBasis(gens, _reduce_basis(basis))


def _reduce_basis(basis: List[Polynomial]) -> Tuple[Polynomial, ...]:
    minimal: List[Polynomial] = []
    leads = [g.leading()[0] for g in basis]
    for i, g in enumerate(basis):
        lm = leads[i]
        redundant = any(
            mono_divides(leads[j], lm) and (leads[j] != lm or j < i)
            for j in range(len(basis))
            if j != i
        )
        if not redundant:
            minimal.append(g)
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        reduced.append(normal_form(g, others).monic())
    return tuple(sorted(reduced, key=lambda p: grevlex_key(p.leading()[0])))


@dataclass(frozen=True)
class Isolated:
    """Zero-dimensional: ``v^(a_v)`` lies in the ideal for every variable."""

    q: int
    exponents: Tuple[int, ...]


@dataclass(frozen=True)
class PositiveDimensional:
    axis: int


@dataclass(frozen=True)
class Unknown:
    reason: str


IdealVerdict = Union[Isolated, PositiveDimensional, Unknown]


def axis_in_zero_set(ideal: Sequence[Polynomial], axis: int) -> bool:
    """Whether every generator vanishes identically on the coordinate axis."""
    for p in ideal:
        for m, _ in p.items():
            if all(e == 0 for i, e in enumerate(m) if i != axis):
                return False
    return True


def pure_power_exponent(gb: GroebnerBasis, var: int, nvars: int, cap: int) -> Optional[int]:
    """Least ``a <= cap`` with ``x_var^a`` in the ideal, or None."""
    for a in range(1, cap + 1):
        mono = tuple(a if i == var else 0 for i in range(nvars))
        if gb.contains(Polynomial(nvars, {mono: 1})):
            return a
    return None


def zero_dim_at_origin(
    ideal: Sequence[Polynomial], nvars: Optional[int] = None, cap: int = DEFAULT_EXPONENT_CAP
) -> IdealVerdict:
    ideal = [p for p in ideal if not p.is_zero()]
    if nvars is None:
        if not ideal:
            raise ValueError("cannot infer variable count from an empty ideal")
        nvars = ideal[0].nvars
    for p in ideal:
        if p.constant_term():
            raise ValueError("every generator must vanish at the origin")
    gb = groebner(ideal)
    leads = gb.leading_monomials()
    has_pure = [
        any(m[v] > 0 and all(e == 0 for i, e in enumerate(m) if i != v) for m in leads)
        for v in range(nvars)
    ]
    if all(has_pure):
        exps = []
        for v in range(nvars):
            a = pure_power_exponent(gb, v, nvars, cap)
            if a is None:
                return Unknown(f"no pure power of variable {v} with exponent <= {cap} in the ideal")
            exps.append(a)
        return Isolated(max(exps) if exps else 0, tuple(exps))
    for v in range(nvars):
        if not has_pure[v] and axis_in_zero_set(ideal, v):
            return PositiveDimensional(v)
    return Unknown("positive-dimensional zero set without a coordinate-axis witness")

"""Contact reports, the isolated-point verdict, witness families and sampling."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .arcs import Arc, ArcFamily, Variety, arc_order, instantiate_family, validate_on_variety
from .errors import ElimNotSeparated, NoMonomialSolution, WitnessRejected
from .groebner import DEFAULT_EXPONENT_CAP, Isolated, PositiveDimensional
from .nash import DEFAULT_MAX_STEPS, persistance
from .rees import (
    WeightedAlgebra,
    contact_order,
    diff_closure,
    eliminate_separated,
    isolation_test,
    ord_at_origin,
    sing_contains_axis,
    tau_lower_bound,
)

BLOWUP = "blowup"
ALGEBRAIC = "algebraic"


def closure_of(variety: Variety, weights: Optional[Sequence[Optional[int]]] = None) -> WeightedAlgebra:
    """Differential closure of ``{f_i W^(b_i)}``, ``b_i`` defaulting to the order of ``f_i``."""
    pairs = []
    for k, f in enumerate(variety.polynomials):
        w = weights[k] if weights is not None and weights[k] is not None else f.order_int()
        pairs.append((f, w))
    return diff_closure(WeightedAlgebra.from_pairs(variety.variables, pairs))


@dataclass(frozen=True)
class EliminationCheck:
    """Comparison of the contact order before and after eliminating one variable."""

    variable: str
    r_eliminated: Fraction
    variable_order: Fraction
    holds: bool


@dataclass(frozen=True)
class ContactReport:
    ord_phi: int
    r: Fraction
    r_bar: Fraction
    rho: int
    rho_bar: Fraction
    rho_route: str = BLOWUP
    elimination: Optional[EliminationCheck] = None

    @property
    def dual_oracle_agrees(self) -> bool:
        return self.rho == math.floor(self.r)


def transversal_eliminations(variety: Variety, closure: WeightedAlgebra) -> List[Tuple[int, WeightedAlgebra]]:
    """Single-variable separated eliminations along transversal directions.

    Only hypersurfaces ``f`` of order ``m`` qualify, and only for a variable
    ``v`` such that ``v^m`` occurs in ``f``; the projection along ``v`` is
    then finite, and eliminating ``v`` keeps the contact order of every arc.
    """
    if not variety.is_hypersurface:
        return []
    f = variety.polynomials[0]
    m = f.order_int()
    out = []
    for v in range(variety.nvars):
        pure = tuple(m if i == v else 0 for i in range(variety.nvars))
        if not f.coefficient(pure):
            continue
        try:
            out.append((v, eliminate_separated(closure, [v])))
        except ElimNotSeparated:
            continue
    return out


def contact_report(
    variety: Variety,
    arc: Arc,
    weights: Optional[Sequence[Optional[int]]] = None,
    max_steps: int = DEFAULT_MAX_STEPS,
    closure: Optional[WeightedAlgebra] = None,
    check_elimination: bool = True,
) -> ContactReport:
    validate_on_variety(arc, variety)
    if closure is None:
        closure = closure_of(variety, weights)
    r = contact_order(closure, arc).value
    ord_phi = int(arc_order(arc).value)
    if variety.is_hypersurface:
        rho = persistance(variety.polynomials[0], arc, max_steps)
        route = BLOWUP
    else:
        rho = math.floor(r)
        route = ALGEBRAIC
    elim = None
    if check_elimination:
        for v, reduced in transversal_eliminations(variety, closure)[:1]:
            keep = [i for i in range(variety.nvars) if i != v]
            r_elim = contact_order(reduced, arc.project(keep), allow_infinite=True)
            v_order = arc.images[v].order()
            r_val = r_elim.value if r_elim.is_finite else None
            holds = r_val == r and (v_order.is_infinite or (r_val is not None and v_order.value >= r_val))
            elim = EliminationCheck(
                variety.variables[v],
                r_val,
                v_order.value if v_order.is_finite else None,
                holds,
            )
    return ContactReport(ord_phi, r, r / ord_phi, rho, Fraction(rho, ord_phi), route, elim)


# -- binomial hypersurfaces and monomial arcs --------------------------------


def binomial_terms(variety: Variety):
    """``((M1, c1), (M2, c2))`` for a two-term hypersurface, else None."""
    if not variety.is_hypersurface:
        return None
    f = variety.polynomials[0]
    if len(f) != 2:
        return None
    return tuple(f.sorted_terms())


def _rational_root(value: Fraction, k: int) -> Optional[Fraction]:
    """Exact ``k``-th root in Q, or None."""
    if k == 0:
        return Fraction(1) if value == 1 else None
    if k < 0:
        if not value:
            return None
        return _rational_root(1 / value, -k)
    if value < 0 and k % 2 == 0:
        return None
    sign = -1 if value < 0 else 1
    num, den = abs(value.numerator), value.denominator
    rn, rd = _iroot(num, k), _iroot(den, k)
    if rn is None or rd is None:
        return None
    return sign * Fraction(rn, rd)


def _iroot(n: int, k: int) -> Optional[int]:
    if n in (0, 1):
        return n
    r = round(n ** (1.0 / k))
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand ** k == n:
            return cand
    lo, hi = 0, n
    while lo <= hi:
        mid = (lo + hi) // 2
        p = mid ** k
        if p == n:
            return mid
        if p < n:
            lo = mid + 1
        else:
            hi = mid - 1
    return None


def monomial_coefficients(variety: Variety, candidates: Sequence[int]) -> Optional[List[Fraction]]:
    """Coefficients making a monomial arc with balanced exponents lie on the binomial.

    All coefficients are 1 except possibly one, chosen among ``candidates``.
    """
    terms = binomial_terms(variety)
    (m1, c1), (m2, c2) = terms
    coefs = [Fraction(1)] * variety.nvars
    if c1 + c2 == 0:
        return coefs
    for v in candidates:
        d = m1[v] - m2[v]
        if d == 0:
            continue
        gamma = _rational_root(-c2 / c1, d)
        if gamma is not None and gamma != 0:
            coefs[v] = gamma
            return coefs
    return None


def _lex_solution(weights: Sequence[int], target: int, minimum: int, cap: int) -> Optional[List[int]]:
    """Lexicographically least ``u`` with ``sum w_i u_i = target`` and ``minimum <= u_i <= cap``."""
    if not weights:
        return [] if target == 0 else None
    w, rest = weights[0], weights[1:]
    for u in range(minimum, cap + 1):
        remaining = target - w * u
        if remaining < minimum * sum(rest):
            break
        tail = _lex_solution(rest, remaining, minimum, cap)
        if tail is not None:
            return [u] + tail
    return None


def synthesize_family(
    variety: Variety,
    axis: int,
    start: int = 1,
    stop: int = 10,
    param_exponents: Optional[Dict[int, Tuple[int, int]]] = None,
    cap: int = DEFAULT_EXPONENT_CAP,
) -> ArcFamily:
    """Monomial arc family on a binomial hypersurface, moving off the axis.

    The axis variable maps to ``t``.  Variables on the axis's side of the
    exponent balance get exponents ``p*N + q`` (``param_exponents``,
    default ``N + 1``); the variables on the other side are solved from the
    balance as lexicographically least linear forms ``u*N + c`` with
    ``u >= 1``.
    """
    terms = binomial_terms(variety)
    if terms is None:
        raise NoMonomialSolution("automatic synthesis needs a two-term hypersurface")
    (m1, _), (m2, _) = terms
    n = variety.nvars
    d = [a - b for a, b in zip(m1, m2)]
    side = 1 if d[axis] >= 0 else -1
    param_exponents = dict(param_exponents or {})
    params = [v for v in range(n) if v != axis and (d[v] * side > 0 or d[v] == 0)]
    solved = [v for v in range(n) if v != axis and d[v] * side < 0]
    if not solved:
        raise NoMonomialSolution("no variable on the opposite side of the exponent balance")
    for v in param_exponents:
        if v not in params:
            raise NoMonomialSolution(f"variable {variety.variables[v]} is determined by the balance")
    slope_total = sum(abs(d[v]) * param_exponents.get(v, (1, 1))[0] for v in params)
    const_total = abs(d[axis]) + sum(abs(d[v]) * param_exponents.get(v, (1, 1))[1] for v in params)
    w = [abs(d[v]) for v in solved]
    slopes = _lex_solution(w, slope_total, 1, cap)
    consts = _lex_solution(w, const_total, 0, cap)
    if slopes is None or consts is None:
        raise NoMonomialSolution("exponent balance has no solution within the cap")
    coefs = monomial_coefficients(variety, solved + params)
    if coefs is None:
        raise NoMonomialSolution("no rational coefficient balances the binomial")
    fam: List[Optional[Tuple[Fraction, int, int]]] = [None] * n
    fam[axis] = (coefs[axis], 0, 1)
    for v in params:
        p, q = param_exponents.get(v, (1, 1))
        fam[v] = (coefs[v], p, q)
    for v, u, c in zip(solved, slopes, consts):
        fam[v] = (coefs[v], u, c)
    return ArcFamily(tuple(fam), start, stop)


def family_search(
    variety: Variety,
    axis: int,
    start: int = 1,
    stop: int = 10,
    param_exponents: Optional[Dict[int, Tuple[int, int]]] = None,
    cap: int = DEFAULT_EXPONENT_CAP,
    family: Optional[ArcFamily] = None,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> List[Tuple[int, Arc, ContactReport]]:
    """Reports for a family of arcs moving off an axis of the singular locus."""
    closure = closure_of(variety)
    if not sing_contains_axis(closure, axis):
        raise WitnessRejected(
            f"the {variety.variables[axis]}-axis is not contained in the singular locus"
        )
    if family is None:
        family = synthesize_family(variety, axis, start, stop, param_exponents, cap)
    out = []
    for n in family.values():
        arc = instantiate_family(family, n)
        out.append((n, arc, contact_report(variety, arc, closure=closure, max_steps=max_steps)))
    return out


def strictly_increasing(values: Sequence[Fraction]) -> bool:
    return all(a < b for a, b in zip(values, values[1:]))


@dataclass
class PhiSample:
    entries: List[Tuple[str, Fraction]] = field(default_factory=list)
    cap: Optional[int] = None
    bound: Optional[int] = None
    violations: List[Tuple[str, Fraction]] = field(default_factory=list)

    @property
    def max_observed(self) -> Optional[Fraction]:
        return max((r for _, r in self.entries), default=None)

    @property
    def min_observed(self) -> Optional[Fraction]:
        return min((r for _, r in self.entries), default=None)


def monomial_arcs(variety: Variety, cap: int) -> List[Tuple[Tuple[int, ...], Arc]]:
    """Monomial arcs with exponents in ``1..cap`` lying on a binomial hypersurface."""
    terms = binomial_terms(variety)
    if terms is None:
        raise NoMonomialSolution("monomial enumeration needs a two-term hypersurface")
    (m1, _), (m2, _) = terms
    d = [a - b for a, b in zip(m1, m2)]
    coefs = monomial_coefficients(variety, range(variety.nvars))
    if coefs is None:
        return []
    out = []
    for exps in product(range(1, cap + 1), repeat=variety.nvars):
        if sum(a * b for a, b in zip(d, exps)) == 0:
            out.append((exps, Arc.monomial(exps, coefs)))
    return out


def normalized_contact(closure: WeightedAlgebra, arc: Arc) -> Fraction:
    return contact_order(closure, arc).value / arc_order(arc).value


def phi_sample(
    variety: Variety,
    cap: int = 12,
    count_cap: Optional[int] = None,
    arcs: Optional[Sequence[Tuple[str, Arc]]] = None,
    bound: Optional[int] = None,
) -> PhiSample:
    """Normalized contact orders over a finite set of arcs."""
    closure = closure_of(variety)
    if arcs is None:
        arcs = [("(" + ",".join(map(str, e)) + ")", a) for e, a in monomial_arcs(variety, cap)]
    else:
        for _, a in arcs:
            validate_on_variety(a, variety)
    if count_cap is not None:
        arcs = list(arcs)[:count_cap]
    sample = PhiSample(cap=cap, bound=bound)
    for desc, arc in arcs:
        rb = normalized_contact(closure, arc)
        sample.entries.append((desc, rb))
        if rb < 1 or (bound is not None and rb > bound):
            sample.violations.append((desc, rb))
    return sample


# -- the isolated-point verdict ----------------------------------------------


@dataclass(frozen=True)
class IsolatedResult:
    q: int
    exponents: Dict[str, int]
    sample: Optional[PhiSample] = None


@dataclass(frozen=True)
class NotIsolatedResult:
    axis: str
    table: List[Tuple[int, Fraction]]
    family: Optional[ArcFamily] = None


@dataclass(frozen=True)
class UnknownResult:
    reason: str


IsolatedVerdict = Union[IsolatedResult, NotIsolatedResult, UnknownResult]


def isolated_verdict(
    variety: Variety,
    cap: int = DEFAULT_EXPONENT_CAP,
    sample_cap: int = 8,
    family_range: Tuple[int, int] = (1, 10),
    family: Optional[ArcFamily] = None,
) -> IsolatedVerdict:
    """Decide whether the origin is isolated in the maximum multiplicity locus."""
    if max(f.order_int() for f in variety.polynomials) <= 1:
        return UnknownResult("origin not in Max mult of a singular variety")
    closure = closure_of(variety)
    verdict = isolation_test(closure, cap)
    if isinstance(verdict, Isolated):
        exps = dict(zip(variety.variables, verdict.exponents))
        sample = None
        if binomial_terms(variety) is not None and sample_cap:
            sample = phi_sample(variety, sample_cap, bound=verdict.q)
        return IsolatedResult(verdict.q, exps, sample)
    if isinstance(verdict, PositiveDimensional):
        axis = verdict.axis
        if not sing_contains_axis(closure, axis):
            return UnknownResult("axis of the weight-one zero set is not singular for the full algebra")
        try:
            rows = family_search(variety, axis, *family_range, family=family)
        except NoMonomialSolution:
            return NotIsolatedResult(variety.variables[axis], [], family)
        table = [(n, rep.r_bar) for n, _, rep in rows]
        if family is None:
            family = synthesize_family(variety, axis, *family_range)
        if not strictly_increasing([rb for _, rb in table]):
            return UnknownResult("witness family does not have strictly growing normalized contact")
        return NotIsolatedResult(variety.variables[axis], table, family)
    return UnknownResult(verdict.reason)


def sharpness_bound(variety: Variety) -> Optional[Fraction]:
    """``ord(G^(1))`` when tau reaches n-1 and elimination to one variable is separated."""
    closure = closure_of(variety)
    n = variety.nvars
    if tau_lower_bound(closure) != n - 1:
        return None
    bare = []
    for gen in closure.generators:
        if gen.weight == 1 and gen.poly.is_monomial() and gen.poly.order_int() == 1:
            (mono, _), = gen.poly.items()
            bare.append(mono.index(1))
    bare = sorted(set(bare))
    if len(bare) != n - 1:
        return None
    try:
        reduced = eliminate_separated(closure, bare)
    except ElimNotSeparated:
        return None
    return ord_at_origin(reduced).value

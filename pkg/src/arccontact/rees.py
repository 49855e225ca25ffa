"""Weighted (Rees) algebras given by finitely many generators ``f W^b``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .arcs import Arc, substitute
from .errors import ArcInMaxMult, ElimNotSeparated, VariableMismatch
from .groebner import DEFAULT_EXPONENT_CAP, IdealVerdict, zero_dim_at_origin
from .order import Order, min_order
from .polynomial import Monomial, Polynomial, grevlex_key, mono_divides, multi_indices


@dataclass(frozen=True)
class WeightedGenerator:
    poly: Polynomial
    weight: int

    def __post_init__(self):
        if self.poly.is_zero():
            raise ValueError("generator polynomial must be nonzero")
        if self.weight < 1:
            raise ValueError("generator weight must be positive")

    def normalized(self) -> "WeightedGenerator":
        return WeightedGenerator(self.poly.monic(), self.weight)

    def order(self) -> Order:
        return self.poly.order() / self.weight

    def to_str(self, names: Sequence[str]) -> str:
        body = self.poly.to_str(names)
        if len(self.poly) > 1:
            body = f"({body})"
        w = "W" if self.weight == 1 else f"W^{self.weight}"
        return f"{body}*{w}"


def _canonical_key(g: WeightedGenerator):
    return (g.weight, [(grevlex_key(m), c) for m, c in g.poly.sorted_terms()])


class WeightedAlgebra:
    """Algebra generated over the polynomial ring by weighted generators.

    Generators are stored normalized (monic, graded reverse-lex leading
    coefficient 1), deduplicated and canonically ordered by weight.
    """

    __slots__ = ("variables", "generators", "closed")

    def __init__(
        self,
        variables: Sequence[str],
        generators: Iterable[WeightedGenerator],
        closed: bool = False,
    ):
        self.variables = tuple(variables)
        seen = set()
        gens = []
        for g in generators:
            if g.poly.nvars != len(self.variables):
                raise VariableMismatch(
                    f"generator has {g.poly.nvars} variables, algebra has {len(self.variables)}"
                )
            g = g.normalized()
            key = (g.poly, g.weight)
            if key not in seen:
                seen.add(key)
                gens.append(g)
        if not gens:
            raise ValueError("an algebra needs at least one generator")
        self.generators = tuple(sorted(gens, key=_canonical_key))
        self.closed = closed

    @classmethod
    def from_pairs(cls, variables: Sequence[str], pairs: Iterable[Tuple[Polynomial, int]]):
        return cls(variables, (WeightedGenerator(p, w) for p, w in pairs))

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def generator_set(self) -> frozenset:
        return frozenset((g.poly, g.weight) for g in self.generators)

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightedAlgebra):
            return NotImplemented
        return self.variables == other.variables and self.generator_set() == other.generator_set()

    def __hash__(self) -> int:
        return hash((self.variables, self.generator_set()))

    def __len__(self) -> int:
        return len(self.generators)

    def to_str(self) -> str:
        return "{" + ", ".join(g.to_str(self.variables) for g in self.generators) + "}"

    def __repr__(self) -> str:
        return f"WeightedAlgebra({self.to_str()})"


def join(g: WeightedAlgebra, h: WeightedAlgebra) -> WeightedAlgebra:
    """Smallest algebra containing both."""
    if g.variables != h.variables:
        raise VariableMismatch(f"cannot join algebras over {g.variables} and {h.variables}")
    return WeightedAlgebra(g.variables, g.generators + h.generators)


def _saturate(generators: Iterable[WeightedGenerator]) -> List[WeightedGenerator]:
    out: Dict[Tuple[Polynomial, int], WeightedGenerator] = {}
    for gen in generators:
        n = gen.poly.nvars
        for total in range(gen.weight):
            for alpha in multi_indices(n, total):
                d = gen.poly
                for i, k in enumerate(alpha):
                    if k:
                        d = d.derivative(i, k)
                        if d.is_zero():
                            break
                if d.is_zero():
                    continue
                cand = WeightedGenerator(d.monic(), gen.weight - total)
                out.setdefault((cand.poly, cand.weight), cand)
    return list(out.values())


def _prune_products(gens: List[WeightedGenerator]) -> List[WeightedGenerator]:
    # generators that factor as (kept generator) * (kept generator) with
    # matching weights never realize a minimum order; drop them
    kept: List[WeightedGenerator] = []
    by_weight: Dict[int, List[WeightedGenerator]] = {}
    for g in sorted(gens, key=_canonical_key):
        redundant = False
        for wa in range(1, g.weight // 2 + 1):
            wb = g.weight - wa
            for a in by_weight.get(wa, ()):
                if not mono_divides(a.poly.leading()[0], g.poly.leading()[0]):
                    continue
                for b in by_weight.get(wb, ()):
                    if a.poly * b.poly == g.poly:
                        redundant = True
                        break
                if redundant:
                    break
            if redundant:
                break
        if not redundant:
            kept.append(g)
            by_weight.setdefault(g.weight, []).append(g)
    return kept


def diff_closure(g: WeightedAlgebra) -> WeightedAlgebra:
    """Saturate under partial derivatives: ``D^a f W^(b-|a|)`` for ``|a| < b``."""
    gens = _prune_products(_saturate(g.generators))
    return WeightedAlgebra(g.variables, gens, closed=True)


def ord_at_origin(g: WeightedAlgebra) -> Order:
    return min_order(gen.order() for gen in g.generators)


def contact_order(g: WeightedAlgebra, arc: Arc, allow_infinite: bool = False) -> Order:
    """Order of the image of the algebra along the arc.

    Raises :class:`ArcInMaxMult` when every generator pulls back to zero,
    unless ``allow_infinite`` is set, in which case infinity is returned.
    """
    if arc.nvars != g.nvars:
        raise VariableMismatch(f"arc has {arc.nvars} coordinates, algebra has {g.nvars}")
    orders = [substitute(gen.poly, arc).order() / gen.weight for gen in g.generators]
    result = min_order(orders)
    if result.is_infinite and not allow_infinite:
        raise ArcInMaxMult("every generator vanishes identically along the arc")
    return result


def sing_contains_axis(g: WeightedAlgebra, axis: int) -> bool:
    """Whether the coordinate axis ``axis`` lies in the singular locus."""
    if not 0 <= axis < g.nvars:
        raise IndexError(f"axis {axis} out of range")
    for gen in g.generators:
        for mono, _ in gen.poly.items():
            if sum(mono) - mono[axis] < gen.weight:
                return False
    return True


def _bare_variable(gen: WeightedGenerator) -> Optional[int]:
    if gen.weight != 1 or not gen.poly.is_monomial():
        return None
    (mono, _), = gen.poly.items()
    if sum(mono) != 1:
        return None
    return mono.index(1)


def _monomial_in_algebra(mono: Monomial, weight: int, gens: Sequence[Tuple[Monomial, int]]) -> bool:
    """Is ``x^mono W^weight`` a multiple of a product of monomial generators?"""

    @lru_cache(maxsize=None)
    def search(m: Monomial, w: int, start: int) -> bool:
        if w == 0:
            return True
        for k in range(start, len(gens)):
            gm, gw = gens[k]
            if gw <= w and mono_divides(gm, m):
                rest = tuple(a - b for a, b in zip(m, gm))
                if search(rest, w - gw, k):
                    return True
        return False

    return search(tuple(mono), weight, 0)


def eliminate_separated(g: WeightedAlgebra, drop: Iterable) -> WeightedAlgebra:
    """Eliminate variables that enter only through bare ``x W`` generators.

    ``drop`` holds variable indices or names.  The result lives over the
    remaining variables.  Each generator ``h W^c`` touching a dropped
    variable must split as (part expressible from the bare generators and
    retained monomial generators) + (part free of dropped variables); the
    free part becomes a generator of the result.
    """
    drop_idx = set()
    for v in drop:
        drop_idx.add(g.variables.index(v) if isinstance(v, str) else int(v))
    keep = [i for i in range(g.nvars) if i not in drop_idx]
    bare = {_bare_variable(gen) for gen in g.generators} - {None}
    for v in sorted(drop_idx):
        if v not in bare:
            raise ElimNotSeparated(
                f"no bare generator {g.variables[v]}*W for dropped variable {g.variables[v]}"
            )
    retained = [gen for gen in g.generators if not (gen.poly.support() & drop_idx)]
    monomial_gens = tuple(
        (next(iter(gen.poly.items()))[0], gen.weight)
        for gen in retained
        if gen.poly.is_monomial()
    )
    produced: List[WeightedGenerator] = list(retained)
    for gen in g.generators:
        if not (gen.poly.support() & drop_idx):
            continue
        if _bare_variable(gen) in drop_idx:
            continue
        free: Dict[Monomial, Fraction] = {}
        for mono, c in gen.poly.items():
            e = sum(mono[i] for i in drop_idx)
            if e == 0:
                free[mono] = c
                continue
            if e >= gen.weight:
                continue
            kept_part = tuple(0 if i in drop_idx else x for i, x in enumerate(mono))
            if not _monomial_in_algebra(kept_part, gen.weight - e, monomial_gens):
                raise ElimNotSeparated(
                    f"generator {gen.to_str(g.variables)} mixes dropped and kept variables",
                    generator=gen,
                )
        if free:
            produced.append(WeightedGenerator(Polynomial(g.nvars, free), gen.weight))
    if not produced:
        raise ElimNotSeparated("nothing survives elimination")
    names = [g.variables[i] for i in keep]
    out = []
    for gen in produced:
        terms = {tuple(m[i] for i in keep): c for m, c in gen.poly.items()}
        out.append(WeightedGenerator(Polynomial(len(keep), terms), gen.weight))
    return WeightedAlgebra(names, out)


def weight1_ideal(g: WeightedAlgebra) -> List[Polynomial]:
    if not g.closed:
        raise ValueError("the weight-one ideal is only meaningful for a closed algebra")
    return [gen.poly for gen in g.generators if gen.weight == 1]


def isolation_test(g: WeightedAlgebra, cap: int = DEFAULT_EXPONENT_CAP) -> IdealVerdict:
    """Zero-dimensionality of the weight-one ideal at the origin."""
    return zero_dim_at_origin(weight1_ideal(g), g.nvars, cap)


def _rank(rows: List[List[Fraction]]) -> int:
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        p = rows[rank][col]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col] / p
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def tau_lower_bound(g: WeightedAlgebra) -> int:
    """Rank of the linear parts of order-one weight-one generators."""
    rows = []
    for gen in g.generators:
        if gen.weight != 1 or gen.poly.order_int() != 1:
            continue
        lin = gen.poly.homogeneous_part(1)
        rows.append([lin.coefficient(tuple(1 if j == i else 0 for j in range(g.nvars))) for i in range(g.nvars)])
    return _rank(rows) if rows else 0

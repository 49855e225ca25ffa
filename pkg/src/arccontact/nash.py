"""Nash multiplicity sequence of an arc on a hypersurface.

The arc's graph lives in ``X x A^1``; each step blows up the point picked by
the current lift of the graph, in the affine chart of a coordinate of
minimal t-order, and records the multiplicity of the strict transform at the
new point.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from .arcs import Arc, graph, substitute, validate_on_variety, Variety
from .errors import ArcInMaxMult, MaxStepsExceeded, NonExactStrictTransform
from .order import min_order
from .polynomial import Polynomial, multi_indices
from .series import FormalSeries

log = logging.getLogger(__name__)

DEFAULT_MAX_STEPS = 256

FIRST_DROP = "FirstDrop"
MAX_STEPS = "MaxSteps"
SMOOTH = "Smooth"


@dataclass(frozen=True)
class BlowupStep:
    chart: int
    center: Tuple[Fraction, ...]
    strict_transform: Polynomial
    arc: Arc
    multiplicity: int


@dataclass
class NashTrace:
    m: List[int]
    steps: List[BlowupStep] = field(default_factory=list)
    terminated: str = MAX_STEPS

    @property
    def persistance(self) -> Optional[int]:
        for i, mi in enumerate(self.m):
            if mi < self.m[0]:
                return i
        return None


def minimal_charts(arc: Arc) -> List[int]:
    """Coordinates whose image has the least t-order."""
    orders = [s.order() for s in arc.images]
    least = min_order(orders)
    return [i for i, o in enumerate(orders) if o == least]


def blowup_step(
    f: Polynomial, arc: Arc, chart: Optional[int] = None, precision: Optional[int] = None
) -> BlowupStep:
    """Blow up the origin, follow the arc, recentre at the new point.

    ``f`` must vanish at the origin and the arc must lie on ``V(f)``.  With
    ``chart=None`` the lowest-index coordinate of minimal order is used.
    """
    admissible = minimal_charts(arc)
    if chart is None:
        chart = admissible[0]
    elif chart not in admissible:
        raise ValueError(f"chart {chart} is not of minimal order along the arc")
    n = f.nvars
    m = f.order_int()
    xi = Polynomial.var(n, chart)
    images = [xi if j == chart else xi * Polynomial.var(n, j) for j in range(n)]
    pulled = f.compose(images)
    strict = pulled.divide_by_variable_power(chart, m)
    exceptional = tuple(m if j == chart else 0 for j in range(n))
    if strict.mul_monomial(exceptional) != pulled:
        raise NonExactStrictTransform("f does not factor as x^m times its strict transform")

    lead = arc.images[chart]
    lifted = [lead if j == chart else s.divide(lead, precision) for j, s in enumerate(arc.images)]
    center = tuple(s.constant_term() for s in lifted)
    moved = [s - FormalSeries({0: c}) if c else s for s, c in zip(lifted, center)]
    strict = strict.translate(center)
    new_arc = Arc(moved)
    return BlowupStep(chart, center, strict, new_arc, strict.order_int())


def _in_max_mult(f: Polynomial, arc: Arc, m0: int) -> bool:
    # every derivative of order < m0 vanishes identically along the arc
    for total in range(m0):
        for alpha in multi_indices(f.nvars, total):
            d = f
            for i, k in enumerate(alpha):
                if k:
                    d = d.derivative(i, k)
            if d.is_zero():
                continue
            if not substitute(d, arc).is_zero():
                return False
    return True


def nash_sequence(
    f: Polynomial,
    arc: Arc,
    max_steps: int = DEFAULT_MAX_STEPS,
    full: bool = False,
    precision: Optional[int] = None,
) -> NashTrace:
    """Multiplicities ``m_0 >= m_1 >= ...`` along the arc.

    Stops at the first drop below ``m_0`` (or, with ``full``, once the
    multiplicity reaches 1), or after ``max_steps`` blowups.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be positive")
    names = tuple(f"x{i}" for i in range(f.nvars))
    validate_on_variety(arc, Variety(names, (f,)))
    m0 = f.order_int()
    trace = NashTrace([m0])
    if m0 == 1:
        trace.terminated = SMOOTH
        return trace
    if arc.exact and _in_max_mult(f, arc, m0):
        raise ArcInMaxMult("the arc lies in the maximum multiplicity locus; the sequence never drops")

    current_f = f.extend(1)
    current_arc = graph(arc)
    for _ in range(max_steps):
        step = blowup_step(current_f, current_arc, precision=precision)
        trace.steps.append(step)
        trace.m.append(step.multiplicity)
        log.debug("step %d: chart %d, m=%d", len(trace.steps), step.chart, step.multiplicity)
        current_f, current_arc = step.strict_transform, step.arc
        if step.multiplicity < m0 and not full:
            trace.terminated = FIRST_DROP
            return trace
        if step.multiplicity == 1:
            trace.terminated = SMOOTH if full else FIRST_DROP
            return trace
    trace.terminated = MAX_STEPS
    return trace


def persistance(f: Polynomial, arc: Arc, max_steps: int = DEFAULT_MAX_STEPS) -> int:
    """Number of blowups until the multiplicity first drops."""
    if f.order_int() == 1:
        raise ArcInMaxMult("smooth point: the multiplicity never drops below 1")
    trace = nash_sequence(f, arc, max_steps)
    if trace.terminated != FIRST_DROP:
        raise MaxStepsExceeded(f"no drop within {max_steps} blowups", trace=trace)
    return len(trace.m) - 1

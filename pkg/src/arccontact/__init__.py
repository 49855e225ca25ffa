"""Exact arc-contact invariants for hypersurface singularities."""

from .arcs import Arc, ArcFamily, Variety, arc_order, graph, instantiate_family, substitute, validate_on_variety
from .errors import ArcContactError, DomainError
from .groebner import Isolated, PositiveDimensional, Unknown, groebner, zero_dim_at_origin
from .invariants import (
    closure_of,
    contact_report,
    family_search,
    isolated_verdict,
    phi_sample,
    sharpness_bound,
)
from .nash import nash_sequence, persistance
from .order import INFINITY, Order
from .polynomial import Polynomial, variables
from .rees import (
    WeightedAlgebra,
    WeightedGenerator,
    contact_order,
    diff_closure,
    eliminate_separated,
    isolation_test,
    join,
    ord_at_origin,
    sing_contains_axis,
    tau_lower_bound,
    weight1_ideal,
)
from .scenario import Scenario, parse_scenario
from .series import FormalSeries

__version__ = "0.1.0"

__all__ = [
    "Arc", "ArcFamily", "Variety", "arc_order", "graph", "instantiate_family", "substitute",
    "validate_on_variety", "ArcContactError", "DomainError", "Isolated", "PositiveDimensional",
    "Unknown", "groebner", "zero_dim_at_origin", "closure_of", "contact_report", "family_search",
    "isolated_verdict", "phi_sample", "sharpness_bound", "nash_sequence", "persistance",
    "INFINITY", "Order", "Polynomial", "variables", "WeightedAlgebra", "WeightedGenerator",
    "contact_order", "diff_closure", "eliminate_separated", "isolation_test", "join",
    "ord_at_origin", "sing_contains_axis", "tau_lower_bound", "weight1_ideal", "Scenario",
    "parse_scenario", "FormalSeries",
]

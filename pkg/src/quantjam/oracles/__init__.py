"""Independent numerical verifiers for the closed-form bounds."""

from .projection import ProjectionReport, projection_equivalence_check
from .quadrature import graded_edges, romberg_panels
from .scalar import (
    ScalarChannel,
    ScalarQuantizer,
    boundary_distance,
    conditional_flip_probability,
    flip_probability_numeric,
    flip_probability_search,
    quantize,
    scalar_conditional_mi_numeric,
    spread_bound_numeric,
)
from .tiny import (
    MonteCarloEstimate,
    TinySystem,
    default_boundaries,
    qpsk_symbols,
    tiny_system_mi_exact,
    tiny_system_mi_mc,
)

__all__ = [
    "MonteCarloEstimate",
    "ProjectionReport",
    "ScalarChannel",
    "ScalarQuantizer",
    "TinySystem",
    "boundary_distance",
    "conditional_flip_probability",
    "default_boundaries",
    "flip_probability_numeric",
    "flip_probability_search",
    "graded_edges",
    "projection_equivalence_check",
    "qpsk_symbols",
    "quantize",
    "romberg_panels",
    "scalar_conditional_mi_numeric",
    "spread_bound_numeric",
    "tiny_system_mi_exact",
    "tiny_system_mi_mc",
]

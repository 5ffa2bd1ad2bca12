"""Conflict cliques of resource allocation intervals, and what to do with them.

Detects groups of pairwise-overlapping allocation time intervals (conflict
cliques) per resource with a sorted event sweep, handles periodic resources
by splitting wrapping arcs at the period boundary, cross-checks results
against exhaustive brute force, and exports stable-set ILP constraint
systems in pairwise or clique form.
"""

from .circular import (
    ArcPiece,
    ArcSegment,
    find_conflict_cliques_circular,
    find_missed_cliques,
    split_wrapping,
)
from .oracle import (
    InstanceTooLargeError,
    IntersectionGraph,
    build_graph,
    enumerate_maximal_cliques,
    enumerate_stable_sets,
    intervals_conflict,
    max_stable_set_size,
    min_edge_clique_cover_size,
)
from .polytope import (
    ConstraintSystem,
    FeasibilityReport,
    LabelingError,
    LinearConstraint,
    OddCycleWitness,
    Variable,
    WitnessPreconditionError,
    check_point,
    emit_clique_constraints,
    emit_stab1,
    half_vector_witness,
    resource_clique_system,
)
from .schema import (
    AllocationInterval,
    ConflictClique,
    ResourceSchema,
    TimeSyntaxError,
    ValidationError,
    Violation,
    as_time,
    format_time,
    is_active,
    parse_time,
    reduce_periodic_endpoints,
    validate_schema,
)
from .sweep import (
    Event,
    available_kernels,
    build_event_list,
    clique_window,
    default_kernel,
    find_conflict_cliques,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # schema
    "AllocationInterval",
    "ResourceSchema",
    "ConflictClique",
    "Violation",
    "ValidationError",
    "TimeSyntaxError",
    "parse_time",
    "as_time",
    "format_time",
    "is_active",
    "reduce_periodic_endpoints",
    "validate_schema",
    # sweep
    "Event",
    "available_kernels",
    "default_kernel",
    "build_event_list",
    "find_conflict_cliques",
    "clique_window",
    # circular
    "ArcPiece",
    "ArcSegment",
    "split_wrapping",
    "find_conflict_cliques_circular",
    "find_missed_cliques",
    # oracle
    "IntersectionGraph",
    "InstanceTooLargeError",
    "intervals_conflict",
    "build_graph",
    "enumerate_maximal_cliques",
    "min_edge_clique_cover_size",
    "enumerate_stable_sets",
    "max_stable_set_size",
    # polytope
    "Variable",
    "LinearConstraint",
    "ConstraintSystem",
    "LabelingError",
    "WitnessPreconditionError",
    "FeasibilityReport",
    "OddCycleWitness",
    "emit_stab1",
    "emit_clique_constraints",
    "resource_clique_system",
    "check_point",
    "half_vector_witness",
]

"""Structural actuator security index of structured LTI systems."""

from ._core import (
    AttackGraph,
    SecidxError,
    StructuredSystem,
    all_indices,
    build_attack_graph,
    export_dot,
    find_max_linking,
    generic_normal_rank,
    index_report,
    is_generically_left_invertible,
    max_linking_size,
    numeric_security_index,
    sample_realization,
    saturated_by_all_max_linkings,
    security_index,
    validate_assumptions,
)

__all__ = [
    "AttackGraph",
    "SecidxError",
    "StructuredSystem",
    "all_indices",
    "build_attack_graph",
    "export_dot",
    "find_max_linking",
    "generic_normal_rank",
    "index_report",
    "is_generically_left_invertible",
    "max_linking_size",
    "numeric_security_index",
    "sample_realization",
    "saturated_by_all_max_linkings",
    "security_index",
    "validate_assumptions",
]

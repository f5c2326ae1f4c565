"""Restricted preference domains: recognition, forbidden configurations,
deletion distances and degeneracy statistics."""

from .configurations import (
    KINDS,
    ForbiddenConfigurationWitness,
    check_witness,
    find_configuration,
)
from .deletion import (
    DOMAINS,
    FORBIDDEN,
    MODES,
    DeletionResult,
    deletion_distance,
    recognize,
    residual_election,
)
from .recognize import (
    CertificateError,
    detect_group_separable,
    detect_single_crossing,
    detect_single_peaked,
    is_group_separable_tree,
    is_single_crossing_order,
    is_single_peaked_axis,
    tree_leaves,
)
from .stats import (
    axis_statistics,
    changing_pairs_fraction,
    domain_report,
    election_row,
    summarize_rows,
    venn_regions,
    within_counts,
)

__all__ = [
    "KINDS",
    "DOMAINS",
    "FORBIDDEN",
    "MODES",
    "CertificateError",
    "DeletionResult",
    "ForbiddenConfigurationWitness",
    "axis_statistics",
    "changing_pairs_fraction",
    "check_witness",
    "deletion_distance",
    "detect_group_separable",
    "detect_single_crossing",
    "detect_single_peaked",
    "domain_report",
    "election_row",
    "find_configuration",
    "is_group_separable_tree",
    "is_single_crossing_order",
    "is_single_peaked_axis",
    "recognize",
    "residual_election",
    "summarize_rows",
    "tree_leaves",
    "venn_regions",
    "within_counts",
]

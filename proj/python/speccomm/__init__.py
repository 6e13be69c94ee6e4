"""Spectral community detection under block models."""

from ._speccomm import (
    CommunityAssignment,
    ErrorReport,
    KEstimate,
    default_threshold,
    delta_sweep,
    detect,
    eig_sym,
    estimate_k,
    generate,
    population,
    read_edge_list,
    relative_error_rate,
    sample_membership,
    theta_constant,
    theta_power,
    theta_uniform,
)

__all__ = [
    "CommunityAssignment",
    "ErrorReport",
    "KEstimate",
    "default_threshold",
    "delta_sweep",
    "detect",
    "eig_sym",
    "estimate_k",
    "generate",
    "population",
    "read_edge_list",
    "relative_error_rate",
    "sample_membership",
    "theta_constant",
    "theta_power",
    "theta_uniform",
]

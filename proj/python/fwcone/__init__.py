"""Factor-width cones: membership tests, dual certificates, fixtures."""

from ._core import (
    EigenNotConverged,
    cos_ray,
    dual_membership,
    eigenvalues,
    example_fixtures,
    fw_membership,
    is_psd,
    pna_matrix,
    pna_threshold,
)

__all__ = [
    "EigenNotConverged",
    "cos_ray",
    "dual_membership",
    "eigenvalues",
    "example_fixtures",
    "fw_membership",
    "is_psd",
    "pna_matrix",
    "pna_threshold",
]

"""Exact membership, certificates and cells for primitive extended tubes in 2D space-time."""

from __future__ import annotations

__version__ = "0.1.0"

from .exact import (  # noqa: E402
    DiffConfig,
    GaussianRational,
    LightConeVector,
    PointConfig,
    lorentz_scale,
    minkowski_square,
    to_diffs,
)
from .tube import (  # noqa: E402
    MembershipCertificate,
    in_extended_tube,
    in_forward_tube,
    is_jost_point,
    two_point_invariant_image,
    verify_certificate,
)

__all__ = [
    "DiffConfig", "GaussianRational", "LightConeVector", "PointConfig", "lorentz_scale",
    "minkowski_square", "to_diffs", "MembershipCertificate", "in_extended_tube",
    "in_forward_tube", "is_jost_point", "two_point_invariant_image", "verify_certificate",
]

"""Workspace topology of orthogonal 3R positioners (C++ core)."""

from ._orthotopo import (
    Classification,
    DomainError,
    Geometry,
    WorkspaceTopology,
    aspect_count,
    classify,
    count_features,
    forward_kinematics,
    inverse_kinematics,
    jacobian_det,
    surface_value,
    sweep,
    verify,
)

__all__ = [
    "Classification",
    "DomainError",
    "Geometry",
    "WorkspaceTopology",
    "aspect_count",
    "classify",
    "count_features",
    "forward_kinematics",
    "inverse_kinematics",
    "jacobian_det",
    "surface_value",
    "sweep",
    "verify",
]

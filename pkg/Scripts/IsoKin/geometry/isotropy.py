"""
Isotropic sets of points.

Construction of trivial isotropic sets (regular polygons), the isotropy test
on the second moment, and the operations that preserve isotropy: union of
sets sharing a centroid, rigid rotation about the centroid, and reflection
about an axis through the centroid.
"""
import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..errors import CentroidMismatch, DegeneratePolygon, UnitMismatch
from ..utils.helpers import DEFAULT_TOL
from .planar_geometry import (
    LENGTH, PlanarPoint, PointSet, centroid, geometric_inertia, second_moment,
)

logger = logging.getLogger("IsoKin.isotropy")


@dataclass(frozen=True)
class IsotropyReport:
    """Verdict of check_isotropic_set."""
    is_isotropic: bool
    sigma_squared: float
    deviation: float
    inertia_deviation: float


def _isotropy_deviation(M: np.ndarray) -> float:
    trace = float(np.trace(M))
    offset = M - (trace / 2.0) * np.eye(2)
    return float(np.linalg.norm(offset)) / max(trace, 1.0)


def check_isotropic_set(S: PointSet, tol: float = DEFAULT_TOL) -> IsotropyReport:
    """
    Decide whether the second moment of S is a positive multiple of 1.

    The deviation is the Frobenius distance of M from (tr(M)/2) 1, divided by
    max(tr(M), 1). A zero second moment is never isotropic.

    Args:
        S: The point set
        tol: Largest deviation still reported isotropic

    Returns:
        The IsotropyReport
    """
    M = second_moment(S)
    trace = float(np.trace(M))
    deviation = _isotropy_deviation(M)
    # x-y block of the inertia is tr(M) 1 - M, isotropic exactly when M is
    inertia_deviation = _isotropy_deviation(geometric_inertia(S, method="trace")[:2, :2])
    positive = trace > tol * max(1.0, S.n)
    return IsotropyReport(
        is_isotropic=bool(positive and deviation <= tol),
        sigma_squared=trace / 2.0,
        deviation=deviation,
        inertia_deviation=inertia_deviation,
    )


def regular_polygon(n: int, circumradius: float = 1.0, phase: float = 0.0,
                    center: Optional[PlanarPoint] = None, unit: str = LENGTH) -> PointSet:
    """
    Vertices of a regular polygon, the trivial isotropic set.

    Args:
        n: Number of vertices, at least 3
        circumradius: Distance of every vertex to the center
        phase: Angle of the first vertex
        center: Center of the polygon, the origin by default
        unit: Unit tag of the result

    Returns:
        The n vertices in counterclockwise order
    """
    if n < 3:
        raise DegeneratePolygon(f"a regular polygon needs at least 3 vertices, got {n}")
    if not circumradius > 0.0:
        raise DegeneratePolygon(f"circumradius must be positive, got {circumradius}")
    cx, cy = (center.x, center.y) if center is not None else (0.0, 0.0)
    angles = phase + 2.0 * math.pi * np.arange(n) / n
    coords = np.column_stack([cx + circumradius * np.cos(angles),
                              cy + circumradius * np.sin(angles)])
    return PointSet(coords, unit)


def union_sets(S1: PointSet, S2: PointSet, tol: float = DEFAULT_TOL) -> PointSet:
    """
    Concatenate two sets that share a centroid. Duplicates are kept.

    Args:
        S1: First set
        S2: Second set
        tol: Largest centroid distance accepted as shared

    Returns:
        The points of S1 followed by those of S2
    """
    if S1.unit != S2.unit:
        raise UnitMismatch(f"cannot unite a {S1.unit} set with a {S2.unit} set")
    c1, c2 = centroid(S1), centroid(S2)
    gap = math.hypot(c1.x - c2.x, c1.y - c2.y)
    if gap > tol:
        raise CentroidMismatch(
            f"centroids ({c1.x:g}, {c1.y:g}) and ({c2.x:g}, {c2.y:g}) are {gap:g} apart")
    return PointSet(np.vstack([S1.coords, S2.coords]), S1.unit)


def _about_centroid(S: PointSet, linear: np.ndarray) -> PointSet:
    c = centroid(S).as_array()
    return PointSet(c + (S.coords - c) @ linear.T, S.unit)


def rotate_set(S: PointSet, angle: float) -> PointSet:
    """Rotate the set as a rigid body about its centroid."""
    cos_a, sin_a = math.cos(angle), math.sin(angle)
    return _about_centroid(S, np.array([[cos_a, -sin_a], [sin_a, cos_a]]))


def reflect_set(S: PointSet, axis_angle: float) -> PointSet:
    """Reflect the set about the line through its centroid at axis_angle."""
    cos_2a, sin_2a = math.cos(2.0 * axis_angle), math.sin(2.0 * axis_angle)
    return _about_centroid(S, np.array([[cos_2a, sin_2a], [sin_2a, -cos_2a]]))


def scale_set(S: PointSet, factor: float) -> PointSet:
    """Scale the set about its centroid."""
    return _about_centroid(S, factor * np.eye(2))

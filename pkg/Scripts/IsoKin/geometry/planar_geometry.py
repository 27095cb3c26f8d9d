"""
Planar geometry primitives for IsoKin.

Points in the plane, ordered point sets with a unit tag, and the moment
quantities of a point set about its centroid: centroid, second moment,
rms distance and geometric moment of inertia. Planar points are embedded in
3-space as (x, y, 0) wherever a 3x3 quantity is needed.
"""
import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple, Union

import numpy as np

from ..errors import EmptySet, UnitMismatch
from ..utils.helpers import UNITS

DIMENSIONLESS = "dimensionless"
LENGTH = "length"

# Counterclockwise rotation through 90 degrees
E = np.array([[0.0, -1.0], [1.0, 0.0]])


@dataclass(frozen=True)
class PlanarPoint:
    """A position vector in the plane, tagged with its unit."""
    x: float
    y: float
    unit: str = LENGTH

    def __post_init__(self):
        if self.unit not in UNITS:
            raise UnitMismatch(f"unknown unit {self.unit!r}; expected one of {UNITS}")
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"point ({self.x}, {self.y}) is not finite")

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y])


@dataclass(frozen=True, eq=False)
class PointSet:
    """
    An ordered set of planar points sharing one unit tag.

    The coordinates are held as a read-only (n, 2) array. An empty set can be
    built so that the operations below report EmptySet themselves.
    """
    coords: np.ndarray
    unit: str = LENGTH

    def __post_init__(self):
        if self.unit not in UNITS:
            raise UnitMismatch(f"unknown unit {self.unit!r}; expected one of {UNITS}")
        coords = np.array(self.coords, dtype=float)
        if coords.size == 0:
            coords = coords.reshape(0, 2)
        elif coords.ndim != 2 or coords.shape[1] != 2:
            raise ValueError(f"point coordinates must form an (n, 2) array, got shape {coords.shape}")
        if not np.all(np.isfinite(coords)):
            raise ValueError("point coordinates must be finite")
        coords.setflags(write=False)
        object.__setattr__(self, "coords", coords)

    @classmethod
    def from_points(cls, points: Iterable[PlanarPoint]) -> "PointSet":
        points = list(points)
        units = {p.unit for p in points}
        if len(units) > 1:
            raise UnitMismatch(f"points mix units {sorted(units)}")
        unit = units.pop() if units else LENGTH
        return cls(np.array([[p.x, p.y] for p in points]).reshape(-1, 2), unit)

    @property
    def n(self) -> int:
        return self.coords.shape[0]

    @property
    def points(self) -> Tuple[PlanarPoint, ...]:
        return tuple(PlanarPoint(float(x), float(y), self.unit) for x, y in self.coords)

    def __len__(self) -> int:
        return self.n

    def __iter__(self):
        return iter(self.points)

    def reordered(self, ordering: Sequence[int]) -> "PointSet":
        return PointSet(self.coords[list(ordering)], self.unit)


PointLike = Union[PlanarPoint, Sequence[float], np.ndarray]


def _vec(v: PointLike) -> np.ndarray:
    if isinstance(v, PlanarPoint):
        return v.as_array()
    return np.asarray(v, dtype=float)


def _require_points(S: PointSet) -> np.ndarray:
    if S.n == 0:
        raise EmptySet("the point set is empty")
    return S.coords


def rotate90(v: PointLike) -> PlanarPoint:
    """Return E v = (-v_y, v_x)."""
    unit = v.unit if isinstance(v, PlanarPoint) else LENGTH
    x, y = E @ _vec(v)
    return PlanarPoint(float(x), float(y), unit)


def centroid(S: PointSet) -> PlanarPoint:
    """Return the centroid (1/n) sum p_k of the set."""
    c = _require_points(S).mean(axis=0)
    return PlanarPoint(float(c[0]), float(c[1]), S.unit)


def centered(S: PointSet) -> np.ndarray:
    """Return the (n, 2) array of p_k - c."""
    coords = _require_points(S)
    return coords - coords.mean(axis=0)


def second_moment(S: PointSet) -> np.ndarray:
    """
    Return the second moment M = sum (p_k - c)(p_k - c)^T about the centroid.

    Args:
        S: The point set

    Returns:
        The symmetric positive semidefinite 2x2 matrix M
    """
    d = centered(S)
    return d.T @ d


def d_rms(S: PointSet) -> float:
    """Root-mean-square distance of the points to their centroid, sqrt(tr(M)/n)."""
    return math.sqrt(float(np.trace(second_moment(S))) / S.n)


def embed(v: PointLike) -> np.ndarray:
    """Embed a planar vector in 3-space as (x, y, 0)."""
    x, y = _vec(v)[:2]
    return np.array([x, y, 0.0])


def cross_product_matrix(v: Sequence[float]) -> np.ndarray:
    """
    Return the skew-symmetric matrix P with P w = v x w for every w.

    Args:
        v: A 3-vector

    Returns:
        The 3x3 cross-product matrix of v
    """
    x, y, z = np.asarray(v, dtype=float)
    return np.array([[0.0, -z, y],
                     [z, 0.0, -x],
                     [-y, x, 0.0]])


def second_moment3(S: PointSet) -> np.ndarray:
    """Second moment of the set embedded in 3-space."""
    M3 = np.zeros((3, 3))
    M3[:2, :2] = second_moment(S)
    return M3


def geometric_inertia(S: PointSet, method: str = "direct") -> np.ndarray:
    """
    Geometric moment of inertia of the set about its centroid.

    The three methods are algebraically identical and are kept so that the
    identities between them can be checked numerically.

    Args:
        S: The point set
        method: "direct" sums ||d||^2 1 - d d^T, "trace" uses tr(M) 1 - M and
            "cpm" uses minus the sum of squared cross-product matrices

    Returns:
        The 3x3 inertia matrix
    """
    d = centered(S)
    if method == "direct":
        inertia = np.zeros((3, 3))
        for dk in d:
            dk3 = embed(dk)
            inertia += float(dk3 @ dk3) * np.eye(3) - np.outer(dk3, dk3)
        return inertia
    if method == "trace":
        M3 = second_moment3(S)
        return np.trace(M3) * np.eye(3) - M3
    if method == "cpm":
        inertia = np.zeros((3, 3))
        for dk in d:
            P = cross_product_matrix(embed(dk))
            inertia -= P @ P
        return inertia
    raise ValueError(f"unknown inertia method {method!r}")

"""
Kinematic chains stemming from ordered point sets.

Numbering the n points of a set defines a planar n-revolute serial chain:
the i-th link carries joints i and i+1 and the last link carries the
operation point, placed at the centroid of the set. This module builds those
chains, enumerates the n! numberings, groups numberings that differ by a
rigid rotation of the whole manipulator, and evaluates forward kinematics.
"""
import itertools
import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import ArityMismatch, DegenerateLink, EnumerationTooLarge, NonpositiveLength
from ..geometry.planar_geometry import PointSet
from ..utils.helpers import DEFAULT_ENUM_CAP, DEFAULT_TOL, check_ordering, reduce_angle

logger = logging.getLogger("IsoKin.chains")

Ordering = Tuple[int, ...]


@dataclass(frozen=True)
class KinematicChain:
    """Link lengths a_1..a_n of a planar n-revolute chain."""
    link_lengths: Tuple[float, ...]

    def __post_init__(self):
        lengths = tuple(float(a) for a in self.link_lengths)
        if not lengths:
            raise ArityMismatch("a chain needs at least one link")
        for i, a in enumerate(lengths):
            if not math.isfinite(a) or a < 0.0:
                raise NonpositiveLength(f"link {i + 1} has invalid length {a}")
            if a == 0.0 and i < len(lengths) - 1:
                raise DegenerateLink(f"link {i + 1} has zero length")
        object.__setattr__(self, "link_lengths", lengths)

    @property
    def n(self) -> int:
        return len(self.link_lengths)


@dataclass(frozen=True)
class Posture:
    """
    Joint angles theta_1..theta_n in radians, stored in (-pi, pi].

    theta_1 is the absolute angle of link 1; every later angle is measured
    from the previous link.
    """
    joint_angles: Tuple[float, ...]

    def __post_init__(self):
        angles = tuple(float(t) for t in self.joint_angles)
        if not all(math.isfinite(t) for t in angles):
            raise ValueError(f"joint angles must be finite, got {angles}")
        object.__setattr__(self, "joint_angles", tuple(reduce_angle(t) for t in angles))

    @property
    def n(self) -> int:
        return len(self.joint_angles)


@dataclass(frozen=True, eq=False)
class ChainConfiguration:
    """Joint centers, operation point and the vectors r_i from joint i to it."""
    joint_centers: np.ndarray
    operation_point: np.ndarray
    r_vectors: np.ndarray

    @property
    def n(self) -> int:
        return self.r_vectors.shape[0]

    @classmethod
    def from_r_vectors(cls, r_vectors) -> "ChainConfiguration":
        """Configuration with the operation point at the origin."""
        r = np.array(r_vectors, dtype=float).reshape(-1, 2)
        return cls(joint_centers=-r, operation_point=np.zeros(2), r_vectors=r)


@dataclass(frozen=True)
class OrderingClass:
    """Orderings that differ by a rotation about the centroid."""
    representative: Ordering
    members: Tuple[Ordering, ...]

    @property
    def size(self) -> int:
        return len(self.members)


def chain_from_ordering(S: PointSet, ordering: Sequence[int]) -> KinematicChain:
    """
    Build the chain whose joints sit at the points of S taken in order.

    Args:
        S: The point set, with n >= 2
        ordering: 0-based permutation of range(n)

    Returns:
        The chain with a_i = |p_ord(i+1) - p_ord(i)| and a_n the distance from
        the last joint to the centroid
    """
    if S.n < 2:
        raise DegenerateLink(f"a chain needs at least two points, the set has {S.n}")
    check_ordering(ordering, S.n)
    c = S.coords.mean(axis=0)
    ordered = S.coords[list(ordering)]
    segments = np.vstack([np.diff(ordered, axis=0), c - ordered[-1]])
    lengths = np.linalg.norm(segments, axis=1)
    for i, a in enumerate(lengths[:-1]):
        if a == 0.0:
            raise DegenerateLink(
                f"points {ordering[i] + 1} and {ordering[i + 1] + 1} coincide")
    return KinematicChain(tuple(float(a) for a in lengths))


def enumerate_chains(S: PointSet, cap: int = DEFAULT_ENUM_CAP) -> List[Tuple[Ordering, KinematicChain]]:
    """
    All n! chains of S, in lexicographic order of the orderings.

    Args:
        S: The point set
        cap: Largest n accepted

    Returns:
        (ordering, chain) pairs
    """
    if S.n > cap:
        raise EnumerationTooLarge(f"{S.n}! chains exceed the enumeration cap of n = {cap}")
    if S.n < 2:
        raise DegenerateLink(f"a chain needs at least two points, the set has {S.n}")
    chains = [(ordering, chain_from_ordering(S, ordering))
              for ordering in itertools.permutations(range(S.n))]
    logger.debug(f"Enumerated {len(chains)} chains for {S.n} points")
    return chains


def _rotation_matches(A: np.ndarray, B: np.ndarray, tol: float) -> bool:
    """True when some rotation about the origin maps rows of A onto rows of B."""
    norms = np.linalg.norm(A, axis=1)
    pivots = np.flatnonzero(norms > tol)
    if pivots.size == 0:
        return bool(np.all(np.linalg.norm(B, axis=1) <= tol))
    j = pivots[0]
    a, b = A[j], B[j]
    if abs(np.linalg.norm(b) - norms[j]) > tol:
        return False
    angle = math.atan2(a[0] * b[1] - a[1] * b[0], float(a @ b))
    cos_a, sin_a = math.cos(angle), math.sin(angle)
    rotated = A @ np.array([[cos_a, -sin_a], [sin_a, cos_a]]).T
    return bool(np.max(np.linalg.norm(rotated - B, axis=1)) <= tol)


def _canonical_key(A: np.ndarray, tol: float, decimals: int = 6) -> tuple:
    # Rotate so the first point off the centroid lies on the +x axis.
    norms = np.linalg.norm(A, axis=1)
    pivots = np.flatnonzero(norms > tol)
    if pivots.size == 0:
        return ()
    a = A[pivots[0]]
    angle = -math.atan2(a[1], a[0])
    cos_a, sin_a = math.cos(angle), math.sin(angle)
    rotated = A @ np.array([[cos_a, -sin_a], [sin_a, cos_a]]).T
    scale = max(float(norms.max()), 1.0)
    return tuple(np.round(rotated.ravel() / scale, decimals) + 0.0)


def dedup_orderings(S: PointSet, orderings: Sequence[Sequence[int]],
                    tol: float = DEFAULT_TOL) -> List[OrderingClass]:
    """
    Group orderings whose ordered point sequences differ by a rotation about
    the centroid. Choosing another first point amounts to turning the whole
    manipulator as a rigid body, so such chains are the same manipulator.

    Args:
        S: The point set
        orderings: 0-based orderings of S
        tol: Pointwise tolerance of the rotation match

    Returns:
        Classes sorted by representative, each represented by its
        lexicographically smallest member
    """
    c = S.coords.mean(axis=0) if S.n else np.zeros(2)
    unique = sorted({tuple(int(i) for i in o) for o in orderings})
    for ordering in unique:
        check_ordering(ordering, S.n)

    buckets: Dict[tuple, List[List[Ordering]]] = {}
    classes: List[List[Ordering]] = []
    for ordering in unique:
        sequence = S.coords[list(ordering)] - c
        bucket = buckets.setdefault(_canonical_key(sequence, tol), [])
        for members in bucket:
            if _rotation_matches(S.coords[list(members[0])] - c, sequence, tol):
                members.append(ordering)
                break
        else:
            members = [ordering]
            bucket.append(members)
            classes.append(members)

    return [OrderingClass(members[0], tuple(members)) for members in classes]


def forward_kinematics(chain: KinematicChain, posture: Posture,
                       base: Optional[Sequence[float]] = None) -> ChainConfiguration:
    """
    Joint centers and operation point of a planar n-revolute chain.

    Args:
        chain: The chain
        posture: Joint angles, same count as links
        base: Position of the first joint, the origin by default

    Returns:
        The ChainConfiguration
    """
    if chain.n != posture.n:
        raise ArityMismatch(f"chain has {chain.n} links but posture has {posture.n} angles")
    origin = np.zeros(2) if base is None else np.asarray(base, dtype=float)
    ends = origin + np.cumsum(link_vectors(chain.link_lengths, posture.joint_angles), axis=0)
    joints = np.vstack([origin, ends[:-1]])
    operation_point = ends[-1]
    return ChainConfiguration(joints, operation_point, operation_point - joints)


def link_vectors(link_lengths: Sequence[float], joint_angles: Sequence[float]) -> np.ndarray:
    """The (n, 2) array of link vectors a_i (cos phi_i, sin phi_i)."""
    phi = np.cumsum(np.asarray(joint_angles, dtype=float))
    return np.asarray(link_lengths, dtype=float)[:, None] * np.column_stack([np.cos(phi), np.sin(phi)])


def r_vectors_at(link_lengths: Sequence[float], joint_angles: Sequence[float]) -> np.ndarray:
    """r_i = P - joint_i for the chain at the given angles, without building a configuration."""
    links = link_vectors(link_lengths, joint_angles)
    # r_i is the sum of the links from i to n
    return np.cumsum(links[::-1], axis=0)[::-1]


def posture_from_placement(S: PointSet, ordering: Sequence[int]) -> Posture:
    """
    The posture that puts the joints on the ordered points and the operation
    point on the centroid.

    Args:
        S: The point set
        ordering: 0-based ordering

    Returns:
        The posture; theta_1 is the direction of p_ord(2) - p_ord(1)
    """
    chain_from_ordering(S, ordering)
    c = S.coords.mean(axis=0)
    ordered = S.coords[list(ordering)]
    segments = np.vstack([np.diff(ordered, axis=0), c - ordered[-1]])
    absolute = []
    for i, (dx, dy) in enumerate(segments):
        if dx == 0.0 and dy == 0.0:
            # only the last link can vanish; keep it in line with the previous one
            absolute.append(absolute[-1])
        else:
            absolute.append(math.atan2(dy, dx))
    relative = [absolute[0]] + [absolute[i] - absolute[i - 1] for i in range(1, len(absolute))]
    return Posture(tuple(relative))


def placement(S: PointSet, ordering: Sequence[int]) -> Tuple[KinematicChain, Posture, ChainConfiguration]:
    """Chain, isotropic posture and configuration for one ordering, based at p_ord(1)."""
    chain = chain_from_ordering(S, ordering)
    posture = posture_from_placement(S, ordering)
    config = forward_kinematics(chain, posture, base=S.coords[ordering[0]])
    return chain, posture, config


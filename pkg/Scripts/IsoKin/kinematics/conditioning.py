"""
Conditioning length and characteristic length.

Dividing the last two rows of the Jacobian by a length l_P gives the
dimensionless matrix Jbar. The conditioning length at a posture is the l_P
that brings Jbar closest, in the Frobenius sense, to an isotropic model
matrix K. The problem is quadratic in lambda = 1/l_P and is solved in closed
form. The characteristic length is the conditioning length at the posture
where that closest distance is smallest, found here by a multi-start
search over the joint angles.
"""
import itertools
import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from Scripts import PostureSearch

from ..errors import (
    ArityMismatch, DegenerateConfiguration, EnumerationTooLarge, NoValidPosture,
    NonpositiveAlignment, ShapeMismatch, SingularMatrix,
)
from ..geometry.planar_geometry import DIMENSIONLESS, PointSet
from ..utils.helpers import DEFAULT_ENUM_CAP, DEFAULT_SEED, check_ordering
from .chains import ChainConfiguration, KinematicChain, Posture, forward_kinematics, r_vectors_at
from .jacobian_algebra import (
    ModelMatrix, build_jacobian, condition_number_spectral, distance, normalize_jacobian,
)

logger = logging.getLogger("IsoKin.conditioning")


@dataclass(frozen=True)
class ConditioningResult:
    """Optimal lambda at one posture and what it achieves."""
    lambda_: float
    conditioning_length: float
    residual_distance: float
    objective_z: float
    kappa_spectral: Optional[float] = None


@dataclass(frozen=True)
class SearchParams:
    """Settings of the posture search behind characteristic_length."""
    starts_per_dim: int = PostureSearch.starts_per_dim
    max_starts: int = PostureSearch.max_starts
    gradient_tol: float = 1e-6
    max_evaluations: int = PostureSearch.max_evaluations
    initial_step: float = PostureSearch.initial_step
    min_step: float = PostureSearch.min_step
    randomized: bool = False
    seed: int = DEFAULT_SEED
    permute_columns: bool = False
    column_cap: int = DEFAULT_ENUM_CAP
    isotropy_tol: float = 1e-6


@dataclass(frozen=True)
class CharacteristicLengthResult:
    """Outcome of the posture search."""
    characteristic_length: float
    best_posture: Posture
    best_distance: float
    converged: bool
    starts_used: int
    conditioning: Optional[ConditioningResult] = None
    attains_isotropy: bool = False
    column_order: Tuple[int, ...] = ()
    evaluations: int = 0


def _check_shapes(config: ChainConfiguration, K: ModelMatrix) -> None:
    if config.n != K.n:
        raise ShapeMismatch(f"configuration has {config.n} joints but K has {K.n} columns")


def _scaled_jacobian(config: ChainConfiguration, lam: float) -> np.ndarray:
    # lambda = 0 is allowed here, so scale the rows instead of normalizing
    entries = build_jacobian(config).entries.copy()
    entries[1:3] *= lam
    return entries


def objective_z(config: ChainConfiguration, K: ModelMatrix, lam: float,
                expanded: bool = False) -> float:
    """
    z = tr[(Jbar - K)(Jbar - K)^T] / (2n), Jbar having rows 2-3 scaled by lambda.

    Args:
        config: Chain configuration
        K: Model matrix with the same column count
        lam: lambda = 1/l_P; zero is accepted
        expanded: Evaluate tr(Jbar Jbar^T - 2 K Jbar^T + K K^T) / (2n) instead

    Returns:
        The objective z
    """
    _check_shapes(config, K)
    Jbar = _scaled_jacobian(config, lam)
    n = K.n
    if expanded:
        product = Jbar @ Jbar.T - 2.0 * K.entries @ Jbar.T + K.entries @ K.entries.T
        return float(np.trace(product)) / (2.0 * n)
    difference = Jbar - K.entries
    return float(np.trace(difference @ difference.T)) / (2.0 * n)


def normality_residual(config: ChainConfiguration, K: ModelMatrix, lam: float) -> float:
    """lambda sum ||r_j||^2 - sum k_j^T r_j, which is n dz/dlambda."""
    _check_shapes(config, K)
    r = config.r_vectors
    return lam * float(np.sum(r * r)) - float(np.sum(K.k_vectors * r))


def optimal_lambda(config: ChainConfiguration, K: ModelMatrix) -> ConditioningResult:
    """
    Closed-form minimizer of z over lambda.

    lambda = sum k_j^T r_j / (n d_rms^2) and l_P = 1/lambda, d_rms being the
    rms distance from the operation point to the joint centers.

    Args:
        config: Chain configuration
        K: Model matrix

    Returns:
        The ConditioningResult
    """
    _check_shapes(config, K)
    r = config.r_vectors
    sum_rr = float(np.sum(r * r))
    if sum_rr == 0.0:
        raise DegenerateConfiguration("every joint center coincides with the operation point")
    alignment = float(np.sum(K.k_vectors * r))
    if alignment <= 0.0:
        raise NonpositiveAlignment(
            f"sum k_j^T r_j = {alignment:g}; the posture opposes the model matrix")

    lam = alignment / sum_rr
    Jbar = normalize_jacobian(build_jacobian(config), 1.0 / lam)
    kappa = None
    # a 3 x 2 Jbar (n = 2) has no spectral condition number
    if Jbar.entries.shape[0] <= Jbar.entries.shape[1]:
        try:
            kappa = condition_number_spectral(Jbar.entries)
        except SingularMatrix:
            kappa = None
    return ConditioningResult(
        lambda_=lam,
        conditioning_length=1.0 / lam,
        residual_distance=distance(Jbar.entries, K.entries),
        objective_z=objective_z(config, K, lam),
        kappa_spectral=kappa,
    )


def _rotation_terms(r: np.ndarray, k: np.ndarray) -> Tuple[float, float]:
    a = float(np.sum(k * r))
    b = float(np.sum(r[:, 0] * k[:, 1] - r[:, 1] * k[:, 0]))
    return a, b


def best_rotation(config: ChainConfiguration, K: ModelMatrix) -> Tuple[float, float]:
    """
    Rigid rotation of the whole manipulator that best aligns it with K.

    Args:
        config: Chain configuration
        K: Model matrix

    Returns:
        (angle, aligned) where rotating every r_j by angle maximizes
        sum k_j^T r_j, and aligned is that maximum
    """
    _check_shapes(config, K)
    a, b = _rotation_terms(config.r_vectors, K.k_vectors)
    return math.atan2(b, a), math.hypot(a, b)


def placement_model_set(S: PointSet, ordering) -> PointSet:
    """
    Model set of the isotropic placement of S in the given order.

    At that placement r_i = c - p_ord(i); the model set is those vectors
    scaled by s = sqrt(2n / tr(M)), so that sum k_i k_i^T = n 1 when S is
    isotropic. The conditioning length of the placement is then 1/s.

    Args:
        S: The point set
        ordering: 0-based ordering

    Returns:
        The dimensionless model set
    """
    check_ordering(ordering, S.n)
    c = S.coords.mean(axis=0)
    toward_centroid = c - S.coords[list(ordering)]
    trace = float(np.sum(toward_centroid * toward_centroid))
    if trace == 0.0:
        raise DegenerateConfiguration("every point coincides with the centroid")
    return PointSet(math.sqrt(2.0 * S.n / trace) * toward_centroid, DIMENSIONLESS)


# ========== Posture search ==========

def _aligned_fit(lengths: np.ndarray, k: np.ndarray, free_angles: np.ndarray):
    """
    Rotation angle, lambda and objective z of the chain at (0, free_angles)
    once turned to its best rotation; None when no positive lambda exists.
    """
    r = r_vectors_at(lengths, np.concatenate([[0.0], free_angles]))
    sum_rr = float(np.sum(r * r))
    if sum_rr == 0.0:
        return None
    a, b = _rotation_terms(r, k)
    aligned = math.hypot(a, b)
    if aligned <= 0.0:
        return None
    cos_a, sin_a = a / aligned, b / aligned
    rotated = r @ np.array([[cos_a, -sin_a], [sin_a, cos_a]]).T
    lam = aligned / sum_rr
    z = float(np.sum((lam * rotated - k) ** 2)) / (2.0 * k.shape[0])
    return math.atan2(b, a), lam, z


def _search_columns(chain: KinematicChain, K: ModelMatrix, search: SearchParams):
    lengths = np.asarray(chain.link_lengths)
    k = K.k_vectors
    dim = chain.n - 1

    def objective(free_angles):
        fit = _aligned_fit(lengths, k, free_angles)
        return math.inf if fit is None else fit[2]

    if search.randomized:
        count = min(search.starts_per_dim ** dim, search.max_starts)
        starts = PostureSearch.random_starts(dim, count, search.seed)
    else:
        starts = PostureSearch.grid_starts(dim, search.starts_per_dim, search.max_starts)

    results = PostureSearch.explore_starts(
        objective, starts, step=search.initial_step,
        smallest_step=search.min_step, max_evals=search.max_evaluations)
    evaluations = sum(res.evaluations for res in results)

    candidates = []
    for res in results:
        fit = _aligned_fit(lengths, k, res.x)
        if fit is None:
            continue
        angle, lam, z = fit
        posture = Posture((angle,) + tuple(float(t) for t in res.x))
        candidates.append((math.sqrt(2.0 * z), 1.0 / lam, posture.joint_angles, res.x))
    if not candidates:
        return None, len(starts), evaluations

    best = candidates[PostureSearch.best_of([c[:3] for c in candidates])]
    gradient = PostureSearch.finite_difference_gradient(objective, best[3])
    return {
        "distance": best[0],
        "length": best[1],
        "posture": Posture(best[2]),
        "gradient_norm": float(np.linalg.norm(gradient)),
    }, len(starts), evaluations


def characteristic_length(chain: KinematicChain, K: ModelMatrix,
                          search: SearchParams = SearchParams()) -> CharacteristicLengthResult:
    """
    Conditioning length at the posture closest to isotropy.

    The base rotation and lambda are eliminated in closed form, leaving a
    search over theta_2..theta_n from a grid (or random) set of starts, each
    refined by compass search.

    Args:
        chain: The manipulator
        K: Model matrix with one column per joint
        search: Search settings

    Returns:
        The CharacteristicLengthResult; converged tells whether the gradient of
        the objective at the best posture is below search.gradient_tol
    """
    if chain.n != K.n:
        raise ArityMismatch(f"chain has {chain.n} joints but K has {K.n} columns")

    identity = tuple(range(K.n))
    if search.permute_columns:
        if K.n > search.column_cap:
            raise EnumerationTooLarge(
                f"{K.n}! column orders exceed the cap of n = {search.column_cap}")
        column_orders = list(itertools.permutations(identity))
    else:
        column_orders = [identity]

    found = []
    starts_used = 0
    evaluations = 0
    for order in column_orders:
        model = K if order == identity else K.permuted(order)
        outcome, used, evals = _search_columns(chain, model, search)
        starts_used += used
        evaluations += evals
        if outcome is not None:
            found.append((order, model, outcome))
    if not found:
        raise NoValidPosture("no start reached a posture with positive alignment to K")

    pick = PostureSearch.best_of(
        [(o["distance"], o["length"], o["posture"].joint_angles + order)
         for order, _, o in found])
    order, model, outcome = found[pick]

    conditioning = optimal_lambda(forward_kinematics(chain, outcome["posture"]), model)
    logger.info(
        f"Characteristic length {conditioning.conditioning_length:.9g} at distance "
        f"{conditioning.residual_distance:.3g} ({starts_used} starts, {evaluations} evaluations)")

    return CharacteristicLengthResult(
        characteristic_length=conditioning.conditioning_length,
        best_posture=outcome["posture"],
        best_distance=conditioning.residual_distance,
        converged=outcome["gradient_norm"] < search.gradient_tol,
        starts_used=starts_used,
        conditioning=conditioning,
        attains_isotropy=conditioning.residual_distance <= search.isotropy_tol,
        column_order=order,
        evaluations=evaluations,
    )

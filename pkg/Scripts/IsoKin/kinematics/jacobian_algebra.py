"""
Jacobian algebra for planar n-revolute manipulators.

Assembly of the 3 x n Jacobian with its dimensionless row block A and its
length-valued block B, the dimensionless isotropic model matrix K, the
column-normalized Frobenius norm and distance, the isotropy test for
matrices, the generalized inverse of an isotropic matrix, and condition
numbers.
"""
import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ..errors import NonpositiveLength, NotAModelSet, NotIsotropic, ShapeMismatch, SingularMatrix
from ..geometry.isotropy import check_isotropic_set
from ..geometry.planar_geometry import DIMENSIONLESS, E, PointSet
from ..utils.helpers import DEFAULT_TOL
from .chains import ChainConfiguration

logger = logging.getLogger("IsoKin.jacobian")

# Relative size of the smallest singular value below which a matrix is singular
SINGULAR_RTOL = 1e-12


@dataclass(frozen=True, eq=False)
class JacobianMatrix:
    """A 3 x n Jacobian; unit_homogeneous once rows 2-3 were divided by a length."""
    entries: np.ndarray
    unit_homogeneous: bool = False

    @property
    def n(self) -> int:
        return self.entries.shape[1]


@dataclass(frozen=True, eq=False)
class ModelMatrix:
    """The dimensionless model matrix K generated by the set {k_i}."""
    entries: np.ndarray
    source_set: PointSet

    @property
    def n(self) -> int:
        return self.entries.shape[1]

    @property
    def k_vectors(self) -> np.ndarray:
        """The (n, 2) array of k_i, recovered from the B-block as E^T (E k_i)."""
        return (E.T @ self.entries[1:3]).T

    def permuted(self, column_order) -> "ModelMatrix":
        """The same model with its columns (and generating points) reordered."""
        order = list(column_order)
        return ModelMatrix(self.entries[:, order], self.source_set.reordered(order))


def _jacobian_entries(r_vectors: np.ndarray) -> np.ndarray:
    r = np.asarray(r_vectors, dtype=float).reshape(-1, 2)
    return np.vstack([np.ones(r.shape[0]), E @ r.T])


def build_jacobian(config: ChainConfiguration) -> JacobianMatrix:
    """
    The Jacobian whose i-th column is (1, E r_i).

    Args:
        config: Chain configuration carrying r_1..r_n

    Returns:
        The JacobianMatrix, not yet homogeneous
    """
    return JacobianMatrix(_jacobian_entries(config.r_vectors), unit_homogeneous=False)


def normalize_jacobian(J: JacobianMatrix, length: float) -> JacobianMatrix:
    """
    Divide the last two rows of J by a length, making it dimensionless.

    Args:
        J: Jacobian with rows 2-3 in length units
        length: The normalizing length, positive

    Returns:
        The homogeneous Jacobian
    """
    if J.unit_homogeneous:
        raise ValueError("the Jacobian is already dimensionally homogeneous")
    if not (length > 0.0 and math.isfinite(length)):
        raise NonpositiveLength(f"normalizing length must be positive, got {length}")
    entries = J.entries.copy()
    entries[1:3] /= length
    return JacobianMatrix(entries, unit_homogeneous=True)


def split_blocks(J: JacobianMatrix) -> Tuple[np.ndarray, np.ndarray]:
    """The 1 x n block A = [1 ... 1] and the 2 x n block B = [E r_1 ... E r_n]."""
    return J.entries[:1], J.entries[1:3]


def model_matrix(Kset: PointSet, tol: float = DEFAULT_TOL, strict: bool = True) -> ModelMatrix:
    """
    Build the model matrix K whose columns are (1, E k_i).

    Args:
        Kset: Dimensionless isotropic set with sum k_i = 0 and
            sum k_i k_i^T = n 1
        tol: Tolerance of the three checks
        strict: When False the checks only log a warning

    Returns:
        The ModelMatrix; K K^T = n 1 when the checks pass
    """
    failures = []
    if Kset.unit != DIMENSIONLESS:
        failures.append("unit")
    n = Kset.n
    k = Kset.coords
    scale = max(1.0, float(n))
    if n == 0 or np.linalg.norm(k.sum(axis=0)) > tol * scale:
        failures.append("centroid")
    if n == 0 or not check_isotropic_set(Kset, tol).is_isotropic:
        failures.append("isotropy")
    if n == 0 or np.max(np.abs(k.T @ k - n * np.eye(2))) > tol * scale:
        failures.append("scale")

    if failures:
        if strict or n == 0:
            raise NotAModelSet(failures)
        logger.warning(f"Model set fails {', '.join(failures)}; building K unchecked")
    return ModelMatrix(_jacobian_entries(k), Kset)


def frobenius_norm(matrix: np.ndarray) -> float:
    """sqrt(tr(M M^T) / n), n being the number of columns."""
    M = np.atleast_2d(np.asarray(matrix, dtype=float))
    return math.sqrt(float(np.sum(M * M)) / M.shape[1])


def distance(A: np.ndarray, B: np.ndarray) -> float:
    """Frobenius distance between two matrices of the same shape."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    B = np.atleast_2d(np.asarray(B, dtype=float))
    if A.shape != B.shape:
        raise ShapeMismatch(f"cannot compare a {A.shape} matrix with a {B.shape} matrix")
    return frobenius_norm(A - B)


def singular_values(C: np.ndarray) -> np.ndarray:
    """Singular values of a matrix, largest first."""
    C = np.atleast_2d(np.asarray(C, dtype=float))
    return np.linalg.svd(C, compute_uv=False)


def is_isotropic_matrix(C: np.ndarray, tol: float = DEFAULT_TOL) -> Tuple[bool, Optional[float]]:
    """
    Test C C^T = sigma^2 1 with sigma > 0.

    Args:
        C: An m x n matrix with m <= n
        tol: Entrywise tolerance, relative to max(1, sigma^2)

    Returns:
        (True, sigma) when C is isotropic, (False, None) otherwise
    """
    C = np.atleast_2d(np.asarray(C, dtype=float))
    m, n = C.shape
    if m > n:
        raise ShapeMismatch(f"isotropy needs m <= n, got a {m} x {n} matrix")
    product = C @ C.T
    sigma_squared = float(np.trace(product)) / m
    if sigma_squared <= tol:
        return False, None
    if np.max(np.abs(product - sigma_squared * np.eye(m))) > tol * max(1.0, sigma_squared):
        return False, None
    return True, math.sqrt(sigma_squared)


def generalized_inverse_isotropic(C: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """The generalized inverse (C C^T)^-1 C^T of an isotropic C, which is C^T / sigma^2."""
    isotropic, sigma = is_isotropic_matrix(C, tol)
    if not isotropic:
        raise NotIsotropic("the generalized inverse shortcut needs an isotropic matrix")
    return np.atleast_2d(np.asarray(C, dtype=float)).T / sigma ** 2


def condition_number_frobenius(A: np.ndarray) -> float:
    """
    kappa(A) = ||A|| ||A^-1|| for a square invertible A, with the
    column-normalized Frobenius norm.
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    if A.shape[0] != A.shape[1]:
        raise ShapeMismatch(f"the condition number needs a square matrix, got {A.shape}")
    s = np.linalg.svd(A, compute_uv=False)
    if s[0] == 0.0 or s[-1] <= SINGULAR_RTOL * s[0]:
        raise SingularMatrix("the matrix is singular")
    return frobenius_norm(A) * frobenius_norm(np.linalg.inv(A))


def condition_number_spectral(A: np.ndarray) -> float:
    """sigma_max / sigma_min of an m x n matrix of full row rank."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    if A.shape[0] > A.shape[1]:
        raise ShapeMismatch(f"the spectral condition number needs m <= n, got {A.shape}")
    s = singular_values(A)
    if s[0] == 0.0 or s[-1] <= SINGULAR_RTOL * s[0]:
        raise SingularMatrix(f"the {A.shape[0]} x {A.shape[1]} matrix is rank-deficient")
    return float(s[0] / s[-1])

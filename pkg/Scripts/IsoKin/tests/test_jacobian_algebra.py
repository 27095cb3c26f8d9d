"""
Tests for Jacobian assembly, the model matrix and the matrix measures.
"""
import itertools
import math
import time

import numpy as np
import pytest

from Scripts.IsoKin.errors import NonpositiveLength, NotAModelSet, NotIsotropic, ShapeMismatch, SingularMatrix
from Scripts.IsoKin.geometry.isotropy import regular_polygon, scale_set
from Scripts.IsoKin.geometry.planar_geometry import DIMENSIONLESS, PointSet
from Scripts.IsoKin.kinematics.chains import ChainConfiguration, placement
from Scripts.IsoKin.kinematics.conditioning import optimal_lambda, placement_model_set
from Scripts.IsoKin.kinematics.jacobian_algebra import (
    build_jacobian, condition_number_frobenius, condition_number_spectral, distance,
    frobenius_norm, generalized_inverse_isotropic, is_isotropic_matrix, model_matrix,
    normalize_jacobian, singular_values, split_blocks,
)


def test_build_jacobian_straight_arm():
    J = build_jacobian(ChainConfiguration.from_r_vectors([[2, 0], [1, 0]]))
    np.testing.assert_array_equal(J.entries, [[1, 1], [0, 0], [2, 1]])
    assert not J.unit_homogeneous


def test_build_jacobian_single_joint_at_point():
    J = build_jacobian(ChainConfiguration.from_r_vectors([[0, 0]]))
    np.testing.assert_array_equal(J.entries, [[1], [0], [0]])


def test_square_posture_normalizes_to_K(unit_square, square_K):
    J = build_jacobian(ChainConfiguration.from_r_vectors(0.5 * unit_square.coords))
    np.testing.assert_allclose(normalize_jacobian(J, 0.5).entries, square_K, atol=1e-15)


def test_normalize_jacobian():
    J = build_jacobian(ChainConfiguration.from_r_vectors([[2, 0], [1, 0]]))
    np.testing.assert_array_equal(normalize_jacobian(J, 1.0).entries, J.entries)
    halved = normalize_jacobian(J, 2.0)
    np.testing.assert_array_equal(halved.entries, [[1, 1], [0, 0], [1, 0.5]])
    assert halved.unit_homogeneous
    with pytest.raises(ValueError):
        normalize_jacobian(halved, 2.0)


@pytest.mark.parametrize("length", [0.0, -1.0, math.inf])
def test_normalize_jacobian_rejects(length):
    J = build_jacobian(ChainConfiguration.from_r_vectors([[2, 0]]))
    with pytest.raises(NonpositiveLength):
        normalize_jacobian(J, length)


def test_split_blocks():
    J = build_jacobian(ChainConfiguration.from_r_vectors([[2, 0], [1, 0], [0, 3]]))
    A, B = split_blocks(J)
    assert A.shape == (1, 3) and B.shape == (2, 3)
    # the sole singular value of A is sqrt(n)
    assert singular_values(A) == pytest.approx([math.sqrt(3.0)])


def test_model_matrix_from_square(unit_square, square_K):
    start = time.perf_counter()
    K = model_matrix(unit_square)
    elapsed = time.perf_counter() - start
    np.testing.assert_array_equal(K.entries, square_K)
    np.testing.assert_allclose(K.entries @ K.entries.T, 4.0 * np.eye(3), atol=1e-12)
    assert is_isotropic_matrix(K.entries) == (True, pytest.approx(2.0))
    np.testing.assert_allclose(K.k_vectors, unit_square.coords, atol=1e-15)
    assert elapsed < 0.05


def test_model_matrix_rejects_scaled_square(unit_square):
    with pytest.raises(NotAModelSet) as info:
        model_matrix(PointSet(2.0 * unit_square.coords, DIMENSIONLESS))
    assert info.value.failures == ["scale"]


def test_model_matrix_rejects_length_unit(unit_square):
    with pytest.raises(NotAModelSet) as info:
        model_matrix(PointSet(unit_square.coords))
    assert "unit" in info.value.failures


def test_model_matrix_hexagon():
    hexagon = regular_polygon(6, math.sqrt(2.0), unit=DIMENSIONLESS)
    K = model_matrix(hexagon)
    assert K.n == 6
    np.testing.assert_allclose(K.entries @ K.entries.T, 6.0 * np.eye(3), atol=1e-12)


def test_model_matrix_unchecked():
    pair = PointSet([[1, 0], [-1, 0]], DIMENSIONLESS)
    with pytest.raises(NotAModelSet) as info:
        model_matrix(pair)
    assert "isotropy" in info.value.failures
    K = model_matrix(pair, strict=False)
    np.testing.assert_array_equal(K.entries, [[1, 1], [0, 0], [1, -1]])


def test_permuted_model(unit_square):
    K = model_matrix(unit_square)
    swapped = K.permuted((0, 1, 3, 2))
    np.testing.assert_array_equal(swapped.entries, K.entries[:, [0, 1, 3, 2]])
    np.testing.assert_array_equal(swapped.k_vectors, unit_square.coords[[0, 1, 3, 2]])


@pytest.mark.parametrize("matrix, expected", [
    (np.eye(3), 1.0),
    (np.array([[1.0, 1, 1, 1], [-1, -1, 1, 1], [1, -1, -1, 1]]), math.sqrt(3.0)),
    (np.zeros((3, 4)), 0.0),
])
def test_frobenius_norm(matrix, expected):
    assert frobenius_norm(matrix) == pytest.approx(expected)


def test_distance(square_K):
    assert distance(square_K, square_K) == 0.0
    assert distance([[1.0]], [[0.0]]) == pytest.approx(1.0)
    with pytest.raises(ShapeMismatch):
        distance(np.eye(3), np.eye(2))


def test_distance_at_isotropic_posture(half_square):
    ordering = (0, 1, 2, 3)
    _, _, config = placement(half_square, ordering)
    K = model_matrix(placement_model_set(half_square, ordering))
    Jbar = normalize_jacobian(build_jacobian(config), 0.5)
    assert distance(Jbar.entries, K.entries) < 1e-12


@pytest.mark.parametrize("matrix", [np.array([[1.0, 0], [0, 2]]), np.zeros((2, 3))])
def test_is_isotropic_matrix_false(matrix):
    assert is_isotropic_matrix(matrix) == (False, None)


def test_is_isotropic_matrix_shape():
    with pytest.raises(ShapeMismatch):
        is_isotropic_matrix(np.ones((3, 2)))


def test_generalized_inverse(square_K):
    np.testing.assert_allclose(generalized_inverse_isotropic(square_K), square_K.T / 4.0)
    np.testing.assert_allclose(generalized_inverse_isotropic(np.eye(3)), np.eye(3))
    np.testing.assert_allclose(generalized_inverse_isotropic(2.0 * np.eye(2)), 0.5 * np.eye(2))
    with pytest.raises(NotIsotropic):
        generalized_inverse_isotropic(np.diag([1.0, 2.0]))


def test_generalized_inverse_is_right_inverse(square_K):
    np.testing.assert_allclose(square_K @ generalized_inverse_isotropic(square_K), np.eye(3),
                               atol=1e-12)


def test_condition_number_frobenius(rng):
    assert condition_number_frobenius(np.eye(3)) == pytest.approx(1.0)
    assert condition_number_frobenius(np.diag([1.0, 2.0])) == pytest.approx(1.25)
    angle = rng.uniform(-math.pi, math.pi)
    rotation = 3.0 * np.array([[math.cos(angle), -math.sin(angle)],
                               [math.sin(angle), math.cos(angle)]])
    assert condition_number_frobenius(rotation) == pytest.approx(1.0)
    with pytest.raises(SingularMatrix):
        condition_number_frobenius(np.zeros((2, 2)))
    with pytest.raises(ShapeMismatch):
        condition_number_frobenius(np.ones((2, 3)))


def test_condition_number_spectral(square_K):
    assert condition_number_spectral(square_K) == pytest.approx(1.0)
    assert condition_number_spectral(np.array([[1.0, 0], [0, 2]])) == pytest.approx(2.0)
    with pytest.raises(SingularMatrix):
        condition_number_spectral(np.array([[1.0, 1, 1, 1], [0, 0, 0, 0], [1, 1, 1, 1]]))


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_isotropic_chains_have_unit_condition_number(n):
    # vertices of a regular n-gon scaled so that k^2 = n
    S = regular_polygon(n, math.sqrt(2.0), phase=0.3)
    for ordering in itertools.permutations(range(n)):
        _, _, config = placement(S, ordering)
        K = model_matrix(placement_model_set(S, ordering))
        result = optimal_lambda(config, K)
        Jbar = normalize_jacobian(build_jacobian(config), result.conditioning_length)
        assert condition_number_spectral(Jbar.entries) == pytest.approx(1.0, abs=1e-9)


def test_scaled_polygon_keeps_conditioning(unit_square):
    S = scale_set(PointSet(unit_square.coords), 3.0)
    _, _, config = placement(S, (0, 1, 2, 3))
    result = optimal_lambda(config, model_matrix(placement_model_set(S, (0, 1, 2, 3))))
    assert result.conditioning_length == pytest.approx(3.0)

#!/usr/bin/env python
# Copyright qgame authors
"""Test complex linear algebra."""

import math

import numpy as np
import pytest

from .common import _random_density, _random_hermitian, _random_matrix, _rng


def test_as_matrix_flat():
    """Test for as_matrix with a flat row-major input."""
    from qgame.linalg import as_matrix
    m = as_matrix([1, 2j, 3, 4], rows=2, cols=2)
    assert m.dtype == np.complex128
    assert m[0, 1] == 2j
    assert m[1, 0] == 3


def test_as_matrix_invalid():
    """Test for as_matrix with inconsistent or non-finite input."""
    from qgame.linalg import as_matrix
    from qgame.exceptions import InvalidArgument, DimensionError
    try:
        as_matrix([1, 2, 3], rows=2, cols=2)
        raise Exception
    except InvalidArgument:
        pass
    try:
        as_matrix([[1.0, float('nan')], [0, 1]])
        raise Exception
    except InvalidArgument:
        pass
    try:
        as_matrix([1, 2, 3])
        raise Exception
    except DimensionError:
        pass


def test_trace_non_square():
    """Test for mat_trace with a non-square matrix."""
    from qgame.linalg import mat_trace
    from qgame.exceptions import DimensionError
    assert mat_trace(np.eye(3)) == 3
    with pytest.raises(DimensionError):
        mat_trace(np.zeros((2, 3)))


def test_kron_dimensions():
    """Test for kron of two qubit operators."""
    from qgame.linalg import kron
    d = np.array([[0, 1], [-1, 0]], dtype=np.complex128)
    dd = kron(d, d)
    assert dd.shape == (4, 4)
    # D x D |00> = |11>
    assert np.allclose(dd[:, 0], [0, 0, 0, 1])


def test_partial_trace_product_state():
    """Test for partial_trace of a product state."""
    from qgame.linalg import Subsystem, kron, partial_trace
    rng = _rng()
    rho_a = _random_density(rng, 2)
    rho_b = _random_density(rng, 2)
    rho = kron(rho_a, rho_b)
    assert np.allclose(partial_trace(rho, Subsystem.A), rho_a)
    assert np.allclose(partial_trace(rho, Subsystem.B), rho_b)


def test_partial_trace_preserves_trace():
    """Test for partial_trace of random density matrices."""
    from qgame.linalg import Subsystem, partial_trace
    rng = _rng(7)
    for _ in range(20):
        rho = _random_density(rng, 4)
        for keep in [Subsystem.A, Subsystem.B]:
            reduced = partial_trace(rho, keep)
            assert reduced.shape == (2, 2)
            assert abs(np.trace(reduced) - 1) < 1e-12


def test_partial_trace_wrong_shape():
    """Test for partial_trace with a 2x2 input."""
    from qgame.linalg import Subsystem, partial_trace
    from qgame.exceptions import DimensionError
    try:
        partial_trace(np.eye(2), Subsystem.A)
        raise Exception
    except DimensionError:
        pass


def test_eig_hermitian_reconstructs():
    """Test for eig_hermitian on random Hermitian matrices."""
    from qgame.linalg import eig_hermitian
    rng = _rng(3)
    for dim in [2, 4]:
        for _ in range(10):
            h = _random_hermitian(rng, dim)
            values, vectors = eig_hermitian(h)
            assert np.all(np.diff(values) >= 0)
            assert np.allclose(vectors.conj().T @ vectors, np.eye(dim), atol=1e-10)
            assert np.allclose(vectors @ np.diag(values) @ vectors.conj().T, h, atol=1e-10)


def test_eig_hermitian_rejects_non_hermitian():
    """Test for eig_hermitian with a non-Hermitian matrix."""
    from qgame.linalg import eig_hermitian
    from qgame.exceptions import ContractViolation
    try:
        eig_hermitian(np.array([[0, 1], [0, 0]], dtype=np.complex128))
        raise Exception
    except ContractViolation:
        pass


def test_entropy_pure_and_mixed():
    """Test for von_neumann_entropy at its extremes."""
    from qgame.linalg import von_neumann_entropy
    pure = np.diag([1.0, 0.0]).astype(np.complex128)
    assert von_neumann_entropy(pure) == 0.0
    assert abs(von_neumann_entropy(np.eye(2) / 2) - 1.0) < 1e-12
    assert abs(von_neumann_entropy(np.eye(4) / 4) - 2.0) < 1e-12


def test_entropy_bell_reduction():
    """Test for von_neumann_entropy of a reduced Bell state."""
    from qgame.linalg import DensityMatrix, Subsystem, partial_trace, von_neumann_entropy
    bell = np.array([1, 0, 0, 1], dtype=np.complex128) / math.sqrt(2)
    rho = DensityMatrix.from_state(bell)
    assert abs(von_neumann_entropy(partial_trace(rho.mat, Subsystem.A)) - 1.0) < 1e-12


def test_density_matrix_validation():
    """Test for DensityMatrix invariants."""
    from qgame.linalg import DensityMatrix
    from qgame.exceptions import ContractViolation, DimensionError
    rho = DensityMatrix(np.diag([0.25, 0.25, 0.25, 0.25]))
    assert rho.dim == 4
    assert np.allclose(rho.populations(), 0.25)

    with pytest.raises(ContractViolation):
        DensityMatrix(np.diag([0.5, 0.4]))
    with pytest.raises(ContractViolation):
        DensityMatrix(np.diag([1.5, -0.5]))
    with pytest.raises(ContractViolation):
        DensityMatrix(np.array([[0.5, 0.1], [0.2, 0.5]]))
    with pytest.raises(DimensionError):
        DensityMatrix(np.eye(3) / 3)


def test_is_unitary():
    """Test for is_unitary."""
    from qgame.linalg import is_unitary
    h = np.array([[1, 1], [1, -1]], dtype=np.complex128) / math.sqrt(2)
    assert is_unitary(h)
    assert not is_unitary(2 * h)
    assert not is_unitary(np.zeros((2, 3)))


def test_algebra_identities():
    """Test for kron, dagger and mat_trace identities on random matrices."""
    from qgame.linalg import dagger, kron, mat_trace
    rng = _rng(13)
    a, b, c = (_random_matrix(rng, 2) for _ in range(3))
    assert np.max(np.abs(kron(kron(a, b), c) - kron(a, kron(b, c)))) < 1e-14
    assert np.array_equal(dagger(dagger(a)), a)
    assert abs(mat_trace(kron(a, b)) - mat_trace(a) * mat_trace(b)) < 1e-12
    d = np.array([[0, 1], [-1, 0]], dtype=np.complex128)
    assert np.array_equal(dagger(d), -d)
    assert np.array_equal(dagger(np.diag([1j, -1j])), np.diag([-1j, 1j]))


def test_partial_trace_bell_keep_b():
    """Test for partial_trace over A of a Bell state."""
    from qgame.linalg import DensityMatrix, Subsystem, partial_trace
    bell = np.array([1, 0, 0, 1], dtype=np.complex128) / math.sqrt(2)
    rho = DensityMatrix.from_state(bell)
    assert np.allclose(partial_trace(rho.mat, Subsystem.B), np.eye(2) / 2, atol=1e-15)


def test_eig_pauli_x():
    """Test for eig_hermitian on Pauli X."""
    from qgame.linalg import eig_hermitian
    values, vectors = eig_hermitian(np.array([[0, 1], [1, 0]], dtype=np.complex128))
    assert np.allclose(values, [-1.0, 1.0])
    x = np.array([[0, 1], [1, 0]])
    for i in range(2):
        assert np.allclose(x @ vectors[:, i], values[i] * vectors[:, i], atol=1e-10)


def test_is_hermitian():
    """Test for is_hermitian."""
    from qgame.linalg import is_hermitian
    rng = _rng(3)
    assert is_hermitian(_random_hermitian(rng, 4))
    assert is_hermitian(_random_density(rng, 2))
    assert not is_hermitian(np.array([[1.0, 1j], [1j, 0.0]]))
    assert not is_hermitian(np.zeros((2, 3)))
    assert not is_hermitian(np.zeros(4))

#!/usr/bin/env python
# Copyright qgame authors
"""Dense complex linear algebra on the small operators of the game.

Matrices are ``numpy.ndarray`` of dtype ``complex128``. The two-qubit basis is
ordered |00>, |01>, |10>, |11> with the left factor belonging to player A.
"""

from dataclasses import dataclass
from enum import Enum
import logging
from typing import Iterable, Optional, Tuple

import numpy as np

from qgame.exceptions import ContractViolation, DimensionError, InvalidArgument

logger = logging.getLogger(__name__)

ComplexMatrix = np.ndarray

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
EIGENVALUE_FLOOR = -1e-10
EIGENSOLVE_TOL = 1e-10
ENTROPY_CUTOFF = 1e-15


class Subsystem(str, Enum):
    """Subsystem of a two-qubit operator."""
    A = 'A'
    B = 'B'


def as_matrix(entries: Iterable[complex], rows: Optional[int] = None, cols: Optional[int] = None) -> ComplexMatrix:
    """Build a complex matrix.

    Args:
        entries (Iterable[complex]): nested rows, or a flat row-major sequence when `rows` and `cols` are given
        rows (int): number of rows of a flat input
        cols (int): number of columns of a flat input

    Returns:
        (ComplexMatrix): the matrix

    """
    mat = np.array(entries, dtype=np.complex128)
    if rows is not None or cols is not None:
        if rows is None or cols is None:
            raise InvalidArgument('rows and cols must be given together')
        if mat.size != rows * cols:
            raise InvalidArgument(f'expected {rows * cols} entries, got {mat.size}')
        mat = mat.reshape(rows, cols)
    if mat.ndim != 2:
        raise DimensionError(f'a matrix must be two-dimensional, got shape {mat.shape}')
    if not np.all(np.isfinite(mat)):
        raise InvalidArgument('matrix entries must be finite')
    return mat


def basis_state(index: int, dim: int) -> np.ndarray:
    """Return the computational basis vector |index> of dimension `dim`."""
    vec = np.zeros(dim, dtype=np.complex128)
    vec[index] = 1.0
    return vec


def kron(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    """Kronecker product."""
    return np.kron(a, b)


def dagger(a: ComplexMatrix) -> ComplexMatrix:
    """Conjugate transpose."""
    return np.conjugate(a).T


def _check_square(a: ComplexMatrix, name: str = 'matrix'):
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f'{name} must be square, got shape {a.shape}')


def mat_trace(a: ComplexMatrix) -> complex:
    """Trace of a square matrix.

    Args:
        a (ComplexMatrix): square matrix

    Returns:
        (complex): sum of the diagonal

    """
    _check_square(a)
    return complex(np.trace(a))


def partial_trace(rho: ComplexMatrix, keep: Subsystem) -> ComplexMatrix:
    """Reduce a two-qubit operator to one of its subsystems.

    Args:
        rho (ComplexMatrix): 4x4 operator
        keep (Subsystem): subsystem to keep

    Returns:
        (ComplexMatrix): 2x2 reduced operator

    """
    if rho.shape != (4, 4):
        raise DimensionError(f'partial_trace expects a 4x4 operator, got shape {rho.shape}')
    # Indices: (a, b, a', b')
    tensor = rho.reshape(2, 2, 2, 2)
    if Subsystem(keep) == Subsystem.A:
        return np.einsum('ijkj->ik', tensor)
    return np.einsum('jijk->ik', tensor)


def hermiticity_defect(a: ComplexMatrix) -> float:
    """Return max |A - A^dagger| elementwise."""
    return float(np.max(np.abs(a - dagger(a))))


def is_hermitian(a: ComplexMatrix, tol: float = HERMITIAN_TOL) -> bool:
    """Whether the square matrix is Hermitian within `tol`."""
    return a.ndim == 2 and a.shape[0] == a.shape[1] and hermiticity_defect(a) <= tol


def is_unitary(a: ComplexMatrix, tol: float = HERMITIAN_TOL) -> bool:
    """Whether the square matrix is unitary within `tol`."""
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        return False
    defect = np.max(np.abs(dagger(a) @ a - np.eye(a.shape[0])))
    return bool(defect <= tol)


def eig_hermitian(a: ComplexMatrix, tol: float = EIGENSOLVE_TOL) -> Tuple[np.ndarray, ComplexMatrix]:
    """Eigendecomposition of a Hermitian matrix.

    Args:
        a (ComplexMatrix): Hermitian matrix
        tol (float): Hermiticity tolerance

    Returns:
        (np.ndarray): real eigenvalues in ascending order
        (ComplexMatrix): orthonormal eigenvectors as columns

    """
    _check_square(a)
    defect = hermiticity_defect(a)
    if defect > tol:
        raise ContractViolation(f'eig_hermitian requires a Hermitian matrix (defect {defect:.3e})')
    eigenvalues, eigenvectors = np.linalg.eigh(a)
    return eigenvalues, eigenvectors


def von_neumann_entropy(rho: ComplexMatrix) -> float:
    """Von Neumann entropy in bits.

    Args:
        rho (ComplexMatrix): density matrix

    Returns:
        (float): -sum(lambda * log2(lambda)) over the eigenvalues, with 0 log 0 = 0

    """
    eigenvalues, _ = eig_hermitian(rho)
    eigenvalues = eigenvalues[eigenvalues > ENTROPY_CUTOFF]
    entropy = float(-np.sum(eigenvalues * np.log2(eigenvalues)))
    return max(0.0, entropy)


@dataclass(frozen=True)
class DensityMatrix:
    """Density matrix of one or two qubits."""

    mat: ComplexMatrix

    def __post_init__(self):
        mat = np.asarray(self.mat, dtype=np.complex128)
        if mat.shape not in [(2, 2), (4, 4)]:
            raise DimensionError(f'a density matrix must be 2x2 or 4x4, got shape {mat.shape}')
        if not np.all(np.isfinite(mat)):
            raise ContractViolation('density matrix entries must be finite')
        defect = hermiticity_defect(mat)
        if defect > HERMITIAN_TOL:
            raise ContractViolation(f'density matrix is not Hermitian (defect {defect:.3e})')
        trace = mat_trace(mat)
        if abs(trace - 1.0) > TRACE_TOL:
            raise ContractViolation(f'density matrix trace is {trace}, expected 1')
        smallest = float(np.linalg.eigvalsh((mat + dagger(mat)) / 2)[0])
        if smallest < EIGENVALUE_FLOOR:
            raise ContractViolation(f'density matrix has a negative eigenvalue {smallest:.3e}')
        object.__setattr__(self, 'mat', mat)

    @classmethod
    def from_state(cls, state: np.ndarray) -> 'DensityMatrix':
        """Projector onto a normalized state vector."""
        state = np.asarray(state, dtype=np.complex128)
        return cls(np.outer(state, np.conjugate(state)))

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def populations(self) -> np.ndarray:
        """Diagonal of the matrix in the computational basis."""
        return np.real(np.diag(self.mat)).copy()

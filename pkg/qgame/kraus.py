#!/usr/bin/env python
# Copyright qgame authors
"""Kraus operators of the system-bath coupling H_TB = xi (a^dag a b^dag + a^dag a b).

The bath is a truncated oscillator with `n_levels` Fock states, the principal
system has two levels and hbar = 1. Only the product t * xi enters.
"""

from dataclasses import dataclass
import logging
import math
from typing import List, Sequence, Tuple

import numpy as np

from qgame.exceptions import ContractViolation, InvalidArgument, SeriesError
from qgame.linalg import ComplexMatrix, as_matrix, basis_state, dagger

logger = logging.getLogger(__name__)

DEFAULT_TERM_TOL = 1e-14
MAX_TERMS = 200
MAX_SUBSTEPS = 100_000
COMPLETENESS_TOL = 1e-10

PAULI_Z = np.diag([1.0, -1.0]).astype(np.complex128)


@dataclass(frozen=True)
class HamiltonianParams:
    """Coupling constant and interaction time."""

    xi: float
    t: float

    def __post_init__(self):
        if not (math.isfinite(self.xi) and math.isfinite(self.t)):
            raise InvalidArgument(f'xi and t must be finite, got xi={self.xi}, t={self.t}')
        if self.t < 0:
            raise InvalidArgument(f't must be >= 0, got {self.t}')

    @property
    def theta(self) -> float:
        return self.t * self.xi


@dataclass(frozen=True, eq=False)
class FockSpace:
    """Truncated Fock space of the bath oscillator."""

    n_levels: int
    b: ComplexMatrix
    b_dag: ComplexMatrix

    @property
    def quadrature(self) -> ComplexMatrix:
        """Return b + b^dag."""
        return self.b + self.b_dag


@dataclass(frozen=True, eq=False)
class GTable:
    """Coefficients g(m, j) of (b + b^dag)^m |0> = sum_j g(m, j) |j>."""

    values: np.ndarray

    @property
    def max_m(self) -> int:
        return self.values.shape[0] - 1

    def g(self, m: int, j: int) -> float:
        return float(self.values[m, j])


@dataclass(frozen=True, eq=False)
class QuantumChannel:
    """Ordered Kraus operators of a trace-preserving map on the principal system."""

    kraus: Tuple[ComplexMatrix, ...]
    label: str = ''

    def __post_init__(self):
        operators = tuple(np.asarray(op, dtype=np.complex128) for op in self.kraus)
        if len(operators) == 0:
            raise InvalidArgument('a channel needs at least one Kraus operator')
        for op in operators:
            if op.shape != (2, 2):
                raise InvalidArgument(f'Kraus operators must be 2x2, got shape {op.shape}')
        object.__setattr__(self, 'kraus', operators)
        defect = self.completeness_defect()
        if defect > COMPLETENESS_TOL:
            raise ContractViolation(f'channel "{self.label}" is not trace preserving (defect {defect:.3e})')

    def completeness_defect(self) -> float:
        """Return max |sum_k S_k^dag S_k - I| elementwise."""
        total = sum(dagger(op) @ op for op in self.kraus)
        return float(np.max(np.abs(total - np.eye(2))))

    def apply(self, rho: ComplexMatrix) -> ComplexMatrix:
        """Return sum_k S_k rho S_k^dag."""
        return sum(op @ rho @ dagger(op) for op in self.kraus)

    def to_dict(self) -> dict:
        """Serialize as {"label": ..., "kraus": [[[re, im], ...], ...]} with row-major entries."""
        return {
            'label': self.label,
            'kraus': [
                [[float(z.real), float(z.imag)] for z in op.ravel()]
                for op in self.kraus
            ],
        }


def channel_from_dict(data: dict) -> QuantumChannel:
    """Parse the exported channel format.

    Args:
        data (dict): {"label": text, "kraus": [[[re, im], ...], ...]}

    Returns:
        (QuantumChannel): the channel

    """
    try:
        operators = [
            as_matrix([complex(re, im) for re, im in entries], rows=2, cols=2)
            for entries in data['kraus']
        ]
    except (KeyError, TypeError, ValueError) as e:
        raise InvalidArgument(f'malformed channel data: {e}')
    return QuantumChannel(tuple(operators), label=str(data.get('label', '')))


def make_fock_space(n_levels: int) -> FockSpace:
    """Build ladder operators of a truncated oscillator.

    Args:
        n_levels (int): number of Fock levels, at least 2

    Returns:
        (FockSpace): b |j> = sqrt(j) |j-1>, b^dag |j> = sqrt(j+1) |j+1> below the top level

    """
    if int(n_levels) != n_levels or n_levels < 2:
        raise InvalidArgument(f'n_levels must be an integer >= 2, got {n_levels}')
    n_levels = int(n_levels)
    b = np.diag(np.sqrt(np.arange(1, n_levels, dtype=float)), k=1).astype(np.complex128)
    return FockSpace(n_levels=n_levels, b=b, b_dag=dagger(b))


def g_table(max_m: int, space: FockSpace) -> GTable:
    """Tabulate g(m, j) by applying b + b^dag once per row.

    Args:
        max_m (int): largest power m
        space (FockSpace): truncated bath space

    Returns:
        (GTable): table of shape (max_m + 1, n_levels)

    """
    if max_m < 0:
        raise InvalidArgument(f'max_m must be >= 0, got {max_m}')
    quadrature = np.real(space.quadrature)
    values = np.zeros((max_m + 1, space.n_levels))
    values[0, 0] = 1.0
    for m in range(max_m):
        values[m + 1] = quadrature @ values[m]
    return GTable(values)


def _series_step(vec: np.ndarray, coefficient: complex, generator: ComplexMatrix,
                 term_tol: float, max_terms: int) -> np.ndarray:
    """Sum sum_m (coefficient^m / m!) generator^m vec until the next term is below `term_tol`."""
    result = vec.copy()
    term = vec
    for m in range(1, max_terms + 1):
        term = (coefficient / m) * (generator @ term)
        norm = np.linalg.norm(term)
        if not math.isfinite(norm):
            raise SeriesError(f'series term {m} is not finite')
        if norm < term_tol:
            return result
        result = result + term
    raise SeriesError(f'series did not converge within {max_terms} terms (last term norm {norm:.3e})')


def evolve_bath(n: int, params: HamiltonianParams, space: FockSpace,
                term_tol: float = DEFAULT_TERM_TOL, max_terms: int = MAX_TERMS) -> np.ndarray:
    """Bath amplitudes of U_TB |n, 0>.

    The series sum_m ((-i n t xi)^m / m!) (b + b^dag)^m |0> is evaluated in
    equal sub-steps so that every partial series has a small argument; each
    sub-step stops at the first term with norm below `term_tol`.

    Args:
        n (int): principal-system level, 0 or 1
        params (HamiltonianParams): coupling and time
        space (FockSpace): truncated bath space
        term_tol (float): stop threshold on the norm of the next term
        max_terms (int): hard cap on the number of terms per sub-step

    Returns:
        (np.ndarray): complex amplitudes <j| over the bath levels

    """
    if n not in (0, 1):
        raise InvalidArgument(f'the principal system has two levels, got n={n}')
    if not term_tol > 0:
        raise InvalidArgument(f'term_tol must be > 0, got {term_tol}')
    if max_terms < 1:
        raise InvalidArgument(f'max_terms must be >= 1, got {max_terms}')

    angle = n * params.theta
    # ||b + b^dag|| <= 2 sqrt(N - 1)
    bound = abs(angle) * 2.0 * math.sqrt(space.n_levels - 1)
    steps = max(1, math.ceil(bound))
    if steps > MAX_SUBSTEPS:
        raise SeriesError(f't xi = {params.theta!r} needs {steps} sub-steps, more than {MAX_SUBSTEPS}')
    coefficient = -1j * angle / steps

    vec = basis_state(0, space.n_levels)
    generator = space.quadrature
    for _ in range(steps):
        vec = _series_step(vec, coefficient, generator, term_tol, max_terms)
    logger.debug('evolve_bath n=%d theta=%r steps=%d norm=%r', n, params.theta, steps, np.linalg.norm(vec))
    return vec


def bath_norm_deviation(params: HamiltonianParams, space: FockSpace,
                        term_tol: float = DEFAULT_TERM_TOL, max_terms: int = MAX_TERMS) -> float:
    """Return | ||U_TB |1, 0>|| - 1 | for the truncated series."""
    amplitudes = evolve_bath(1, params, space, term_tol=term_tol, max_terms=max_terms)
    return abs(float(np.linalg.norm(amplitudes)) - 1.0)


def derive_kraus(params: HamiltonianParams, space: FockSpace,
                 term_tol: float = DEFAULT_TERM_TOL, max_terms: int = MAX_TERMS) -> QuantumChannel:
    """Kraus operators S_k = sum_{m,n} <A_m B_k| U_TB |A_n B_0> |A_m><A_n|.

    U_TB conserves a^dag a, so every S_k is diagonal with entries
    <k| U_TB |n, 0> for n = 0, 1.

    Args:
        params (HamiltonianParams): coupling and time
        space (FockSpace): truncated bath space
        term_tol (float): series stop threshold
        max_terms (int): series term cap

    Returns:
        (QuantumChannel): one Kraus operator per bath level

    """
    amplitudes = [
        evolve_bath(n, params, space, term_tol=term_tol, max_terms=max_terms)
        for n in (0, 1)
    ]
    kraus = [
        np.diag([amplitudes[0][k], amplitudes[1][k]])
        for k in range(space.n_levels)
    ]
    label = f'H_TB series (t={params.t!r}, xi={params.xi!r}, levels={space.n_levels})'
    return QuantumChannel(tuple(kraus), label=label)


def qpdc_kraus(gamma: float) -> QuantumChannel:
    """Quantum phase damping channel S_0 = diag(1, sqrt(1 - gamma)), S_1 = diag(0, sqrt(gamma)).

    Args:
        gamma (float): scattering probability in [0, 1]

    Returns:
        (QuantumChannel): the two-operator channel

    """
    if not (math.isfinite(gamma) and 0.0 <= gamma <= 1.0):
        raise InvalidArgument(f'gamma must be in [0, 1], got {gamma}')
    kraus = (
        np.diag([1.0, math.sqrt(1.0 - gamma)]).astype(np.complex128),
        np.diag([0.0, math.sqrt(gamma)]).astype(np.complex128),
    )
    return QuantumChannel(kraus, label=f'QPDC(gamma={gamma!r})')


def gamma_of(params: HamiltonianParams) -> float:
    """Return sin^2(t xi)."""
    return math.sin(params.theta) ** 2


def phase_flip(params: HamiltonianParams) -> bool:
    """Whether cos(t xi) < 0, where the derived channel is the QPDC followed by Z."""
    return math.cos(params.theta) < 0


def qpdc_reference(params: HamiltonianParams) -> QuantumChannel:
    """QPDC at gamma = sin^2(t xi), composed with Z when cos(t xi) < 0.

    This is the closed-form channel whose action equals the series channel of
    `derive_kraus` for the two-level bath.
    """
    channel = qpdc_kraus(gamma_of(params))
    if not phase_flip(params):
        return channel
    kraus = tuple(PAULI_Z @ op for op in channel.kraus)
    return QuantumChannel(kraus, label=f'{channel.label} then Z')


def channel_action_distance(first: QuantumChannel, second: QuantumChannel,
                            states: Sequence[ComplexMatrix]) -> float:
    """Largest elementwise difference of the two channel actions over `states`."""
    distances: List[float] = [
        float(np.max(np.abs(first.apply(rho) - second.apply(rho))))
        for rho in states
    ]
    return max(distances)

#!/usr/bin/env python
# Copyright qgame authors
"""Two-player quantum game whose strategies are phase damping channels.

The game follows the entangle / play / disentangle protocol on two qubits:
rho_in = |00><00| is entangled by J, each player applies a channel, and the
same entangler is undone before the payoff operator is measured.
"""

from dataclasses import dataclass, field
from enum import Enum
import logging
import math
from typing import Sequence, Tuple, Union

import numpy as np

from qgame.exceptions import InvalidArgument
from qgame.kraus import qpdc_kraus
from qgame.linalg import \
    ComplexMatrix, \
    DensityMatrix, \
    Subsystem, \
    basis_state, \
    dagger, \
    is_unitary, \
    kron, \
    partial_trace, \
    von_neumann_entropy

logger = logging.getLogger(__name__)

ANGLE_TOL = 1e-12
UNITARY_TOL = 1e-10
DEFAULT_EPSILON = 1e-10

IDENTITY = np.eye(2, dtype=np.complex128)
HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=np.complex128) / math.sqrt(2.0)


class EntanglerKind(str, Enum):
    """Entangling operator of the protocol."""
    EWL_J = 'J'
    PD_J = 'JPD'


class PayoffMode(str, Enum):
    """How the payoff weights are obtained."""
    JOINT_INFORMATION = 'info'
    VON_NEUMANN = 'vn'


class PayoffSource(str, Enum):
    """Which evaluation of the channel-game payoff a surface uses."""
    BRUTEFORCE = 'bruteforce'
    CLOSED_FORM = 'closed-form'
    CORRECTED = 'corrected'


def _check_range(name: str, value: float, low: float, high: float, tol: float = ANGLE_TOL):
    if not (math.isfinite(value) and low - tol <= value <= high + tol):
        raise InvalidArgument(f'{name} must be in [{low}, {high}], got {value}')


def _check_probability(name: str, value: float):
    _check_range(name, value, 0.0, 1.0, tol=0.0)


@dataclass(frozen=True)
class StrategyAngles:
    """Angles (theta, phi) of a unitary strategy."""

    theta: float
    phi: float

    def __post_init__(self):
        _check_range('theta', self.theta, 0.0, math.pi)
        _check_range('phi', self.phi, 0.0, math.pi / 2)


COOPERATE = StrategyAngles(0.0, 0.0)
DEFECT = StrategyAngles(math.pi, 0.0)


@dataclass(frozen=True)
class GameConfig:
    """Parameters of one channel game."""

    chi: float = math.pi / 2
    entangler: EntanglerKind = EntanglerKind.PD_J
    base_noise: Tuple[float, float] = (0.1, 0.1)
    epsilon: float = DEFAULT_EPSILON
    payoff_mode: PayoffMode = PayoffMode.JOINT_INFORMATION

    def __post_init__(self):
        _check_range('chi', self.chi, 0.0, math.pi / 2)
        object.__setattr__(self, 'entangler', EntanglerKind(self.entangler))
        object.__setattr__(self, 'payoff_mode', PayoffMode(self.payoff_mode))
        if len(self.base_noise) != 2:
            raise InvalidArgument(f'base_noise must be a pair, got {self.base_noise}')
        gamma_a, gamma_b = (float(g) for g in self.base_noise)
        _check_probability('gamma_A', gamma_a)
        _check_probability('gamma_B', gamma_b)
        object.__setattr__(self, 'base_noise', (gamma_a, gamma_b))
        if not (math.isfinite(self.epsilon) and 0.0 < self.epsilon < 1.0):
            raise InvalidArgument(f'epsilon must be in (0, 1), got {self.epsilon}')


@dataclass(frozen=True, eq=False)
class PayoffWeights:
    """Diagonal payoff operator P = sum_ik w_ik |ik><ik|, shared by both players."""

    w: np.ndarray = field(default_factory=lambda: np.zeros((2, 2)))

    def __post_init__(self):
        w = np.array(self.w, dtype=float)
        if w.shape != (2, 2):
            raise InvalidArgument(f'payoff weights must be 2x2, got shape {w.shape}')
        if not np.all(np.isfinite(w)) or np.any(w < 0):
            raise InvalidArgument(f'payoff weights must be finite and non-negative, got {w.tolist()}')
        object.__setattr__(self, 'w', w)

    def operator(self) -> ComplexMatrix:
        """Return the 4x4 payoff operator."""
        return np.diag(self.w.ravel()).astype(np.complex128)

    def is_symmetric(self, tol: float = 1e-10) -> bool:
        return abs(self.w[0, 1] - self.w[1, 0]) <= tol

    def to_list(self) -> list:
        return [[float(v) for v in row] for row in self.w]


def strategy_unitary(angles: StrategyAngles) -> ComplexMatrix:
    """U(theta, phi) = [[e^{i phi} cos(theta/2), sin(theta/2)], [-sin(theta/2), e^{-i phi} cos(theta/2)]]."""
    cos = math.cos(angles.theta / 2)
    sin = math.sin(angles.theta / 2)
    return np.array([
        [np.exp(1j * angles.phi) * cos, sin],
        [-sin, np.exp(-1j * angles.phi) * cos],
    ], dtype=np.complex128)


def entangler(chi: float, kind: EntanglerKind) -> ComplexMatrix:
    """Entangling operator.

    J(chi) = cos(chi/2) I x I + i sin(chi/2) D x D, and J_PD(chi) = J(chi) (H x H).

    Args:
        chi (float): entanglement degree in [0, pi/2]
        kind (EntanglerKind): J or J_PD

    Returns:
        (ComplexMatrix): 4x4 unitary

    """
    _check_range('chi', chi, 0.0, math.pi / 2)
    d = strategy_unitary(DEFECT)
    j = math.cos(chi / 2) * np.eye(4, dtype=np.complex128) + 1j * math.sin(chi / 2) * kron(d, d)
    if EntanglerKind(kind) == EntanglerKind.PD_J:
        j = j @ kron(HADAMARD, HADAMARD)
    return j


def initial_state(chi: float, kind: EntanglerKind) -> ComplexMatrix:
    """Return rho'_in = J |00><00| J^dag."""
    j = entangler(chi, kind)
    psi = j @ basis_state(0, 4)
    return np.outer(psi, np.conjugate(psi))


def ewl_pure_final_state(angles_a: StrategyAngles, angles_b: StrategyAngles,
                         chi: float, kind: EntanglerKind) -> np.ndarray:
    """Final state J^dag (U_A x U_B) J |00> of the unitary-strategy game."""
    j = entangler(chi, kind)
    play = kron(strategy_unitary(angles_a), strategy_unitary(angles_b))
    return dagger(j) @ play @ j @ basis_state(0, 4)


def ewl_payoff(angles_a: StrategyAngles, angles_b: StrategyAngles, weights: PayoffWeights,
               chi: float, kind: EntanglerKind) -> float:
    """Payoff tr(P rho_fin) of the unitary-strategy game."""
    psi = ewl_pure_final_state(angles_a, angles_b, chi, kind)
    return float(np.dot(weights.w.ravel(), np.abs(psi) ** 2))


def _strategy_kraus(gamma_a: float, gamma_b: float) -> Tuple[Tuple[ComplexMatrix, ...], Tuple[ComplexMatrix, ...]]:
    return qpdc_kraus(gamma_a).kraus, qpdc_kraus(gamma_b).kraus


def joint_probabilities(gamma_a: float, gamma_b: float, chi: float, kind: EntanglerKind) -> np.ndarray:
    """Joint noise probabilities p_ik = tr(s_i^A x s_k^B rho'_in (s_i^A x s_k^B)^dag).

    Args:
        gamma_a (float): noise of player A in [0, 1]
        gamma_b (float): noise of player B in [0, 1]
        chi (float): entanglement degree
        kind (EntanglerKind): entangler

    Returns:
        (np.ndarray): 2x2 matrix indexed [i, k]

    """
    rho = initial_state(chi, kind)
    kraus_a, kraus_b = _strategy_kraus(gamma_a, gamma_b)
    p = np.zeros((2, 2))
    for i, s_a in enumerate(kraus_a):
        for k, s_b in enumerate(kraus_b):
            op = kron(s_a, s_b)
            p[i, k] = max(0.0, float(np.real(np.trace(op @ rho @ dagger(op)))))
    return p


def information_weights(probabilities: np.ndarray, epsilon: float = DEFAULT_EPSILON) -> PayoffWeights:
    """Joint information w_ik = -log2(max(p_ik, epsilon))."""
    clamped = np.clip(np.asarray(probabilities, dtype=float), epsilon, 1.0)
    return PayoffWeights(-np.log2(clamped) + 0.0)


def payoff_weights(config: GameConfig) -> PayoffWeights:
    """Payoff weights of a game, evaluated at its base noise pair.

    Args:
        config (GameConfig): game parameters

    Returns:
        (PayoffWeights): joint-information weights, or Von Neumann weights of the classical pair I, D

    """
    if config.payoff_mode == PayoffMode.VON_NEUMANN:
        pairs = [(COOPERATE, COOPERATE), (DEFECT, DEFECT)]
        return von_neumann_weights(config.chi, pairs, kind=config.entangler)
    gamma_a, gamma_b = config.base_noise
    p = joint_probabilities(gamma_a, gamma_b, config.chi, config.entangler)
    weights = information_weights(p, config.epsilon)
    logger.debug('weights at base %r: p=%r w=%r', config.base_noise, p.tolist(), weights.to_list())
    return weights


def channel_game_final_state(gamma_star_a: float, gamma_star_b: float,
                             chi: float, kind: EntanglerKind) -> DensityMatrix:
    """Final state rho_fin = J^dag sigma J with sigma = sum_ik (s_i^A x s_k^B) rho'_in (...)^dag.

    The same operator entangles and disentangles.

    Args:
        gamma_star_a (float): strategy of player A in [0, 1]
        gamma_star_b (float): strategy of player B in [0, 1]
        chi (float): entanglement degree
        kind (EntanglerKind): entangler

    Returns:
        (DensityMatrix): 4x4 final state

    """
    j = entangler(chi, kind)
    psi = j @ basis_state(0, 4)
    rho = np.outer(psi, np.conjugate(psi))
    kraus_a, kraus_b = _strategy_kraus(gamma_star_a, gamma_star_b)
    sigma = np.zeros((4, 4), dtype=np.complex128)
    for s_a in kraus_a:
        for s_b in kraus_b:
            op = kron(s_a, s_b)
            sigma += op @ rho @ dagger(op)
    return DensityMatrix(dagger(j) @ sigma @ j)


def payoff_bruteforce(gamma_star_a: float, gamma_star_b: float, weights: PayoffWeights,
                      chi: float, kind: EntanglerKind) -> float:
    """Common payoff F = sum_ik w_ik <ik| rho_fin |ik>."""
    rho_fin = channel_game_final_state(gamma_star_a, gamma_star_b, chi, kind)
    return float(np.dot(weights.w.ravel(), rho_fin.populations()))


def payoff_closed_form(gamma_star_a: float, gamma_star_b: float, weights: PayoffWeights, chi: float) -> float:
    """Closed-form payoff of the J_PD game as originally stated.

    Args:
        gamma_star_a (float): strategy of player A
        gamma_star_b (float): strategy of player B
        weights (PayoffWeights): w_ik in place of I(s_i, s_k)
        chi (float): entanglement degree

    Returns:
        (float): payoff

    """
    _check_probability('gamma_star_A', gamma_star_a)
    _check_probability('gamma_star_B', gamma_star_b)
    a = math.sqrt(1.0 - gamma_star_a)
    b = math.sqrt(1.0 - gamma_star_b)
    c2 = math.cos(chi / 2) ** 2
    c4 = c2 ** 2
    w = weights.w
    cross = 8 * (a - b) * c2 + 8 * (b - a) * c4
    return float(
        w[0, 0] * (a + b + 1 + a * b) / 4
        + w[0, 1] * (a - b + 1 - a * b + cross) / 4
        + w[1, 0] * (b - a + 1 - a * b + cross) / 4
        + w[1, 1] * (a * b - b - a + 1) / 4
    )


def corrected_populations(gamma_star_a: float, gamma_star_b: float, chi: float) -> np.ndarray:
    """Diagonal of rho_fin for the J_PD game, indexed [i, k]."""
    _check_probability('gamma_star_A', gamma_star_a)
    _check_probability('gamma_star_B', gamma_star_b)
    a = math.sqrt(1.0 - gamma_star_a)
    b = math.sqrt(1.0 - gamma_star_b)
    c2 = math.cos(chi) ** 2
    s2 = math.sin(chi) ** 2
    return np.array([
        [(1 + a) * (1 + b), c2 * (1 + a) * (1 - b) + s2 * (1 - a) * (1 + b)],
        [c2 * (1 - a) * (1 + b) + s2 * (1 + a) * (1 - b), (1 - a) * (1 - b)],
    ]) / 4


def payoff_corrected_form(gamma_star_a: float, gamma_star_b: float, weights: PayoffWeights, chi: float) -> float:
    """Closed-form payoff of the J_PD game re-derived from rho_fin."""
    populations = corrected_populations(gamma_star_a, gamma_star_b, chi)
    return float(np.sum(weights.w * populations))


def closed_form_discrepancy(gamma_star_a: float, gamma_star_b: float, weights: PayoffWeights, chi: float) -> float:
    """Literal closed form minus the brute-force payoff of the J_PD game.

    Equals w_01 (sqrt(1 - gamma*_A) - sqrt(1 - gamma*_B)) sin^2(chi).
    """
    literal = payoff_closed_form(gamma_star_a, gamma_star_b, weights, chi)
    exact = payoff_bruteforce(gamma_star_a, gamma_star_b, weights, chi, EntanglerKind.PD_J)
    return literal - exact


def evaluate_payoff(gamma_star_a: float, gamma_star_b: float, weights: PayoffWeights,
                    chi: float, kind: EntanglerKind, source: PayoffSource) -> float:
    """Dispatch to the payoff evaluation named by `source`."""
    source = PayoffSource(source)
    if source == PayoffSource.BRUTEFORCE:
        return payoff_bruteforce(gamma_star_a, gamma_star_b, weights, chi, kind)
    if EntanglerKind(kind) != EntanglerKind.PD_J:
        raise InvalidArgument(f'the {source.value} payoff is derived for the JPD entangler only')
    if source == PayoffSource.CLOSED_FORM:
        return payoff_closed_form(gamma_star_a, gamma_star_b, weights, chi)
    return payoff_corrected_form(gamma_star_a, gamma_star_b, weights, chi)


StrategyLike = Union[StrategyAngles, ComplexMatrix]


def _as_unitary(strategy: StrategyLike) -> ComplexMatrix:
    if isinstance(strategy, StrategyAngles):
        return strategy_unitary(strategy)
    mat = np.asarray(strategy, dtype=np.complex128)
    if mat.shape != (2, 2) or not is_unitary(mat, UNITARY_TOL):
        raise InvalidArgument('Von Neumann weights are defined for unitary strategies only')
    return mat


def von_neumann_weights(chi: float, strategy_pairs: Sequence[Tuple[StrategyLike, StrategyLike]],
                        kind: EntanglerKind = EntanglerKind.EWL_J,
                        player: Subsystem = Subsystem.A) -> PayoffWeights:
    """Entropy weights w_ik = S(tr_B phi_ik) with phi_ik = (U_i^A x U_k^B) rho'_in (U_i^A x U_k^B)^dag.

    Args:
        chi (float): entanglement degree
        strategy_pairs (list): two pairs, pairs[i] = (strategy i of A, strategy i of B)
        kind (EntanglerKind): entangler preparing rho'_in
        player (Subsystem): A traces out B, B traces out A

    Returns:
        (PayoffWeights): 2x2 weights in bits

    """
    if len(strategy_pairs) != 2:
        raise InvalidArgument(f'expected two strategy pairs, got {len(strategy_pairs)}')
    strategies_a = [_as_unitary(pair[0]) for pair in strategy_pairs]
    strategies_b = [_as_unitary(pair[1]) for pair in strategy_pairs]
    keep = Subsystem.A if Subsystem(player) == Subsystem.A else Subsystem.B

    rho = initial_state(chi, kind)
    w = np.zeros((2, 2))
    for i, u_a in enumerate(strategies_a):
        for k, u_b in enumerate(strategies_b):
            op = kron(u_a, u_b)
            phi = op @ rho @ dagger(op)
            w[i, k] = von_neumann_entropy(partial_trace(phi, keep))
    return PayoffWeights(w)

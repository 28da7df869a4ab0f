#!/usr/bin/env python
# Copyright qgame authors
"""Test common."""

import math
import os

import numpy as np

from qgame.config import CONFIG_ENV, DEBUG_ENV

SEED = 20240611


def _rng(seed: int = SEED) -> np.random.Generator:
    """Seeded generator so that random inputs are reproducible."""
    return np.random.default_rng(seed)


def _random_matrix(rng: np.random.Generator, dim: int) -> np.ndarray:
    return rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))


def _random_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    m = _random_matrix(rng, dim)
    return (m + m.conj().T) / 2


def _random_density(rng: np.random.Generator, dim: int) -> np.ndarray:
    m = _random_matrix(rng, dim)
    rho = m @ m.conj().T
    return rho / np.trace(rho)


def _clear_env():
    """Remove environment variables that change the run configuration."""
    for name in [CONFIG_ENV, DEBUG_ENV]:
        os.environ.pop(name, None)


def _populations_jpd(gamma_star_a: float, gamma_star_b: float, chi: float) -> np.ndarray:
    """Diagonal of the J_PD final state, derived by hand."""
    a = math.sqrt(1 - gamma_star_a)
    b = math.sqrt(1 - gamma_star_b)
    c2 = math.cos(chi) ** 2
    s2 = math.sin(chi) ** 2
    return np.array([
        [(1 + a) * (1 + b), c2 * (1 + a) * (1 - b) + s2 * (1 - a) * (1 + b)],
        [c2 * (1 - a) * (1 + b) + s2 * (1 + a) * (1 - b), (1 - a) * (1 - b)],
    ]) / 4


def _probabilities_jpd(gamma_a: float, gamma_b: float) -> np.ndarray:
    """Joint noise probabilities of the J_PD game; they do not depend on chi."""
    return np.array([
        [(2 - gamma_a) * (2 - gamma_b), (2 - gamma_a) * gamma_b],
        [gamma_a * (2 - gamma_b), gamma_a * gamma_b],
    ]) / 4


def _probabilities_j(gamma_a: float, gamma_b: float, chi: float) -> np.ndarray:
    """Joint noise probabilities of the J game."""
    c2 = math.cos(chi / 2) ** 2
    s2 = math.sin(chi / 2) ** 2
    return np.array([
        [c2 + s2 * (1 - gamma_a) * (1 - gamma_b), s2 * (1 - gamma_a) * gamma_b],
        [s2 * gamma_a * (1 - gamma_b), s2 * gamma_a * gamma_b],
    ])


def _binary_entropy(p: float) -> float:
    if p <= 0 or p >= 1:
        return 0.0
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)

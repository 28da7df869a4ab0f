#!/usr/bin/env python
# Copyright qgame authors
"""Nash equilibria and dominant strategies over the strategy square [0, 1]^2.

Both players share the payoff F(gamma*_A, gamma*_B); player A controls the
first argument and player B the second. Everything is evaluated on a grid.
"""

from dataclasses import dataclass, field
import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from qgame.exceptions import InvalidArgument, NoEquilibrium
from qgame.game import EntanglerKind, PayoffSource, PayoffWeights, evaluate_payoff

logger = logging.getLogger(__name__)

DEFAULT_STEP = 0.02
DEFAULT_TOL = 1e-9
STEP_TOL = 1e-9

Point = Tuple[float, float]


@dataclass(frozen=True, eq=False)
class SurfaceGrid:
    """Payoff values on the grid; values[i, j] = F(axis[i], axis[j])."""

    step: float
    axis: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        n = len(self.axis)
        if self.values.shape != (n, n):
            raise InvalidArgument(f'surface values must be {n}x{n}, got shape {self.values.shape}')
        if not np.all(np.isfinite(self.values)):
            raise InvalidArgument('surface values must be finite')

    @property
    def size(self) -> int:
        return len(self.axis)


@dataclass(frozen=True, eq=False)
class ResidualSurfaces:
    """Best-response residuals r_A = F - max_x F(x, y), r_B = F - max_y F(x, y)."""

    surface: SurfaceGrid
    r_a: np.ndarray
    r_b: np.ndarray


@dataclass(frozen=True)
class DominantStrategies:
    """Dominant strategies of one player; `values` lists all tied strategies."""

    values: Tuple[float, ...] = ()

    @property
    def value(self) -> Optional[float]:
        return self.values[-1] if self.values else None

    def to_dict(self) -> dict:
        return {'value': self.value, 'ties': list(self.values)}


@dataclass
class EquilibriumReport:
    """Outcome of the equilibrium analysis of one surface."""

    nash_points: List[Tuple[float, float, float]] = field(default_factory=list)
    tol: float = DEFAULT_TOL
    max_point: Optional[Point] = None
    dominant_a: DominantStrategies = field(default_factory=DominantStrategies)
    dominant_b: DominantStrategies = field(default_factory=DominantStrategies)


def make_axis(step: float) -> np.ndarray:
    """Grid axis 0, step, ..., 1.

    Args:
        step (float): spacing in (0, 0.5] dividing 1

    Returns:
        (np.ndarray): K + 1 nodes with exact endpoints 0 and 1

    """
    if not (0.0 < step <= 0.5):
        raise InvalidArgument(f'step must be in (0, 0.5], got {step}')
    count = int(round(1.0 / step))
    if abs(count * step - 1.0) > STEP_TOL:
        raise InvalidArgument(f'step must divide 1, got {step}')
    return np.arange(count + 1) / count


def payoff_surface(weights: PayoffWeights, chi: float, step: float,
                   kind: EntanglerKind = EntanglerKind.PD_J,
                   source: PayoffSource = PayoffSource.BRUTEFORCE) -> SurfaceGrid:
    """Evaluate the common payoff on every grid node.

    Args:
        weights (PayoffWeights): payoff weights held fixed over the surface
        chi (float): entanglement degree
        step (float): grid spacing
        kind (EntanglerKind): entangler
        source (PayoffSource): payoff evaluation

    Returns:
        (SurfaceGrid): the surface

    """
    axis = make_axis(step)
    values = np.array([
        [evaluate_payoff(x, y, weights, chi, kind, source) for y in axis]
        for x in axis
    ])
    return SurfaceGrid(step=step, axis=axis, values=values)


def residual_surfaces(surface: SurfaceGrid) -> ResidualSurfaces:
    """Residuals of the two Nash inequalities over grid deviations."""
    values = surface.values
    r_a = values - values.max(axis=0, keepdims=True)
    r_b = values - values.max(axis=1, keepdims=True)
    return ResidualSurfaces(surface=surface, r_a=r_a, r_b=r_b)


def nash_points(residuals: ResidualSurfaces, tol: float = DEFAULT_TOL) -> EquilibriumReport:
    """Grid nodes where neither player gains more than `tol` by deviating.

    Args:
        residuals (ResidualSurfaces): best-response residuals
        tol (float): non-negative tolerance

    Returns:
        (EquilibriumReport): report with `nash_points` sorted by (gamma*_A, gamma*_B)

    """
    if not tol >= 0:
        raise InvalidArgument(f'tol must be >= 0, got {tol}')
    surface = residuals.surface
    mask = (residuals.r_a >= -tol) & (residuals.r_b >= -tol)
    points = [
        (float(surface.axis[i]), float(surface.axis[j]), float(surface.values[i, j]))
        for i, j in zip(*np.nonzero(mask))
    ]
    points.sort(key=lambda p: (p[0], p[1]))
    return EquilibriumReport(nash_points=points, tol=tol)


def select_max_point(report: EquilibriumReport, surface: SurfaceGrid) -> Point:
    """Nash point of highest payoff.

    Payoffs are read from `surface` at each point's grid node. Payoffs within
    `report.tol` of the best are ties, broken toward the larger
    gamma*_A + gamma*_B, then the larger gamma*_A.

    Args:
        report (EquilibriumReport): report holding the Nash points
        surface (SurfaceGrid): surface the points come from

    Returns:
        (Point): (gamma*_A, gamma*_B)

    """
    if not report.nash_points:
        raise NoEquilibrium('no equilibrium at this tolerance')
    index = {float(v): k for k, v in enumerate(surface.axis)}
    candidates = []
    for x, y, _ in report.nash_points:
        if x not in index or y not in index:
            raise InvalidArgument(f'nash point ({x}, {y}) is not a node of the surface')
        candidates.append((x, y, float(surface.values[index[x], index[y]])))
    best = max(p[2] for p in candidates)
    ties = [p for p in candidates if p[2] >= best - report.tol]
    x, y, _ = max(ties, key=lambda p: (p[0] + p[1], p[0]))
    return (x, y)


def dominant_strategies(surface: SurfaceGrid,
                        tol: float = DEFAULT_TOL) -> Tuple[DominantStrategies, DominantStrategies]:
    """Strategies that are best responses against every opposing grid strategy.

    Args:
        surface (SurfaceGrid): payoff surface
        tol (float): tolerance

    Returns:
        (DominantStrategies): dominant strategies of A
        (DominantStrategies): dominant strategies of B

    """
    residuals = residual_surfaces(surface)
    rows_a = np.all(residuals.r_a >= -tol, axis=1)
    cols_b = np.all(residuals.r_b >= -tol, axis=0)
    dominant_a = tuple(float(x) for x in surface.axis[rows_a])
    dominant_b = tuple(float(y) for y in surface.axis[cols_b])
    return DominantStrategies(dominant_a), DominantStrategies(dominant_b)


def best_response_check(surface: SurfaceGrid, i: int, j: int, tol: float = DEFAULT_TOL) -> bool:
    """Whether node (i, j) is a best response for both players, by scanning its column and row."""
    value = surface.values[i, j]
    column = surface.values[:, j]
    row = surface.values[i, :]
    return all(value >= v - tol for v in column) and all(value >= v - tol for v in row)


def hausdorff_distance(first: Sequence[Sequence[float]], second: Sequence[Sequence[float]]) -> float:
    """Hausdorff distance of two point sets in the max-norm, using the first two coordinates."""
    a = np.array([p[:2] for p in first], dtype=float).reshape(-1, 2)
    b = np.array([p[:2] for p in second], dtype=float).reshape(-1, 2)
    if len(a) == 0 or len(b) == 0:
        return 0.0 if len(a) == len(b) else float('inf')
    distances = np.max(np.abs(a[:, None, :] - b[None, :, :]), axis=2)
    return float(max(distances.min(axis=1).max(), distances.min(axis=0).max()))


def analyze(weights: PayoffWeights, chi: float, step: float = DEFAULT_STEP, tol: float = DEFAULT_TOL,
            kind: EntanglerKind = EntanglerKind.PD_J,
            source: PayoffSource = PayoffSource.BRUTEFORCE) -> Tuple[EquilibriumReport, SurfaceGrid, ResidualSurfaces]:
    """Surface, residuals, Nash points, MAX point and dominant strategies in one pass."""
    surface = payoff_surface(weights, chi, step, kind=kind, source=source)
    residuals = residual_surfaces(surface)
    report = nash_points(residuals, tol)
    if report.nash_points:
        report.max_point = select_max_point(report, surface)
    report.dominant_a, report.dominant_b = dominant_strategies(surface, tol)
    logger.debug('analyze: %d nash points, max %r', len(report.nash_points), report.max_point)
    return report, surface, residuals

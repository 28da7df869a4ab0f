#!/usr/bin/env python
# Copyright qgame authors
"""Utilities."""

import json
import os
import sys
from typing import List, Optional, Sequence

import numpy as np
import pandas as pd

from qgame.equilibrium import EquilibriumReport, ResidualSurfaces
from qgame.game import GameConfig, PayoffWeights

FLOAT_FORMAT = '%.17g'
MAX_REPORTED_POINTS = 100

SURFACE_COLUMNS = ['gamma_star_a', 'gamma_star_b', 'payoff', 'residual_a', 'residual_b', 'is_nash']


def format_float(value: float) -> str:
    """Locale-independent decimal with 17 significant digits."""
    return FLOAT_FORMAT % value


def cap_points(points: Sequence, limit: int = MAX_REPORTED_POINTS) -> List:
    """Return at most `limit` points as lists.

    Args:
        points (Sequence): points to report
        limit (int): maximum number of points

    Returns:
        (list): the first `limit` points

    """
    return [list(p) for p in points[:limit]]


def surface_frame(residuals: ResidualSurfaces, tol: float) -> pd.DataFrame:
    """Flatten a surface and its residuals into rows sorted by (gamma*_A, gamma*_B).

    Args:
        residuals (ResidualSurfaces): residuals with their surface
        tol (float): Nash tolerance

    Returns:
        (pandas.DataFrame): one row per grid node

    """
    surface = residuals.surface
    grid_a, grid_b = np.meshgrid(surface.axis, surface.axis, indexing='ij')
    is_nash = (residuals.r_a >= -tol) & (residuals.r_b >= -tol)
    df = pd.DataFrame({
        'gamma_star_a': grid_a.ravel(),
        'gamma_star_b': grid_b.ravel(),
        'payoff': surface.values.ravel(),
        'residual_a': residuals.r_a.ravel(),
        'residual_b': residuals.r_b.ravel(),
        'is_nash': is_nash.ravel().astype(int),
    }, columns=SURFACE_COLUMNS)
    return df


def weights_to_dict(weights: PayoffWeights, config: GameConfig) -> dict:
    """Serialize weights with the game they belong to."""
    gamma_a, gamma_b = config.base_noise
    return {
        'gamma_A': gamma_a,
        'gamma_B': gamma_b,
        'chi': config.chi,
        'entangler': config.entangler.value,
        'w': weights.to_list(),
    }


def report_to_dict(report: EquilibriumReport, config: GameConfig, step: float, source: str) -> dict:
    """Serialize an equilibrium report.

    Args:
        report (EquilibriumReport): report
        config (GameConfig): game the report belongs to
        step (float): grid spacing
        source (str): payoff evaluation used

    Returns:
        (dict): report data; "nash" is capped and "nash_total" holds the full count

    """
    return {
        'base': list(config.base_noise),
        'chi': config.chi,
        'entangler': config.entangler.value,
        'epsilon': config.epsilon,
        'source': source,
        'nash': cap_points(report.nash_points),
        'nash_total': len(report.nash_points),
        'max_point': list(report.max_point) if report.max_point is not None else None,
        'dominant_a': report.dominant_a.to_dict(),
        'dominant_b': report.dominant_b.to_dict(),
        'tol': report.tol,
        'step': step,
    }


def ensure_parent_dir(path: str):
    """Create the directory holding `path` if needed."""
    parent = os.path.dirname(os.path.abspath(path))
    os.makedirs(parent, exist_ok=True)


def write_json(data: dict, path: Optional[str] = None):
    """Write JSON to `path`, or to stdout when no path is given."""
    text = json.dumps(data, indent=2) + '\n'
    if path is None:
        sys.stdout.write(text)
        return
    ensure_parent_dir(path)
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        f.write(text)


def write_csv(df: pd.DataFrame, path: Optional[str] = None):
    """Write a data-frame as CSV with fixed float formatting."""
    text = df.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator='\n')
    if path is None:
        sys.stdout.write(text)
        return
    ensure_parent_dir(path)
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        f.write(text)

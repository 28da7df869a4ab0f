#!/usr/bin/env python
# Copyright qgame authors
"""Run configuration: command-line flags > JSON config file > defaults."""

from dataclasses import asdict, dataclass, fields, replace
import json
import logging
import math
import os
from typing import Optional

from qgame.equilibrium import DEFAULT_STEP, DEFAULT_TOL, make_axis
from qgame.exceptions import InvalidArgument
from qgame.game import DEFAULT_EPSILON, EntanglerKind, GameConfig, PayoffMode, PayoffSource
from qgame.kraus import DEFAULT_TERM_TOL, MAX_TERMS

logger = logging.getLogger(__name__)

CONFIG_ENV = 'QGAME_CONFIG'
DEBUG_ENV = 'QGAME_DEBUG'
OUTPUT_FORMATS = ['csv', 'json']


def env_flag(name: str) -> bool:
    """Whether the environment variable is set to a truthy value."""
    return os.environ.get(name, '') in ['true', 'True', 'TRUE', '1', 'yes']


@dataclass(frozen=True)
class RunConfig:
    """Parameters of one command."""

    gamma_a: float = 0.1
    gamma_b: float = 0.1
    chi: float = math.pi / 2
    entangler: str = EntanglerKind.PD_J.value
    step: float = DEFAULT_STEP
    tol: float = DEFAULT_TOL
    epsilon: float = DEFAULT_EPSILON
    payoff_mode: str = PayoffMode.JOINT_INFORMATION.value
    source: str = PayoffSource.BRUTEFORCE.value
    t: float = 1.0
    xi: float = math.pi / 4
    levels: int = 2
    term_tol: float = DEFAULT_TERM_TOL
    max_terms: int = MAX_TERMS
    out: Optional[str] = None
    format: Optional[str] = None

    def validate(self) -> 'RunConfig':
        """Check every parameter against the range of the type it feeds.

        Returns:
            (RunConfig): self

        """
        for name in ['gamma_a', 'gamma_b']:
            value = getattr(self, name)
            if not (math.isfinite(value) and 0.0 <= value <= 1.0):
                raise InvalidArgument(f'{name} must be in [0, 1], got {value}')
        try:
            EntanglerKind(self.entangler)
            PayoffMode(self.payoff_mode)
            PayoffSource(self.source)
        except ValueError as e:
            raise InvalidArgument(str(e))
        make_axis(self.step)
        if not (math.isfinite(self.tol) and self.tol >= 0):
            raise InvalidArgument(f'tol must be >= 0, got {self.tol}')
        if not (self.t >= 0 and math.isfinite(self.t)):
            raise InvalidArgument(f't must be >= 0, got {self.t}')
        if not math.isfinite(self.xi):
            raise InvalidArgument(f'xi must be finite, got {self.xi}')
        if int(self.levels) != self.levels or self.levels < 2:
            raise InvalidArgument(f'levels must be an integer >= 2, got {self.levels}')
        if not self.term_tol > 0:
            raise InvalidArgument(f'term_tol must be > 0, got {self.term_tol}')
        if int(self.max_terms) != self.max_terms or self.max_terms < 1:
            raise InvalidArgument(f'max_terms must be an integer >= 1, got {self.max_terms}')
        if self.out is not None and not isinstance(self.out, str):
            raise InvalidArgument(f'out must be a path, got {self.out!r}')
        if self.format is not None and self.format not in OUTPUT_FORMATS:
            raise InvalidArgument(f'format must be one of {OUTPUT_FORMATS}, got {self.format}')
        self.game_config()
        return self

    def game_config(self) -> GameConfig:
        """Return the game parameters of this run."""
        return GameConfig(
            chi=self.chi,
            entangler=EntanglerKind(self.entangler),
            base_noise=(self.gamma_a, self.gamma_b),
            epsilon=self.epsilon,
            payoff_mode=PayoffMode(self.payoff_mode),
        )

    def with_format(self, default: str) -> 'RunConfig':
        """Return a copy whose output format falls back to `default`."""
        return self if self.format else replace(self, format=default)

    def to_dict(self) -> dict:
        return asdict(self)


def load_config_file(path: str) -> dict:
    """Read a JSON config file.

    Args:
        path (str): path to a JSON object whose keys are RunConfig fields

    Returns:
        (dict): parameters with hyphens in keys replaced by underscores

    """
    try:
        with open(path, 'r') as f:
            data = json.load(f)
    except (OSError, ValueError) as e:
        raise InvalidArgument(f'cannot read config file {path}: {e}')
    if not isinstance(data, dict):
        raise InvalidArgument(f'config file {path} must hold a JSON object')
    known = {f.name for f in fields(RunConfig)}
    values = {}
    for key, value in data.items():
        name = key.replace('-', '_')
        if name not in known:
            raise InvalidArgument(f'unknown key in config file {path}: {key}')
        values[name] = value
    return values


def build_run_config(flags: dict, config_path: Optional[str] = None) -> RunConfig:
    """Layer defaults, the config file and command-line flags.

    Args:
        flags (dict): flag values; None means "not given"
        config_path (str): config file, defaults to $QGAME_CONFIG when unset

    Returns:
        (RunConfig): validated configuration

    """
    values = {}
    config_path = config_path or os.environ.get(CONFIG_ENV) or None
    if config_path:
        logger.debug('loading config file %s', config_path)
        values.update(load_config_file(config_path))
    known = {f.name for f in fields(RunConfig)}
    values.update({k: v for k, v in flags.items() if k in known and v is not None})
    try:
        return RunConfig(**values).validate()
    except TypeError as e:
        raise InvalidArgument(f'invalid configuration: {e}')

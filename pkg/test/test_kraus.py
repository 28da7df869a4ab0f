#!/usr/bin/env python
# Copyright qgame authors
"""Test the Kraus operator derivation."""

import math

import numpy as np
import pytest
from scipy.linalg import expm

from .common import _random_density, _rng


def _params(theta: float):
    from qgame.kraus import HamiltonianParams
    return HamiltonianParams(xi=theta, t=1.0)


def test_fock_space_ladder():
    """Test for make_fock_space."""
    from qgame.kraus import make_fock_space
    space = make_fock_space(4)
    assert space.b.shape == (4, 4)
    assert abs(space.b[0, 1] - 1.0) < 1e-15
    assert abs(space.b[2, 3] - math.sqrt(3)) < 1e-15
    assert np.allclose(space.b_dag, space.b.T)
    q = space.quadrature
    assert np.allclose(q, q.conj().T)


def test_fock_space_invalid():
    """Test for make_fock_space with fewer than two levels."""
    from qgame.kraus import make_fock_space
    from qgame.exceptions import InvalidArgument
    for levels in [0, 1, 2.5]:
        try:
            make_fock_space(levels)
            raise Exception
        except InvalidArgument:
            pass


def test_g_table_recursion():
    """Test for g_table: g(1, 1) = 1, g(2, 0) = 1, g(2, 2) = sqrt(2)."""
    from qgame.kraus import g_table, make_fock_space
    table = g_table(4, make_fock_space(5))
    assert table.max_m == 4
    assert table.g(0, 0) == 1.0
    assert abs(table.g(1, 1) - 1.0) < 1e-15
    assert abs(table.g(2, 0) - 1.0) < 1e-15
    assert abs(table.g(2, 2) - math.sqrt(2)) < 1e-15
    # <0|(b + b^dag)^4|0> = 3 in the untruncated space
    assert abs(table.g(4, 0) - 3.0) < 1e-12


def test_evolve_bath_ground_is_identity():
    """Test for evolve_bath with the principal system in |0>."""
    from qgame.kraus import evolve_bath, make_fock_space
    vec = evolve_bath(0, _params(0.7), make_fock_space(3))
    assert np.allclose(vec, [1, 0, 0])


@pytest.mark.parametrize('levels', [2, 3, 5, 8])
@pytest.mark.parametrize('theta', [0.3, math.pi / 4, 2.0, -1.3])
def test_evolve_bath_matches_expm(levels, theta):
    """Test for evolve_bath against a dense matrix exponential."""
    from qgame.kraus import evolve_bath, make_fock_space
    space = make_fock_space(levels)
    expected = expm(-1j * theta * space.quadrature)[:, 0]
    vec = evolve_bath(1, _params(theta), space)
    assert np.max(np.abs(vec - expected)) < 1e-12
    assert abs(np.linalg.norm(vec) - 1.0) < 1e-12


def test_evolve_bath_invalid():
    """Test for evolve_bath with out-of-range arguments."""
    from qgame.kraus import evolve_bath, make_fock_space
    from qgame.exceptions import InvalidArgument
    space = make_fock_space(2)
    with pytest.raises(InvalidArgument):
        evolve_bath(2, _params(0.1), space)
    with pytest.raises(InvalidArgument):
        evolve_bath(1, _params(0.1), space, term_tol=0.0)
    with pytest.raises(InvalidArgument):
        evolve_bath(1, _params(0.1), space, max_terms=0)


def test_evolve_bath_series_error():
    """Test for evolve_bath when the term cap is too small."""
    from qgame.kraus import evolve_bath, make_fock_space
    from qgame.exceptions import SeriesError
    try:
        evolve_bath(1, _params(0.9), make_fock_space(4), max_terms=2)
        raise Exception
    except SeriesError:
        pass


def test_derive_kraus_two_levels():
    """Test for derive_kraus with a two-level bath at t xi = pi/4."""
    from qgame.kraus import HamiltonianParams, derive_kraus, gamma_of, make_fock_space
    params = HamiltonianParams(xi=math.pi / 4, t=1.0)
    channel = derive_kraus(params, make_fock_space(2))
    assert len(channel.kraus) == 2
    c = math.cos(math.pi / 4)
    assert np.allclose(channel.kraus[0], np.diag([1, c]), atol=1e-13)
    assert np.allclose(channel.kraus[1], np.diag([0, -1j * c]), atol=1e-13)
    assert channel.completeness_defect() < 1e-12
    assert abs(gamma_of(params) - 0.5) < 1e-15


@pytest.mark.parametrize('theta', [0.0, 0.4, math.pi / 4, 1.2, 2.0, 3.0, -0.8])
def test_derive_kraus_matches_qpdc_action(theta):
    """Test that the derived channel acts like the phase damping reference on random states."""
    from qgame.kraus import channel_action_distance, derive_kraus, make_fock_space, qpdc_reference
    params = _params(theta)
    channel = derive_kraus(params, make_fock_space(2))
    reference = qpdc_reference(params)
    rng = _rng(11)
    states = [_random_density(rng, 2) for _ in range(5)]
    assert channel_action_distance(channel, reference, states) < 1e-10


def test_phase_flip_when_cosine_negative():
    """Test that plain QPDC differs from the derived channel when cos(t xi) < 0."""
    from qgame.kraus import (
        channel_action_distance, derive_kraus, gamma_of, make_fock_space, phase_flip, qpdc_kraus,
        qpdc_reference,
    )
    params = _params(2.0)
    assert phase_flip(params)
    assert qpdc_reference(params).label.endswith('then Z')
    channel = derive_kraus(params, make_fock_space(2))
    plus = np.full((2, 2), 0.5, dtype=np.complex128)
    distance = channel_action_distance(channel, qpdc_kraus(gamma_of(params)), [plus])
    # The off-diagonal entry changes sign: 0.5 cos vs 0.5 |cos|
    assert abs(distance - abs(math.cos(2.0))) < 1e-12


@pytest.mark.parametrize('levels', [2, 3, 6])
def test_derive_kraus_complete(levels):
    """Test that the derived channel is trace preserving for any truncation."""
    from qgame.kraus import bath_norm_deviation, derive_kraus, make_fock_space
    params = _params(1.1)
    space = make_fock_space(levels)
    channel = derive_kraus(params, space)
    assert len(channel.kraus) == levels
    assert channel.completeness_defect() < 1e-10
    assert bath_norm_deviation(params, space) < 1e-12
    for op in channel.kraus:
        assert np.allclose(op, np.diag(np.diag(op)))


def test_qpdc_kraus():
    """Test for qpdc_kraus."""
    from qgame.kraus import qpdc_kraus
    from qgame.exceptions import InvalidArgument
    channel = qpdc_kraus(0.36)
    assert np.allclose(channel.kraus[0], np.diag([1, 0.8]))
    assert np.allclose(channel.kraus[1], np.diag([0, 0.6]))
    rho = np.full((2, 2), 0.5, dtype=np.complex128)
    out = channel.apply(rho)
    assert abs(out[0, 1] - 0.4) < 1e-15
    assert abs(out[1, 1] - 0.5) < 1e-15
    for gamma in [-0.1, 1.1, float('nan')]:
        with pytest.raises(InvalidArgument):
            qpdc_kraus(gamma)


def test_channel_rejects_incomplete():
    """Test for QuantumChannel with operators that are not trace preserving."""
    from qgame.kraus import QuantumChannel
    from qgame.exceptions import ContractViolation
    try:
        QuantumChannel((np.diag([1.0, 0.5]),), label='broken')
        raise Exception
    except ContractViolation:
        pass


def test_channel_dict_format():
    """Test for the exported channel format."""
    from qgame.kraus import channel_from_dict, derive_kraus, make_fock_space
    from qgame.exceptions import InvalidArgument
    channel = derive_kraus(_params(0.5), make_fock_space(2))
    data = channel.to_dict()
    assert data['label'].startswith('H_TB series')
    assert len(data['kraus']) == 2
    assert len(data['kraus'][0]) == 4
    assert abs(data['kraus'][1][3][0]) < 1e-15
    assert abs(data['kraus'][1][3][1] + math.sin(0.5)) < 1e-13

    parsed = channel_from_dict(data)
    assert parsed.label == channel.label
    assert np.allclose(parsed.kraus[0], channel.kraus[0])

    try:
        channel_from_dict({'kraus': [[[1, 0], [0, 0]]]})
        raise Exception
    except InvalidArgument:
        pass


def test_g_table_two_levels():
    """Test that g(m, 0) and g(m, 1) alternate with the parity of m for two levels."""
    from qgame.kraus import g_table, make_fock_space
    table = g_table(7, make_fock_space(2))
    for m in range(8):
        assert table.g(m, 0) == (1.0 if m % 2 == 0 else 0.0)
        assert table.g(m, 1) == (0.0 if m % 2 == 0 else 1.0)


def test_evolve_bath_half_pi():
    """Test for evolve_bath at t xi = pi/2 with two levels."""
    from qgame.kraus import evolve_bath, make_fock_space
    vec = evolve_bath(1, _params(math.pi / 2), make_fock_space(2))
    assert np.max(np.abs(vec - np.array([0, -1j]))) < 1e-12


def test_derive_kraus_no_interaction():
    """Test that t xi = 0 gives the identity channel."""
    from qgame.kraus import derive_kraus, make_fock_space
    channel = derive_kraus(_params(0.0), make_fock_space(3))
    assert np.allclose(channel.kraus[0], np.eye(2))
    assert np.allclose(channel.kraus[1], 0)
    assert np.allclose(channel.kraus[2], 0)


def test_derive_kraus_third_pi():
    """Test that t xi = pi/3 acts like the phase damping channel at gamma = 3/4."""
    from qgame.kraus import channel_action_distance, derive_kraus, make_fock_space, qpdc_kraus
    channel = derive_kraus(_params(math.pi / 3), make_fock_space(2))
    rho = np.full((2, 2), 0.5, dtype=np.complex128)
    assert channel_action_distance(channel, qpdc_kraus(0.75), [rho]) < 1e-10


@pytest.mark.parametrize('levels', [2, 3, 4])
def test_completeness_wide_range(levels):
    """Test completeness for |t xi| up to 10."""
    from qgame.kraus import derive_kraus, make_fock_space
    space = make_fock_space(levels)
    for theta in np.linspace(-10.0, 10.0, 9):
        channel = derive_kraus(_params(float(theta)), space)
        assert channel.completeness_defect() < 1e-10


def test_qpdc_kraus_limits():
    """Test for qpdc_kraus at gamma = 0 and 1."""
    from qgame.kraus import qpdc_kraus
    noiseless = qpdc_kraus(0.0)
    assert np.allclose(noiseless.kraus[0], np.eye(2))
    assert np.allclose(noiseless.kraus[1], 0)
    full = qpdc_kraus(1.0)
    assert np.allclose(full.kraus[0], np.diag([1, 0]))
    assert np.allclose(full.kraus[1], np.diag([0, 1]))


def test_derive_kraus_random_sweep():
    """Test 20 random (t, xi) with |t xi| <= 10 against the phase damping action on 20 random states."""
    from qgame.kraus import HamiltonianParams, channel_action_distance, derive_kraus, make_fock_space, qpdc_reference
    rng = _rng(23)
    space = make_fock_space(2)
    states = [_random_density(rng, 2) for _ in range(20)]
    for _ in range(20):
        t = float(rng.uniform(0.0, 5.0))
        xi = float(rng.uniform(-10.0, 10.0)) / max(t, 1.0)
        params = HamiltonianParams(xi=xi, t=t)
        assert abs(params.theta) <= 10.0
        channel = derive_kraus(params, space)
        assert channel.completeness_defect() < 1e-10
        assert channel_action_distance(channel, qpdc_reference(params), states) < 1e-10


def test_evolve_bath_too_many_substeps():
    """Test that t xi beyond the sub-step cap is a series error."""
    from qgame.kraus import MAX_SUBSTEPS, HamiltonianParams, evolve_bath, make_fock_space
    from qgame.exceptions import SeriesError
    space = make_fock_space(2)
    # 2 |t xi| sub-steps for two levels
    params = HamiltonianParams(xi=MAX_SUBSTEPS, t=1.0)
    with pytest.raises(SeriesError):
        evolve_bath(1, params, space)
    with pytest.raises(SeriesError):
        evolve_bath(1, HamiltonianParams(xi=1e9, t=1.0), space)
    # The ground level never moves
    assert np.allclose(evolve_bath(0, params, space), [1, 0])


def test_qpdc_kraus_complete():
    """Test that the phase damping channel is trace preserving for gamma in {0, 0.1, ..., 1}."""
    from qgame.kraus import qpdc_kraus
    for gamma in np.linspace(0.0, 1.0, 11):
        assert qpdc_kraus(float(gamma)).completeness_defect() < 1e-10

"""Perfect-cavity coupling, TRK cap, and the USC feasibility threshold."""

import math

import pytest

from fanosphere import (CODATA2018, BoundQuery, perfect_cavity_coupling,
                        required_transparency, trk_dipole_bound,
                        usc_energy_scale, usc_ratio_bound)
from fanosphere.errors import ValidationError

K = CODATA2018


def test_perfect_cavity_zero_transparency():
    q = BoundQuery(transparency_energy_ev=1e-30, transition_energy_ev=1.0,
                   dipole_si=K.debye_to_si(10.0))
    assert perfect_cavity_coupling(q) < 1e-10 * K.ev_to_angular(1.0)


def test_perfect_cavity_missing_dipole():
    q = BoundQuery(transparency_energy_ev=10.0, transition_energy_ev=1.0)
    with pytest.raises(ValidationError):
        perfect_cavity_coupling(q)


def test_perfect_cavity_sum_rule_consistency():
    # (G)^2 = w_t^3/(6 pi^2 hbar eps0 c^3) |d|^2 Omega_T
    q = BoundQuery(transparency_energy_ev=10.0, transition_energy_ev=1.0,
                   dipole_si=K.debye_to_si(5.0))
    g = perfect_cavity_coupling(q)
    w_t = K.ev_to_angular(q.transition_energy_ev)
    omega_cap = K.ev_to_angular(q.transparency_energy_ev)
    expected_sq = (w_t**3 / (6.0 * math.pi**2 * K.reduced_planck
                             * K.vacuum_permittivity * K.speed_of_light**3)
                   * q.dipole_si**2 * omega_cap)
    assert abs(g * g - expected_sq) < 1e-12 * expected_sq


def test_trk_value_at_one_ev():
    d_max = trk_dipole_bound(1.0)
    assert abs(K.si_to_enm(d_max) - 0.34) < 0.005
    assert abs(K.si_to_debye(d_max) - 16.2) < 0.05


def test_trk_scalings():
    base = trk_dipole_bound(1.0)
    assert abs(trk_dipole_bound(4.0) - 0.5 * base) < 1e-12 * base
    assert abs(trk_dipole_bound(1.0, n_electrons=4.0) - 2.0 * base) \
        < 1e-12 * base
    with pytest.raises(ValidationError):
        trk_dipole_bound(-1.0)


def test_usc_ratio_values():
    assert abs(usc_ratio_bound(2e6) - 0.095) < 0.002
    assert abs(usc_ratio_bound(10.0) - 2.1e-4) < 0.05e-4
    with pytest.raises(ValidationError):
        usc_ratio_bound(0.0)


def test_usc_ratio_emitter_frequency_independence():
    """Saturating TRK makes G/w independent of the transition energy."""
    for transition_ev in (1.0, 3.0):
        q = BoundQuery(transparency_energy_ev=10.0,
                       transition_energy_ev=transition_ev,
                       dipole_si=trk_dipole_bound(transition_ev))
        ratio = (perfect_cavity_coupling(q)
                 / K.ev_to_angular(transition_ev))
        assert abs(ratio - usc_ratio_bound(10.0)) < 1e-12 * ratio


def test_required_transparency():
    assert 1.9e6 < required_transparency(0.1) < 2.3e6
    assert abs(required_transparency(0.01) - 22e3) < 0.5e3
    # inverse pair round trip
    target = 0.037
    back = usc_ratio_bound(required_transparency(target))
    assert abs(back - target) < 1e-12 * target
    with pytest.raises(ValidationError):
        required_transparency(1.5)


def test_monotonicity():
    assert usc_ratio_bound(20.0) > usc_ratio_bound(10.0)
    assert required_transparency(0.2) > required_transparency(0.1)
    assert trk_dipole_bound(1.0) > trk_dipole_bound(2.0)
    assert 219.0 < usc_energy_scale() < 221.0

"""Diagonalization ingredients: coupling, shift, weight, resonance root."""

import math

import numpy as np
import pytest
from scipy import constants as sc
from scipy.optimize import brentq

from fanosphere import (CODATA2018, SphereModel, c1, detuning_d, gamma,
                        plasma_frequency, resonance_root, resonance_width,
                        shift_F)
from fanosphere.bessel import j1
from fanosphere.errors import ValidationError
from fanosphere.fano import evaluate, shift_F_prime
from fanosphere.oracles import pv_shift_oracle


def test_plasma_frequency_value():
    # independent evaluation straight from scipy CODATA values
    rho_si = 60.0 * sc.e * 1e27
    expected = math.sqrt(rho_si * sc.e / (sc.m_e * sc.epsilon_0))
    wp = plasma_frequency(60.0)
    assert abs(wp - expected) < 1e-12 * expected
    assert abs(CODATA2018.angular_to_ev(wp) - 9.10) < 0.01


def test_plasma_skin_depth_scale():
    wp = plasma_frequency(60.0)
    c_over_wp_nm = CODATA2018.m_to_nm(sc.c / wp)
    # the paper quotes ~20 nm for this density
    assert abs(c_over_wp_nm - 21.7) < 0.05


def test_plasma_frequency_scaling():
    assert abs(plasma_frequency(240.0) - 2.0 * plasma_frequency(60.0)) \
        < 1e-12 * plasma_frequency(240.0)
    with pytest.raises(ValidationError):
        plasma_frequency(0.0)


def test_sphere_model_invariant():
    model = SphereModel.from_nm(2.5, 60.0)
    recomputed = math.sqrt(model.charge_density
                           * model.constants.elementary_charge
                           / (model.constants.electron_mass
                              * model.constants.vacuum_permittivity))
    assert abs(recomputed - model.plasma_frequency) \
        < 1e-12 * model.plasma_frequency
    with pytest.raises(ValidationError):
        SphereModel.from_nm(-1.0, 60.0)


def test_gamma_closed_form():
    model = SphereModel.from_nm(2.0, 60.0)
    c = model.constants.speed_of_light
    assert gamma(model, 0.0) == 0.0
    # at W R / c = pi the Bessel factor is 1/pi
    w = math.pi * c / model.radius
    expected = (2.0 * model.plasma_frequency
                * math.sqrt(model.radius / (math.pi * c)) * w / math.pi)
    assert abs(gamma(model, w) - expected) < 1e-13 * expected


def test_gamma_small_argument_law():
    model = SphereModel.from_nm(2.0, 60.0)
    c = model.constants.speed_of_light
    w = 1e-3 * c / model.radius
    law = (2.0 * model.plasma_frequency
           * math.sqrt(model.radius / (math.pi * c))
           * w**2 * model.radius / (3.0 * c))
    assert abs(gamma(model, w) - law) < 1e-5 * law


def test_shift_small_argument_limit():
    model = SphereModel.from_nm(2.0, 60.0)
    w = 1e-3 * model.constants.speed_of_light / model.radius
    wp2 = model.plasma_frequency**2
    assert abs(shift_F(model, w) + 2.0 * wp2 / 3.0) < 1e-5 * wp2


def test_shift_sign_on_first_interval():
    model = SphereModel.from_nm(2.0, 60.0)
    c = model.constants.speed_of_light
    for x in np.linspace(0.05, 0.95 * math.pi, 40):
        assert shift_F(model, x * c / model.radius) < 0.0


def test_shift_matches_pv_oracle():
    model = SphereModel.from_nm(2.0, 60.0)
    w = 0.5 * model.plasma_frequency
    closed = shift_F(model, w)
    numeric = pv_shift_oracle(model, w)
    assert abs(closed - numeric) < 1e-6 * abs(numeric)


def test_shift_prime_by_difference():
    model = SphereModel.from_nm(3.0, 60.0)
    w = 0.6 * model.plasma_frequency
    h = 1e-6 * w
    fd = (shift_F(model, w + h) - shift_F(model, w - h)) / (2.0 * h)
    assert abs(shift_F_prime(model, w) - fd) < 1e-6 * abs(fd)


def test_shift_domain():
    model = SphereModel.from_nm(2.0, 60.0)
    with pytest.raises(ValidationError):
        shift_F(model, 0.0)
    with pytest.raises(ValidationError):
        c1(model, -1.0)
    with pytest.raises(ValidationError):
        detuning_d(model, 0.0)


def test_c1_peak_near_quasistatic_resonance():
    model = SphereModel.from_nm(0.5, 60.0)
    wp = model.plasma_frequency
    grid = np.linspace(0.5, 0.65, 200001) * wp
    peak = grid[np.argmax(c1(model, grid) ** 2)]
    assert abs(peak - wp / math.sqrt(3.0)) < 0.005 * wp / math.sqrt(3.0)


def test_c1_vanishes_at_j1_zero():
    model = SphereModel.from_nm(2.5, 60.0)
    c = model.constants.speed_of_light
    x1 = brentq(j1, 4.0, 5.0, xtol=1e-14)  # first positive zero of j1
    w_zero = x1 * c / model.radius
    # compare against a nearby off-zero magnitude
    nearby = abs(c1(model, w_zero * 1.01))
    assert abs(c1(model, w_zero)) < 1e-10 * nearby


def test_c1_gamma_sign_consistency():
    model = SphereModel.from_nm(5.0, 60.0)
    w = np.linspace(0.05, 40.0, 5000) * model.plasma_frequency
    assert np.all(c1(model, w) * gamma(model, w) >= 0.0)


def test_detuning_limits_and_identity():
    model = SphereModel.from_nm(1.0, 60.0)
    wp = model.plasma_frequency
    assert abs(detuning_d(model, 10.0 * wp) - 1.0) < 1e-3
    root = resonance_root(model)
    assert abs(detuning_d(model, root)) < 1e-9
    # Pythagorean identity of the two denominator components
    w = np.linspace(0.1, 5.0, 500) * wp
    d = detuning_d(model, w)
    g = gamma(model, w)
    h = w**2 - wp**2 - shift_F(model, w)
    s = np.hypot(h, (np.pi / (2.0 * w)) * g * g)
    other = (np.pi / (2.0 * w)) * g * g / s
    assert np.max(np.abs(d * d + other * other - 1.0)) < 1e-12
    assert np.all(np.abs(d) <= 1.0 + 1e-15)


def test_evaluate_bundle():
    model = SphereModel.from_nm(2.0, 60.0)
    w = 0.55 * model.plasma_frequency
    ev = evaluate(model, w)
    assert ev.omega == w
    assert abs(ev.gamma - gamma(model, w)) == 0.0
    assert abs(ev.c1 - c1(model, w)) == 0.0
    assert -1.0 <= ev.detuning_d <= 1.0


def test_resonance_root_quasistatic_limit():
    model = SphereModel.from_nm(0.05, 60.0)
    wp = model.plasma_frequency
    assert abs(resonance_root(model) - wp / math.sqrt(3.0)) < 1e-5 * wp


def test_resonance_root_in_paper_window():
    model = SphereModel.from_nm(2.5, 60.0)
    wp = model.plasma_frequency
    root = resonance_root(model)
    assert 0.57 * wp < root < 0.58 * wp


def test_resonance_root_monotonic_in_radius():
    roots = []
    for radius in np.linspace(1.0, 20.0, 12):
        model = SphereModel.from_nm(float(radius), 60.0)
        roots.append(resonance_root(model) / model.plasma_frequency)
    assert all(b < a for a, b in zip(roots, roots[1:]))


def test_resonance_width_matches_lorentzian_scale():
    model = SphereModel.from_nm(0.5, 60.0)
    root = resonance_root(model)
    width = resonance_width(model, root)
    # narrow resonances are a tiny fraction of the plasma frequency
    assert width < 1e-5 * model.plasma_frequency
    # the width is the FWHM of c1^2: check the half-maximum points
    half_up = c1(model, root + 0.5 * width) ** 2
    peak = c1(model, root) ** 2
    assert abs(half_up - 0.5 * peak) < 0.01 * peak

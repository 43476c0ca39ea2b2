"""Spectral densities, their limits, and the on-axis potential."""

import math
import warnings

import numpy as np
import pytest

from fanosphere import (CODATA2018, EmitterGeometry, SphereModel,
                        compute_spectra, g_perp, j_free_space,
                        j_multipolar_total, j_parallel, j_perp_total,
                        k_parallel, k_parallel_lwa, pse_explicit_estimate,
                        resonance_root, resonance_width)
from fanosphere.bessel import j1, y1
from fanosphere.errors import GeometryError, ValidationError
from fanosphere.fano import c1, gamma, shift_F
from fanosphere.oracles import QuadratureSpec, adaptive_integrate

K = CODATA2018


def _model_geom(radius_nm=2.5, rho=60.0, separation_nm=1.0):
    model = SphereModel.from_nm(radius_nm, rho)
    geom = EmitterGeometry.from_separation_nm(model, separation_nm)
    return model, geom


def test_j_free_space_basics():
    assert j_free_space(0.0) == 0.0
    w = 1.2e15
    assert abs(j_free_space(2.0 * w) - 8.0 * j_free_space(w)) \
        < 1e-12 * j_free_space(2.0 * w)


def test_j_free_space_green_identity():
    # W^2/(pi hbar eps0 c^2) * Im G0 with Im G0 = W/(6 pi c)
    w = K.ev_to_angular(1.0)
    other = (w**2 / (math.pi * K.reduced_planck * K.vacuum_permittivity
                     * K.speed_of_light**2)) * w / (6.0 * math.pi
                                                    * K.speed_of_light)
    assert abs(j_free_space(w) - other) < 1e-12 * other


def test_j_parallel_distance_law():
    model, _ = _model_geom()
    w = 0.5 * model.plasma_frequency
    near = j_parallel(model, EmitterGeometry.from_nm(4.0), w)
    far = j_parallel(model, EmitterGeometry.from_nm(8.0), w)
    assert abs(near / far - 2.0**6) < 1e-12 * 2.0**6


def test_j_parallel_geometry_guard():
    model, _ = _model_geom()
    with pytest.raises(GeometryError):
        j_parallel(model, EmitterGeometry.from_nm(2.0), 1e15)
    with pytest.raises(ValidationError):
        j_parallel(model, EmitterGeometry.from_nm(4.0), 0.0)


def test_j_parallel_integral_factorization():
    """int J_par dW * (6 pi hbar eps0 r^6 / (Wp^2 R^3)) = int c1^2/W dW."""
    model, geom = _model_geom(2.5, 60.0, 1.0)
    w_res = resonance_root(model)
    kappa = resonance_width(model, w_res)
    spec = QuadratureSpec(abs_tol=1e-300, rel_tol=1e-9,
                          refinement_center=w_res, refinement_width=kappa)
    lo, hi = 0.3 * w_res, 3.0 * w_res
    lhs = adaptive_integrate(lambda w: j_parallel(model, geom, w),
                             lo, hi, spec)
    lhs *= (6.0 * math.pi * K.reduced_planck * K.vacuum_permittivity
            * geom.distance**6 / (model.plasma_frequency**2
                                  * model.radius**3))
    rhs = adaptive_integrate(lambda w: c1(model, w) ** 2 / w, lo, hi, spec)
    assert abs(lhs - rhs) < 1e-6 * rhs


def test_peak_scale_separation():
    # longitudinal peak about five orders above the transverse one
    model, geom = _model_geom(2.5, 60.0, 1.0)
    w_res = resonance_root(model)
    kappa = resonance_width(model, w_res)
    grid = np.linspace(w_res - 30 * kappa, w_res + 30 * kappa, 60001)
    ratio = (np.max(j_parallel(model, geom, grid))
             / np.max(j_perp_total(model, geom, grid)))
    assert 10**4.3 < ratio < 10**5.7


def test_g_perp_sphere_off_limit():
    model = SphereModel.from_nm(2.5, 1e-9)
    geom = EmitterGeometry.from_nm(3.5)
    w = np.linspace(0.3, 3.0, 50) * 1e16
    x_e = w * geom.distance / K.speed_of_light
    free_l1 = 3.0 * w * j1(x_e) ** 2 / (2.0 * math.pi**2 * K.reduced_planck
                                        * K.vacuum_permittivity
                                        * K.speed_of_light
                                        * geom.distance**2)
    gp2 = g_perp(model, geom, w) ** 2
    assert np.max(np.abs(gp2 - free_l1) / free_l1.max()) < 1e-6


def test_g_perp_high_frequency_limit():
    model, geom = _model_geom(2.5, 60.0, 1.0)
    w = 20.0 * model.plasma_frequency
    x_e = w * geom.distance / K.speed_of_light
    free_l1 = 3.0 * w * j1(x_e) ** 2 / (2.0 * math.pi**2 * K.reduced_planck
                                        * K.vacuum_permittivity
                                        * K.speed_of_light
                                        * geom.distance**2)
    assert abs(g_perp(model, geom, w) ** 2 - free_l1) < 0.01 * free_l1


def test_g_perp_continuous_at_j1_zero():
    """The cancellation-safe form agrees with a naive evaluation nearby."""
    from scipy.optimize import brentq

    model, geom = _model_geom(2.5, 60.0, 1.0)
    c = K.speed_of_light
    x1 = brentq(j1, 4.0, 5.0, xtol=1e-14)
    w_zero = x1 * c / model.radius

    def naive(w):
        # literal closed form with the explicit j1/gamma quotient
        x_e = w * geom.distance / c
        x_s = w * model.radius / c
        h = w**2 - model.plasma_frequency**2 - shift_F(model, w)
        term1 = h * j1(x_e) / (w * gamma(model, w))
        bracket = (1.0 / 3.0 + w * geom.distance**2 * j1(x_s) * y1(x_e)
                   / (c * model.radius))
        term2 = (model.plasma_frequency
                 * math.sqrt(math.pi * c * model.radius**3)
                 / (geom.distance**2 * w**2) * bracket)
        pref = math.sqrt(3.0 * w**3 / (2.0 * math.pi**2 * K.reduced_planck
                                       * K.vacuum_permittivity * c))
        return pref / geom.distance * c1(model, w) * (term1 + term2)

    assert np.isfinite(g_perp(model, geom, w_zero))
    for sign in (-1.0, 1.0):
        w = w_zero * (1.0 + sign * 1e-6)
        assert abs(g_perp(model, geom, w) - naive(w)) \
            < 1e-8 * abs(naive(w))


def test_j_perp_vacuum_recombination():
    model = SphereModel.from_nm(2.5, 0.0)
    geom = EmitterGeometry.from_nm(3.5)
    w = np.linspace(0.2, 4.0, 100) * 1e16
    free = j_free_space(w)
    assert np.max(np.abs(j_perp_total(model, geom, w) - free) / free) < 1e-10


def test_j_perp_background_suppressed_at_low_frequency():
    model, geom = _model_geom()
    from fanosphere.spectra import _suppression_factor
    assert _suppression_factor(1e-9) < 1e-18
    assert abs(_suppression_factor(1e-3) - 1e-6 / 5.0) < 1e-9 * 1e-6


def test_j_perp_close_to_free_away_from_resonance():
    model, geom = _model_geom(2.5, 60.0, 1.0)
    wp = model.plasma_frequency
    w = np.concatenate([np.linspace(0.05, 0.5, 60),
                        np.linspace(0.65, 3.0, 60)]) * wp
    ratio = j_perp_total(model, geom, w) / j_free_space(w)
    assert np.max(np.abs(ratio - 1.0)) < 0.3


def test_j_multipolar_vacuum_limit():
    model = SphereModel.from_nm(2.0, 0.0)
    geom = EmitterGeometry.from_nm(4.0)
    w = np.linspace(0.2, 4.0, 100) * 1e16
    free = j_free_space(w)
    total = j_multipolar_total(model, geom, w)
    assert np.max(np.abs(total - free) / free) < 1e-10


def test_j_multipolar_peak_equals_longitudinal():
    model = SphereModel.from_nm(2.0, 60.0)
    geom = EmitterGeometry.from_nm(4.0)
    w_res = resonance_root(model)
    kappa = resonance_width(model, w_res)
    grid = np.linspace(w_res - 10 * kappa, w_res + 10 * kappa, 40001)
    peak_total = np.max(j_multipolar_total(model, geom, grid))
    peak_par = np.max(j_parallel(model, geom, grid))
    assert abs(peak_total - peak_par) < 0.01 * peak_total


def test_j_multipolar_background_toggle():
    model, geom = _model_geom()
    w = 2.0 * model.plasma_frequency
    with_bg = j_multipolar_total(model, geom, w)
    without = j_multipolar_total(model, geom, w, include_background=False)
    x_e = w * geom.distance / K.speed_of_light
    from fanosphere.spectra import _suppression_factor
    expected = j_free_space(w) * _suppression_factor(x_e)
    assert abs((with_bg - without) - expected) < 1e-12 * with_bg


def test_non_negativity():
    model, geom = _model_geom(1.0, 60.0, 0.5)
    w = np.linspace(0.01, 30.0, 4000) * model.plasma_frequency
    curve = compute_spectra(model, geom, w)
    for channel in (curve.j_parallel, curve.g_perp_sq, curve.j_perp_total,
                    curve.j_free, curve.j_multipolar):
        assert np.all(channel >= 0.0)


def test_transparency():
    for radius, sep in ((1.0, 0.5), (2.5, 1.0), (5.0, 2.0)):
        model, geom = _model_geom(radius, 60.0, sep)
        w = 30.0 * model.plasma_frequency
        ratio = j_perp_total(model, geom, w) / j_free_space(w)
        assert 0.999 < ratio < 1.001


def test_pse_estimate():
    model = SphereModel.from_nm(10.0, 60.0)
    value = pse_explicit_estimate(model)
    assert 0.8e-5 < value < 1.2e-5
    quadrupled = SphereModel.from_nm(10.0, 240.0)
    assert abs(pse_explicit_estimate(quadrupled) - 8.0 * value) \
        < 1e-9 * 8.0 * value


def test_pse_against_exact_integral():
    """Direct quadrature of the pre-approximation integrand, r_e = 1 nm."""
    model = SphereModel.from_nm(0.5, 60.0)
    r_e = K.nm_to_m(1.0)
    c = K.speed_of_light

    def integrand(w):
        x = w * r_e / c
        return 3.0 * j1(x) ** 2 / (2.0 * K.vacuum_permittivity
                                   * math.pi**2 * c * r_e**2)

    exact = adaptive_integrate(integrand, 1.0, model.plasma_frequency,
                               QuadratureSpec(abs_tol=1e-30, rel_tol=1e-10))
    exact_ev = K.energy_per_dipole_si_to_ev(exact)
    estimate = pse_explicit_estimate(model)
    assert abs(estimate - exact_ev) < 0.02 * exact_ev


def test_pse_warns_far_out():
    model = SphereModel.from_nm(10.0, 60.0)
    far = EmitterGeometry.from_nm(10.0 * 21.7)
    with pytest.warns(UserWarning):
        pse_explicit_estimate(model, far)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        pse_explicit_estimate(model, EmitterGeometry.from_nm(2.0))


def test_k_parallel_profile():
    model = SphereModel.from_nm(2.0, 60.0)
    eps0 = K.vacuum_permittivity
    rho = model.charge_density
    radius = model.radius
    # continuity at the surface
    inner = k_parallel(model, radius * (1.0 - 1e-12))
    outer = k_parallel(model, radius * (1.0 + 1e-12))
    assert abs(inner - outer) < 1e-9 * abs(inner)
    # closed-form value at z = 2R
    expected = -rho * radius / (12.0 * eps0)
    assert abs(k_parallel(model, 2.0 * radius) - expected) \
        < 1e-12 * abs(expected)
    # 1/z^2 decay outside
    z = np.linspace(1.5, 6.0, 30) * radius
    product = k_parallel(model, z) * z**2
    assert np.max(np.abs(product / product[0] - 1.0)) < 1e-12


def test_k_parallel_lwa_tangency():
    model = SphereModel.from_nm(2.0, 60.0)
    r0 = 2.0 * model.radius
    assert abs(k_parallel_lwa(model, r0, r0) - k_parallel(model, r0)) \
        < 1e-12 * abs(k_parallel(model, r0))
    h = 1e-6 * r0
    slope_fd = (k_parallel(model, r0 + h) - k_parallel(model, r0 - h)) / (2 * h)
    slope_lwa = (k_parallel_lwa(model, r0 + h, r0)
                 - k_parallel_lwa(model, r0 - h, r0)) / (2 * h)
    assert abs(slope_fd - slope_lwa) < 1e-5 * abs(slope_fd)
    # the tangent line is unbounded while the true profile decays
    z_far = 50.0 * model.radius
    assert abs(k_parallel_lwa(model, z_far, r0)) \
        > 10.0 * abs(k_parallel(model, z_far))


def test_spectral_curve_sampling():
    model, geom = _model_geom()
    w = np.linspace(4.0, 6.0, 5)
    curve = compute_spectra(model, geom, K.ev_to_angular(w))
    sample = curve.sample(2)
    assert sample.omega == curve.omega[2]
    assert sample.j_parallel == curve.j_parallel[2]
    assert sample.j_free == curve.j_free[2]

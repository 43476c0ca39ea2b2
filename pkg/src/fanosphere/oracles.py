"""Independent brute-force verifiers for the closed-form results.

* ``pv_shift_oracle``       -- principal-value quadrature for the shift F
* ``c1_normalization``      -- completeness integral of the eigenmode weight
* ``sum_rule_residual``     -- finite-cutoff check of the Purcell sum rule
* ``coulomb_overlap_oracle``-- stratified Monte Carlo for the sphere-sphere
                               Coulomb integral

None of the oracles evaluates the closed form it is meant to verify; the
comparisons live in the test suite and in the ``verify`` CLI command.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

from .bessel import j1
from .errors import ConvergenceError, ValidationError
from .fano import SphereModel, resonance_root, resonance_width
from .spectra import (EmitterGeometry, _check_geometry, _suppression_factor,
                      g_perp, j_free_space)

# --- adaptive Gauss-Kronrod quadrature --------------------------------------

# 7-point Gauss / 15-point Kronrod pair (QUADPACK qk15 constants)
_XGK = np.array([
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0,
])
_WGK = np.array([
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
])
_WG = np.array([
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469,
])

_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])        # 15 ascending nodes
_W15 = np.concatenate([_WGK[:-1], _WGK[::-1]])
_W7 = np.zeros(15)
_W7[1:-1:2] = np.concatenate([_WG[:-1], _WG[::-1]])       # Gauss subset


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and refinement hints for the adaptive integrator."""

    abs_tol: float = 1e-12
    rel_tol: float = 1e-9
    max_subdivisions: int = 4000
    refinement_center: float | None = None
    refinement_width: float | None = None

    def __post_init__(self):
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ValidationError("tolerances must be > 0")
        if self.refinement_center is not None:
            if self.refinement_width is None or self.refinement_width <= 0:
                raise ValidationError(
                    "refinement_width must be > 0 when a center is given")


def _kronrod_panel(f, a, b):
    """(15-point estimate, |K15 - G7| error estimate) on [a, b]."""
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    vals = f(mid + half * _NODES)
    i15 = half * float(vals @ _W15)
    i7 = half * float(vals @ _W7)
    return i15, abs(i15 - i7)


def adaptive_integrate(f, a: float, b: float,
                       spec: QuadratureSpec = QuadratureSpec()) -> float:
    """Adaptive bisection with the embedded 15/7-point rule pair.

    ``f`` must accept a numpy array of abscissae.  Refinement hints
    pre-split the interval geometrically around ``refinement_center`` so
    that Lorentzian peaks many orders narrower than the domain are found.
    """
    if not b > a:
        raise ValidationError("integration bounds must satisfy b > a")
    edges = [a, b]
    if spec.refinement_center is not None and a < spec.refinement_center < b:
        w = spec.refinement_width
        ladder = [spec.refinement_center]
        k = 0
        while True:
            offset = w * 4.0**k
            lo, hi = spec.refinement_center - offset, spec.refinement_center + offset
            done = True
            if lo > a:
                ladder.append(lo)
                done = False
            if hi < b:
                ladder.append(hi)
                done = False
            if done:
                break
            k += 1
        edges = sorted(set(edges) | set(ladder))

    heap = []
    total, err = 0.0, 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        i15, e = _kronrod_panel(f, lo, hi)
        total += i15
        err += e
        heapq.heappush(heap, (-e, lo, hi, i15))

    splits = 0
    while err > max(spec.abs_tol, spec.rel_tol * abs(total)):
        if splits >= spec.max_subdivisions or not heap:
            raise ConvergenceError(
                f"adaptive quadrature stalled after {splits} subdivisions",
                residual=err)
        neg_e, lo, hi, i_old = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        i_l, e_l = _kronrod_panel(f, lo, mid)
        i_r, e_r = _kronrod_panel(f, mid, hi)
        total += i_l + i_r - i_old
        err = max(err + e_l + e_r - (-neg_e), 0.0)
        heapq.heappush(heap, (-e_l, lo, mid, i_l))
        heapq.heappush(heap, (-e_r, mid, hi, i_r))
        splits += 1
    return total


def _gauss_panels(f, edges: np.ndarray, n: int = 24) -> np.ndarray:
    """Fixed n-point Gauss-Legendre integral of each [edges_i, edges_i+1]."""
    x, w = np.polynomial.legendre.leggauss(n)
    a, b = edges[:-1], edges[1:]
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    nodes = mid[:, None] + half[:, None] * x[None, :]
    vals = f(nodes.ravel()).reshape(len(a), n)
    return half * (vals @ w)


# --- principal-value oracle for the shift F ---------------------------------

@dataclass(frozen=True)
class PvSpec:
    """Pole location and tail-averaging depth for the PV quadrature."""

    pole: float                        # rad/s
    oscillation_period_count: int = 8  # full Bessel periods averaged

    def __post_init__(self):
        if self.pole <= 0:
            raise ValidationError("pole must be > 0")
        if self.oscillation_period_count < 4:
            raise ValidationError("need at least 4 averaging periods")


def pv_shift_oracle(model: SphereModel, omega: float,
                    spec: PvSpec | None = None) -> float:
    """F(Omega) by direct principal-value quadrature of gamma^2/(W^2-w^2).

    Works in the scaled variable x = w R / c, where

        F = (4 Wp^2 / pi) PV int_0^inf x^2 j_1(x)^2 / (xi^2 - x^2) dx.

    The pole is removed by subtracting the integrand value at xi (the
    excluded-window error is then quadratic), the log remainder of the
    subtraction is added back analytically, and the conditionally
    convergent tail is handled by the analytic mean of x^2 j_1^2 plus
    averaging of partial integrals at upper limits spaced by half a
    Bessel period.
    """
    if omega <= 0:
        raise ValidationError("pv_shift_oracle requires omega > 0")
    if spec is None:
        spec = PvSpec(pole=omega)
    c = model.constants.speed_of_light
    xi = omega * model.radius / c
    wp2 = model.plasma_frequency**2
    if wp2 == 0.0:
        return 0.0

    n_xi = xi**2 * float(j1(xi)) ** 2

    def subtracted(x):
        return (x * x * j1(x) ** 2 - n_xi) / (xi**2 - x * x)

    half = 0.5 * math.pi
    x0 = half * math.ceil(max(600.0, 4.0 * xi) / half)
    m_count = 2 * spec.oscillation_period_count

    # head integral 0 -> x0 on pi-period panels, split at the pole
    edges = np.unique(np.concatenate([
        np.arange(0.0, x0 + 0.5 * half, math.pi), [xi, x0]]))
    edges = edges[edges <= x0 + 1e-12]
    head = float(np.sum(_gauss_panels(subtracted, edges)))

    # partial estimates at upper limits X_m = x0 + m * pi/2
    increments = _gauss_panels(
        subtracted, x0 + half * np.arange(0, m_count + 1))
    heads = head + np.concatenate([[0.0], np.cumsum(increments)])[:m_count + 1]

    estimates = np.empty(m_count)
    for m in range(m_count):
        x_up = x0 + half * (m + 1)
        log_rem = n_xi * math.log((x_up + xi) / (x_up - xi)) / (2.0 * xi)
        big_l = math.log((x_up + xi) / (x_up - xi))
        tail_smooth = -(0.5 * big_l / (2.0 * xi)
                        + 0.5 / xi**2 * (big_l / (2.0 * xi) - 1.0 / x_up))
        estimates[m] = heads[m + 1] + log_rem + tail_smooth

    # consecutive half-period pairs cancel the leading oscillatory tail
    pairs = 0.5 * (estimates[0::2] + estimates[1::2])
    value = float(np.mean(pairs))
    spread = float(np.max(np.abs(pairs - value))) if len(pairs) > 1 else 0.0
    scale = abs(value) + 1e-10
    if spread > 1e-5 * scale:
        raise ConvergenceError(
            "PV tail averaging did not settle", residual=spread / scale)
    return 4.0 * wp2 / math.pi * value


# --- completeness of the eigenmode weight -----------------------------------

def c1_normalization(model: SphereModel,
                     spec: QuadratureSpec | None = None) -> float:
    """int_0^inf c_1(W)^2 dW with resonance refinement and tail estimate.

    Completeness of the diagonalizing transformation fixes the value to 1.
    """
    from .fano import c1 as c1_func  # local import keeps module init light

    if model.plasma_frequency <= 0:
        raise ValidationError("c1_normalization requires a sphere (rho > 0)")
    c = model.constants.speed_of_light
    w_res = resonance_root(model)
    kappa = resonance_width(model, w_res)
    if spec is None:
        spec = QuadratureSpec(abs_tol=1e-9, rel_tol=1e-7,
                              refinement_center=w_res,
                              refinement_width=kappa)

    x_tail = 40.0
    cutoff = x_tail * c / model.radius

    def integrand(w):
        return c1_func(model, w) ** 2

    value = adaptive_integrate(integrand, 1e-6 * model.plasma_frequency,
                               cutoff, spec)
    # beyond the cutoff c_1^2 ~ gamma^2 / W^4; the period average of
    # x^2 j_1^2 is 1/2, giving a tail of (Wp R/c)^2 * 2/(3 pi x_tail^3)
    x_p = model.plasma_frequency * model.radius / c
    tail = x_p**2 * 2.0 / (3.0 * math.pi * x_tail**3)
    return value + tail


# --- electromagnetic sum rule ------------------------------------------------

def sum_rule_residual(model: SphereModel, geom: EmitterGeometry,
                      cutoff: float,
                      spec: QuadratureSpec | None = None) -> float:
    """Normalized residual of int (J_perp - J_free)/J_free dW over [0, cutoff].

    The integrand is evaluated in the channel form
    [(g_perp)^2 - free l=1 channel] / J_free, which is algebraically
    identical; the result is divided by the integral of the positive part
    so that 0 means perfect cancellation and 1 means none.
    """
    _check_geometry(model, geom)
    if model.plasma_frequency == 0.0:
        return 0.0
    if cutoff < 20.0 * model.plasma_frequency:
        raise ValidationError("cutoff must be at least 20 Omega_p")

    c = model.constants.speed_of_light
    w_res = resonance_root(model)
    kappa = resonance_width(model, w_res)

    def deviation(w):
        x_e = w * geom.distance / c
        free_l1 = 1.0 - _suppression_factor(x_e)  # (3 j1(x)/x)^2
        purcell = g_perp(model, geom, w) ** 2 / j_free_space(
            w, model.constants)
        return purcell - free_l1

    lo = 1e-6 * model.plasma_frequency
    spec_pos = QuadratureSpec(abs_tol=1e-30, rel_tol=1e-8,
                              max_subdivisions=6000,
                              refinement_center=w_res,
                              refinement_width=kappa)
    positive = adaptive_integrate(lambda w: np.maximum(deviation(w), 0.0),
                                  lo, cutoff, spec_pos)
    if positive == 0.0:
        return 0.0
    # the net integral cancels almost perfectly, so its absolute tolerance
    # is anchored to the positive mass rather than to its own value
    if spec is None:
        spec = QuadratureSpec(abs_tol=1e-6 * positive, rel_tol=1e-8,
                              max_subdivisions=6000,
                              refinement_center=w_res,
                              refinement_width=kappa)
    net = adaptive_integrate(deviation, lo, cutoff, spec)
    return net / positive


# --- Monte Carlo oracle for the sphere-sphere Coulomb integral ---------------

@dataclass(frozen=True)
class CoulombOverlapResult:
    """Stratified Monte Carlo estimate with its standard error [m^5 units]."""

    estimate: float
    standard_error: float
    samples: int
    strata: int


def coulomb_overlap_exact(radius: float, z_s: float) -> float:
    """Closed-form overlap polynomial in ratio units (times pi rho^2/3 eps0).

    8R^5/5 - 2R^3 z^2/3 + R^2 |z|^3/4 - |z|^5/120.
    """
    z = abs(z_s)
    return (8.0 * radius**5 / 5.0 - 2.0 * radius**3 * z**2 / 3.0
            + radius**2 * z**3 / 4.0 - z**5 / 120.0)


def coulomb_overlap_oracle(radius: float, z_s: float, samples: int = 1_000_000,
                           seed: int = 0, strata: int = 64
                           ) -> CoulombOverlapResult:
    """Monte Carlo estimate of the displaced-sphere Coulomb overlap.

    Integrates the ionic-sphere potential over the electronic sphere
    displaced by ``z_s`` along z, in the ratio units of
    :func:`coulomb_overlap_exact` so the charge density cancels.  Sampling
    is stratified in the radial coordinate; the same seed reproduces the
    same draws, which makes finite-difference comparisons across nearby
    ``z_s`` values strongly correlated.
    """
    if not 0.0 <= z_s < 2.0 * radius:
        raise ValidationError("displacement must satisfy 0 <= z_s < 2 R")
    if samples < 1_000_000:
        raise ValidationError("use at least 1e6 samples")

    rng = np.random.default_rng(seed)
    per = -(-samples // strata)  # ceil division; equal-probability strata
    means = np.empty(strata)
    variances = np.empty(strata)
    for j in range(strata):
        u = (j + rng.random(per)) / strata
        cos_t = 1.0 - 2.0 * rng.random(per)
        s = radius * np.cbrt(u)
        # |z_s zhat + s direction|^2; azimuth integrates out exactly
        r2 = s * s + z_s * z_s + 2.0 * s * z_s * cos_t
        r = np.sqrt(r2)
        phi = np.where(r <= radius, 0.5 * (3.0 * radius**2 - r2),
                       radius**3 / np.maximum(r, 1e-300))
        means[j] = phi.mean()
        variances[j] = phi.var(ddof=1)
    volume_factor = 4.0 * radius**3 / 3.0
    estimate = volume_factor * float(np.mean(means))
    se = volume_factor * math.sqrt(float(np.sum(variances / per)) / strata**2)
    return CoulombOverlapResult(estimate=estimate, standard_error=se,
                                samples=per * strata, strata=strata)

"""Figure-level analyses: Lorentzian fits, longitudinality, parameter sweeps.

A Lorentzian spectral density is equivalent to a single lossy mode, so
fitting the longitudinal density

    L(w) = (G^2/pi) (kappa/2) / ((w - w_res)^2 + (kappa/2)^2)

yields an effective coupling strength G, a mode width kappa and the
dressed resonance frequency.  The longitudinality ell is the ratio of the
window averages of the longitudinal and transverse densities over the
resonance interval (0.57, 0.58) Omega_p.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .constants import CODATA2018, PhysicalConstants
from .errors import (DegenerateWindowError, FitConvergenceError,
                     ValidationError)
from .fano import SphereModel, resonance_root, resonance_width
from .oracles import QuadratureSpec, adaptive_integrate
from .spectra import EmitterGeometry, j_parallel, j_perp_total


@dataclass(frozen=True)
class LorentzianFit:
    """Result of the damped least-squares Lorentzian fit."""

    g_res: float          # sqrt of the fitted area, units of the input
    kappa: float          # FWHM [rad/s]
    omega_res: float      # rad/s
    rms_residual: float   # relative to the peak height
    converged: bool
    n_iterations: int


def _lorentz(omega, area, kappa, omega_res):
    half = 0.5 * kappa
    return (area / np.pi) * half / ((omega - omega_res) ** 2 + half * half)


def fit_lorentzian(omega, values, window: tuple[float, float] | None = None,
                   max_iterations: int = 200) -> LorentzianFit:
    """Fit a Lorentzian by Gauss-Newton iteration with adaptive damping.

    Initial guesses come from the sample maximum, a FWHM scan and the
    peak-area relation; convergence requires a relative parameter step
    below 1e-10.
    """
    omega = np.asarray(omega, dtype=float)
    values = np.asarray(values, dtype=float)
    if window is not None:
        mask = (omega >= window[0]) & (omega <= window[1])
        omega, values = omega[mask], values[mask]
    if omega.size < 50:
        raise ValidationError("need at least 50 samples in the fit window")

    i_max = int(np.argmax(values))
    if i_max in (0, omega.size - 1):
        raise DegenerateWindowError("window has no interior maximum")
    peak = values[i_max]
    w0 = omega[i_max]

    # FWHM scan for the width guess
    above = values >= 0.5 * peak
    kappa0 = max(omega[above][-1] - omega[above][0],
                 2.0 * np.min(np.diff(omega)))
    area0 = peak * np.pi * kappa0 / 2.0

    # scaled parameters for conditioning
    theta = np.array([1.0, kappa0 / w0, 1.0])  # (area/area0, kappa/w0, wr/w0)
    lam = 1e-3
    n_iter = 0
    converged = False

    def model_and_jac(th):
        area = th[0] * area0
        kappa = th[1] * w0
        w_r = th[2] * w0
        half = 0.5 * kappa
        delta = omega - w_r
        denom = delta * delta + half * half
        mod = (area / np.pi) * half / denom
        d_area = mod / th[0]
        d_kappa = (area / np.pi) * (0.5 * denom - half * half) / denom**2 * w0
        d_wr = (area / np.pi) * half * 2.0 * delta / denom**2 * w0
        return mod, np.column_stack([d_area, d_kappa, d_wr])

    mod, jac = model_and_jac(theta)
    resid = mod - values
    cost = float(resid @ resid)
    for n_iter in range(1, max_iterations + 1):
        jtj = jac.T @ jac
        g = jac.T @ resid
        try:
            step = np.linalg.solve(jtj + lam * np.diag(np.diag(jtj)), -g)
        except np.linalg.LinAlgError:
            lam *= 10.0
            continue
        trial = theta + step
        if trial[1] <= 0:  # width must stay positive
            lam *= 10.0
            continue
        mod_t, jac_t = model_and_jac(trial)
        resid_t = mod_t - values
        cost_t = float(resid_t @ resid_t)
        if cost_t <= cost:
            rel_step = float(np.max(np.abs(step) / np.maximum(np.abs(trial),
                                                              1e-30)))
            theta, mod, jac, resid, cost = trial, mod_t, jac_t, resid_t, cost_t
            lam = max(lam / 10.0, 1e-14)
            if rel_step < 1e-10:
                converged = True
                break
        else:
            lam *= 10.0
            if lam > 1e12:
                break

    area = theta[0] * area0
    fit = LorentzianFit(
        g_res=float(np.sqrt(max(area, 0.0))),
        kappa=float(theta[1] * w0),
        omega_res=float(theta[2] * w0),
        rms_residual=float(np.sqrt(cost / omega.size) / peak),
        converged=converged,
        n_iterations=n_iter,
    )
    if not converged:
        raise FitConvergenceError("Lorentzian fit did not converge", best=fit)
    return fit


def fit_parallel_resonance(model: SphereModel, geom: EmitterGeometry,
                           n_samples: int = 801,
                           half_widths: float = 5.0) -> LorentzianFit:
    """Fit the longitudinal density around its resonance.

    The grid spans the resonance root plus/minus ``half_widths`` estimated
    line widths; ``g_res`` is per unit dipole moment (SI).
    """
    w_res = resonance_root(model)
    kappa = resonance_width(model, w_res)
    half = half_widths * kappa
    grid = np.linspace(w_res - half, w_res + half, n_samples)
    return fit_lorentzian(grid, j_parallel(model, geom, grid))


def longitudinality(model: SphereModel, geom: EmitterGeometry,
                    window: tuple[float, float] = (0.57, 0.58),
                    n_samples: int = 2001) -> float:
    """Window-averaged ratio <J_par> / <J_perp> over the resonance interval.

    ``window`` is given as fractions of the plasma frequency.  Both
    averages are true integrals: the uniform sub-grid (at least 200
    points) is refined around the resonance, whose width can be six
    orders below the window width.
    """
    if not 0.0 < window[0] < window[1]:
        raise ValidationError("window fractions must satisfy 0 < lo < hi")
    if n_samples < 200:
        raise ValidationError("need at least 200 window samples")
    if model.plasma_frequency == 0.0:
        return 0.0
    lo = window[0] * model.plasma_frequency
    hi = window[1] * model.plasma_frequency
    w_res = resonance_root(model)
    center, width = None, None
    if lo < w_res < hi:
        center, width = w_res, resonance_width(model, w_res)
    spec = QuadratureSpec(abs_tol=1e-300, rel_tol=1e-8,
                          max_subdivisions=6000,
                          refinement_center=center, refinement_width=width)
    # pre-split on the uniform sub-grid, then refine adaptively
    edges = np.linspace(lo, hi, max(n_samples // 10, 201))
    avg_par = sum(adaptive_integrate(lambda w: j_parallel(model, geom, w),
                                     a, b, _window_spec(spec, a, b))
                  for a, b in zip(edges[:-1], edges[1:])) / (hi - lo)
    avg_perp = sum(adaptive_integrate(lambda w: j_perp_total(model, geom, w),
                                      a, b, _window_spec(spec, a, b))
                   for a, b in zip(edges[:-1], edges[1:])) / (hi - lo)
    return avg_par / avg_perp


def _window_spec(spec: QuadratureSpec, a: float, b: float) -> QuadratureSpec:
    """Keep the refinement hint only on the sub-interval containing it."""
    if spec.refinement_center is not None and a < spec.refinement_center < b:
        return spec
    return QuadratureSpec(abs_tol=spec.abs_tol, rel_tol=spec.rel_tol,
                          max_subdivisions=spec.max_subdivisions)


def usc_parameter(fit: LorentzianFit, dipole_debye: float,
                  constants: PhysicalConstants = CODATA2018) -> float:
    """Dimensionless USC measure d * G_res / omega_res.

    ``fit`` must come from a per-unit-dipole-squared curve, so scaling by
    the physical dipole restores the actual coupling strength.
    """
    if not fit.converged:
        raise FitConvergenceError("cannot scale an unconverged fit", best=fit)
    dipole_si = constants.debye_to_si(dipole_debye)
    return dipole_si * fit.g_res / fit.omega_res


@dataclass(frozen=True)
class SweepGrid:
    """Radius/separation grid for the longitudinality and USC maps."""

    radii_nm: tuple[float, ...]
    separations_nm: tuple[float, ...]
    frequency_window: tuple[float, float] = (0.57, 0.58)
    dipole_debye: float = 10.0

    def __post_init__(self):
        if not self.radii_nm or not self.separations_nm:
            raise ValidationError("sweep grid must not be empty")
        if min(self.radii_nm) <= 0 or min(self.separations_nm) <= 0:
            raise ValidationError("radii and separations must be > 0")
        lo, hi = self.frequency_window
        if not 0.0 < lo < hi:
            raise ValidationError("frequency window must satisfy 0 < lo < hi")
        if self.dipole_debye < 0:
            raise ValidationError("dipole must be >= 0")


@dataclass
class SweepRow:
    """One grid point of the sweep; ``error`` records per-point failures."""

    radius_nm: float
    separation_nm: float
    ell: float | None = None
    usc: float | None = None
    omega_res_ev: float | None = None
    kappa_res_ev: float | None = None
    error: str | None = None
    fit: LorentzianFit | None = field(default=None, repr=False)


def sweep(grid: SweepGrid, density_e_nm3: float = 60.0,
          constants: PhysicalConstants = CODATA2018) -> list[SweepRow]:
    """Row-major sweep over radii x separations.

    Failures are recorded in the row's ``error`` field and never abort
    the remaining points.
    """
    rows = []
    for radius_nm in grid.radii_nm:
        for separation_nm in grid.separations_nm:
            row = SweepRow(radius_nm=radius_nm, separation_nm=separation_nm)
            try:
                model = SphereModel.from_nm(radius_nm, density_e_nm3,
                                            constants)
                geom = EmitterGeometry.from_separation_nm(model,
                                                          separation_nm)
                fit = fit_parallel_resonance(model, geom)
                row.fit = fit
                row.omega_res_ev = constants.angular_to_ev(fit.omega_res)
                row.kappa_res_ev = constants.angular_to_ev(fit.kappa)
                row.usc = usc_parameter(fit, grid.dipole_debye, constants)
                row.ell = longitudinality(model, geom, grid.frequency_window)
            except Exception as exc:  # per-row error, sweep continues
                row.error = f"{type(exc).__name__}: {exc}"
            rows.append(row)
    return rows

"""Closed-form ingredients of the sphere-photon diagonalization.

The dipolar plasmon of a homogeneous charged sphere (plasma frequency
Omega_p, oscillating at Omega_p/sqrt(3) in the quasistatic limit) couples
to the tm, l=1, m=0 photon continuum with strength

    gamma(w) = 2 Omega_p sqrt(R/(pi c)) w j_1(w R / c),

and the exact diagonalization of the resulting oscillator-continuum
problem is characterized by the principal-value shift F(Omega), the
eigenmode weight c_1(Omega) and the dressed resonance root of
h(Omega) = Omega^2 - Omega_p^2 - F(Omega).

All functions are pure and accept numpy arrays for the frequency argument.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bessel import j1, j1_prime, y1, y1_prime
from .constants import CODATA2018, PhysicalConstants
from .errors import ConvergenceError, ValidationError


def plasma_frequency(density_e_nm3: float,
                     constants: PhysicalConstants = CODATA2018) -> float:
    """Omega_p = sqrt(rho e / (m_e eps0)) for rho given in e/nm^3."""
    if density_e_nm3 <= 0:
        raise ValidationError("charge density must be > 0")
    rho_si = constants.density_e_nm3_to_si(density_e_nm3)
    return math.sqrt(rho_si * constants.elementary_charge
                     / (constants.electron_mass * constants.vacuum_permittivity))


@dataclass(frozen=True)
class SphereModel:
    """Nanosphere geometry and charge density, with derived plasma frequency.

    ``charge_density`` is stored in SI (C/m^3); use :meth:`from_nm` for the
    nm / e/nm^3 boundary units.  A zero density is accepted as the exact
    vacuum limit (no sphere).
    """

    radius: float            # m
    charge_density: float    # C/m^3
    plasma_frequency: float  # rad/s, derived
    constants: PhysicalConstants = field(default=CODATA2018, repr=False)

    def __post_init__(self):
        if self.radius <= 0:
            raise ValidationError("sphere radius must be > 0")
        if self.charge_density < 0:
            raise ValidationError("charge density must be >= 0")

    @classmethod
    def from_nm(cls, radius_nm: float, density_e_nm3: float,
                constants: PhysicalConstants = CODATA2018) -> "SphereModel":
        radius = constants.nm_to_m(radius_nm)
        rho_si = constants.density_e_nm3_to_si(density_e_nm3)
        omega_p = 0.0
        if density_e_nm3 > 0:
            omega_p = plasma_frequency(density_e_nm3, constants)
        elif density_e_nm3 < 0:
            raise ValidationError("charge density must be >= 0")
        return cls(radius=radius, charge_density=rho_si,
                   plasma_frequency=omega_p, constants=constants)


@dataclass(frozen=True)
class FanoEvaluation:
    """gamma, F, c_1 and the cancellation-safe detuning D at one frequency."""

    omega: float
    gamma: float
    shift: float
    c1: float
    detuning_d: float


def gamma(model: SphereModel, omega):
    """Sphere-photon coupling gamma(w) = 2 Wp sqrt(R/(pi c)) w j_1(w R/c)."""
    omega = np.asarray(omega, dtype=float)
    if np.any(omega < 0):
        raise ValidationError("gamma requires omega >= 0")
    c = model.constants.speed_of_light
    out = (2.0 * model.plasma_frequency
           * np.sqrt(model.radius / (np.pi * c))
           * omega * j1(omega * model.radius / c))
    return out if out.ndim else float(out)


def shift_F(model: SphereModel, omega):
    """Principal-value shift F(W) = 2 Wp^2 (W R/c) j_1(W R/c) y_1(W R/c).

    Equals PV int dw gamma(w)^2 / (W^2 - w^2); tends to -2 Wp^2 / 3 as
    W R / c -> 0.
    """
    omega = np.asarray(omega, dtype=float)
    if np.any(omega <= 0):
        raise ValidationError("shift_F requires omega > 0")
    x = omega * model.radius / model.constants.speed_of_light
    out = 2.0 * model.plasma_frequency**2 * x * j1(x) * y1(x)
    return out if out.ndim else float(out)


def shift_F_prime(model: SphereModel, omega):
    """dF/dOmega from the closed form (used for width estimates)."""
    omega = np.asarray(omega, dtype=float)
    if np.any(omega <= 0):
        raise ValidationError("shift_F_prime requires omega > 0")
    c = model.constants.speed_of_light
    x = omega * model.radius / c
    d_dx = j1(x) * y1(x) + x * (j1_prime(x) * y1(x) + j1(x) * y1_prime(x))
    out = 2.0 * model.plasma_frequency**2 * (model.radius / c) * d_dx
    return out if out.ndim else float(out)


def _stiffness(model: SphereModel, omega):
    """h(W) = W^2 - Wp^2 - F(W) and the denominator sqrt S(W)."""
    omega = np.asarray(omega, dtype=float)
    h = omega**2 - model.plasma_frequency**2 - shift_F(model, omega)
    g = gamma(model, omega)
    s = np.hypot(h, (np.pi / (2.0 * omega)) * g * g)
    return h, g, s


def c1(model: SphereModel, omega):
    """Eigenmode weight c_1(W) = gamma / sqrt(h^2 + (pi/2W)^2 gamma^4).

    Carries the sign of gamma; vanishes exactly at the zeros of j_1.
    """
    omega = np.asarray(omega, dtype=float)
    if np.any(omega <= 0):
        raise ValidationError("c1 requires omega > 0")
    h, g, s = _stiffness(model, omega)
    out = g / s
    return out if out.ndim else float(out)


def detuning_d(model: SphereModel, omega):
    """D(W) = h / sqrt(h^2 + (pi/2W)^2 gamma^4), in [-1, 1].

    Equals c_1 * h / gamma wherever gamma != 0 but stays finite at the
    zeros of j_1, which removes the 0/0 in the transverse coupling.
    """
    omega = np.asarray(omega, dtype=float)
    if np.any(omega <= 0):
        raise ValidationError("detuning_d requires omega > 0")
    h, g, s = _stiffness(model, omega)
    out = h / s
    return out if out.ndim else float(out)


def evaluate(model: SphereModel, omega: float) -> FanoEvaluation:
    """All diagonalization quantities at a single frequency."""
    if omega <= 0:
        raise ValidationError("evaluate requires omega > 0")
    h, g, s = _stiffness(model, omega)
    return FanoEvaluation(omega=float(omega), gamma=float(g),
                          shift=float(shift_F(model, omega)),
                          c1=float(g / s), detuning_d=float(h / s))


def resonance_root(model: SphereModel, rel_tol: float = 1e-10) -> float:
    """Root of h(W) = W^2 - Wp^2 - F(W), bracketed in (0, Wp), by bisection.

    h(0+) = -Wp^2/3 < 0, and h(Wp) > 0 for every sphere small enough that
    Wp R / c stays below the first positive zero of y_1.
    """
    if model.plasma_frequency <= 0:
        raise ValidationError("resonance_root requires a sphere (rho > 0)")
    wp = model.plasma_frequency
    lo, hi = 1e-3 * wp, wp
    h_lo = lo**2 - wp**2 - shift_F(model, lo)
    h_hi = hi**2 - wp**2 - shift_F(model, hi)
    if not (h_lo < 0 < h_hi):
        raise ConvergenceError(
            "resonance root not bracketed in (1e-3 Wp, Wp); "
            f"h(lo)={h_lo:.3e}, h(hi)={h_hi:.3e}")
    while (hi - lo) > rel_tol * hi:
        mid = 0.5 * (lo + hi)
        h_mid = mid**2 - wp**2 - shift_F(model, mid)
        if h_mid < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def resonance_width(model: SphereModel, omega_res: float | None = None) -> float:
    """Lorentzian FWHM of c_1^2 around the resonance root.

    Narrow-resonance expansion: kappa = pi gamma(W_r)^2 / (W_r h'(W_r)),
    with h'(W) = 2 W - F'(W).
    """
    if omega_res is None:
        omega_res = resonance_root(model)
    g = gamma(model, omega_res)
    h_prime = 2.0 * omega_res - shift_F_prime(model, omega_res)
    return math.pi * g * g / (omega_res * h_prime)

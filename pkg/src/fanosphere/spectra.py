"""Spectral densities and potentials of the emitter-sphere-photon model.

Everything is exposed per unit dipole moment squared (J / d^2 in SI,
i.e. per (C*m)^2); the CLI converts to eV/(e*nm)^2 per eV on output.

Channels:

* ``j_free_space``      -- vacuum transverse density W^3/(6 pi^2 hbar eps0 c^3)
* ``j_parallel``        -- longitudinal (Coulomb) density, Lorentzian-like
* ``g_perp``            -- transverse coupling to the dressed tm,l=1 channel
* ``j_perp_total``      -- (g_perp)^2 plus the l>1 free-space background
* ``j_multipolar_total``-- total density in the fully multipolar picture
* ``pse_explicit_estimate`` -- the explicitly-kept polarization self-energy
* ``k_parallel``        -- linear coefficient of the sphere potential

The transverse coupling is evaluated in a cancellation-safe form: the
first term of the closed-form integral contains j_1 / gamma whose j_1
cancels analytically, leaving the bounded detuning D instead of a 0/0 at
the zeros of j_1.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .bessel import j1, y1
from .constants import CODATA2018, PhysicalConstants
from .errors import GeometryError, ValidationError
from .fano import SphereModel, _stiffness

# emitter must sit strictly outside the sphere (1 pm guard)
_GEOMETRY_GUARD_M = 1e-12


@dataclass(frozen=True)
class EmitterGeometry:
    """Emitter on the z axis at ``distance`` from the sphere center [m].

    The transition dipole is fixed along z, as is the displacement of the
    electron sphere, so a single scalar fixes the geometry.
    """

    distance: float  # m

    def __post_init__(self):
        if self.distance <= 0:
            raise ValidationError("emitter distance must be > 0")

    @classmethod
    def from_nm(cls, distance_nm: float,
                constants: PhysicalConstants = CODATA2018) -> "EmitterGeometry":
        return cls(distance=constants.nm_to_m(distance_nm))

    @classmethod
    def from_separation_nm(cls, model: SphereModel, separation_nm: float
                           ) -> "EmitterGeometry":
        """Place the emitter ``separation_nm`` outside the sphere surface."""
        return cls(distance=model.radius
                   + model.constants.nm_to_m(separation_nm))


def _check_geometry(model: SphereModel, geom: EmitterGeometry):
    if geom.distance <= model.radius + _GEOMETRY_GUARD_M:
        raise GeometryError(
            f"emitter distance {geom.distance:.3e} m must exceed the sphere "
            f"radius {model.radius:.3e} m")


def _suppression_factor(x):
    """1 - (3 j_1(x)/x)^2, the l>1 weight of the free-space background.

    Series branch below x = 0.1 avoids the cancellation of 1 - (1 - ...)^2.
    """
    x = np.asarray(x, dtype=float)
    small = x < 0.1
    xs = np.where(small, 1.0, x)
    u = 3.0 * j1(xs) / xs
    direct = 1.0 - u * u
    x2 = x * x
    series = x2 / 5.0 - (3.0 / 175.0) * x2 * x2 - 8.46560846560847e-4 * x2**3
    out = np.where(small, series, direct)
    return out if out.ndim else float(out)


def j_free_space(omega, constants: PhysicalConstants = CODATA2018):
    """Free-space transverse spectral density per d^2: W^3/(6 pi^2 hbar eps0 c^3)."""
    omega = np.asarray(omega, dtype=float)
    if np.any(omega < 0):
        raise ValidationError("j_free_space requires omega >= 0")
    out = omega**3 / (6.0 * np.pi**2 * constants.reduced_planck
                      * constants.vacuum_permittivity
                      * constants.speed_of_light**3)
    return out if out.ndim else float(out)


def j_parallel(model: SphereModel, geom: EmitterGeometry, omega):
    """Longitudinal spectral density per d^2.

    J_par / d^2 = Wp^2 R^3 c_1(W)^2 / (6 pi hbar W eps0 r_e^6); integrating
    over the resonance reproduces the quasistatic emitter-plasmon coupling
    g^2 = Wp^2 R^3 / (6 pi hbar W_res eps0 r_e^6).
    """
    _check_geometry(model, geom)
    omega = np.asarray(omega, dtype=float)
    if np.any(omega <= 0):
        raise ValidationError("j_parallel requires omega > 0")
    k = model.constants
    h, g, s = _stiffness(model, omega)
    c1_sq = (g / s) ** 2
    out = (model.plasma_frequency**2 * model.radius**3 * c1_sq
           / (6.0 * np.pi * k.reduced_planck * omega
              * k.vacuum_permittivity * geom.distance**6))
    return out if out.ndim else float(out)


def g_perp(model: SphereModel, geom: EmitterGeometry, omega):
    """Transverse coupling per unit dipole (signed), dressed tm,l=1 channel.

    g_perp/d = (1/r_e) sqrt(3 W^3/(2 pi^2 hbar eps0 c)) *
               [ D(W) j_1(W r_e/c) / W
                 + c_1(W) Wp sqrt(pi c R^3)/(r_e^2 W^2) *
                   (1/3 + W r_e^2 j_1(W R/c) y_1(W r_e/c)/(c R)) ]

    With the sphere switched off (rho -> 0) this reduces exactly to the
    free-space tm, l=1 channel amplitude.
    """
    _check_geometry(model, geom)
    omega = np.asarray(omega, dtype=float)
    if np.any(omega <= 0):
        raise ValidationError("g_perp requires omega > 0")
    k = model.constants
    c = k.speed_of_light
    r_e = geom.distance
    x_s = omega * model.radius / c
    x_e = omega * r_e / c

    h, g, s = _stiffness(model, omega)
    dd = h / s
    c1v = g / s

    term1 = dd * j1(x_e) / omega
    bracket = (1.0 / 3.0
               + omega * r_e**2 * j1(x_s) * y1(x_e) / (c * model.radius))
    term2 = (c1v * model.plasma_frequency
             * np.sqrt(np.pi * c * model.radius**3)
             / (r_e**2 * omega**2) * bracket)
    pref = np.sqrt(3.0 * omega**3
                   / (2.0 * np.pi**2 * k.reduced_planck
                      * k.vacuum_permittivity * c)) / r_e
    out = pref * (term1 + term2)
    return out if out.ndim else float(out)


def j_perp_total(model: SphereModel, geom: EmitterGeometry, omega):
    """Full transverse spectral density per d^2.

    (g_perp/d)^2 plus the unmodified l>1 free-space background
    J_free * [1 - (3 j_1(x)/x)^2] with x = W r_e / c.  Recombines to the
    free-space density exactly when the sphere is switched off.
    """
    _check_geometry(model, geom)
    omega = np.asarray(omega, dtype=float)
    if np.any(omega <= 0):
        raise ValidationError("j_perp_total requires omega > 0")
    x_e = omega * geom.distance / model.constants.speed_of_light
    out = (g_perp(model, geom, omega) ** 2
           + j_free_space(omega, model.constants) * _suppression_factor(x_e))
    return out if out.ndim else float(out)


def j_multipolar_sqrt_terms(model: SphereModel, geom: EmitterGeometry, omega):
    """The two signed amplitudes whose squared sum is the multipolar total.

    sqrt(J1)/d = (1/r_e) sqrt(3 W R/(2 pi^2 hbar eps0 c)) Wp sqrt(pi/c)
                 j_1(W R/c) y_1(W r_e/c) c_1(W)
    sqrt(J2)/d = (1/r_e) sqrt(3 W/(2 pi^2 hbar eps0 c)) j_1(W r_e/c) D(W)
    """
    _check_geometry(model, geom)
    omega = np.asarray(omega, dtype=float)
    if np.any(omega <= 0):
        raise ValidationError("j_multipolar requires omega > 0")
    k = model.constants
    c = k.speed_of_light
    r_e = geom.distance
    x_s = omega * model.radius / c
    x_e = omega * r_e / c
    h, g, s = _stiffness(model, omega)

    base = np.sqrt(3.0 * omega / (2.0 * np.pi**2 * k.reduced_planck
                                  * k.vacuum_permittivity * c)) / r_e
    sqrt_j1 = (base * np.sqrt(model.radius) * model.plasma_frequency
               * np.sqrt(np.pi / c) * j1(x_s) * y1(x_e) * (g / s))
    sqrt_j2 = base * j1(x_e) * (h / s)
    return sqrt_j1, sqrt_j2


def j_multipolar_total(model: SphereModel, geom: EmitterGeometry, omega,
                       include_background: bool = True):
    """Total spectral density per d^2 in the complete multipolar picture.

    (sqrt(J1) + sqrt(J2))^2, which contains both the emitter-sphere Coulomb
    interaction and the transverse photon channel, plus (by default) the
    l>1 free-space background.
    """
    sqrt_j1, sqrt_j2 = j_multipolar_sqrt_terms(model, geom, omega)
    out = (sqrt_j1 + sqrt_j2) ** 2
    if include_background:
        omega = np.asarray(omega, dtype=float)
        x_e = omega * geom.distance / model.constants.speed_of_light
        out = out + (j_free_space(omega, model.constants)
                     * _suppression_factor(x_e))
    return out if np.ndim(out) else float(out)


def pse_explicit_estimate(model: SphereModel,
                          geom: EmitterGeometry | None = None) -> float:
    """Explicitly-kept polarization self-energy per dipole squared.

    H_pse / |z.d|^2 ~ Wp^3 / (18 eps0 pi^2 c^3), returned in eV/(e*nm)^2.
    Valid for emitters well inside c/Wp from the sphere; a warning (not an
    error) is issued otherwise.
    """
    k = model.constants
    c = k.speed_of_light
    if geom is not None and model.plasma_frequency > 0:
        if geom.distance > 0.2 * c / model.plasma_frequency:
            warnings.warn(
                "emitter distance is not small against c/Omega_p; the "
                "small-argument PSE estimate degrades", stacklevel=2)
    value_si = model.plasma_frequency**3 / (18.0 * k.vacuum_permittivity
                                            * np.pi**2 * c**3)
    return k.energy_per_dipole_si_to_ev(value_si)


def k_parallel(model: SphereModel, z):
    """Linear coefficient K_par of the sphere potential on the z axis [V/m].

    phi_s(r, z_s) = K_par(r) z_s to first order;
    K_par = -rho z/(3 eps0) inside, -rho R^3/(3 eps0 z^2) outside.
    """
    z = np.asarray(z, dtype=float)
    if np.any(z < 0):
        raise ValidationError("k_parallel profile is defined for z >= 0")
    k = model.constants
    rho = model.charge_density
    inside = -rho * z / (3.0 * k.vacuum_permittivity)
    zs = np.where(z > model.radius, z, model.radius)
    outside = -rho * model.radius**3 / (3.0 * k.vacuum_permittivity * zs**2)
    out = np.where(z <= model.radius, inside, outside)
    return out if out.ndim else float(out)


def k_parallel_lwa(model: SphereModel, z, emitter_distance: float):
    """Long-wavelength companion: tangent line to K_par at the emitter."""
    if emitter_distance <= model.radius:
        raise GeometryError("tangent point must lie outside the sphere")
    z = np.asarray(z, dtype=float)
    k = model.constants
    rho = model.charge_density
    r0 = emitter_distance
    value = -rho * model.radius**3 / (3.0 * k.vacuum_permittivity * r0**2)
    slope = 2.0 * rho * model.radius**3 / (3.0 * k.vacuum_permittivity * r0**3)
    out = value + slope * (z - r0)
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class SpectralSample:
    """All channels at one frequency, per unit dipole squared (SI)."""

    omega: float
    j_parallel: float
    g_perp_sq: float
    j_perp_total: float
    j_free: float
    j_multipolar: float


@dataclass
class SpectralCurve:
    """Spectral densities by channel on a frequency grid (SI, per d^2)."""

    omega: np.ndarray
    j_parallel: np.ndarray
    g_perp_sq: np.ndarray
    j_perp_total: np.ndarray
    j_free: np.ndarray
    j_multipolar: np.ndarray
    model: SphereModel = field(repr=False)
    geometry: EmitterGeometry = field(repr=False)

    def sample(self, i: int) -> SpectralSample:
        return SpectralSample(
            omega=float(self.omega[i]),
            j_parallel=float(self.j_parallel[i]),
            g_perp_sq=float(self.g_perp_sq[i]),
            j_perp_total=float(self.j_perp_total[i]),
            j_free=float(self.j_free[i]),
            j_multipolar=float(self.j_multipolar[i]),
        )


def compute_spectra(model: SphereModel, geom: EmitterGeometry,
                    omega) -> SpectralCurve:
    """Evaluate every channel on a frequency grid."""
    omega = np.atleast_1d(np.asarray(omega, dtype=float))
    gp = g_perp(model, geom, omega)
    return SpectralCurve(
        omega=omega,
        j_parallel=j_parallel(model, geom, omega),
        g_perp_sq=gp * gp,
        j_perp_total=j_perp_total(model, geom, omega),
        j_free=j_free_space(omega, model.constants),
        j_multipolar=j_multipolar_total(model, geom, omega),
        model=model,
        geometry=geom,
    )

"""Macroscopic-QED cross-check: l=1 Mie Green tensor of a lossless Drude sphere.

The spectral density of a z-oriented emitter on the z axis follows from
the zz component of the electromagnetic Green tensor,

    J / d^2 = W^2 / (hbar pi eps0 c^2) * Im G_zz(r_e, r_e, W),

with Im G_zz = w/(6 pi c) in vacuum plus the l=1 electric (TM) scattering
term.  This route never touches the Fano diagonalization, so agreement
with the analytic spectral densities validates the whole pipeline.

Riccati-Bessel functions are evaluated from trigonometric closed forms
with small-argument series; no recurrences are involved, which keeps the
purely imaginary refractive index below the plasma frequency stable.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .constants import CODATA2018, PhysicalConstants
from .errors import GeometryError, ValidationError

# quasistatic epsilon = 0 is a removable point of the Mie coefficient
_EPS_ZERO_SWITCH = 1e-9


@dataclass(frozen=True)
class DrudePermittivity:
    """Lossless Drude permittivity eps(w) = 1 - Wp^2 / w^2."""

    plasma_frequency: float  # rad/s

    def __post_init__(self):
        if self.plasma_frequency < 0:
            raise ValidationError("plasma frequency must be >= 0")

    def epsilon(self, omega):
        omega = np.asarray(omega, dtype=float)
        out = 1.0 - (self.plasma_frequency / omega) ** 2
        return out if out.ndim else float(out)


@dataclass(frozen=True)
class GreenZZ:
    """Imaginary zz Green-tensor parts at the emitter location [1/m]."""

    free_part: float
    scatter_l1: float

    @property
    def total(self) -> float:
        return self.free_part + self.scatter_l1


def _psi1(z):
    """Riccati-Bessel psi_1(z) = z j_1(z) = sin(z)/z - cos(z), complex-safe."""
    z = np.asarray(z, dtype=complex)
    small = np.abs(z) < 0.1
    zs = np.where(small, 1.0, z)
    direct = np.sin(zs) / zs - np.cos(zs)
    z2 = z * z
    series = z2 / 3.0 - z2 * z2 / 30.0 + z2**3 / 840.0 - z2**4 / 45360.0
    return np.where(small, series, direct)


def _psi1_prime(z):
    """d/dz psi_1(z) = cos(z)/z - sin(z)/z^2 + sin(z)."""
    z = np.asarray(z, dtype=complex)
    small = np.abs(z) < 0.1
    zs = np.where(small, 1.0, z)
    direct = np.cos(zs) / zs - np.sin(zs) / zs**2 + np.sin(zs)
    z2 = z * z
    series = (2.0 / 3.0) * z - (4.0 / 30.0) * z * z2 \
        + (6.0 / 840.0) * z * z2**2 - (8.0 / 45360.0) * z * z2**3
    return np.where(small, series, direct)


def _xi1(z):
    """Riccati-Bessel xi_1(z) = z h_1^(1)(z) = psi_1(z) - i chi_1(z)."""
    z = np.asarray(z, dtype=complex)
    chi = np.cos(z) / z + np.sin(z)
    return _psi1(z) - 1j * chi


def _xi1_prime(z):
    z = np.asarray(z, dtype=complex)
    chi_prime = -np.sin(z) / z - np.cos(z) / z**2 + np.cos(z)
    return _psi1_prime(z) - 1j * chi_prime


def mie_electric_l1(eps: DrudePermittivity, omega: float, radius: float,
                    constants: PhysicalConstants = CODATA2018) -> complex:
    """l=1 electric (TM) scattering coefficient of the Green-function expansion.

    The convention is pinned by two limits: it vanishes in vacuum, and in
    the quasistatic limit it reduces to (2i/3) x^3 (eps-1)/(eps+2), so the
    scattered Green function has Im G >= 0 and reproduces the image-dipole
    result.  For a lossless sphere the modulus never exceeds 1.
    """
    if omega <= 0:
        raise ValidationError("mie_electric_l1 requires omega > 0")
    if radius <= 0:
        raise ValidationError("sphere radius must be > 0")
    x = omega * radius / constants.speed_of_light
    epsw = 1.0 - (eps.plasma_frequency / omega) ** 2
    if abs(epsw) < _EPS_ZERO_SWITCH:
        # removable point where the internal index vanishes
        return complex(-_psi1(x) / _xi1(x))
    m = cmath.sqrt(epsw)  # purely imaginary below the plasma frequency
    mx = m * x
    num = m * _psi1(mx) * _psi1_prime(x) - _psi1(x) * _psi1_prime(mx)
    den = m * _psi1(mx) * _xi1_prime(x) - _xi1(x) * _psi1_prime(mx)
    return complex(-num / den)


def green_zz(eps: DrudePermittivity, omega: float, radius: float,
             r_e: float, constants: PhysicalConstants = CODATA2018) -> GreenZZ:
    """Im G_zz at the emitter: free part w/(6 pi c) plus the l=1 TM term.

    On the z axis the radial-dipole expansion reduces to

        G_scatt,zz = (i k / 4 pi) * l(l+1)(2l+1) b_l [h_l(k r)/(k r)]^2

    restricted to l = 1.
    """
    if r_e <= radius:
        raise GeometryError("emitter must sit outside the sphere")
    k = omega / constants.speed_of_light
    kr = k * r_e
    b1 = mie_electric_l1(eps, omega, radius, constants)
    h1_over = _xi1(complex(kr)) / kr**2  # h_1(kr)/(kr)
    scatter = (1j * k / (4.0 * np.pi) * 6.0 * b1 * h1_over**2).imag
    return GreenZZ(free_part=k / (6.0 * np.pi), scatter_l1=float(scatter))


def j_mqed(eps: DrudePermittivity, omega, radius: float, r_e: float,
           constants: PhysicalConstants = CODATA2018):
    """Spectral density per d^2 from the macroscopic-QED Green tensor."""
    omega_arr = np.atleast_1d(np.asarray(omega, dtype=float))
    if np.any(omega_arr <= 0):
        raise ValidationError("j_mqed requires omega > 0")
    out = np.empty_like(omega_arr)
    for i, w in enumerate(omega_arr):
        g = green_zz(eps, float(w), radius, r_e, constants)
        out[i] = (w**2 / (constants.reduced_planck * np.pi
                          * constants.vacuum_permittivity
                          * constants.speed_of_light**2) * g.total)
    return out if np.ndim(omega) else float(out[0])

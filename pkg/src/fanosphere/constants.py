"""Physical constants and unit conversions.

Single source of constants for the whole package: every formula module
receives its constants from here (directly or through a model object), so
the CODATA snapshot can be swapped or perturbed consistently.

Internal unit system is SI with angular frequencies in rad/s.  Boundary
conversions: lengths in nm, energies in eV, dipole moments in Debye or
e*nm, charge densities in e/nm^3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy import constants as _sc


@dataclass(frozen=True)
class PhysicalConstants:
    """CODATA-2018 constants in SI units (via scipy.constants)."""

    elementary_charge: float = _sc.e            # C
    electron_mass: float = _sc.m_e              # kg
    vacuum_permittivity: float = _sc.epsilon_0  # F/m
    reduced_planck: float = _sc.hbar            # J*s
    speed_of_light: float = _sc.c               # m/s
    fine_structure: float = _sc.alpha           # dimensionless
    hartree: float = _sc.physical_constants["Hartree energy"][0]  # J

    def fine_structure_recomputed(self) -> float:
        """alpha = e^2 / (4 pi eps0 hbar c) from the stored constants."""
        e, eps0 = self.elementary_charge, self.vacuum_permittivity
        return e * e / (4.0 * math.pi * eps0 * self.reduced_planck * self.speed_of_light)

    # --- boundary conversions -------------------------------------------

    def ev_to_angular(self, energy_ev: float):
        """Photon/transition energy in eV -> angular frequency in rad/s.

        Sign is preserved for negative inputs.
        """
        return energy_ev * self.elementary_charge / self.reduced_planck

    def angular_to_ev(self, omega: float):
        """Angular frequency in rad/s -> energy in eV."""
        return omega * self.reduced_planck / self.elementary_charge

    def nm_to_m(self, length_nm: float):
        return length_nm * 1e-9

    def m_to_nm(self, length_m: float):
        return length_m * 1e9

    def debye_to_si(self, dipole_debye: float):
        """Debye -> C*m.  1 D = 1e-21/c C*m."""
        return dipole_debye * 1e-21 / self.speed_of_light

    def si_to_debye(self, dipole_si: float):
        return dipole_si * self.speed_of_light / 1e-21

    def enm_to_si(self, dipole_enm: float):
        """e*nm -> C*m."""
        return dipole_enm * self.elementary_charge * 1e-9

    def si_to_enm(self, dipole_si: float):
        return dipole_si / (self.elementary_charge * 1e-9)

    def density_e_nm3_to_si(self, density_e_nm3: float):
        """Charge density in e/nm^3 -> C/m^3."""
        return density_e_nm3 * self.elementary_charge * 1e27

    def energy_per_dipole_si_to_ev(self, value_si: float):
        """Energy per dipole squared, J/(C*m)^2 -> eV/(e*nm)^2."""
        return value_si * self.elementary_charge * 1e-18

    def density_per_dipole_si_to_ev(self, value_si: float):
        """Spectral density J/d^2 in SI (per (C*m)^2, per rad/s of bandwidth)
        -> hbar*J/d^2 in eV/(e*nm)^2 per eV of bandwidth.

        hbar*J is already a density of (hbar*G)^2 over hbar*Omega, so only
        the value conversion J/(C*m)^2 -> eV/(e*nm)^2 remains.
        """
        return value_si * self.reduced_planck * self.elementary_charge * 1e-18


CODATA2018 = PhysicalConstants()


def ev_to_angular(energy_ev, constants: PhysicalConstants = CODATA2018):
    """Energy in eV -> angular frequency in rad/s (module-level convenience)."""
    return constants.ev_to_angular(energy_ev)


def angular_to_ev(omega, constants: PhysicalConstants = CODATA2018):
    """Angular frequency in rad/s -> energy in eV."""
    return constants.angular_to_ev(omega)


def usc_energy_scale(constants: PhysicalConstants = CODATA2018) -> float:
    """Energy scale limiting the emitter-photon coupling ratio, in MeV.

    E = 4 pi^2 eps0 m_e c^3 hbar / e^2, the denominator energy in the bound
    (G/omega)^2 < hbar*Omega_T / E.  Algebraically equal to
    pi * alpha^-3 Hartree, roughly 220 MeV.
    """
    e = constants.elementary_charge
    energy_j = (4.0 * math.pi**2 * constants.vacuum_permittivity
                * constants.electron_mass * constants.speed_of_light**3
                * constants.reduced_planck) / (e * e)
    return energy_j / e / 1e6


def usc_energy_scale_atomic(constants: PhysicalConstants = CODATA2018) -> float:
    """The same scale evaluated as pi * alpha^-3 * Hartree, in MeV."""
    energy_j = math.pi * constants.fine_structure**-3 * constants.hartree
    return energy_j / constants.elementary_charge / 1e6

"""Fundamental bounds on the emitter-photon coupling strength.

An idealized cavity that concentrates every photon mode below a
transparency energy hbar*Omega_T into one resonant transverse mode cannot
exceed

    G_perp = |d| sqrt(Omega_T w^3 / (6 pi^2 hbar eps0 c^3)),

and with the transition dipole capped by the Thomas-Reiche-Kuhn sum rule
the ratio G_perp/w is bounded by sqrt(hbar*Omega_T / E) with
E = 4 pi^2 eps0 m_e c^3 hbar / e^2 (about 220 MeV), independent of the
emitter frequency.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .constants import CODATA2018, PhysicalConstants, usc_energy_scale
from .errors import ValidationError


@dataclass(frozen=True)
class BoundQuery:
    """Inputs for the coupling bounds (energies in eV, dipole in C*m)."""

    transparency_energy_ev: float
    transition_energy_ev: float
    dipole_si: float | None = None
    n_electrons: float = 1.0

    def __post_init__(self):
        if self.transparency_energy_ev <= 0:
            raise ValidationError("transparency energy must be > 0")
        if self.transition_energy_ev <= 0:
            raise ValidationError("transition energy must be > 0")
        if self.n_electrons <= 0:
            raise ValidationError("n_electrons must be > 0")


def perfect_cavity_coupling(query: BoundQuery,
                            constants: PhysicalConstants = CODATA2018) -> float:
    """Coupling G_perp [rad/s] of a perfect transverse cavity.

    G = |d| sqrt(Omega_T w^3 / (6 pi^2 hbar eps0 c^3)).
    """
    if query.dipole_si is None:
        raise ValidationError("perfect_cavity_coupling needs a dipole moment")
    omega_t = constants.ev_to_angular(query.transparency_energy_ev)
    omega = constants.ev_to_angular(query.transition_energy_ev)
    return query.dipole_si * math.sqrt(
        omega_t * omega**3
        / (6.0 * math.pi**2 * constants.reduced_planck
           * constants.vacuum_permittivity * constants.speed_of_light**3))


def trk_dipole_bound(transition_energy_ev: float, n_electrons: float = 1.0,
                     constants: PhysicalConstants = CODATA2018) -> float:
    """TRK sum-rule cap on the transition dipole [C*m].

    |d| < sqrt(3 hbar e^2 n / (2 m_e w)).
    """
    if transition_energy_ev <= 0:
        raise ValidationError("transition energy must be > 0")
    if n_electrons <= 0:
        raise ValidationError("n_electrons must be > 0")
    omega = constants.ev_to_angular(transition_energy_ev)
    e = constants.elementary_charge
    return math.sqrt(3.0 * constants.reduced_planck * e * e * n_electrons
                     / (2.0 * constants.electron_mass * omega))


def usc_ratio_bound(transparency_energy_ev: float,
                    constants: PhysicalConstants = CODATA2018) -> float:
    """Upper bound on G_perp/w for a TRK-saturated single-electron emitter.

    sqrt(Omega_T e^2 / (4 pi^2 eps0 m_e c^3)), independent of the emitter
    frequency; numerically sqrt(hbar*Omega_T / 220 MeV).
    """
    if transparency_energy_ev <= 0:
        raise ValidationError("transparency energy must be > 0")
    omega_t = constants.ev_to_angular(transparency_energy_ev)
    e = constants.elementary_charge
    return math.sqrt(omega_t * e * e
                     / (4.0 * math.pi**2 * constants.vacuum_permittivity
                        * constants.electron_mass
                        * constants.speed_of_light**3))


def required_transparency(target_ratio: float,
                          constants: PhysicalConstants = CODATA2018) -> float:
    """Transparency energy [eV] needed to reach a given G_perp/w ratio.

    Inverse of :func:`usc_ratio_bound`; 0.1 maps to about 2.2 MeV.
    """
    if not 0.0 < target_ratio < 1.0:
        raise ValidationError("target ratio must lie in (0, 1)")
    return target_ratio**2 * usc_energy_scale(constants) * 1e6

"""Quantum emitter next to a plasmonic nanosphere: spectral densities,
coupling bounds, and a macroscopic-QED cross-check."""

from .analysis import (LorentzianFit, SweepGrid, SweepRow, fit_lorentzian,
                       fit_parallel_resonance, longitudinality, sweep,
                       usc_parameter)
from .bessel import BesselOrderRange, j1, jl_array, weighted_jl_sum, y1
from .bounds import (BoundQuery, perfect_cavity_coupling, required_transparency,
                     trk_dipole_bound, usc_ratio_bound)
from .constants import (CODATA2018, PhysicalConstants, angular_to_ev,
                        ev_to_angular, usc_energy_scale)
from .errors import (ConvergenceError, DegenerateWindowError, FanosphereError,
                     FitConvergenceError, GeometryError, ValidationError)
from .fano import (FanoEvaluation, SphereModel, c1, detuning_d, gamma,
                   plasma_frequency, resonance_root, resonance_width, shift_F)
from .mqed import DrudePermittivity, GreenZZ, green_zz, j_mqed, mie_electric_l1
from .oracles import (CoulombOverlapResult, PvSpec, QuadratureSpec,
                      adaptive_integrate, c1_normalization,
                      coulomb_overlap_exact, coulomb_overlap_oracle,
                      pv_shift_oracle, sum_rule_residual)
from .spectra import (EmitterGeometry, SpectralCurve, SpectralSample,
                      compute_spectra, g_perp, j_free_space, j_multipolar_total,
                      j_parallel, j_perp_total, k_parallel, k_parallel_lwa,
                      pse_explicit_estimate)

__version__ = "0.1.0"

__all__ = [
    "BesselOrderRange", "BoundQuery", "CODATA2018", "ConvergenceError",
    "CoulombOverlapResult", "DegenerateWindowError", "DrudePermittivity",
    "EmitterGeometry", "FanoEvaluation", "FanosphereError",
    "FitConvergenceError", "GeometryError", "GreenZZ", "LorentzianFit",
    "PhysicalConstants", "PvSpec", "QuadratureSpec", "SphereModel",
    "SpectralCurve", "SpectralSample", "SweepGrid", "SweepRow",
    "ValidationError", "adaptive_integrate", "angular_to_ev", "c1",
    "c1_normalization", "compute_spectra", "coulomb_overlap_exact",
    "coulomb_overlap_oracle", "detuning_d", "ev_to_angular",
    "fit_lorentzian", "fit_parallel_resonance", "g_perp", "gamma",
    "green_zz", "j1", "j_free_space", "j_mqed", "j_multipolar_total",
    "j_parallel", "j_perp_total", "jl_array", "k_parallel",
    "k_parallel_lwa", "longitudinality", "mie_electric_l1",
    "perfect_cavity_coupling", "plasma_frequency", "pse_explicit_estimate",
    "pv_shift_oracle", "required_transparency", "resonance_root",
    "resonance_width", "shift_F", "sum_rule_residual", "sweep",
    "trk_dipole_bound", "usc_energy_scale", "usc_parameter",
    "usc_ratio_bound", "weighted_jl_sum", "y1",
]

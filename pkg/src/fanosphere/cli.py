"""Command-line surface: spectra, sweeps, bounds, potentials, verification.

Subcommands: constants, spectra, sweep, sumrule, bound, potential, verify,
fit.  Flags can also be supplied through a flat JSON config file
(``--config``); explicit flags override file values.  Output is CSV with a
'#'-prefixed header block (17 significant digits) or an equivalent JSON
mirror.  Exit codes: 0 success, 1 validation, 2 numerical failure, 3 I/O.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass

import numpy as np

from . import __version__
from .analysis import SweepGrid, fit_parallel_resonance, sweep, usc_parameter
from .bessel import weighted_jl_sum
from .bounds import (BoundQuery, perfect_cavity_coupling,
                     required_transparency, trk_dipole_bound, usc_ratio_bound)
from .constants import CODATA2018, usc_energy_scale, usc_energy_scale_atomic
from .errors import ConvergenceError, FanosphereError, ValidationError
from .fano import SphereModel, resonance_root, shift_F
from .mqed import DrudePermittivity, j_mqed
from .oracles import (c1_normalization, coulomb_overlap_exact,
                      coulomb_overlap_oracle, pv_shift_oracle,
                      sum_rule_residual)
from .spectra import (EmitterGeometry, compute_spectra, j_free_space,
                      k_parallel, k_parallel_lwa, pse_explicit_estimate)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NUMERICAL = 2
EXIT_IO = 3


@dataclass
class RunConfig:
    """Effective configuration after merging defaults, file and flags."""

    density: float = 60.0      # e/nm^3
    radius: float = 2.5        # nm
    separation: float = 1.0    # nm
    dipole: float = 10.0       # Debye
    emin: float = 0.1          # eV
    emax: float = 12.0         # eV
    n: int = 2401
    format: str = "csv"
    out: str | None = None
    cutoff: float = 50.0       # multiples of Omega_p
    seed: int = 0

    def validate(self):
        if self.density < 0:
            raise ValidationError("density must be >= 0")
        if self.radius <= 0 or self.separation <= 0:
            raise ValidationError("radius and separation must be > 0")
        if self.dipole < 0:
            raise ValidationError("dipole must be >= 0")
        if self.n < 2:
            raise ValidationError("energy grid needs at least 2 points")
        if not 0 < self.emin < self.emax:
            raise ValidationError("need 0 < emin < emax")
        if self.format not in ("csv", "json"):
            raise ValidationError("format must be csv or json")
        if self.cutoff <= 0:
            raise ValidationError("cutoff must be > 0")


_CONFIG_KEYS = set(RunConfig.__dataclass_fields__)


def _merge_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    if getattr(args, "config", None):
        with open(args.config, encoding="utf-8") as fh:
            data = json.load(fh)
        unknown = set(data) - _CONFIG_KEYS
        if unknown:
            raise ValidationError(f"unknown config keys: {sorted(unknown)}")
        for key, value in data.items():
            setattr(cfg, key, value)
    for key in _CONFIG_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            setattr(cfg, key, value)
    cfg.n = int(cfg.n)
    cfg.seed = int(cfg.seed)
    cfg.validate()
    return cfg


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.16e}"
    return str(value)


def _write_table(cfg: RunConfig, columns: list[str], rows, extra_header=None):
    """CSV with '#'-header block, or the JSON mirror, to --out or stdout."""
    header = dict(asdict(cfg))
    header["version"] = __version__
    if extra_header:
        header.update(extra_header)
    if cfg.format == "json":
        payload = {
            "config": header,
            "columns": columns,
            "rows": [[float(v) if isinstance(v, (int, float, np.floating))
                      else v for v in row] for row in rows],
        }
        text = json.dumps(payload, indent=2) + "\n"
    else:
        lines = [f"# {key} = {value}" for key, value in header.items()]
        lines.append(",".join(columns))
        for row in rows:
            lines.append(",".join(_fmt(v) for v in row))
        text = "\n".join(lines) + "\n"
    _emit(cfg.out, text)


def _write_report(cfg: RunConfig, payload: dict):
    if cfg.format == "json":
        text = json.dumps(payload, indent=2) + "\n"
    else:
        lines = [f"{key} = {_fmt(value) if isinstance(value, float) else value}"
                 for key, value in payload.items()]
        text = "\n".join(lines) + "\n"
    _emit(cfg.out, text)


def _emit(out: str | None, text: str):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _model_geom(cfg: RunConfig):
    model = SphereModel.from_nm(cfg.radius, cfg.density)
    geom = EmitterGeometry.from_separation_nm(model, cfg.separation)
    return model, geom


# --- subcommands -------------------------------------------------------------

def cmd_constants(cfg: RunConfig) -> int:
    k = CODATA2018
    model = SphereModel.from_nm(cfg.radius, cfg.density)
    wp = model.plasma_frequency
    payload = {
        "density_e_nm3": cfg.density,
        "hbar_omega_p_ev": k.angular_to_ev(wp),
        "quasistatic_resonance_ev": k.angular_to_ev(wp / np.sqrt(3.0)),
        "c_over_omega_p_nm": k.m_to_nm(k.speed_of_light / wp) if wp else float("inf"),
        "usc_energy_scale_mev": usc_energy_scale(),
        "usc_energy_scale_atomic_mev": usc_energy_scale_atomic(),
        "pse_estimate_ev_per_enm2": pse_explicit_estimate(model),
    }
    if wp:
        payload["dressed_resonance_ev"] = k.angular_to_ev(
            resonance_root(model))
    _write_report(cfg, payload)
    return EXIT_OK


def cmd_spectra(cfg: RunConfig) -> int:
    k = CODATA2018
    model, geom = _model_geom(cfg)
    energies = np.linspace(cfg.emin, cfg.emax, cfg.n)
    omega = k.ev_to_angular(energies)
    curve = compute_spectra(model, geom, omega)
    eps = DrudePermittivity(model.plasma_frequency)
    mqed = j_mqed(eps, omega, model.radius, geom.distance)
    conv = k.density_per_dipole_si_to_ev
    columns = ["energy_ev", "j_parallel", "g_perp_sq", "j_perp_total",
               "j_free", "j_multipolar", "j_mqed"]
    rows = [
        (float(energies[i]), conv(float(curve.j_parallel[i])),
         conv(float(curve.g_perp_sq[i])), conv(float(curve.j_perp_total[i])),
         conv(float(curve.j_free[i])), conv(float(curve.j_multipolar[i])),
         conv(float(mqed[i])))
        for i in range(len(energies))
    ]
    _write_table(cfg, columns, rows,
                 extra_header={"density_units": "eV/(e*nm)^2 per eV"})
    return EXIT_OK


def cmd_sweep(cfg: RunConfig, args) -> int:
    radii = tuple(float(v) for v in args.radii.split(","))
    separations = tuple(float(v) for v in args.separations.split(","))
    lo, hi = (float(v) for v in args.window.split(","))
    grid = SweepGrid(radii_nm=radii, separations_nm=separations,
                     frequency_window=(lo, hi), dipole_debye=cfg.dipole)
    rows = sweep(grid, cfg.density)
    columns = ["radius_nm", "separation_nm", "ell", "usc_parameter",
               "omega_res_ev", "kappa_res_ev", "error"]
    table = [(r.radius_nm, r.separation_nm,
              float("nan") if r.ell is None else r.ell,
              float("nan") if r.usc is None else r.usc,
              float("nan") if r.omega_res_ev is None else r.omega_res_ev,
              float("nan") if r.kappa_res_ev is None else r.kappa_res_ev,
              r.error or "") for r in rows]
    _write_table(cfg, columns, table)
    return EXIT_OK


def cmd_sumrule(cfg: RunConfig) -> int:
    model, geom = _model_geom(cfg)
    cutoff = cfg.cutoff * model.plasma_frequency if model.plasma_frequency \
        else cfg.cutoff * CODATA2018.ev_to_angular(9.0)
    residual = sum_rule_residual(model, geom, cutoff)
    payload = {
        "cutoff_over_omega_p": cfg.cutoff,
        "normalized_residual": residual,
        "abs_residual_below": 1e-2,
        "passes": bool(abs(residual) < 1e-2),
    }
    if model.plasma_frequency:
        payload["resonance_ev"] = CODATA2018.angular_to_ev(
            resonance_root(model))
    _write_report(cfg, payload)
    return EXIT_OK


def cmd_bound(cfg: RunConfig, args) -> int:
    k = CODATA2018
    payload: dict = {"usc_energy_scale_mev": usc_energy_scale()}
    if args.target is not None:
        payload["target_ratio"] = args.target
        payload["required_transparency_ev"] = required_transparency(args.target)
        payload["required_transparency_mev"] = (
            required_transparency(args.target) / 1e6)
    if args.transparency is not None:
        payload["transparency_ev"] = args.transparency
        payload["usc_ratio_bound"] = usc_ratio_bound(args.transparency)
    if args.transition is not None:
        d_max = trk_dipole_bound(args.transition)
        payload["transition_ev"] = args.transition
        payload["trk_dipole_max_debye"] = k.si_to_debye(d_max)
        payload["trk_dipole_max_enm"] = k.si_to_enm(d_max)
        if args.transparency is not None:
            dipole = k.debye_to_si(cfg.dipole) if args.dipole is not None \
                else d_max
            query = BoundQuery(transparency_energy_ev=args.transparency,
                               transition_energy_ev=args.transition,
                               dipole_si=dipole)
            g = perfect_cavity_coupling(query)
            payload["perfect_cavity_coupling_over_omega"] = (
                g / k.ev_to_angular(args.transition))
    if args.target is None and args.transparency is None \
            and args.transition is None:
        raise ValidationError(
            "bound needs --target, --transparency or --transition")
    _write_report(cfg, payload)
    return EXIT_OK


def cmd_potential(cfg: RunConfig, args) -> int:
    model, geom = _model_geom(cfg)
    zmax = args.zmax if args.zmax is not None else 4.0 * cfg.radius
    z_nm = np.linspace(0.0, zmax, cfg.n)
    z = CODATA2018.nm_to_m(z_nm)
    kp = k_parallel(model, z)
    kl = k_parallel_lwa(model, z, geom.distance)
    rows = [(float(z_nm[i]), float(kp[i]), float(kl[i]))
            for i in range(len(z_nm))]
    _write_table(cfg, ["z_nm", "k_parallel_v_per_m", "k_lwa_v_per_m"], rows,
                 extra_header={"sphere_radius_marker_nm": cfg.radius,
                               "tangent_point_nm": cfg.radius + cfg.separation})
    return EXIT_OK


def cmd_fit(cfg: RunConfig) -> int:
    model, geom = _model_geom(cfg)
    fit = fit_parallel_resonance(model, geom)
    payload = {
        "omega_res_ev": CODATA2018.angular_to_ev(fit.omega_res),
        "kappa_res_ev": CODATA2018.angular_to_ev(fit.kappa),
        "usc_parameter": usc_parameter(fit, cfg.dipole),
        "rms_residual": fit.rms_residual,
        "converged": fit.converged,
        "dipole_debye": cfg.dipole,
    }
    _write_report(cfg, payload)
    return EXIT_OK


def cmd_verify(cfg: RunConfig, args) -> int:
    """Run every oracle comparison and report pass/fail per check."""
    k = CODATA2018
    rng = np.random.default_rng(cfg.seed)
    checks: list[tuple[str, float, float]] = []  # name, error, tolerance
    perturb = 1.0 + (args.debug_perturb_omegap or 0.0)

    # F closed form vs PV quadrature, random frequencies per model
    for radius, rho in ((1.0, 60.0), (2.5, 60.0), (10.0, 30.0)):
        model = SphereModel.from_nm(radius, rho)
        worst = 0.0
        for _ in range(7):
            w = float(rng.uniform(0.05, 0.95)) * model.plasma_frequency
            closed = shift_F(model, w) * perturb**2
            numeric = pv_shift_oracle(model, w)
            worst = max(worst, abs(closed - numeric) / abs(numeric))
        checks.append((f"pv_shift R={radius}nm rho={rho}", worst, 1e-6))

    # c1 normalization
    for radius, rho in ((1.0, 60.0), (2.5, 60.0), (10.0, 60.0)):
        model = SphereModel.from_nm(radius, rho)
        norm = c1_normalization(model)
        checks.append((f"c1_norm R={radius}nm", abs(norm - 1.0), 1e-4))

    # Bessel channel identity
    worst = 0.0
    for x in np.geomspace(0.01, 50.0, 25):
        s = weighted_jl_sum(float(x), l_min=1, tol=1e-13)
        worst = max(worst, abs(s - 2.0 * x * x / 3.0) / (2.0 * x * x / 3.0))
    checks.append(("bessel_identity", worst, 1e-9))

    # Coulomb Monte Carlo vs polynomial (3 sigma -> report error/3sigma)
    radius = 1.0
    for z in (0.0, 0.5, 1.0):
        mc = coulomb_overlap_oracle(radius, z, samples=1_000_000,
                                    seed=cfg.seed)
        exact = coulomb_overlap_exact(radius, z)
        checks.append((f"coulomb_mc z={z}R",
                       abs(mc.estimate - exact) / (3.0 * mc.standard_error),
                       1.0))

    # vacuum limits on a coarse grid
    model0 = SphereModel.from_nm(cfg.radius, 1e-9)
    geom0 = EmitterGeometry.from_separation_nm(model0, cfg.separation)
    omega = k.ev_to_angular(np.linspace(0.5, 10.0, 40))
    free = j_free_space(omega)
    curve = compute_spectra(model0, geom0, omega)
    eps0 = DrudePermittivity(model0.plasma_frequency)
    mq = j_mqed(eps0, omega, model0.radius, geom0.distance)
    for name, values in (("vacuum_j_perp", curve.j_perp_total),
                         ("vacuum_j_multipolar", curve.j_multipolar),
                         ("vacuum_j_mqed", mq)):
        worst = float(np.max(np.abs(values - free) / free))
        checks.append((name, worst, 1e-6))

    # MQED vs multipolar agreement at the supplementary-figure geometry
    model = SphereModel.from_nm(2.0, 58.9)
    geom = EmitterGeometry.from_nm(4.0)
    w_res = resonance_root(model)
    window = np.linspace(0.9 * w_res, 1.1 * w_res, 1501)
    analytic = compute_spectra(model, geom, window).j_multipolar
    mq = j_mqed(DrudePermittivity(model.plasma_frequency), window,
                model.radius, geom.distance)
    scale = float(np.max(np.maximum(analytic, mq)))
    checks.append(("mqed_agreement",
                   float(np.max(np.abs(analytic - mq))) / scale, 1e-2))

    # sum rule at a modest cutoff
    model, geom = _model_geom(cfg)
    residual = sum_rule_residual(model, geom,
                                 cfg.cutoff * model.plasma_frequency)
    checks.append(("sum_rule", abs(residual), 1e-2))

    failures = 0
    lines = {}
    for name, error, tol in checks:
        ok = error < tol
        failures += 0 if ok else 1
        lines[name] = f"{'PASS' if ok else 'FAIL'} error={error:.3e} tol={tol:.1e}"
    payload = {"seed": cfg.seed, "failures": failures, **lines}
    _write_report(cfg, payload)
    return EXIT_OK if failures == 0 else EXIT_NUMERICAL


# --- argument parsing --------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):  # map argparse usage errors to exit code 1
        raise ValidationError(message)


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--rho", dest="density", type=float,
                        help="charge density [e/nm^3], default 60")
    parser.add_argument("--radius", type=float, help="sphere radius [nm]")
    parser.add_argument("--separation", type=float,
                        help="emitter-surface separation [nm]")
    parser.add_argument("--dipole", type=float, help="dipole moment [Debye]")
    parser.add_argument("--emin", type=float, help="grid minimum [eV]")
    parser.add_argument("--emax", type=float, help="grid maximum [eV]")
    parser.add_argument("--n", type=int, help="grid point count")
    parser.add_argument("--format", choices=("csv", "json"))
    parser.add_argument("--out", help="output path ('-' for stdout)")
    parser.add_argument("--cutoff", type=float,
                        help="sum-rule cutoff in units of Omega_p")
    parser.add_argument("--seed", type=int, help="Monte Carlo seed")
    parser.add_argument("--config", help="flat JSON config file")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fanosphere",
                     description="Emitter-nanosphere spectral densities, "
                                 "coupling bounds and cross-checks")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in (
            ("constants", "derived frequencies and energy scales"),
            ("spectra", "spectral densities on an energy grid"),
            ("sumrule", "normalized sum-rule residual"),
            ("fit", "Lorentzian fit of the longitudinal resonance"),
    ):
        p = sub.add_parser(name, help=help_text)
        _add_common(p)

    p = sub.add_parser("sweep", help="radius/separation sweep")
    _add_common(p)
    p.add_argument("--radii", default="1,2.5,5",
                   help="comma-separated radii [nm]")
    p.add_argument("--separations", default="0.5,1,2",
                   help="comma-separated separations [nm]")
    p.add_argument("--window", default="0.57,0.58",
                   help="averaging window as fractions of Omega_p")

    p = sub.add_parser("bound", help="photon-coupling bounds")
    _add_common(p)
    p.add_argument("--transparency", type=float,
                   help="transparency energy [eV]")
    p.add_argument("--target", type=float, help="target G/omega ratio")
    p.add_argument("--transition", type=float,
                   help="emitter transition energy [eV]")

    p = sub.add_parser("potential", help="sphere potential profile")
    _add_common(p)
    p.add_argument("--zmax", type=float, help="profile extent [nm]")

    p = sub.add_parser("verify", help="run the oracle suite")
    _add_common(p)
    p.add_argument("--debug-perturb-omegap", type=float, default=0.0,
                   help="fractional Omega_p perturbation of the closed-form "
                        "side (sensitivity canary)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = _merge_config(args)
        if args.command == "constants":
            return cmd_constants(cfg)
        if args.command == "spectra":
            return cmd_spectra(cfg)
        if args.command == "sweep":
            return cmd_sweep(cfg, args)
        if args.command == "sumrule":
            return cmd_sumrule(cfg)
        if args.command == "bound":
            return cmd_bound(cfg, args)
        if args.command == "potential":
            return cmd_potential(cfg, args)
        if args.command == "fit":
            return cmd_fit(cfg)
        if args.command == "verify":
            return cmd_verify(cfg, args)
        raise ValidationError(f"unknown command {args.command}")
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ConvergenceError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except FanosphereError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

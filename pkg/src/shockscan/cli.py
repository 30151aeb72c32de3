"""Command line front end.

Four subcommands:

    rh          end states of a shock from (q1, strength) or (q0, q1)
    profile     one dissipation profile, classified; CSV + JSON output
    scan        classify profiles over a strength grid; CSV + JSON
    causality   classify a BDN coefficient triple

Options can come from an INI config file (--config) with sections
[eos], [model], [shock], [solver], [scan], [output]; command line flags
override file values.  Numeric options accept fractions like 4/3.

Exit codes: 0 success (end states found, profile connected, scan or
classification completed); 1 configuration error (bad flags, malformed
config, model/EOS mismatch, empty grid); 2 no shock for the requested
fluxes; 3 profile failure classification (no_connection,
escaped_domain, singular_matrix).
"""

import argparse
import configparser
import json
import os
import sys
from fractions import Fraction

import numpy as np

from .fluid_core import EosError, make_eos
from .rankine_hugoniot import NoShock, end_states, shock_from_strength
from .dissipation import (CausalityError, BdnCoefficients, make_model,
                          bdn_causality_class)
from .profile_dynamics import scalar_profile_ft, shoot_heteroclinic
from .scan import run_scan

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NOSHOCK = 2
EXIT_PROFILE = 3


def fracfloat(text):
    """Float parser that also accepts rationals like 4/3."""
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from exc


def _grid(text):
    """Strength grid: 'lo:hi:n' (inclusive linspace) or a comma list."""
    if ":" in text:
        lo, hi, n = text.split(":")
        return [float(v) for v in
                np.linspace(float(Fraction(lo)), float(Fraction(hi)), int(n))]
    return [float(Fraction(v)) for v in text.split(",")]


def _comma_list(text):
    return [float(Fraction(v)) for v in text.split(",")]


def build_parser():
    ap = argparse.ArgumentParser(
        prog="shockscan",
        description="Relativistic shock end states and dissipation profiles")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, model=True):
        p.add_argument("--config", help="INI configuration file")
        p.add_argument("--eos", help="radiation | power-law:K | file:PATH")
        p.add_argument("--q1", type=fracfloat, help="momentum flux")
        p.add_argument("--strength", type=fracfloat,
                       help="shock strength in (0, 1)")
        p.add_argument("--q0", type=fracfloat,
                       help="energy flux (alternative to --strength)")
        p.add_argument("--out", help="output directory (default .)")
        if model:
            p.add_argument("--model", help="ft-viscous | ft-heat | bdn | eckart")
            p.add_argument("--eta", type=fracfloat, help="shear viscosity")
            p.add_argument("--zeta", type=fracfloat, help="bulk viscosity")
            p.add_argument("--chi", type=fracfloat, help="heat conduction")
            p.add_argument("--mu", type=fracfloat, help="first regulator")
            p.add_argument("--nu", type=fracfloat, help="second regulator")
            p.add_argument("--tol-conn", type=fracfloat, dest="tol_conn")
            p.add_argument("--tol-det", type=fracfloat, dest="tol_det")
            p.add_argument("--tol-osc", type=fracfloat, dest="tol_osc")
            p.add_argument("--tol-rtol", type=fracfloat, dest="rtol")
            p.add_argument("--tol-atol", type=fracfloat, dest="atol")
            p.add_argument("--method", help="integrator (default RK45)")
            p.add_argument("--gnuplot", action="store_true", default=None,
                           help="also write a gnuplot script")

    p_rh = sub.add_parser("rh", help="end states from the jump conditions")
    common(p_rh, model=False)
    p_rh.add_argument("--json", action="store_true",
                      help="write rh.json to the output directory")

    p_prof = sub.add_parser("profile", help="compute one dissipation profile")
    common(p_prof)

    p_scan = sub.add_parser("scan", help="classify profiles over a grid")
    common(p_scan)
    p_scan.add_argument("--strengths",
                        help="grid 'lo:hi:n' or comma list (default "
                             "0.05:0.95:19)")
    p_scan.add_argument("--workers", type=int,
                        help="process count (default: SHOCKSCAN_WORKERS or 1)")

    p_caus = sub.add_parser("causality",
                            help="classify a BDN coefficient triple")
    p_caus.add_argument("--eta", type=fracfloat, default=1.0)
    p_caus.add_argument("--mu", type=fracfloat, required=True)
    p_caus.add_argument("--nu", type=fracfloat, required=True)

    return ap


_CONFIG_MAP = {
    # (section, key) -> argparse dest
    ("eos", "kind"): "eos",
    ("model", "tag"): "model",
    ("model", "eta"): "eta",
    ("model", "zeta"): "zeta",
    ("model", "chi"): "chi",
    ("model", "mu"): "mu",
    ("model", "nu"): "nu",
    ("shock", "q1"): "q1",
    ("shock", "q0"): "q0",
    ("shock", "strength"): "strength",
    ("solver", "rtol"): "rtol",
    ("solver", "atol"): "atol",
    ("solver", "tol_conn"): "tol_conn",
    ("solver", "tol_det"): "tol_det",
    ("solver", "tol_osc"): "tol_osc",
    ("solver", "method"): "method",
    ("scan", "strengths"): "strengths",
    ("scan", "workers"): "workers",
    ("output", "dir"): "out",
    ("output", "gnuplot"): "gnuplot",
}

_FLOAT_KEYS = {"eta", "zeta", "chi", "mu", "nu", "q0", "q1", "strength",
               "rtol", "atol", "tol_conn", "tol_det", "tol_osc"}


def apply_config(args):
    """Fill argparse gaps from the INI file; flags keep priority."""
    if not getattr(args, "config", None):
        return
    cp = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    read = cp.read(args.config)
    if not read:
        raise ValueError(f"config file not found: {args.config}")
    for (section, key), dest in _CONFIG_MAP.items():
        if not cp.has_option(section, key):
            continue
        if getattr(args, dest, None) is not None:
            continue
        raw = cp.get(section, key)
        if dest == "workers":
            value = int(raw)
        elif dest == "gnuplot":
            value = cp.getboolean(section, key)
        elif dest in _FLOAT_KEYS:
            value = float(Fraction(raw))
        else:
            value = raw
        if hasattr(args, dest):
            setattr(args, dest, value)


def _outdir(args):
    out = getattr(args, "out", None) or "."
    os.makedirs(out, exist_ok=True)
    return out


def _make_shock(args):
    if args.eos is None:
        raise ValueError("an EOS is required (--eos or [eos] kind)")
    eos = make_eos(args.eos)
    if args.q1 is None:
        raise ValueError("a momentum flux is required (--q1)")
    if args.strength is not None and args.q0 is not None:
        raise ValueError("give either --strength or --q0, not both")
    if args.strength is not None:
        return eos, shock_from_strength(eos, args.q1, args.strength)
    if args.q0 is not None:
        return eos, end_states(eos, args.q0, args.q1)
    raise ValueError("either --strength or --q0 is required")


def _make_model(args, eos):
    tag = args.model
    if tag is None:
        raise ValueError("a model is required (--model or [model] tag)")
    kw = {}
    for key in ("eta", "zeta", "chi", "mu", "nu"):
        v = getattr(args, key, None)
        if v is not None:
            kw[key] = v
    return make_model(tag, eos, **kw)


def _solver_overrides(args):
    out = {}
    for key in ("rtol", "atol", "tol_conn", "tol_det", "tol_osc", "method"):
        v = getattr(args, key, None)
        if v is not None:
            out[key] = v
    return out


def cmd_rh(args):
    eos, sd = _make_shock(args)
    d = sd.as_dict()
    print(f"eos: {d['eos']}   q0 = {d['q0']:.12g}   q1 = {d['q1']:.12g}   "
          f"strength = {d['strength']:.6g}")
    print(f"  rho_minus = {d['rho_minus']:.12g}   "
          f"rho_plus = {d['rho_plus']:.12g}   rho_bar = {d['rho_bar']:.12g}")
    print(f"  u1_minus  = {d['u1_minus']:.12g}   "
          f"u1_plus  = {d['u1_plus']:.12g}")
    print(f"  char speeds minus = ({d['char_speeds_minus'][0]:.9g}, "
          f"{d['char_speeds_minus'][1]:.9g})   "
          f"plus = ({d['char_speeds_plus'][0]:.9g}, "
          f"{d['char_speeds_plus'][1]:.9g})")
    print(f"  Lax shock: {'yes' if d['lax'] else 'no'}")
    if args.json:
        path = os.path.join(_outdir(args), "rh.json")
        with open(path, "w") as fh:
            json.dump(d, fh, indent=2)
            fh.write("\n")
        print(f"  wrote {path}")
    return EXIT_OK


def cmd_profile(args):
    eos, sd = _make_shock(args)
    model = _make_model(args, eos)
    overrides = _solver_overrides(args)
    if model.tag == "ft-viscous":
        res = scalar_profile_ft(sd, model.co, eos, **overrides)
    else:
        res = shoot_heteroclinic(sd, model, **overrides)
    out = _outdir(args)
    jpath = os.path.join(out, "profile.json")
    with open(jpath, "w") as fh:
        json.dump(res.summary_dict(), fh, indent=2)
        fh.write("\n")
    wrote = [jpath]
    if res.connected:
        cpath = os.path.join(out, "profile.csv")
        res.to_csv(cpath)
        wrote.append(cpath)
        if args.gnuplot:
            gpath = os.path.join(out, "profile.gp")
            _write_profile_gp(gpath)
            wrote.append(gpath)
    msg = res.classification + (f" ({res.reason})" if res.reason else "")
    if res.connected and res.width is not None:
        msg += f", width = {res.width:.6g}"
    print(msg)
    print("wrote " + ", ".join(wrote))
    return EXIT_OK if res.connected else EXIT_PROFILE


def cmd_scan(args):
    if args.eos is None:
        raise ValueError("an EOS is required (--eos or [eos] kind)")
    if args.model is None:
        raise ValueError("a model is required (--model or [model] tag)")
    if args.q1 is None:
        raise ValueError("a momentum flux is required (--q1)")
    strengths = _grid(args.strengths) if args.strengths else \
        [float(v) for v in np.linspace(0.05, 0.95, 19)]
    co = {}
    for key in ("eta", "zeta", "chi", "mu", "nu"):
        v = getattr(args, key, None)
        if v is not None:
            co[key] = v
    result = run_scan(args.eos, args.model, co, [args.q1], strengths,
                      workers=args.workers, **_solver_overrides(args))
    out = _outdir(args)
    cpath = os.path.join(out, "scan.csv")
    spath = os.path.join(out, "scan_summary.json")
    result.write_csv(cpath)
    result.write_summary(spath)
    counts = result.counts()
    print("  ".join(f"{k}: {v}" for k, v in sorted(counts.items())))
    first_osc = result.first_oscillatory()
    if first_osc is not None:
        print(f"first oscillatory strength: {first_osc:.6g}")
    print(f"wall time: {result.wall_time:.2f} s")
    wrote = [cpath, spath]
    if args.gnuplot:
        gpath = os.path.join(out, "scan.gp")
        _write_scan_gp(gpath)
        wrote.append(gpath)
    print("wrote " + ", ".join(wrote))
    return EXIT_OK


def cmd_causality(args):
    co = BdnCoefficients(args.eta, args.mu, args.nu)
    label, bound = bdn_causality_class(co)
    print(f"{label} (bound {bound:g})")
    return EXIT_OK


def _write_profile_gp(path):
    with open(path, "w") as fh:
        fh.write(
            "set datafile separator ','\n"
            "set key autotitle columnhead\n"
            "set xlabel 'x'\n"
            "set ylabel 'rho'\n"
            "plot 'profile.csv' using 1:4 with lines\n")


def _write_scan_gp(path):
    with open(path, "w") as fh:
        fh.write(
            "set datafile separator ','\n"
            "set key autotitle columnhead\n"
            "set xlabel 'strength'\n"
            "set ylabel 'width'\n"
            "plot 'scan.csv' using 2:7 with points pt 7\n")


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        apply_config(args)
        if args.command == "rh":
            return cmd_rh(args)
        if args.command == "profile":
            return cmd_profile(args)
        if args.command == "scan":
            return cmd_scan(args)
        if args.command == "causality":
            return cmd_causality(args)
        raise AssertionError(args.command)
    except NoShock as exc:
        print(f"no shock: {exc}", file=sys.stderr)
        return EXIT_NOSHOCK
    except (EosError, CausalityError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())

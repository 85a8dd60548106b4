"""Command-line interface.

Subcommands: eval, sweep, ratio, gapsweep, fit, reproduce. Inputs are in nm,
eV and K; C3/C4 are printed in atomic units unless ``--units eV-nm``.
A ``--config`` file of ``key = value`` lines may supply any option; options
given on the command line take precedence.
"""

import argparse
import json
import math
import os
import sys
import warnings
from pathlib import Path

import numpy as np

from . import reference as ref
from .atoms import ATOM_CONFIG_ENV, AtomCatalog, lookup
from .errors import ConvergenceError, OutsideValidityWarning, VdwGrapheneError, ConfigurationError
from .fitting import fit
from .graphene import DiracParams, HydrodynamicParams
from .lifshitz import LifshitzRequest, QuadratureConfig, compute_c3
from .sweeps import (
    REFERENCE_SEPARATIONS,
    curve_to_dict,
    default_separation_grid,
    fit_grid,
    gap_sweep_to_dict,
    model_ratio_table,
    species_ratio,
    sweep_gap,
    sweep_separation,
    table_to_dict,
    write_curve_csv,
    write_gap_csv,
    write_json,
    write_plot_data,
    write_table_csv,
)
from .units import UNITS

EXIT_OK, EXIT_VALIDATION, EXIT_CONVERGENCE = 0, 1, 2


def _common(p):
    p.add_argument("--config", help="key = value file supplying defaults for any option")
    p.add_argument("--atoms-config", help=f"extra atoms file (default: ${ATOM_CONFIG_ENV})")
    p.add_argument("--rel-tol", type=float, default=1e-8)
    p.add_argument("--y-max", type=float, default=60.0)
    p.add_argument("--max-subdivisions", type=int, default=2000)
    p.add_argument("--matsubara-cutoff", type=float, default=1e-10)
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    p.add_argument("--units", choices=("au", "eV-nm"), default="au")


def _model_args(p, model_required=True):
    p.add_argument("--atom", required=True)
    p.add_argument("--model", choices=("hydrodynamic", "dirac"), required=model_required)
    p.add_argument("--delta", type=float, help="gap parameter in eV (Dirac only)")
    p.add_argument("--K", type=float, help="sheet wave number in 1/m (hydrodynamic only)")
    p.add_argument("--phi-scale", type=float, help="Dirac coupling normalization (default 2)")


def _grid_args(p, default_n=40):
    p.add_argument("--grid", help="comma-separated separations in nm")
    p.add_argument("--a-min", type=float, default=3.0)
    p.add_argument("--a-max", type=float, default=100.0)
    p.add_argument("--n", type=int, default=default_n)


def _output_args(p):
    p.add_argument("--out", help="output file (stdout summary only if omitted)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def build_parser():
    parser = argparse.ArgumentParser(prog="vdwgraphene", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="single C3 evaluation")
    _model_args(p)
    p.add_argument("--a", type=float, required=True, help="separation in nm")
    p.add_argument("--temp", type=float, default=0.0, help="temperature in K (0: zero-temperature formula)")
    _common(p)

    p = sub.add_parser("sweep", help="C3 over a separation grid")
    _model_args(p)
    _grid_args(p)
    p.add_argument("--temp", type=float, default=0.0)
    _output_args(p)
    _common(p)

    p = sub.add_parser("ratio", help="hydrodynamic/Dirac ratio table")
    p.add_argument("--atom", required=True)
    p.add_argument("--delta", type=float, default=0.1)
    p.add_argument("--grid", help="comma-separated separations in nm")
    _output_args(p)
    _common(p)

    p = sub.add_parser("gapsweep", help="Dirac C3 versus gap parameter")
    p.add_argument("--atom", required=True)
    p.add_argument("--a", type=float, required=True)
    _output_args(p)
    _common(p)

    p = sub.add_parser("fit", help="fit -C4/(a^3 (a+l)) to a computed curve")
    _model_args(p)
    p.add_argument("--n", type=int, default=50)
    p.add_argument("--a-min", type=float, default=3.0)
    p.add_argument("--a-max", type=float, default=100.0)
    _output_args(p)
    _common(p)

    p = sub.add_parser("reproduce", help="write all comparison tables into a directory")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--n", type=int, default=40, help="log-spaced points per figure curve")
    _common(p)
    return parser


def read_config_file(path):
    values = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        values[key.lstrip("-").replace("-", "_")] = value
    return values


def parse_args(argv):
    parser = build_parser()
    # find --config before full parsing, since it may supply required options
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("command", nargs="?")
    pre.add_argument("--config")
    early, _ = pre.parse_known_args(argv)
    subs = parser._subparsers._group_actions[0].choices
    if early.config and early.command in subs:
        cfg = read_config_file(early.config)
        sub = subs[early.command]
        known = {a.dest: a for a in sub._actions}
        unknown = set(cfg) - set(known)
        if unknown:
            raise ConfigurationError(f"unknown config keys: {', '.join(sorted(unknown))}")
        defaults = {}
        for k, v in cfg.items():
            action = known[k]
            defaults[k] = action.type(v) if action.type else v
            action.required = False
        sub.set_defaults(**defaults)
    return parser.parse_args(argv)


def _quadrature(args):
    return QuadratureConfig(
        rel_tol=args.rel_tol,
        y_max=args.y_max,
        max_subdivisions=args.max_subdivisions,
        matsubara_term_rel_cutoff=args.matsubara_cutoff,
    )


def _catalog(args):
    if args.atoms_config:
        return AtomCatalog.from_file(args.atoms_config)
    return AtomCatalog.default()


def _model(args):
    if args.model == "dirac":
        if args.K is not None:
            raise ConfigurationError("--K applies to the hydrodynamic model only")
        kw = {}
        if args.phi_scale is not None:
            kw["phi_scale"] = args.phi_scale
        return DiracParams(Delta=0.1 if args.delta is None else args.delta, **kw)
    if args.delta is not None or args.phi_scale is not None:
        raise ConfigurationError("--delta and --phi-scale apply to the Dirac model only")
    return HydrodynamicParams() if args.K is None else HydrodynamicParams(K=args.K)


def _grid(args):
    if getattr(args, "grid", None):
        return np.array([float(x) for x in args.grid.split(",")])
    return default_separation_grid(args.n, args.a_min, args.a_max)


def _c3_out(c3_au, units):
    if units == "eV-nm":
        return f"{c3_au * UNITS.c3_au_in_eV_nm3:.10g} eV nm^3"
    return f"{c3_au:.10g} a.u."


def _c4_out(c4_au, units):
    if units == "eV-nm":
        return f"{c4_au * UNITS.c4_au_in_eV_nm4:.10g} eV nm^4"
    return f"{c4_au:.10g} a.u."


def _write(obj_dict, writer_csv, args):
    if not args.out:
        return
    if args.format == "json":
        write_json(obj_dict, args.out)
    else:
        writer_csv(args.out)
    print(f"wrote {args.out}")


def cmd_eval(args):
    atom = lookup(_catalog(args), args.atom)
    req = LifshitzRequest(atom, _model(args), args.a, args.temp, _quadrature(args))
    r = compute_c3(req)
    print(f"C3 = {_c3_out(r.c3, args.units)}")
    print(f"E = {r.energy:.10g} eV")
    print(f"est_rel_error = {r.est_rel_error:.3g}")
    if r.temperature > 0:
        print(f"matsubara_terms = {r.n_matsubara}" + (" (truncated)" if r.matsubara_truncated else ""))
    return EXIT_OK


def _flag_nonconverged(curve):
    bad = np.flatnonzero(~curve.converged)
    for i in bad:
        print(f"warning: point {i} (a={curve.separations[i]} nm) not converged", file=sys.stderr)


def cmd_sweep(args):
    atom = lookup(_catalog(args), args.atom)
    q = _quadrature(args)
    curve = sweep_separation(atom, _model(args), _grid(args), args.temp, q, args.jobs)
    _flag_nonconverged(curve)
    _write(curve_to_dict(curve), lambda p: write_curve_csv(curve, p), args)
    if not args.out:
        for a, c in zip(curve.separations, curve.c3):
            print(f"{a:10.4g} {_c3_out(c, args.units)}")
    return EXIT_OK


def cmd_ratio(args):
    atom = lookup(_catalog(args), args.atom)
    q = _quadrature(args)
    grid = _grid(args) if args.grid else REFERENCE_SEPARATIONS
    table = model_ratio_table(atom, args.delta, grid, q, args.jobs)
    _write(table_to_dict(table, q.describe()), lambda p: write_table_csv(table, p, q.describe()), args)
    for a, r in zip(table.separations, table.ratios):
        print(f"a = {a:g} nm  C3_h/C3_D = {r:.4f}")
    return EXIT_OK


def cmd_gapsweep(args):
    atom = lookup(_catalog(args), args.atom)
    q = _quadrature(args)
    sweep = sweep_gap(atom, args.a, quadrature=q, jobs=args.jobs)
    _write(gap_sweep_to_dict(sweep, quadrature=q.describe()), lambda p: write_gap_csv(sweep, p, q.describe()), args)
    print(f"spread = {100 * sweep.spread:.3f} %")
    print(f"plateau_delta = {sweep.plateau_delta:g} eV")
    return EXIT_OK


def _fit_dict(report, curve):
    return {
        "kind": "FitReport",
        "metadata": curve.metadata(),
        "C4_au": report.potential.C4,
        "l_nm": report.potential.l,
        "max_rel_deviation_pct": 100 * report.max_rel_deviation,
        "max_deviation_at_nm": report.max_deviation_at,
        "sub_1pct_range_nm": list(report.sub_1pct_range),
        "residuals": [{"a_nm": float(a), "rel_dev": float(r)} for a, r in zip(report.grid, report.residuals)],
    }


def cmd_fit(args):
    atom = lookup(_catalog(args), args.atom)
    q = _quadrature(args)
    curve = sweep_separation(atom, _model(args), fit_grid(args.n, args.a_min, args.a_max), 0.0, q, args.jobs)
    _flag_nonconverged(curve)
    report = fit(curve)
    print(f"C4 = {_c4_out(report.potential.C4, args.units)}")
    print(f"l = {report.potential.l:.6g} nm")
    lo, hi = report.sub_1pct_range
    print(f"sub-1% range = [{lo:.4g}, {hi:.4g}] nm")
    print(f"max deviation = {100 * report.max_rel_deviation:.3f} % at a = {report.max_deviation_at:.4g} nm")
    if args.out:
        if args.format == "csv":
            with open(args.out, "w") as fh:
                fh.write("# " + json.dumps(curve.metadata(), sort_keys=True) + "\n")
                fh.write(f"C4_au,l_nm\n{report.potential.C4!r},{report.potential.l!r}\n")
        else:
            write_json(_fit_dict(report, curve), args.out)
        print(f"wrote {args.out}")
    return EXIT_OK


def _verdict(ok):
    return "PASS" if ok else "FAIL"


def _rel(x, expected):
    return abs(x / expected - 1.0)


def cmd_reproduce(args):
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    cat = _catalog(args)
    q = _quadrature(args)
    jobs = args.jobs
    lines = []
    summary = []

    def record(name, value, expected, ok, detail=""):
        summary.append({"item": name, "value": value, "reference": expected, "status": _verdict(ok)})
        lines.append(f"{_verdict(ok)}  {name}: {value:.6g} (reference {expected:g}{detail})")

    # model ratio tables
    for name, expected in ref.MODEL_RATIOS.items():
        atom = lookup(cat, name)
        table = model_ratio_table(atom, 0.1, ref.SEPARATIONS, q, jobs)
        stem = name.replace("*", "star")
        write_table_csv(table, out / f"ratio_{stem}.csv", q.describe())
        write_json(table_to_dict(table, q.describe()), out / f"ratio_{stem}.json")
        for a, r, e in zip(ref.SEPARATIONS, table.ratios, expected):
            record(f"ratio h/D {name} a={a:g}nm", r, e, _rel(r, e) <= ref.MODEL_RATIO_RTOL)

    # thermal check
    t = ref.THERMAL
    atom = lookup(cat, t["atom"])
    model = DiracParams(t["Delta"])
    z = compute_c3(LifshitzRequest(atom, model, t["a"], 0.0, q))
    th = compute_c3(LifshitzRequest(atom, model, t["a"], t["T"], q))
    diff = 100 * (th.c3 - z.c3) / z.c3
    record("thermal C3(T=0)", z.c3, t["c3_zero"], _rel(z.c3, t["c3_zero"]) <= ref.THERMAL_RTOL)
    record("thermal C3(300K)", th.c3, t["c3_thermal"], _rel(th.c3, t["c3_thermal"]) <= ref.THERMAL_RTOL)
    record("thermal difference %", diff, t["difference_pct"], abs(diff - t["difference_pct"]) <= ref.THERMAL_DIFF_ATOL_PP)
    write_json({"kind": "ThermalCheck", "metadata": {"atom": t["atom"], "model": model.describe(),
                "a_nm": t["a"], "quadrature": q.describe()},
                "c3_zero_au": z.c3, "c3_thermal_au": th.c3, "difference_pct": diff,
                "matsubara_terms": th.n_matsubara}, out / "thermal.json")

    # figure curves and fits
    grid = default_separation_grid(args.n)
    figures = {"H": "1a", "H2": "2", "He*": "3", "Na": "4"}
    for name, fig in figures.items():
        atom = lookup(cat, name)
        for series, model in (("hydro", HydrodynamicParams()),
                              ("dirac_delta0.1", DiracParams(0.1)),
                              ("dirac_delta1e-15", DiracParams(1e-15))):
            curve = sweep_separation(atom, model, grid, 0.0, q, jobs)
            write_plot_data(out, fig, series, curve.separations, curve.c3, curve.metadata())
            write_curve_csv(curve, out / f"curve_{name.replace('*', 'star')}_{series}.csv")

    fgrid = fit_grid()
    for (name, mname, delta), (c4_ref, l_ref) in ref.FITS.items():
        atom = lookup(cat, name)
        model = HydrodynamicParams() if mname == "hydrodynamic" else DiracParams(delta)
        curve = sweep_separation(atom, model, fgrid, 0.0, q, jobs)
        rep = fit(curve)
        tag = f"{name} {mname}" + (f" Delta={delta:g}" if delta is not None else "")
        stem = f"fit_{name.replace('*', 'star')}_{mname}" + (f"_{delta:g}" if delta is not None else "")
        write_json(_fit_dict(rep, curve), out / f"{stem}.json")
        record(f"fit C4 {tag}", rep.potential.C4, c4_ref, _rel(rep.potential.C4, c4_ref) <= ref.FIT_RTOL)
        record(f"fit l {tag}", rep.potential.l, l_ref, _rel(rep.potential.l, l_ref) <= ref.FIT_RTOL)
        if delta in (None, 0.1):
            if mname == "hydrodynamic":
                lo, hi = ref.FIT_HYDRO_ENDPOINT_PCT
                for a in (3.0, 100.0):
                    d = 100 * rep.residual_at(a)
                    record(f"fit deviation % {tag} a={a:g}nm", d, 10.0, lo <= d <= hi)
                w = ref.FIT_WINDOW_HYDRO
            else:
                lo, hi = ref.FIT_DIRAC_3NM_PCT
                d = 100 * rep.residual_at(3.0)
                record(f"fit deviation % {tag} a=3nm", d, 5.0, lo <= d <= hi)
                w = ref.FIT_WINDOW_DIRAC
            sel = (rep.grid >= w[0]) & (rep.grid <= w[1])
            worst = 100 * float(rep.residuals[sel].max())
            record(f"fit max deviation % {tag} on [{w[0]:g},{w[1]:g}]nm", worst, 1.0, worst < 1.0)

    # gap sweeps
    for (name, a), (spread_ref, tol) in ref.GAP_SPREADS.items():
        atom = lookup(cat, name)
        sweep = sweep_gap(atom, a, quadrature=q, jobs=jobs)
        write_gap_csv(sweep, out / f"gap_{name.replace('*', 'star')}_{a:g}nm.csv", q.describe())
        if name == "H":
            write_plot_data(out, "1b", f"a{a:g}nm", np.log10(sweep.deltas), sweep.c3)
        s = 100 * sweep.spread
        record(f"gap spread % {name} a={a:g}nm", s, spread_ref, abs(s - spread_ref) <= tol)
        if name == "H":
            pd = sweep.plateau_delta
            pref = ref.GAP_PLATEAUS_H[a]
            ok = not math.isnan(pd) and abs(math.log10(pd / pref)) <= ref.PLATEAU_LOG10_TOL
            record(f"plateau Delta eV H a={a:g}nm", pd, pref, ok)

    # species ratios
    for (num, den, mname, a), expected in ref.SPECIES_RATIOS.items():
        model = HydrodynamicParams() if mname == "hydrodynamic" else DiracParams(0.1)
        r = species_ratio(lookup(cat, num), lookup(cat, den), model, a, q)
        record(f"species {num}/{den} {mname} a={a:g}nm", r, expected, _rel(r, expected) <= ref.SPECIES_RTOL)

    n_pass = sum(s["status"] == "PASS" for s in summary)
    header = f"{n_pass}/{len(summary)} reference comparisons within tolerance"
    (out / "summary.txt").write_text(header + "\n" + "\n".join(lines) + "\n")
    write_json({"kind": "ReproduceSummary", "quadrature": q.describe(), "items": summary}, out / "summary.json")
    print(header)
    print("\n".join(lines))
    print(f"wrote {out}")
    return EXIT_OK


COMMANDS = {
    "eval": cmd_eval,
    "sweep": cmd_sweep,
    "ratio": cmd_ratio,
    "gapsweep": cmd_gapsweep,
    "fit": cmd_fit,
    "reproduce": cmd_reproduce,
}


def main(argv=None):
    warnings.simplefilter("default", OutsideValidityWarning)
    try:
        args = parse_args(argv)
        return COMMANDS[args.command](args)
    except ConvergenceError as exc:
        print(f"error: {exc} (best estimate {exc.estimate:.10g})", file=sys.stderr)
        return EXIT_CONVERGENCE
    except (VdwGrapheneError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())

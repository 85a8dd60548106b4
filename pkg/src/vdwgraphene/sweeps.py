"""Separation and gap sweeps, ratio tables, and their serialization."""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
import csv
import json
import math
from pathlib import Path

import numpy as np

from . import __version__
from .errors import ConvergenceError, ValidationError, VdwGrapheneError
from .graphene import DiracParams, HydrodynamicParams
from .lifshitz import LifshitzRequest, QuadratureConfig, compute_c3, energy

REFERENCE_SEPARATIONS = (3.0, 5.0, 10.0, 20.0, 50.0, 100.0)
DELTA_RANGE = (1e-15, 0.1)
PLATEAU_THRESHOLD = 0.01
CSV_HEADER = ("a_nm", "c3_au", "energy_eV", "rel_err")


@dataclass
class C3Curve:
    atom: str
    model: dict
    temperature: float
    separations: np.ndarray
    c3: np.ndarray
    energies: np.ndarray
    rel_errors: np.ndarray
    converged: np.ndarray
    quadrature: dict = field(default_factory=dict)

    def __post_init__(self):
        a = np.asarray(self.separations, dtype=float)
        if a.size and np.any(np.diff(a) <= 0):
            raise ValidationError("separations must be strictly increasing")

    def __len__(self):
        return len(self.separations)

    def metadata(self):
        return provenance(self.atom, self.model, self.temperature, self.quadrature)


@dataclass
class GapSweep:
    atom: str
    separation: float
    deltas: np.ndarray
    c3: np.ndarray
    spread: float
    plateau_delta: float
    plateau_threshold: float = PLATEAU_THRESHOLD


@dataclass
class RatioTable:
    atom: str
    model_num: dict
    model_den: dict
    separations: np.ndarray
    c3_num: np.ndarray
    c3_den: np.ndarray

    @property
    def ratios(self):
        return np.asarray(self.c3_num) / np.asarray(self.c3_den)


def provenance(atom, model, temperature, quadrature):
    return {
        "atom": atom,
        "model": model,
        "temperature_K": temperature,
        "quadrature": quadrature,
        "code_version": __version__,
    }


def default_separation_grid(n=40, a_min=3.0, a_max=100.0):
    """``n`` log-spaced points in [a_min, a_max] merged with the reference separations."""
    grid = np.geomspace(a_min, a_max, n)
    refs = [a for a in REFERENCE_SEPARATIONS if a_min <= a <= a_max]
    return np.unique(np.round(np.concatenate([grid, refs]), 12))


def fit_grid(n=50, a_min=3.0, a_max=100.0):
    return np.geomspace(a_min, a_max, n)


def default_delta_grid():
    """One point per decade on [1e-15, 1e-4] eV, four per decade on [1e-4, 1e-1] eV."""
    coarse = 10.0 ** np.arange(-15, -4)
    fine = 10.0 ** np.linspace(-4, -1, 13)
    return np.concatenate([coarse, fine])


def _evaluate(atom, model, a, temperature, quadrature):
    req = LifshitzRequest(atom, model, float(a), temperature, quadrature)
    try:
        r = compute_c3(req)
        return r.c3, r.est_rel_error, True
    except ConvergenceError as exc:
        return exc.estimate, exc.achieved, False


def _map(fn, items, jobs):
    if jobs is None or jobs <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def sweep_separation(atom, model, grid, temperature=0.0, quadrature=None, jobs=1):
    """Evaluate C3 on ``grid`` (nm). Non-converged points are kept and flagged."""
    quadrature = quadrature or QuadratureConfig()
    grid = np.asarray(grid, dtype=float)
    if grid.size == 0:
        raise ValidationError("separation grid is empty")
    if np.any(np.diff(grid) <= 0):
        raise ValidationError("separation grid must be strictly increasing")
    if grid[0] <= 0:
        raise ValidationError("separations must be positive")

    def one(item):
        i, a = item
        try:
            return _evaluate(atom, model, a, temperature, quadrature)
        except VdwGrapheneError as exc:
            raise type(exc)(f"grid point {i} (a={a} nm): {exc}") from exc

    out = _map(one, list(enumerate(grid)), jobs)
    c3 = np.array([o[0] for o in out])
    return C3Curve(
        atom=atom.name,
        model=model.describe(),
        temperature=temperature,
        separations=grid,
        c3=c3,
        energies=np.array([energy(c, a) for c, a in zip(c3, grid)]),
        rel_errors=np.array([o[1] for o in out]),
        converged=np.array([o[2] for o in out]),
        quadrature=quadrature.describe(),
    )


def ratio_table(atom, model_num, model_den, grid=REFERENCE_SEPARATIONS, quadrature=None, jobs=1):
    num = sweep_separation(atom, model_num, grid, quadrature=quadrature, jobs=jobs)
    den = sweep_separation(atom, model_den, grid, quadrature=quadrature, jobs=jobs)
    return RatioTable(atom.name, num.model, den.model, num.separations, num.c3, den.c3)


def model_ratio_table(atom, delta=0.1, grid=REFERENCE_SEPARATIONS, quadrature=None, jobs=1, hydro=None):
    """C3 hydrodynamic / C3 Dirac at each separation."""
    return ratio_table(atom, hydro or HydrodynamicParams(), DiracParams(delta), grid, quadrature, jobs)


def species_ratio(atom_a, atom_b, model, a, quadrature=None):
    quadrature = quadrature or QuadratureConfig()
    ca = compute_c3(LifshitzRequest(atom_a, model, a, 0.0, quadrature)).c3
    cb = compute_c3(LifshitzRequest(atom_b, model, a, 0.0, quadrature)).c3
    return ca / cb


def plateau_delta(deltas, c3_of, threshold=PLATEAU_THRESHOLD):
    """Largest grid gap at and below which C3 changes less than ``threshold`` per decade.

    ``c3_of(delta)`` must return C3 for any gap, including ``delta / 10``.
    """
    best = float("nan")
    for d in sorted(deltas):
        lower = d / 10.0
        if lower < DELTA_RANGE[0] * (1 - 1e-9):
            continue
        c_hi, c_lo = c3_of(d), c3_of(lower)
        if abs(c_hi - c_lo) / c_lo < threshold:
            best = d
        else:
            break
    return best


def sweep_gap(atom, a, deltas=None, quadrature=None, model_template=None, jobs=1):
    """Dirac C3 as a function of the gap parameter at fixed separation."""
    quadrature = quadrature or QuadratureConfig()
    template = model_template or DiracParams()
    deltas = np.asarray(default_delta_grid() if deltas is None else deltas, dtype=float)
    if deltas.size == 0:
        raise ValidationError("gap grid is empty")
    lo, hi = DELTA_RANGE
    if np.any(deltas < lo * (1 - 1e-12)) or np.any(deltas > hi * (1 + 1e-12)):
        raise ValidationError(f"gap grid must lie within [{lo}, {hi}] eV")
    cache = {}

    def c3_of(d):
        key = float(d)
        if key not in cache:
            cache[key] = _evaluate(atom, replace(template, Delta=key), a, 0.0, quadrature)[0]
        return cache[key]

    _map(c3_of, list(deltas), jobs)
    values = np.array([c3_of(d) for d in deltas])
    spread = (values.max() - values.min()) / values.min()
    return GapSweep(
        atom=atom.name,
        separation=float(a),
        deltas=deltas,
        c3=values,
        spread=float(spread),
        plateau_delta=plateau_delta(deltas, c3_of),
    )


# --- serialization -------------------------------------------------------

def _fmt(x):
    return repr(float(x))


def write_curve_csv(curve, path):
    path = Path(path)
    with path.open("w", newline="") as fh:
        fh.write("# " + json.dumps(curve.metadata(), sort_keys=True) + "\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for row in zip(curve.separations, curve.c3, curve.energies, curve.rel_errors):
            w.writerow([_fmt(x) for x in row])
    return path


def read_curve_csv(path):
    path = Path(path)
    with path.open() as fh:
        first = fh.readline()
        meta = json.loads(first[1:]) if first.startswith("#") else {}
        rows = list(csv.reader(fh if first.startswith("#") else [first, *fh]))
    header, body = rows[0], rows[1:]
    if tuple(header) != CSV_HEADER:
        raise ValidationError(f"unexpected CSV header {header}")
    data = np.array([[float(x) for x in r] for r in body]).reshape(-1, 4)
    return C3Curve(
        atom=meta.get("atom", ""),
        model=meta.get("model", {}),
        temperature=meta.get("temperature_K", 0.0),
        separations=data[:, 0],
        c3=data[:, 1],
        energies=data[:, 2],
        rel_errors=data[:, 3],
        converged=np.ones(len(data), dtype=bool),
        quadrature=meta.get("quadrature", {}),
    )


def curve_to_dict(curve):
    return {
        "kind": "C3Curve",
        "metadata": curve.metadata(),
        "points": [
            {"a_nm": float(a), "c3_au": float(c), "energy_eV": float(e), "rel_err": float(r), "converged": bool(k)}
            for a, c, e, r, k in zip(curve.separations, curve.c3, curve.energies, curve.rel_errors, curve.converged)
        ],
    }


def curve_from_dict(d):
    meta = d["metadata"]
    pts = d["points"]
    return C3Curve(
        atom=meta["atom"],
        model=meta["model"],
        temperature=meta["temperature_K"],
        separations=np.array([p["a_nm"] for p in pts]),
        c3=np.array([p["c3_au"] for p in pts]),
        energies=np.array([p["energy_eV"] for p in pts]),
        rel_errors=np.array([p["rel_err"] for p in pts]),
        converged=np.array([p["converged"] for p in pts], dtype=bool),
        quadrature=meta.get("quadrature", {}),
    )


def table_to_dict(table, quadrature=None):
    return {
        "kind": "RatioTable",
        "metadata": {
            "atom": table.atom,
            "model_num": table.model_num,
            "model_den": table.model_den,
            "quadrature": quadrature or {},
            "code_version": __version__,
        },
        "rows": [
            {"a_nm": float(a), "c3_num_au": float(n), "c3_den_au": float(d), "ratio": float(n / d)}
            for a, n, d in zip(table.separations, table.c3_num, table.c3_den)
        ],
    }


def table_from_dict(d):
    meta, rows = d["metadata"], d["rows"]
    return RatioTable(
        atom=meta["atom"],
        model_num=meta["model_num"],
        model_den=meta["model_den"],
        separations=np.array([r["a_nm"] for r in rows]),
        c3_num=np.array([r["c3_num_au"] for r in rows]),
        c3_den=np.array([r["c3_den_au"] for r in rows]),
    )


def write_table_csv(table, path, quadrature=None):
    path = Path(path)
    meta = table_to_dict(table, quadrature)["metadata"]
    with path.open("w", newline="") as fh:
        fh.write("# " + json.dumps(meta, sort_keys=True) + "\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(("a_nm", "c3_num_au", "c3_den_au", "ratio"))
        for a, n, d in zip(table.separations, table.c3_num, table.c3_den):
            w.writerow([_fmt(a), _fmt(n), _fmt(d), _fmt(n / d)])
    return path


def gap_sweep_to_dict(sweep, model_template=None, quadrature=None):
    return {
        "kind": "GapSweep",
        "metadata": {
            "atom": sweep.atom,
            "a_nm": sweep.separation,
            "model": (model_template or DiracParams()).describe() | {"Delta_eV": "swept"},
            "plateau_threshold_per_decade": sweep.plateau_threshold,
            "quadrature": quadrature or {},
            "code_version": __version__,
        },
        "spread": sweep.spread,
        "plateau_delta_eV": None if math.isnan(sweep.plateau_delta) else sweep.plateau_delta,
        "points": [{"Delta_eV": float(d), "c3_au": float(c)} for d, c in zip(sweep.deltas, sweep.c3)],
    }


def write_gap_csv(sweep, path, quadrature=None):
    path = Path(path)
    meta = gap_sweep_to_dict(sweep, quadrature=quadrature)["metadata"]
    with path.open("w", newline="") as fh:
        fh.write("# " + json.dumps(meta, sort_keys=True) + "\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(("Delta_eV", "c3_au"))
        for d, c in zip(sweep.deltas, sweep.c3):
            w.writerow([_fmt(d), _fmt(c)])
    return path


def write_json(obj, path):
    path = Path(path)
    path.write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")
    return path


def read_json(path):
    return json.loads(Path(path).read_text())


def write_plot_data(directory, figure, series, x, y, metadata=None):
    """Two-column whitespace-separated file ``fig<N>_<series>.dat``."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / f"fig{figure}_{series}.dat"
    with path.open("w") as fh:
        if metadata is not None:
            fh.write("# " + json.dumps(metadata, sort_keys=True) + "\n")
        for xi, yi in zip(x, y):
            fh.write(f"{_fmt(xi)} {_fmt(yi)}\n")
    return path


def read_plot_data(path):
    return np.loadtxt(path, comments="#", ndmin=2)

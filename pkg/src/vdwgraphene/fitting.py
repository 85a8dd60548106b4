"""Phenomenological potential ``E(a) = -C4 / (a^3 (a + l))`` and its fit.

The fit minimizes the sum of squared relative residuals
``sum_i (E_ph(a_i)/E(a_i) - 1)^2``. For fixed ``l`` the objective is a
linear least-squares problem in C4, so the optimum is found as a 1-D search
over ``l`` with C4 eliminated in closed form.
"""

from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .errors import ConvergenceError, ValidationError
from .units import UNITS

L_BOUNDS_NM = (0.1, 1000.0)
SUB_PERCENT = 0.01


@dataclass(frozen=True)
class PhenomenologicalPotential:
    """C4 in a.u. (eV nm^4 / 4.032e-3) and ``l`` in nm."""

    C4: float
    l: float

    def __post_init__(self):
        if not (self.C4 > 0 and self.l > 0):
            raise ValidationError(f"C4 and l must be positive, got C4={self.C4}, l={self.l}")


@dataclass(frozen=True)
class FitReport:
    potential: PhenomenologicalPotential
    grid: np.ndarray
    residuals: np.ndarray
    max_rel_deviation: float
    max_deviation_at: float
    sub_1pct_range: tuple
    objective: float = float("nan")

    def residual_at(self, a):
        """Residual at the grid point closest to ``a``."""
        return float(self.residuals[np.argmin(np.abs(self.grid - a))])

    def within(self, a_min, a_max, threshold=SUB_PERCENT):
        """True if every grid point in ``[a_min, a_max]`` deviates less than ``threshold``."""
        sel = (self.grid >= a_min * (1 - 1e-12)) & (self.grid <= a_max * (1 + 1e-12))
        return bool(sel.any() and np.all(self.residuals[sel] < threshold))


def potential_energy(p, a):
    """Energy in eV at separation ``a`` (nm)."""
    a = np.asarray(a, dtype=float)
    out = -p.C4 * UNITS.c4_au_in_eV_nm4 / (a**3 * (a + p.l))
    return out if out.ndim else float(out)


def _curve_arrays(curve):
    a = np.asarray(curve.separations, dtype=float)
    e = np.asarray(curve.energies, dtype=float)
    return a, e


def _validate(a, e):
    if a.size < 10:
        raise ValidationError(f"fit needs at least 10 points, got {a.size}")
    if not np.all(np.isfinite(e)) or np.any(e >= 0):
        raise ValidationError("all energies must be finite and negative")
    if np.any(a <= 0):
        raise ValidationError("separations must be positive")


def _basis(a, e, l):
    # E_ph / E = C4 * u
    return UNITS.c4_au_in_eV_nm4 / (a**3 * (a + l) * np.abs(e))


def _best_c4(u):
    return u.sum() / (u @ u)


def _profile(a, e, l):
    u = _basis(a, e, l)
    r = _best_c4(u) * u - 1.0
    return r @ r


def _profile_slope(a, e, l):
    # envelope theorem: dS/dl at the optimal C4
    u = _basis(a, e, l)
    c4 = _best_c4(u)
    r = c4 * u - 1.0
    return -2.0 * c4 * np.sum(r * u / (a + l))


def fit_arrays(a, e, l_bounds=L_BOUNDS_NM):
    """Fit (C4, l) to separations ``a`` (nm) and energies ``e`` (eV)."""
    a = np.asarray(a, dtype=float)
    e = np.asarray(e, dtype=float)
    _validate(a, e)
    lo, hi = np.log(l_bounds[0]), np.log(l_bounds[1])
    # coarse scan guards against a secondary minimum, then bounded Brent
    ls = np.exp(np.linspace(lo, hi, 121))
    vals = np.array([_profile(a, e, l) for l in ls])
    k = int(np.argmin(vals))
    left = np.log(ls[max(k - 1, 0)])
    right = np.log(ls[min(k + 1, ls.size - 1)])
    res = optimize.minimize_scalar(
        lambda s: _profile(a, e, np.exp(s)),
        bounds=(left, right),
        method="bounded",
        options={"xatol": 1e-10},
    )
    if not res.success:
        raise ConvergenceError(f"profile minimization failed: {res.message}")
    l_opt = float(np.exp(res.x))
    # polish on the stationarity condition
    width = 1e-3 * l_opt
    f_lo = _profile_slope(a, e, l_opt - width)
    f_hi = _profile_slope(a, e, l_opt + width)
    if f_lo < 0 < f_hi:
        l_opt = optimize.brentq(
            lambda l: _profile_slope(a, e, l), l_opt - width, l_opt + width, xtol=1e-15, rtol=4 * np.finfo(float).eps
        )
    c4 = float(_best_c4(_basis(a, e, l_opt)))
    pot = PhenomenologicalPotential(c4, l_opt)
    return _report(pot, a, e)


def fit(curve):
    """Fit the phenomenological potential to a :class:`C3Curve`."""
    a, e = _curve_arrays(curve)
    order = np.argsort(a)
    return fit_arrays(a[order], e[order])


def fit_two_parameter(a, e, start):
    """Joint Levenberg-Marquardt fit of (C4, l); cross-check for :func:`fit_arrays`."""
    a = np.asarray(a, dtype=float)
    e = np.asarray(e, dtype=float)
    _validate(a, e)

    def resid(p):
        return p[0] * _basis(a, e, p[1]) - 1.0

    def jac(p):
        u = _basis(a, e, p[1])
        return np.column_stack([u, -p[0] * u / (a + p[1])])

    res = optimize.least_squares(resid, start, jac=jac, method="lm", xtol=1e-15, ftol=1e-15, gtol=1e-15)
    if not res.success:
        raise ConvergenceError(f"least-squares fit failed: {res.message}")
    return PhenomenologicalPotential(float(res.x[0]), float(res.x[1]))


def _sub_percent_window(a, dev, threshold=SUB_PERCENT):
    """Longest contiguous run of grid points with deviation below ``threshold``."""
    best = None
    start = None
    for i, ok in enumerate(list(dev < threshold) + [False]):
        if ok and start is None:
            start = i
        elif not ok and start is not None:
            if best is None or (i - start) > (best[1] - best[0] + 1):
                best = (start, i - 1)
            start = None
    if best is None:
        return (float("nan"), float("nan"))
    return (float(a[best[0]]), float(a[best[1]]))


def _report(pot, a, e):
    dev = np.abs(potential_energy(pot, a) / e - 1.0)
    k = int(np.argmax(dev))
    return FitReport(
        potential=pot,
        grid=a,
        residuals=dev,
        max_rel_deviation=float(dev[k]),
        max_deviation_at=float(a[k]),
        sub_1pct_range=_sub_percent_window(a, dev),
        objective=float(np.sum((potential_energy(pot, a) / e - 1.0) ** 2)),
    )


def deviation_profile(p, curve):
    """Per-point ``|E_ph/E - 1|`` and the sub-1% window of ``p`` against ``curve``."""
    a, e = _curve_arrays(curve)
    _validate(a, e)
    return _report(p, a, e)

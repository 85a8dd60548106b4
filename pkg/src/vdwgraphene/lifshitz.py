"""Van der Waals coefficient C3(a) of an atom above graphene.

At zero temperature the energy is written as ``E(a) = -C3(a)/a^3`` with C3
given by a double integral over ``y = 2 q a`` and the imaginary frequency.
The inner frequency integral is taken on the normalized variable
``t = 2 a xi / (c y)`` in [0, 1]:

    C3 = hbar/(16 pi) * int_0^inf dy e^{-y} (c y^3 / 2a)
         * int_0^1 dt alpha(i xi) [(2 - t^2) r_TM - t^2 r_TE]

At finite temperature the frequency integral is replaced by the primed
Matsubara sum ``kB T sum'_l``, which gives

    C3(T) = kB T / 8 * sum'_l alpha(i xi_l)
            * int_{y_l}^inf dy y^2 e^{-y} [2 r_TM - (y_l/y)^2 (r_TM + r_TE)]

with ``y_l = 2 a xi_l / c``.
"""

from dataclasses import dataclass, field
import math
import warnings

import numpy as np

from .atoms import AtomSpec, polarizability
from .errors import ConfigurationError, ConvergenceError, DomainError, OutsideValidityWarning
from .graphene import DiracParams, HydrodynamicParams, kinematics_from_t, reflection
from .quadrature import gauss_kronrod
from .units import CONST, UNITS, matsubara_frequency

VALID_SEPARATION_NM = (3.0, 1000.0)


@dataclass(frozen=True)
class QuadratureConfig:
    rel_tol: float = 1e-8
    y_max: float = 60.0
    max_subdivisions: int = 2000
    matsubara_term_rel_cutoff: float = 1e-10
    max_matsubara_terms: int = 5_000_000
    matsubara_block: int = 4096

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ConfigurationError(f"rel_tol must be positive, got {self.rel_tol}")
        if not self.y_max > 10:
            raise ConfigurationError(f"y_max must exceed 10, got {self.y_max}")
        if self.max_subdivisions < 1:
            raise ConfigurationError("max_subdivisions must be at least 1")
        if not self.matsubara_term_rel_cutoff > 0:
            raise ConfigurationError("matsubara_term_rel_cutoff must be positive")

    @property
    def inner_rel_tol(self):
        return self.rel_tol / 10.0

    @property
    def outer_rel_tol(self):
        return self.rel_tol / 2.0

    def describe(self):
        return {
            "rel_tol": self.rel_tol,
            "y_max": self.y_max,
            "max_subdivisions": self.max_subdivisions,
            "matsubara_term_rel_cutoff": self.matsubara_term_rel_cutoff,
        }


@dataclass(frozen=True)
class LifshitzRequest:
    atom: AtomSpec
    model: object
    separation: float
    temperature: float = 0.0
    quadrature: QuadratureConfig = field(default_factory=QuadratureConfig)

    def __post_init__(self):
        if not isinstance(self.model, (HydrodynamicParams, DiracParams)):
            raise ConfigurationError(f"unknown graphene model {self.model!r}")
        if not (self.separation > 0 and math.isfinite(self.separation)):
            raise DomainError(f"separation must be positive, got {self.separation}")
        if not (self.temperature >= 0 and math.isfinite(self.temperature)):
            raise DomainError(f"temperature must be nonnegative, got {self.temperature}")

    @property
    def outside_validity(self):
        lo, hi = VALID_SEPARATION_NM
        return not (lo <= self.separation <= hi)


@dataclass(frozen=True)
class C3Result:
    c3: float
    energy: float
    est_rel_error: float
    converged: bool
    atom: str
    model: dict
    temperature: float
    separation: float
    outside_validity: bool = False
    n_matsubara: int = 0
    matsubara_truncated: bool = False

    def provenance(self):
        return {
            "atom": self.atom,
            **self.model,
            "temperature_K": self.temperature,
        }


def energy(c3, a):
    """Interaction energy in eV for C3 in a.u. at separation ``a`` (nm)."""
    if not a > 0:
        raise DomainError(f"separation must be positive, got {a}")
    return -c3 * UNITS.c3_au_in_eV_nm3 / a**3


def _v_F(model):
    return model.v_F if isinstance(model, DiracParams) else 1e6


def _check_validity(req):
    if req.outside_validity:
        warnings.warn(
            f"separation {req.separation} nm outside {VALID_SEPARATION_NM} nm; "
            "result computed but the graphene boundary-condition description may not apply",
            OutsideValidityWarning,
            stacklevel=3,
        )


def _inner_integrals(ys, atom, model, a, cfg):
    """int_0^1 dt alpha(i xi) [(2 - t^2) r_TM - t^2 r_TE] for every y in ``ys``."""
    beta = _v_F(model) * 1e9 / CONST.c

    def integrand(t, rows):
        y = ys[rows][:, None]
        kin = kinematics_from_t(y, t, a, beta)
        r = reflection(kin, model)
        t2 = t * t
        return polarizability(atom, kin.xi) * ((2.0 - t2) * r.r_tm - t2 * r.r_te)

    res = gauss_kronrod(integrand, 0.0, np.ones(ys.size), cfg.inner_rel_tol, 0.0, cfg.max_subdivisions)
    return res


def c3_zero_temperature(req):
    """C3 at T = 0 from the nested adaptive quadrature.

    Raises
    ------
    ConvergenceError
        If either quadrature level hits ``max_subdivisions`` before meeting
        ``rel_tol``; carries the best estimate.
    """
    if req.temperature != 0:
        raise DomainError("c3_zero_temperature requires temperature == 0")
    _check_validity(req)
    cfg = req.quadrature
    a = req.separation
    inner_ok = [True]
    inner_rel = [0.0]

    def outer(y, rows):
        flat = y.ravel()
        res = _inner_integrals(flat, req.atom, req.model, a, cfg)
        inner_ok[0] &= bool(res.converged.all())
        with np.errstate(divide="ignore", invalid="ignore"):
            rel = np.where(res.value != 0, res.error / np.abs(res.value), 0.0)
        inner_rel[0] = max(inner_rel[0], float(rel.max()))
        return (np.exp(-flat) * CONST.c * flat**3 / (2.0 * a) * res.value).reshape(y.shape)

    res = gauss_kronrod(outer, 0.0, cfg.y_max, cfg.outer_rel_tol, 0.0, cfg.max_subdivisions)
    total = float(res.value[0]) * CONST.hbar / (16.0 * math.pi)
    c3 = total / UNITS.c3_au_in_eV_nm3
    outer_rel = float(res.error[0] / abs(res.value[0])) if res.value[0] else 0.0
    est = outer_rel + inner_rel[0]
    ok = bool(res.converged[0]) and inner_ok[0] and est <= cfg.rel_tol
    if not ok:
        raise ConvergenceError(
            f"C3 quadrature did not reach rel_tol={cfg.rel_tol} (achieved {est:.3g})",
            estimate=c3,
            achieved=est,
        )
    return C3Result(
        c3=c3,
        energy=energy(c3, a),
        est_rel_error=est,
        converged=True,
        atom=req.atom.name,
        model=req.model.describe(),
        temperature=0.0,
        separation=a,
        outside_validity=req.outside_validity,
    )


def _matsubara_terms(ls, req):
    """Unweighted Matsubara terms (eV nm^3) for the indices ``ls``."""
    cfg = req.quadrature
    a = req.separation
    T = req.temperature
    beta = _v_F(req.model) * 1e9 / CONST.c
    xi = matsubara_frequency(1, T) * ls.astype(float)
    y_l = 2.0 * a * xi / CONST.c

    def integrand(s, rows):
        yl = y_l[rows][:, None]
        y = yl + s
        kin = kinematics_from_t(y, yl / y, a, beta)
        r = reflection(kin, req.model)
        ratio2 = (yl / y) ** 2
        return y * y * np.exp(-s) * (2.0 * r.r_tm - ratio2 * (r.r_tm + r.r_te))

    res = gauss_kronrod(
        integrand, 0.0, np.full(ls.size, cfg.y_max), cfg.inner_rel_tol, 0.0, cfg.max_subdivisions
    )
    pref = CONST.kB * T / 8.0 * polarizability(req.atom, xi) * np.exp(-y_l)
    terms = pref * res.value
    errs = pref * res.error
    return terms, errs, res.converged


def c3_thermal(req):
    """C3 at T > 0 from the primed Matsubara sum.

    The sum stops once three consecutive terms each fall below
    ``matsubara_term_rel_cutoff`` times the running sum.
    """
    if not req.temperature > 0:
        raise DomainError("c3_thermal requires temperature > 0")
    _check_validity(req)
    cfg = req.quadrature
    total = 0.0
    err = 0.0
    all_ok = True
    small_run = 0
    n = 0
    stopped = False
    while n < cfg.max_matsubara_terms and not stopped:
        ls = np.arange(n, min(n + cfg.matsubara_block, cfg.max_matsubara_terms))
        terms, errs, ok = _matsubara_terms(ls, req)
        if ls[0] == 0:
            terms[0] *= 0.5
            errs[0] *= 0.5
        for i in range(terms.size):
            total += terms[i]
            err += errs[i]
            all_ok &= bool(ok[i])
            n += 1
            if abs(terms[i]) < cfg.matsubara_term_rel_cutoff * abs(total):
                small_run += 1
                if small_run == 3:
                    stopped = True
                    break
            else:
                small_run = 0
    c3 = total / UNITS.c3_au_in_eV_nm3
    est = err / abs(total) if total else 0.0
    if not all_ok or est > cfg.rel_tol:
        raise ConvergenceError(
            f"Matsubara term quadrature did not reach rel_tol={cfg.rel_tol} (achieved {est:.3g})",
            estimate=c3,
            achieved=est,
        )
    return C3Result(
        c3=c3,
        energy=energy(c3, req.separation),
        est_rel_error=est,
        converged=True,
        atom=req.atom.name,
        model=req.model.describe(),
        temperature=req.temperature,
        separation=req.separation,
        outside_validity=req.outside_validity,
        n_matsubara=n,
        matsubara_truncated=not stopped,
    )


def compute_c3(req):
    """Dispatch to the zero-temperature or Matsubara evaluator."""
    if req.temperature == 0:
        return c3_zero_temperature(req)
    return c3_thermal(req)


def c3(atom, model, a, temperature=0.0, quadrature=None):
    """Convenience wrapper returning a :class:`C3Result`."""
    req = LifshitzRequest(atom, model, a, temperature, quadrature or QuadratureConfig())
    return compute_c3(req)

"""Reflection coefficients of graphene along the imaginary frequency axis.

Two descriptions are provided: the hydrodynamic (charged fluid sheet) model
and the Dirac model built on the one-loop polarization function ``phi``.
Wave numbers are in 1/nm and frequencies in rad/s throughout.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import ConfigurationError, DomainError
from .units import CONST

DELTA_BOUNDS = (0.0, 0.1)

# Below this value of q_tilde / (2 Delta_tilde) phi is evaluated from its
# Taylor series; the closed form loses ~eps/x^2 relative accuracy there.
PHI_SERIES_THRESHOLD = 1e-2
_PHI_SERIES_TERMS = 8


@dataclass(frozen=True)
class HydrodynamicParams:
    """Hydrodynamic model; ``K`` is the sheet wave number in 1/m."""

    K: float = 6.75e5

    def __post_init__(self):
        if not self.K > 0:
            raise ConfigurationError(f"K must be positive, got {self.K}")

    @property
    def K_nm(self):
        return self.K * 1e-9

    def describe(self):
        return {"model": "hydrodynamic", "K_per_m": self.K}


@dataclass(frozen=True)
class DiracParams:
    """Dirac model of graphene.

    Attributes
    ----------
    Delta : float
        Gap parameter in eV.
    v_F : float
        Fermi velocity in m/s.
    N : int
        Fermion multiplicity entering ``phi``.
    phi_scale : float
        Factor multiplying ``alpha * Phi`` in both reflection coefficients.
        With 1 the denominators are ``2 q_tilde^2 + alpha q Phi`` and
        ``2 q + alpha Phi``. The default 2 is the normalization under which
        the reference C3 tables in :mod:`vdwgraphene.reference` are reproduced.
    delta_bounds : tuple
        Admissible range for ``Delta`` in eV.
    """

    Delta: float = 0.1
    v_F: float = 1e6
    N: int = 4
    phi_scale: float = 2.0
    delta_bounds: tuple = DELTA_BOUNDS

    def __post_init__(self):
        lo, hi = self.delta_bounds
        if not (lo <= self.Delta <= hi):
            raise ConfigurationError(f"Delta={self.Delta} eV outside [{lo}, {hi}] eV")
        if not (0 < self.v_F < CONST.c * 1e-9):
            raise ConfigurationError(f"v_F must lie in (0, c), got {self.v_F}")
        if int(self.N) != self.N or self.N < 1:
            raise ConfigurationError(f"N must be a positive integer, got {self.N}")
        if not self.phi_scale > 0:
            raise ConfigurationError(f"phi_scale must be positive, got {self.phi_scale}")

    @property
    def delta_tilde(self):
        """Gap as a wave number, Delta / (hbar c), in 1/nm."""
        return self.Delta / CONST.hbar_c

    @property
    def beta(self):
        return self.v_F * 1e9 / CONST.c

    def describe(self):
        return {
            "model": "dirac",
            "Delta_eV": self.Delta,
            "v_F_m_per_s": self.v_F,
            "N": self.N,
            "phi_scale": self.phi_scale,
        }


@dataclass(frozen=True)
class ReflectionPair:
    r_tm: np.ndarray
    r_te: np.ndarray


@dataclass(frozen=True)
class Kinematics:
    """Frequency ``xi`` (rad/s) with wave numbers ``q`` and ``q_tilde`` (1/nm)."""

    xi: np.ndarray
    q: np.ndarray
    q_tilde: np.ndarray


def _phi_series_coefficients(n_terms):
    # (x^2 - 1) arctan(x)/x + 1 = sum_n (-1)^(n-1) 4n/(4n^2-1) x^(2n)
    return [(-1) ** (n - 1) * 4.0 * n / (4.0 * n * n - 1.0) for n in range(1, n_terms + 1)]


_PHI_COEFFS = _phi_series_coefficients(_PHI_SERIES_TERMS)


def _phi_reduced_series(x):
    x2 = x * x
    acc = np.zeros_like(x)
    for c in reversed(_PHI_COEFFS):
        acc = (acc + c) * x2
    return acc


def _phi_reduced_direct(x):
    return 1.0 + (x * x - 1.0) * np.arctan(x) / x


def phi(q_tilde, params):
    """Polarization function ``Phi(q_tilde)`` in 1/nm.

    ``N (D + (q^2 - 4 D^2)/(2 q) arctan(q / (2 D)))`` with ``D = Delta/(hbar c)``.
    The gapless case reduces to ``N pi q / 4``.
    """
    q_tilde = np.asarray(q_tilde, dtype=float)
    if np.any(q_tilde < 0) or np.any(np.isnan(q_tilde)):
        raise DomainError("q_tilde must be nonnegative")
    N = params.N
    d = params.delta_tilde
    if d == 0.0:
        out = N * math.pi * q_tilde / 4.0
        return out if out.ndim else float(out)
    x = q_tilde / (2.0 * d)
    small = x < PHI_SERIES_THRESHOLD
    with np.errstate(divide="ignore", invalid="ignore"):
        reduced = np.where(small, _phi_reduced_series(x), _phi_reduced_direct(x))
    out = N * d * reduced
    return out if out.ndim else float(out)


def reflection_hydrodynamic(kin, params):
    """TM/TE reflection coefficients of the hydrodynamic sheet."""
    K = params.K_nm
    xi_c = np.asarray(kin.xi) / CONST.c
    q = np.asarray(kin.q)
    with np.errstate(divide="ignore", invalid="ignore"):
        r_tm = np.where(q > 0, q * K / (q * K + xi_c * xi_c), 0.0)
    r_te = -K / (K + q)
    return ReflectionPair(r_tm, r_te)


def reflection_dirac(kin, params, _coupling=None):
    """TM/TE reflection coefficients of Dirac-model graphene.

    ``r_TM = a q Phi / (2 q_tilde^2 + a q Phi)`` and
    ``r_TE = -a Phi / (2 q + a Phi)`` with ``a = phi_scale * alpha``.

    ``_coupling`` replaces the fine-structure constant; it exists for tests
    of the vanishing-coupling limit only. At ``xi = k_perp = 0`` both
    coefficients are set to zero.
    """
    alpha = CONST.fine_structure if _coupling is None else _coupling
    q = np.asarray(kin.q, dtype=float)
    qt = np.asarray(kin.q_tilde, dtype=float)
    p = params.phi_scale * alpha * phi(qt, params)
    with np.errstate(divide="ignore", invalid="ignore"):
        alpha_q_phi = q * p
        r_tm = np.where(qt > 0, alpha_q_phi / (2.0 * qt * qt + alpha_q_phi), 0.0)
        r_te = np.where(q > 0, -p / (2.0 * q + p), 0.0)
    return ReflectionPair(r_tm, r_te)


def reflection(kin, model):
    """Dispatch on the model parameter type."""
    if isinstance(model, HydrodynamicParams):
        return reflection_hydrodynamic(kin, model)
    if isinstance(model, DiracParams):
        return reflection_dirac(kin, model)
    raise ConfigurationError(f"unknown graphene model {model!r}")


def kinematics_from_y(y, xi, a, v_F=1e6):
    """Wave numbers for ``y = 2 q a`` at frequency ``xi`` and separation ``a`` (nm)."""
    y = np.asarray(y, dtype=float)
    xi = np.asarray(xi, dtype=float)
    if np.any(y < 0):
        raise DomainError("y must be nonnegative")
    a = np.asarray(a, dtype=float)
    if np.any(~(a > 0)):
        raise DomainError("separation must be positive")
    q = y / (2.0 * a)
    xi_c = xi / CONST.c
    if np.any(xi < 0) or np.any(xi_c > q * (1 + 1e-14)):
        raise DomainError("xi must lie in [0, c y / (2 a)]")
    beta2 = (v_F * 1e9 / CONST.c) ** 2
    q_tilde = np.sqrt(beta2 * q * q + (1.0 - beta2) * xi_c * xi_c)
    return Kinematics(xi, q, q_tilde)


def kinematics_from_t(y, t, a, beta):
    """Kinematics on the normalized inner variable ``t = 2 a xi / (c y)`` in [0, 1].

    Used by the quadrature hot loop; no validation.
    """
    q = y / (2.0 * a)
    t2 = t * t
    xi = CONST.c * q * t
    q_tilde = q * np.sqrt(beta * beta + (1.0 - beta * beta) * t2)
    return Kinematics(xi, q, q_tilde)

"""Physical constants and conversions to the atomic units used for C3/C4.

Everything inside the package is computed in (eV, nm, rad/s); atomic units
appear only at input/output boundaries.
"""

from dataclasses import dataclass
import math

from scipy import constants as sc

from .errors import ConfigurationError, DomainError


@dataclass(frozen=True)
class Constants:
    """CODATA constants in the internal (eV, nm, s) system."""

    # reduced Planck constant (eV s)
    hbar: float = sc.hbar / sc.eV
    # speed of light (nm/s)
    c: float = sc.c * 1e9
    # Boltzmann constant (eV/K)
    kB: float = sc.k / sc.eV
    # fine-structure constant
    fine_structure: float = sc.fine_structure

    @property
    def hbar_c(self) -> float:
        """hbar * c in eV nm (197.3269804...)."""
        return self.hbar * self.c


@dataclass(frozen=True)
class UnitSystem:
    """Atomic-unit conversion factors as quoted for atom-wall coefficients."""

    c3_au_in_eV_nm3: float = 4.032e-3
    c4_au_in_eV_nm4: float = 4.032e-3
    polarizability_au_in_m3: float = 1.482e-31

    @property
    def polarizability_au_in_nm3(self) -> float:
        return self.polarizability_au_in_m3 * 1e27


CONST = Constants()
UNITS = UnitSystem()

_FACTORS = {
    "C3": UNITS.c3_au_in_eV_nm3,
    "C4": UNITS.c4_au_in_eV_nm4,
    "polarizability": UNITS.polarizability_au_in_m3,
}


def _factor(kind):
    try:
        return _FACTORS[kind]
    except KeyError:
        raise ConfigurationError(
            f"unknown quantity kind {kind!r}; expected one of {sorted(_FACTORS)}"
        ) from None


def to_atomic_units(value, kind):
    """Convert ``value`` to atomic units.

    Parameters
    ----------
    value : float
        C3 in eV nm^3, C4 in eV nm^4, or polarizability in m^3.
    kind : {"C3", "C4", "polarizability"}

    Returns
    -------
    float
    """
    factor = _factor(kind)
    if not math.isfinite(value):
        raise DomainError(f"value must be finite, got {value!r}")
    return value / factor


def from_atomic_units(value, kind):
    """Inverse of :func:`to_atomic_units`."""
    factor = _factor(kind)
    if not math.isfinite(value):
        raise DomainError(f"value must be finite, got {value!r}")
    return value * factor


def matsubara_frequency(l, T):
    """Matsubara frequency ``2 pi kB T l / hbar`` in rad/s."""
    if not T > 0:
        raise DomainError(f"temperature must be positive, got {T!r}")
    if l < 0:
        raise DomainError(f"Matsubara index must be nonnegative, got {l!r}")
    return 2.0 * math.pi * CONST.kB * T * l / CONST.hbar


def ev_to_rad_per_s(energy_ev):
    return energy_ev / CONST.hbar

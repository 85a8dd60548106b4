"""Atomic species and their single-oscillator dynamic polarizability."""

from dataclasses import dataclass, field
from types import MappingProxyType
import math
import os

import numpy as np

from .errors import ConfigurationError, DomainError, NotFoundError
from .units import CONST, UNITS

ATOM_CONFIG_ENV = "VDWGRAPHENE_ATOMS"


@dataclass(frozen=True)
class AtomSpec:
    """One species: static polarizability (a.u.) and oscillator frequency (eV)."""

    name: str
    alpha0: float
    omega0: float

    def __post_init__(self):
        if not (self.alpha0 > 0 and math.isfinite(self.alpha0)):
            raise ConfigurationError(f"{self.name}: alpha0 must be positive, got {self.alpha0}")
        if not (self.omega0 > 0 and math.isfinite(self.omega0)):
            raise ConfigurationError(f"{self.name}: omega0 must be positive, got {self.omega0}")

    @property
    def omega0_rad_s(self):
        return self.omega0 / CONST.hbar

    @property
    def alpha0_nm3(self):
        return self.alpha0 * UNITS.polarizability_au_in_nm3


BUILTIN_ATOMS = (
    AtomSpec("H", 4.50, 11.65),
    AtomSpec("H2", 5.439, 14.09),
    AtomSpec("He*", 315.63, 1.18),
    AtomSpec("Na", 162.68, 1.55),
)


@dataclass(frozen=True)
class AtomCatalog:
    entries: MappingProxyType = field(
        default_factory=lambda: MappingProxyType({a.name: a for a in BUILTIN_ATOMS})
    )

    @classmethod
    def from_specs(cls, specs, include_builtins=True):
        merged = {a.name: a for a in BUILTIN_ATOMS} if include_builtins else {}
        seen = set()
        for spec in specs:
            if spec.name in seen:
                raise ConfigurationError(f"duplicate atom name {spec.name!r}")
            seen.add(spec.name)
            merged[spec.name] = spec
        return cls(MappingProxyType(merged))

    @classmethod
    def from_file(cls, path, include_builtins=True):
        return cls.from_specs(read_atom_config(path), include_builtins)

    @classmethod
    def default(cls):
        """Built-ins, extended by the file named in ``$VDWGRAPHENE_ATOMS`` if set."""
        path = os.environ.get(ATOM_CONFIG_ENV)
        if path:
            return cls.from_file(path)
        return cls()

    def names(self):
        return sorted(self.entries)

    def __contains__(self, name):
        return name in self.entries


def lookup(catalog, name):
    try:
        return catalog.entries[name]
    except KeyError:
        raise NotFoundError(
            f"unknown atom {name!r}; available: {', '.join(catalog.names())}"
        ) from None


def read_atom_config(path):
    """Read ``name, alpha0_au, omega0_eV`` records.

    Blank lines and ``#`` comments are ignored; a header line starting with
    ``name`` is skipped.
    """
    specs = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = [p.strip() for p in line.split(",")]
            if parts[0].lower() == "name":
                continue
            if len(parts) != 3:
                raise ConfigurationError(f"{path}:{lineno}: expected 'name, alpha0_au, omega0_eV'")
            try:
                specs.append(AtomSpec(parts[0], float(parts[1]), float(parts[2])))
            except ValueError as exc:
                raise ConfigurationError(f"{path}:{lineno}: {exc}") from None
    return specs


def polarizability(atom, xi):
    """Dynamic polarizability at imaginary frequency ``xi`` (rad/s), in nm^3.

    ``alpha(i xi) = alpha0 / (1 + xi^2 / omega0^2)``. Accepts scalars or arrays.
    """
    xi = np.asarray(xi, dtype=float)
    if np.any(np.isnan(xi)) or np.any(xi < 0):
        raise DomainError("imaginary frequency must be a nonnegative number")
    w = xi / atom.omega0_rad_s
    out = atom.alpha0_nm3 / (1.0 + w * w)
    return out if out.ndim else float(out)


def polarizability_au(atom, xi):
    """Same as :func:`polarizability` but in atomic units."""
    xi = np.asarray(xi, dtype=float)
    if np.any(np.isnan(xi)) or np.any(xi < 0):
        raise DomainError("imaginary frequency must be a nonnegative number")
    w = xi / atom.omega0_rad_s
    out = atom.alpha0 / (1.0 + w * w)
    return out if out.ndim else float(out)

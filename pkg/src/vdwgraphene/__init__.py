"""Van der Waals and Casimir-Polder interaction of atoms with graphene.

Hydrodynamic and Dirac descriptions of graphene, Lifshitz-formula C3(a) at
zero and finite temperature, and the phenomenological ``-C4/(a^3 (a+l))``
potential fit.
"""

__version__ = "0.1.0"

from .atoms import AtomCatalog, AtomSpec, lookup, polarizability  # noqa: E402
from .errors import (  # noqa: E402
    ConfigurationError,
    ConvergenceError,
    DomainError,
    NotFoundError,
    OutsideValidityWarning,
    ValidationError,
)
from .fitting import PhenomenologicalPotential, deviation_profile, fit, potential_energy  # noqa: E402
from .graphene import DiracParams, HydrodynamicParams, phi, reflection  # noqa: E402
from .lifshitz import (  # noqa: E402
    C3Result,
    LifshitzRequest,
    QuadratureConfig,
    c3,
    c3_thermal,
    c3_zero_temperature,
    energy,
)
from .units import CONST, UNITS, matsubara_frequency, to_atomic_units  # noqa: E402

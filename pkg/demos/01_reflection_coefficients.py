"""Reflection coefficients of graphene on the imaginary frequency axis.

Two descriptions are available: the hydrodynamic (free electron sheet) model
with a single wave number K, and the Dirac model built on the polarization
function of gapped quasiparticles. Both are evaluated at the same point.
"""

# %%
import numpy as np

from vdwgraphene import DiracParams, HydrodynamicParams, phi, reflection
from vdwgraphene.graphene import kinematics_from_y
from vdwgraphene.units import CONST

hydro = HydrodynamicParams()
dirac = DiracParams(Delta=0.1)
print(hydro.describe())
print(dirac.describe())

# %% [markdown]
# Work in the reduced variable y = 2 a q at a = 10 nm. xi ranges from 0 up to
# the light cone c q.

# %%
a, y = 10.0, 2.0
q = y / (2 * a)
xi = np.linspace(0, CONST.c * q, 6)
kin = kinematics_from_y(y, xi, a)
for name, model in (("hydro", hydro), ("dirac", dirac)):
    r = reflection(kin, model)
    print(f"{name:6s} r_TM", np.round(r.r_tm, 5))
    print(f"{name:6s} r_TE", np.round(r.r_te, 7))

# %% [markdown]
# The TE coefficient is tiny for graphene; TM dominates. The gap suppresses
# Phi at small wave vector (the series branch handles q_tilde << 2 Delta):

# %%
qt = np.geomspace(1e-6, 1.0, 7)
for d in (1e-15, 1e-3, 0.1):
    print(f"Delta={d:g} eV  Phi/N:", np.array2string(phi(qt, DiracParams(d)) / 4, precision=4))

"""C3 coefficient of the atom-graphene interaction versus separation.

Computes the zero-temperature Lifshitz C3 for each built-in atom under both
graphene models and prints the hydrodynamic/Dirac ratio table.
"""

# %%
import numpy as np

from vdwgraphene import AtomCatalog, DiracParams, HydrodynamicParams, c3, lookup
from vdwgraphene.sweeps import model_ratio_table, sweep_separation

catalog = AtomCatalog()
print("atoms:", ", ".join(catalog.names()))

# %%
r = c3(lookup(catalog, "H"), HydrodynamicParams(), 10.0)
print(f"H hydro at 10 nm: C3 = {r.c3:.8f} a.u., E = {r.energy:.4e} eV, est. rel err {r.est_rel_error:.1e}")

# %%
grid = np.array([3.0, 5.0, 10.0, 20.0, 50.0, 100.0])
print("a [nm]     " + "  ".join(f"{a:6g}" for a in grid))
for name in ("H", "H2", "He*", "Na"):
    t = model_ratio_table(lookup(catalog, name), grid=grid)
    print(f"{name:4s} h/D  " + "  ".join(f"{x:6.3f}" for x in t.ratios))

# %% [markdown]
# The ratio grows with separation: the hydrodynamic sheet screens better at
# low frequencies, which dominate at large a.

# %%
curve = sweep_separation(lookup(catalog, "He*"), DiracParams(0.1), np.geomspace(3, 1000, 8))
for a, v in zip(curve.separations, curve.c3):
    print(f"{a:8.1f} nm  {v:.5f}")

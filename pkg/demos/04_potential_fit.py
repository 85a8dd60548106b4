"""Fit the interpolating potential E = -C4 / (a^3 (a + l)) to a Lifshitz curve."""

# %%
import numpy as np

from vdwgraphene import AtomCatalog, DiracParams, HydrodynamicParams, lookup
from vdwgraphene.fitting import fit
from vdwgraphene.sweeps import fit_grid, sweep_separation

catalog = AtomCatalog()
grid = fit_grid()

# %%
for name in ("He*", "Na"):
    for model in (HydrodynamicParams(), DiracParams(0.1)):
        rep = fit(sweep_separation(lookup(catalog, name), model, grid))
        lo, hi = rep.sub_1pct_range
        print(f"{name:4s} {model.describe()['model']:13s} C4 = {rep.potential.C4:7.3f} a.u.  l = {rep.potential.l:6.2f} nm"
              f"  max dev {100 * rep.max_rel_deviation:4.1f}% at {rep.max_deviation_at:.0f} nm"
              f"  <1% on [{lo:.3g}, {hi:.3g}] nm")

# %% [markdown]
# The two-parameter form cannot follow the curve everywhere; the worst
# deviations sit at the ends of the grid.

# %%
rep = fit(sweep_separation(lookup(catalog, "He*"), HydrodynamicParams(), grid))
for a in (3, 10, 30, 100):
    print(f"a = {a:3d} nm  deviation {100 * rep.residual_at(a):5.2f}%")

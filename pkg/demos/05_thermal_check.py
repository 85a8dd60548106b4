"""Thermal correction at room temperature.

At 500 nm the first Matsubara frequency (about 0.16 eV) already probes the
atom well below its resonance, so the 300 K correction is tiny.
"""

# %%
from vdwgraphene import AtomCatalog, DiracParams, c3, lookup
from vdwgraphene.units import matsubara_frequency

atom = lookup(AtomCatalog(), "He*")
model = DiracParams(0.1)
print(f"xi_1(300 K) = {matsubara_frequency(1, 300.0):.4e} rad/s")

# %%
zero = c3(atom, model, 500.0)
warm = c3(atom, model, 500.0, temperature=300.0)
print(f"T=0:    {zero.c3:.7f} a.u.")
print(f"T=300K: {warm.c3:.7f} a.u. ({warm.n_matsubara} Matsubara terms)")
print(f"relative difference {100 * (warm.c3 / zero.c3 - 1):.4f}%")

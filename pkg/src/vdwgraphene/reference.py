"""Reference values used by ``vdwgraphene reproduce`` for PASS/FAIL comparison.

Tolerances: ratios 2% relative; thermal values 0.5% relative and the
thermal correction 0.015 percentage points; fit parameters and species
ratios 5% relative; gap spreads in absolute percentage points.
"""

SEPARATIONS = (3.0, 5.0, 10.0, 20.0, 50.0, 100.0)

MODEL_RATIOS = {
    "H": (1.065, 1.19, 1.44, 1.85, 2.85, 4.21),
    "H2": (1.045, 1.18, 1.45, 1.89, 3.00, 4.63),
    "He*": (1.33, 1.47, 1.76, 2.23, 3.33, 4.78),
    "Na": (1.40, 1.55, 1.87, 2.39, 3.61, 5.29),
}
MODEL_RATIO_RTOL = 0.02

THERMAL = {"atom": "He*", "Delta": 0.1, "a": 500.0, "T": 300.0,
           "c3_zero": 0.0183505, "c3_thermal": 0.0183565, "difference_pct": 0.033}
THERMAL_RTOL = 0.005
THERMAL_DIFF_ATOL_PP = 0.015

# (atom, model, Delta) -> (C4 a.u., l nm)
FITS = {
    ("He*", "hydrodynamic", None): (85.11, 72.77),
    ("He*", "dirac", 0.1): (12.59, 11.18),
    ("Na", "hydrodynamic", None): (50.82, 66.92),
    ("Na", "dirac", 0.1): (7.11, 9.77),
    ("He*", "dirac", 1e-15): (18.04, 18.22),
    ("Na", "dirac", 1e-15): (9.74, 15.45),
}
FIT_RTOL = 0.05

# fit-quality: hydrodynamic endpoints ~10% (+-3 pp); Dirac at 3 nm ~5-5.7% (+-2 pp)
FIT_WINDOW_HYDRO = (10.0, 60.0)
FIT_WINDOW_DIRAC = (6.0, 100.0)
FIT_HYDRO_ENDPOINT_PCT = (7.0, 13.0)
FIT_DIRAC_3NM_PCT = (3.0, 7.7)

# (atom, a) -> spread in %, tolerance in pp
GAP_SPREADS = {
    ("H", 5.0): (6.6, 2.0), ("H", 50.0): (16.4, 2.0), ("H", 100.0): (31.3, 2.0),
    ("He*", 5.0): (3.7, 2.0), ("He*", 50.0): (28.0, 3.0), ("He*", 100.0): (46.0, 3.0),
    ("Na", 5.0): (3.2, 2.0), ("Na", 50.0): (25.6, 3.0), ("Na", 100.0): (42.0, 3.0),
}
# H plateau thresholds (eV); agreement within half a decade
GAP_PLATEAUS_H = {5.0: 0.01, 50.0: 0.004, 100.0: 0.001}
PLATEAU_LOG10_TOL = 0.5

# (numerator atom, denominator atom, model, a) -> ratio
SPECIES_RATIOS = {
    ("He*", "H", "dirac", 3.0): 18.0, ("He*", "H", "dirac", 100.0): 46.0,
    ("He*", "H", "hydrodynamic", 3.0): 23.0, ("He*", "H", "hydrodynamic", 100.0): 52.0,
    ("Na", "H", "dirac", 3.0): 11.6, ("Na", "H", "dirac", 100.0): 26.0,
    ("Na", "H", "hydrodynamic", 3.0): 15.0, ("Na", "H", "hydrodynamic", 100.0): 33.0,
}
SPECIES_RTOL = 0.05

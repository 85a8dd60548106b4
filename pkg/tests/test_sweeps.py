import numpy as np
import pytest

from conftest import CATALOG, cached_c3
from vdwgraphene import DiracParams, HydrodynamicParams, lookup
from vdwgraphene.errors import ValidationError
from vdwgraphene.sweeps import (
    REFERENCE_SEPARATIONS,
    C3Curve,
    curve_from_dict,
    curve_to_dict,
    default_delta_grid,
    default_separation_grid,
    model_ratio_table,
    plateau_delta,
    read_curve_csv,
    read_json,
    read_plot_data,
    ratio_table,
    species_ratio,
    sweep_gap,
    sweep_separation,
    table_from_dict,
    table_to_dict,
    write_curve_csv,
    write_json,
    write_plot_data,
)

H = lookup(CATALOG, "H")


def test_default_grids():
    g = default_separation_grid()
    assert g[0] == 3.0 and g[-1] == 100.0
    assert all(a in g for a in REFERENCE_SEPARATIONS)
    assert np.all(np.diff(g) > 0)
    d = default_delta_grid()
    assert d[0] == 1e-15 and d[-1] == pytest.approx(0.1)


def test_single_point_curve():
    curve = sweep_separation(H, HydrodynamicParams(), [10.0])
    assert len(curve) == 1
    assert curve.c3[0] == cached_c3("H", "h", 10.0)
    assert curve.converged.all()


@pytest.mark.parametrize("grid", [[], [5.0, 3.0], [0.0, 3.0]])
def test_bad_grids(grid):
    with pytest.raises(ValidationError):
        sweep_separation(H, HydrodynamicParams(), grid)


def test_hydro_curve_matches_pointwise():
    grid = [3.0, 10.0, 100.0]
    curve = sweep_separation(H, HydrodynamicParams(), grid, jobs=2)
    np.testing.assert_array_equal(curve.c3, [cached_c3("H", "h", a) for a in grid])
    assert np.all(curve.energies < 0)


def test_nonconverged_points_flagged():
    from vdwgraphene import QuadratureConfig

    cfg = QuadratureConfig(rel_tol=1e-14, max_subdivisions=2)
    curve = sweep_separation(H, DiracParams(0.1), [3.0, 10.0], quadrature=cfg)
    assert len(curve) == 2
    assert not curve.converged.any()
    assert np.all(curve.c3 > 0)


def test_identity_ratio_table():
    t = ratio_table(H, DiracParams(0.1), DiracParams(0.1), [3.0, 50.0])
    np.testing.assert_array_equal(t.ratios, 1.0)


def test_species_identity():
    assert species_ratio(H, H, HydrodynamicParams(), 10.0) == 1.0


@pytest.mark.parametrize("atom", ["H", "He*"])
def test_ratio_table_increasing(atom):
    t = model_ratio_table(lookup(CATALOG, atom))
    assert np.all(t.ratios > 1)
    assert np.all(np.diff(t.ratios) > 0)


@pytest.mark.parametrize("num", ["He*", "Na"])
@pytest.mark.parametrize("model", ["h", 0.1])
def test_species_ratio_grows(num, model):
    r = [cached_c3(num, model, a) / cached_c3("H", model, a) for a in (3.0, 10.0, 30.0, 100.0)]
    assert np.all(np.diff(r) > 0)


def test_plateau_synthetic():
    # C3 flat below 1e-3 eV, then 5% per decade
    f = lambda d: 1.0 + 0.05 * max(0.0, np.log10(d / 1e-3))
    deltas = 10.0 ** np.arange(-14, 0)
    assert plateau_delta(deltas, f) == pytest.approx(1e-3)


def test_gap_sweep_bounds():
    with pytest.raises(ValidationError):
        sweep_gap(H, 5.0, deltas=[0.2])
    with pytest.raises(ValidationError):
        sweep_gap(H, 5.0, deltas=[])


def test_gap_sweep_small():
    s = sweep_gap(H, 50.0, deltas=[1e-15, 1e-3, 0.1])
    assert s.c3[0] >= s.c3[1] >= s.c3[2]
    assert s.spread == pytest.approx((s.c3[0] - s.c3[2]) / s.c3[2])


# --- serialization --------------------------------------------------------

@pytest.fixture(scope="module")
def curve():
    return sweep_separation(H, DiracParams(0.1), [3.0, 7.0, 20.0])


def test_csv_round_trip(tmp_path, curve):
    p = write_curve_csv(curve, tmp_path / "c.csv")
    lines = p.read_text().splitlines()
    assert lines[0].startswith("# ") and '"code_version"' in lines[0]
    assert lines[1] == "a_nm,c3_au,energy_eV,rel_err"
    back = read_curve_csv(p)
    for name in ("separations", "c3", "energies", "rel_errors"):
        np.testing.assert_array_equal(getattr(back, name), getattr(curve, name))
    assert back.model == curve.model and back.atom == "H"


def test_json_round_trip(tmp_path, curve):
    p = write_json(curve_to_dict(curve), tmp_path / "c.json")
    back = curve_from_dict(read_json(p))
    np.testing.assert_array_equal(back.c3, curve.c3)
    np.testing.assert_array_equal(back.energies, curve.energies)
    assert read_json(p)["metadata"]["quadrature"]["rel_tol"] == 1e-8


def test_table_round_trip(tmp_path):
    t = ratio_table(H, HydrodynamicParams(), DiracParams(0.1), [3.0, 5.0])
    back = table_from_dict(read_json(write_json(table_to_dict(t), tmp_path / "t.json")))
    np.testing.assert_array_equal(back.ratios, t.ratios)


def test_plot_data(tmp_path):
    x = np.geomspace(3, 100, 7)
    y = np.sqrt(x) / 3
    p = write_plot_data(tmp_path, "1a", "hydro", x, y, {"atom": "H"})
    assert p.name == "fig1a_hydro.dat"
    data = read_plot_data(p)
    np.testing.assert_array_equal(data[:, 0], x)
    np.testing.assert_array_equal(data[:, 1], y)


def test_curve_requires_increasing():
    with pytest.raises(ValidationError):
        C3Curve("H", {}, 0.0, np.array([2.0, 1.0]), np.ones(2), -np.ones(2), np.zeros(2), np.ones(2, bool))

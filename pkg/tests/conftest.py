import functools
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from vdwgraphene import AtomCatalog, DiracParams, HydrodynamicParams, lookup  # noqa: E402
from vdwgraphene.lifshitz import c3 as _c3  # noqa: E402

CATALOG = AtomCatalog()

# criterion number -> list of (label, passed, detail)
ACCEPTANCE = {}


def model_for(key):
    if key == "h":
        return HydrodynamicParams()
    return DiracParams(key)


@functools.lru_cache(maxsize=None)
def cached_c3(atom, model_key, a, temperature=0.0):
    """C3 in a.u.; ``model_key`` is "h" or a Dirac gap in eV."""
    return _c3(lookup(CATALOG, atom), model_for(model_key), a, temperature).c3


@pytest.fixture
def catalog():
    return CATALOG


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        items = ACCEPTANCE[num]
        n_ok = sum(ok for _, ok, _ in items)
        status = "PASS" if n_ok == len(items) else "FAIL"
        tr.write_line(f"criterion {num}: {status} ({n_ok}/{len(items)} items)")
        for label, ok, detail in items:
            if not ok:
                tr.write_line(f"    FAIL {label}: {detail}")

import numpy as np
import pytest

from bicons.characterize import kappa_chain_from_f
from bicons.family import FamilyParams
from bicons.odeflow import integrate_f_ode_both, integrate_kappa_ode_both

REF_C = 1.0
REF_BIG_C = 80.0 / 9.0


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, text): acceptance criterion number and summary")
    config._criteria = {}


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    n, text = marker.args
    ok = call.excinfo is None
    results = item.config._criteria
    prev = results.get(n, (True, text))
    results[n] = (prev[0] and ok, text)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = getattr(config, "_criteria", {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        ok, text = results[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {text}")


@pytest.fixture(scope="session")
def ref_params():
    return FamilyParams(REF_C, REF_BIG_C)


@pytest.fixture(scope="session")
def ref_profile(ref_params):
    """Reference member from f0 = 1, tol 1e-12, u in [-2.5, turning point]."""
    return integrate_f_ode_both(ref_params, 1.0, 2.5, 10.0, 1e-12)


@pytest.fixture(scope="session")
def ref_kappa_profile():
    return integrate_kappa_ode_both(1.0, -4.0, -20.0, 2.5, 10.0, 1e-12)


@pytest.fixture(scope="session")
def ref_chain():
    return kappa_chain_from_f(1.0, 4.0 / 3.0, REF_C, REF_BIG_C)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)

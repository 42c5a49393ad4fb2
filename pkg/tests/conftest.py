import numpy as np
import pytest

from latfourier.lattice import a_d_lattice, identity_lattice, new_lattice, random_lattice


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def standard_lattices():
    """Z^2, diag(2,1), a random well-conditioned lattice and the A_2 parallelotope."""
    return {
        "Z2": identity_lattice(2),
        "diag21": new_lattice(np.diag([2.0, 1.0])),
        "random": random_lattice(np.random.default_rng(5), 2),
        "A2": a_d_lattice(2).intrinsic(),
    }


@pytest.fixture(params=sorted(standard_lattices()))
def lattice2d(request):
    return standard_lattices()[request.param]


_CRITERIA = {}


def pytest_runtest_logreport(report):
    """Collect outcomes of tests marked ``acceptance("<id>")``."""
    marker = next((m for m in getattr(report, "_acceptance", ())), None)
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _CRITERIA.setdefault(marker, []).append(report.outcome == "passed")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is not None and marker.args:
        report._acceptance = (str(marker.args[0]),)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")

    def order(key):
        head = "".join(ch for ch in key if ch.isdigit())
        return (int(head or 0), key)

    for key in sorted(_CRITERIA, key=order):
        results = _CRITERIA[key]
        status = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"criterion {key:>4}: {status} ({sum(results)}/{len(results)} checks)")

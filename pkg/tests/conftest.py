from __future__ import annotations

import pytest

from lorentz_genset.dirichlet import compute_dirichlet_domain
from lorentz_genset.isometry import reference_catalog
from lorentz_genset.lattice_enum import assemble_isometries
from lorentz_genset.stabilizer import build_stabilizer


@pytest.fixture(scope="session")
def catalog():
    return reference_catalog()


@pytest.fixture(scope="session")
def stab():
    return build_stabilizer(7)


@pytest.fixture(scope="session")
def elements21():
    return assemble_isometries(7, 21, threads=1)


@pytest.fixture(scope="session")
def domain7():
    return compute_dirichlet_domain(7, 21, threads=1)


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL line per acceptance criterion, in file order."""
    rows = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            if rep.when == "call" and "test_acceptance.py" in rep.nodeid:
                rows.append((rep.nodeid, "PASS" if outcome == "passed" else "FAIL"))
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for nid, status in sorted(rows, key=lambda r: r[0]):
        terminalreporter.write_line(f"{status}  {nid.split('::', 1)[1]}")

import os

import pytest
from hypothesis import settings

from dehncol.diagram import extract_topology, parse_pd_code
from dehncol.tables import builtin_table

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# acceptance results, printed at the end of the run
CRITERIA = {}


def record(n, passed, detail=""):
    CRITERIA.setdefault(n, []).append((passed, detail))
    line = "criterion %2d: %s  %s" % (n, "PASS" if passed else "FAIL", detail)
    print(line)
    return line


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        results = CRITERIA[n]
        ok = all(r for r, _ in results)
        details = "; ".join(d + ("" if r else " [FAIL]") for r, d in results if d)
        terminalreporter.write_line("criterion %2d: %s  %s" % (n, "PASS" if ok else "FAIL", details))


@pytest.fixture(scope="session")
def table():
    return {e.name: e for e in builtin_table()}


@pytest.fixture(scope="session")
def topos(table):
    return {name: extract_topology(e.pd) for name, e in table.items()}


def topo_of(text):
    return extract_topology(parse_pd_code(text, allow_empty=True))

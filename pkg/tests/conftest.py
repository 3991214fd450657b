import os
import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

from cubecoupling.tabular import DataTable, KTable, Triplet, center_table  # noqa: E402

CRITERIA = {
    1: "golden eigenvalues, BGCOIA on meau (70.2, 4.45; 3 s.f.; < 1 s)",
    2: "golden eigenvalues, STATICO on meau (593.6, 45.3; 3 s.f.; < 1 s)",
    3: "golden eigenvalues, COSTATIS on meau (34.52, 6.695; 4 s.f.; < 1 s)",
    4: "COSTATIS permutation test on meau, 999 perms: p <= 0.05",
    5: "oracle equivalence on >= 100 random instances within 1e-9",
    6: "invariant suite",
    7: "degenerate-input handling",
}

_outcomes: dict = {}

# fixed example sequence so that reruns exercise the same inputs
settings.register_profile("repo", max_examples=80, deadline=None, derandomize=True)
settings.register_profile("explore", max_examples=2000, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repo"))


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            item.user_properties.append(("criterion", m.args[0]))


def pytest_runtest_logreport(report):
    crit = dict(report.user_properties).get("criterion")
    if crit is None:
        return
    failed = _outcomes.setdefault(crit, [])
    if report.outcome != "passed":
        failed.append(report.nodeid.split("::")[-1])


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        if n not in _outcomes:
            continue
        failed = _outcomes[n]
        line = f"criterion {n}: {'FAIL' if failed else 'PASS'} - {CRITERIA[n]}"
        if failed:
            line += f" (failing: {', '.join(failed)})"
        terminalreporter.write_line(line)


# -- shared builders ----------------------------------------------------------


def triplet(X, dp=None, dn=None, rows=None, cols=None):
    X = np.asarray(X, dtype=float)
    return Triplet.from_table(DataTable.from_array(X, rows, cols), dp, dn)


def random_weights(rng, n):
    w = rng.uniform(0.2, 1.0, n)
    return w / w.sum()


def random_triplet(rng, n, p, centered=True, weighted=True, rows=None):
    X = rng.normal(size=(n, p))
    dp = rng.uniform(0.5, 2.0, p) if weighted else np.ones(p)
    dn = random_weights(rng, n) if weighted else np.full(n, 1.0 / n)
    t = triplet(X, dp, dn, rows)
    return center_table(t) if centered else t


def ktable_from(arrays, dp=None, dn=None, names=None):
    return KTable(tuple(triplet(a, dp, dn) for a in arrays), tuple(names or ()))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)

"""Acceptance gate: every headline guarantee, one verdict line each.

Each criterion from the shared registry runs once; the printed PASS/FAIL
line carries the measured detail (visible with -s, and in failure reports).
Runtime budgets are part of the verdict where a guarantee states one.
"""

import pytest

from jonescope.acceptance import CRITERIA, run_criterion

ORDER = list(CRITERIA)


@pytest.mark.parametrize("name", ORDER)
def test_criterion(name):
    result = run_criterion(name)
    flag = "PASS" if result.ok else "FAIL"
    print(f"{flag} {name} ({result.elapsed:.2f} s): {result.detail}")
    budget = CRITERIA[name][1]
    if budget is not None:
        assert result.elapsed < budget, f"{name} took {result.elapsed:.1f} s"
    assert result.ok, result.detail


def test_registry_is_complete():
    assert ORDER == [
        "state-sum",
        "cyclotomic",
        "mmr",
        "bounds",
        "lobachevsky",
        "rates",
        "discrete-max",
        "qfactorial",
        "borromean",
        "symmetry",
        "qholo",
    ]

"""Acceptance criteria 1-11, one test each.

Each test prints a PASS/FAIL line; the lines are also collected and shown in
the terminal summary.  Run ``python tests/test_acceptance.py`` for the lines
alone.
"""

import pytest

from qairy import oracles

RESULTS = {}

CRITERIA = [
    (1, "whittaker"), (2, "beta"), (3, "trees"), (4, "relations"), (5, "symmetry"), (6, "vanishing"),
    (7, "covariance"), (8, "cequal0"), (9, "cohomology"), (10, "young"), (11, "z2base"),
]


@pytest.mark.parametrize("number,suite", CRITERIA, ids=[f"{n:02d}_{s}" for n, s in CRITERIA])
def test_criterion(number, suite):
    res = oracles.run_suite(suite)
    RESULTS[number] = res
    print(res.report())
    assert res.ok, res.report()


if __name__ == "__main__":
    import sys
    bad = 0
    for number, suite in CRITERIA:
        res = oracles.run_suite(suite)
        print(res.report(), flush=True)
        bad += not res.ok
    sys.exit(1 if bad else 0)

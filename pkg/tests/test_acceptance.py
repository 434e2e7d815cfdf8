"""One test per acceptance criterion; each prints a single PASS/FAIL line.

Run with ``pytest -s tests/test_acceptance.py`` to see the lines.
"""

import pytest

from linroots.acceptance import CRITERIA, corrupted_golden, run_criterion

# wall-clock budgets in seconds
BUDGET = {"1a": 5, "1b": 5, "1c": 10, "1c'": 10, "1d": 5, "2": 120, "3": 30, "4": 60,
          "5": 300, "6": 180, "7": 10}


@pytest.mark.parametrize("key", [k for k, _, _ in CRITERIA])
def test_criterion(key):
    outcome = run_criterion(key)
    print(outcome.line())
    assert outcome.passed, outcome.detail
    assert outcome.seconds < BUDGET[key], f"took {outcome.seconds:.1f}s"


def test_corrupted_golden_case_fails_with_its_name():
    outcome = run_criterion("1a", corrupted_golden())
    print(outcome.line())
    assert not outcome.passed
    assert outcome.line().startswith("[FAIL] 1a ")

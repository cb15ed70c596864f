"""The ten acceptance criteria, one test each.

Each test prints a ``[PASS]``/``[FAIL]`` line; the lines are repeated in the
terminal summary so they survive output capture.
"""

import pytest

from sqrtasym.acceptance import CRITERIA, run_criterion

RESULTS = []


@pytest.mark.filterwarnings("ignore::sqrtasym.errors.DegenerateWarning")
@pytest.mark.parametrize("number", [k for k, _, _ in CRITERIA], ids=[f"c{k:02d}-{t.replace(' ', '-').lower()}" for k, t, _ in CRITERIA])
def test_criterion(number):
    result = run_criterion(number)
    RESULTS.append(result)
    print(result.line())
    assert result.passed, result.line()

"""The ten acceptance criteria, each at its stated time limit."""

import pytest

from brace_lab.acceptance import CRITERIA, run_criterion

# filled as the criteria run; printed in the terminal summary by conftest
RESULTS = []


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[f"criterion{c[0]}" for c in CRITERIA])
def test_criterion(number):
    res = run_criterion(number)
    RESULTS.append(res)
    print(res.line())
    assert res.passed, res.line()
    assert res.elapsed < res.limit

"""Acceptance criteria A1-A9, one test each.

Every test prints a single PASS/FAIL line with the check count, elapsed time
and limit. A suite passes only if all its checks hold and it finishes within
its time limit.
"""
import pytest

from annskein.verify import ACCEPTANCE, SUITES, run_suite


@pytest.mark.parametrize("suite", ACCEPTANCE)
def test_acceptance(suite):
    result = run_suite(suite)
    print(f"\n{result.line()}  [{SUITES[suite][2]}]")
    assert result.ok, "\n".join(result.details[:5])
    assert result.within_limit, f"{suite} took {result.elapsed:.1f}s, limit {result.limit}s"

"""One pass/fail line per acceptance criterion (run with -s to see them)."""
import pytest

from orthonorm import acceptance


@pytest.mark.slow
@pytest.mark.parametrize("check", acceptance.ALL, ids=lambda c: f"{c.number:02d}_{c.__name__}")
def test_criterion(check):
    res = check()
    print("\n" + res.line())
    assert res.passed, res.line()

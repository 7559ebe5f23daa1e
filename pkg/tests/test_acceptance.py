"""Acceptance gate: every criterion at its frozen tolerance, one line each.

The checks live in ``shorsim.selftest`` (the ``selftest`` CLI subcommand runs
the same list); this module runs them one by one so a failure pinpoints its
criterion.  Criteria with a stated runtime budget fail when they exceed it.
"""

import pytest

from shorsim import selftest


@pytest.mark.parametrize(
    "criterion", selftest.CRITERIA, ids=[f"{c.number:02d}-{c.name}" for c in selftest.CRITERIA]
)
def test_criterion(criterion):
    result = selftest.run_criterion(criterion)
    flag = "PASS" if result.passed else "FAIL"
    print(f"ACCEPTANCE {result.number:2d} {result.name}: {flag} "
          f"({result.seconds:.2f}s) {result.detail}")
    assert result.passed, f"criterion {result.number} ({result.name}): {result.detail}"

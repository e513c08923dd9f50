"""Acceptance suite: one test per criterion, all checks exact.

Each test prints its pass/fail line; failing checks are listed in the
assertion message.  Criteria 4 and 7 are expected to fail (see README).
"""

import pytest

from infhecke.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[f"criterion_{c[0]:02d}" for c in CRITERIA])
def test_criterion(number):
    result = run_criterion(number)
    print(result.line())
    detail = "\n".join(f"{c.label}: {c.detail}" for c in result.failures)
    if result.error:
        detail += f"\nerror: {result.error}"
    assert result.passed, f"{result.line()}\n{detail}"

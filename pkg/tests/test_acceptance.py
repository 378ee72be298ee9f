"""End-to-end cross-validation: one test per acceptance check.

Each check is a callable in pvilab.acceptance returning (ok, detail); the
detail string carries the measured numbers so a failure is self-explaining.
"""

import pytest

from pvilab import acceptance

_BY_NAME = dict(acceptance.CRITERIA)


@pytest.mark.parametrize("name", [n for n, _ in acceptance.CRITERIA])
def test_criterion(name):
    ok, detail = _BY_NAME[name]()
    assert ok, detail

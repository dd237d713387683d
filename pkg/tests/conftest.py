import os
import sys

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

from chopcone.csc import ChoppedSlicedCone  # noqa: E402

settings.register_profile("exact", deadline=None, derandomize=True)
settings.load_profile("exact")


@pytest.fixture
def box_cone():
    """The unit-square cone: x, y >= 0, x, y <= lam, sliced by x + y."""
    return ChoppedSlicedCone(2, 1, 2, 1, 2, [[1, 0], [0, 1]], [[1, 1]], [[1, 0], [0, 1]],
                             [[1], [1]])


def pytest_terminal_summary(terminalreporter):
    from _acceptance_log import RESULTS
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(RESULTS):
        ok, detail = RESULTS[num]
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {detail}")

import numpy as np
import pytest
from hypothesis import settings, strategies as st

from hobserve.hmatrix import QMatrix
from hobserve.quat import Quat

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

component = st.floats(min_value=-3.0, max_value=3.0, allow_nan=False, allow_infinity=False)
quats = st.builds(Quat, component, component, component, component)
nonzero_quats = quats.filter(lambda q: q.norm() > 1e-2)
real_quats = st.builds(Quat, component)


def qmatrices(rows, cols, elements=component):
    from hypothesis.extra.numpy import arrays

    return arrays(np.float64, (rows, cols, 4), elements=elements).map(QMatrix)


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


# acceptance lines collected by tests/test_acceptance.py
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])

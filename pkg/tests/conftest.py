import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=100, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def code_8421():
    """The (8,4,2,1) code over F_4 with m = 3 (extension F_{4^6})."""
    from mrlrc import construct

    return construct(8, 4, 2, 1, q=4, m=3)


@pytest.fixture(scope="session")
def code_8421_small():
    """The (8,4,2,1) code with the smallest manual parameters (F_{2^6})."""
    from mrlrc import construct

    return construct(8, 4, 2, 1)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)

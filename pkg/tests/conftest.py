import random
import sys

import pytest
from hypothesis import settings

from vabelian.catalog import CATALOG, builtin

settings.register_profile("default", max_examples=100, deadline=None)
settings.load_profile("default")


@pytest.fixture
def rng():
    return random.Random(20261015)


@pytest.fixture(params=CATALOG)
def catalog_group(request):
    return builtin(request.param)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "RESULTS", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)

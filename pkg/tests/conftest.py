import pytest
from hypothesis import settings

from hyperdet._backend import available_backends

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

GRID = [(n, k) for n in (0, 1, 2) for k in (1, 2, 3, 4)]
SMALL_GRID = [(n, k) for n in (0, 1, 2) for k in (1, 2, 3)]

_criteria: list[str] = []


@pytest.fixture(params=sorted(available_backends()))
def kernels(request):
    return available_backends()[request.param]


@pytest.fixture
def criterion_log():
    """Collects one summary line per acceptance criterion."""
    return _criteria


def pytest_terminal_summary(terminalreporter):
    if _criteria:
        terminalreporter.section("acceptance criteria")
        for line in _criteria:
            terminalreporter.write_line(line)

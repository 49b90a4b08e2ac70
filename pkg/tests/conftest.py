import pytest
from hypothesis import HealthCheck, settings

from discount_axioms import Lottery, UtilityFunction, prize_set

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture
def prizes():
    return prize_set(["hi", "mid", "lo"])


@pytest.fixture
def u(prizes):
    return UtilityFunction.from_mapping({"hi": 1.0, "mid": 0.0, "lo": -0.8}, prizes)


@pytest.fixture
def x0(prizes):
    return Lottery.degenerate(prizes, "mid")


@pytest.fixture
def deg(prizes):
    return {p: Lottery.degenerate(prizes, p) for p in prizes}


ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)

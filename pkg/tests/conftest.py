import numpy as np
import pytest

from anongames import AnonymousGame, num_partitions


def constant_game(n: int, s: int, value: float = 0.5) -> AnonymousGame:
    return AnonymousGame(np.full((n, s, num_partitions(n - 1, s)), value))


def dominant_game(n: int, s: int, best: int = 0, margin: float = 0.3) -> AnonymousGame:
    u = np.full((n, s, num_partitions(n - 1, s)), 0.5)
    u[:, best, :] = 0.5 + margin
    return AnonymousGame(u)


def matching_pennies() -> AnonymousGame:
    # rank 0: the other player chose strategy 0, rank 1: strategy 1
    u = np.array(
        [
            [[1.0, 0.0], [0.0, 1.0]],  # matcher
            [[0.0, 1.0], [1.0, 0.0]],  # mismatcher
        ]
    )
    return AnonymousGame(u)


def random_game(rng: np.random.Generator, n: int, s: int) -> AnonymousGame:
    return AnonymousGame(rng.random((n, s, num_partitions(n - 1, s))))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

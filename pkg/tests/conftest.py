import numpy as np
import pytest

from lieparallel.algebra import build_se3_structure, build_so3_structure

BETAS = (1.0, 1.5, 2.0)


@pytest.fixture(params=BETAS, ids=lambda b: f"beta={b}")
def se3(request):
    return build_se3_structure(request.param)


@pytest.fixture
def so3():
    return build_so3_structure()


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def random_se3_element(rng, max_angle=2.0):
    axis = rng.normal(size=3)
    axis /= np.linalg.norm(axis)
    angle = rng.uniform(0, max_angle)
    K = np.array([[0, -axis[2], axis[1]], [axis[2], 0, -axis[0]], [-axis[1], axis[0], 0]])
    g = np.eye(4)
    g[:3, :3] = np.eye(3) + np.sin(angle) * K + (1 - np.cos(angle)) * K @ K
    g[:3, 3] = rng.normal(size=3)
    return g


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

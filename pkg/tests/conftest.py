import math
import warnings

import numpy as np
import pytest

from openweyl import DensityMatrix, ModelParams, MomentumPoint

PI = math.pi
WEYL_XY = [(0.0, 0.0), (PI, 0.0), (0.0, PI), (PI, PI)]
ANTI_WEYL = MomentumPoint(PI / 2, PI / 2, PI / 2)
PLUS_STATE = DensityMatrix.from_components(0.5, 0.5)


def random_config(rng, gamma_range=(0.1, 5.0)):
    k = MomentumPoint(*rng.uniform(-PI, PI, 3))
    lam = rng.uniform(-1, 1)
    gamma = rng.uniform(*gamma_range)
    return k, ModelParams(lam, gamma)


def random_density_matrix(rng):
    a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    rho = a @ a.conj().T
    return DensityMatrix(rho / np.trace(rho).real)


@pytest.fixture
def rng():
    return np.random.default_rng(20190101)


@pytest.fixture(autouse=True)
def _quiet_lambda_warning():
    with warnings.catch_warnings():
        warnings.filterwarnings("ignore", message=r"\|lambda\|")
        yield


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)

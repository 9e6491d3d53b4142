import pathlib

import numpy as np
import pytest

from dqlink import _kernels, load_mechanism

DATA = pathlib.Path(__file__).parent / "data"


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    # compile the jit kernels once so timing assertions measure steady state
    _kernels.warmup()


@pytest.fixture(scope="session")
def sixbar():
    return load_mechanism(DATA / "sixbar.mech")


@pytest.fixture(scope="session")
def bennett():
    return load_mechanism(DATA / "bennett.mech")


@pytest.fixture()
def rng():
    return np.random.default_rng(20260814)

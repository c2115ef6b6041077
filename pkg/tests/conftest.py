import numpy as np
import pytest

from src.geometry import bb_bound, gamma_crit


@pytest.fixture
def rng():
    return np.random.Generator(np.random.PCG64(20240601))


@pytest.fixture(scope="session")
def gamma_c():
    return gamma_crit()


@pytest.fixture(scope="session")
def bb():
    return bb_bound()


@pytest.fixture(autouse=True)
def _clean_thread_env(monkeypatch):
    # tests pick threads explicitly; keep the environment from leaking in
    monkeypatch.delenv("STI_THREADS", raising=False)

# In tests/conftest.py

import os
import tempfile

# padiclab.config reads these at import time
_SESSION_DIR = tempfile.mkdtemp(prefix="padiclab-tests-")
os.environ["PADICLAB_OUTPUT_DIR"] = _SESSION_DIR
os.environ["PADICLAB_CONFIG"] = os.path.join(_SESSION_DIR, "absent-config.yml")

import numpy as np  # noqa: E402
import pytest  # noqa: E402

from padiclab.lib.frequency import EventSequence  # noqa: E402
from padiclab.lib.models import ApparatusConfig, MemoryKernel, ScenarioSpec  # noqa: E402
from padiclab.lib.padic_core import PrimeBase  # noqa: E402


@pytest.fixture(params=[2, 3, 5, 7])
def prime(request) -> int:
    return request.param


@pytest.fixture
def base2() -> PrimeBase:
    return PrimeBase(2)


@pytest.fixture
def fair_coin() -> EventSequence:
    rng = np.random.default_rng(20240501)
    return EventSequence(rng.integers(0, 2, size=2**14, dtype=np.uint8))


@pytest.fixture
def alternating() -> EventSequence:
    return EventSequence.from_string("01" * 512)


@pytest.fixture
def two_slit() -> ApparatusConfig:
    return ApparatusConfig()


@pytest.fixture
def sequential_spec() -> ScenarioSpec:
    return ScenarioSpec(scenario="sequential", trials=2000, seed=7)


@pytest.fixture
def memory_kernel() -> MemoryKernel:
    return MemoryKernel(strength=0.5, recency_window=100)


@pytest.fixture
def output_dir(tmp_path):
    return str(tmp_path)

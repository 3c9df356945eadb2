import math

import numpy as np
import pytest

from core.config import CONFIG_ENV_VAR, OUTPUT_DIR_ENV_VAR, LabSettings, use_settings
from core.norms import partition_for
from core.partition import FrequencyGrid


@pytest.fixture(autouse=True)
def lab_settings(monkeypatch, tmp_path):
    """Default settings for every test, reports under the test's tmp dir"""
    monkeypatch.delenv(CONFIG_ENV_VAR, raising=False)
    monkeypatch.delenv(OUTPUT_DIR_ENV_VAR, raising=False)
    settings = LabSettings(output_dir=str(tmp_path / "reports"))
    use_settings(settings)
    yield settings
    use_settings(None)
    partition_for.cache_clear()


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def grid2():
    """Small 2-D grid on [−π, π)², integer frequencies up to 16"""
    return FrequencyGrid(2, 32, math.pi)


@pytest.fixture
def grid1():
    return FrequencyGrid(1, 64, math.pi)

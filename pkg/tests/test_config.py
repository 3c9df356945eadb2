import json

import pytest

from core.config import (
    CONFIG_ENV_VAR, DEFAULT_CONFIG_NAME, OUTPUT_DIR_ENV_VAR, LabSettings, get_settings, load_settings,
    use_settings,
)
from core.errors import ConfigError


def _write(path, payload):
    path.write_text(json.dumps(payload), encoding="utf-8")
    return path


def test_defaults(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    settings = load_settings()
    assert settings == LabSettings()
    assert settings.witness_tolerance == 1e-3
    assert settings.ladder_levels == 2


def test_file_overrides_defaults(tmp_path):
    path = _write(tmp_path / "lab.json", {"witness_tolerance": 1e-6, "fft_workers": 4})
    settings = load_settings(path)
    assert settings.witness_tolerance == 1e-6
    assert settings.fft_workers == 4
    assert settings.partition_tolerance == 1e-12


def test_config_from_environment(tmp_path, monkeypatch):
    path = _write(tmp_path / "env.json", {"ladder_levels": 3})
    monkeypatch.setenv(CONFIG_ENV_VAR, str(path))
    assert load_settings().ladder_levels == 3


def test_config_in_working_directory(tmp_path, monkeypatch):
    _write(tmp_path / DEFAULT_CONFIG_NAME, {"default_seed": 11})
    monkeypatch.chdir(tmp_path)
    assert load_settings().default_seed == 11


def test_output_dir_from_environment(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv(OUTPUT_DIR_ENV_VAR, str(tmp_path / "elsewhere"))
    assert load_settings().output_dir == str(tmp_path / "elsewhere")


@pytest.mark.parametrize("payload", [
    {"colour": "red"},
    {"ladder_levels": 1},
    {"witness_tolerance": 0},
    {"spectral_noise_floor": -1e-13},
    {"mask_memory_budget_bytes": -1},
    [1, 2, 3],
])
def test_invalid_files(tmp_path, payload):
    with pytest.raises(ConfigError):
        load_settings(_write(tmp_path / "bad.json", payload))


def test_unreadable_file(tmp_path):
    (tmp_path / "broken.json").write_text("{", encoding="utf-8")
    with pytest.raises(ConfigError):
        load_settings(tmp_path / "broken.json")
    with pytest.raises(ConfigError):
        load_settings(tmp_path / "missing.json")


def test_use_settings_installs_and_validates(lab_settings):
    assert get_settings() is lab_settings
    custom = LabSettings(default_seed=5)
    use_settings(custom)
    assert get_settings() is custom
    with pytest.raises(ConfigError):
        use_settings(LabSettings(ladder_levels=0))

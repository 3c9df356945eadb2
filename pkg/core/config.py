"""
Configuration for the Besov Lab
Tolerances, memory budget and witness ladders from a JSON file, output
directory from the environment
"""

import json
import logging
import os
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Any, Dict, Optional

from dotenv import load_dotenv

from core.errors import ConfigError

logger = logging.getLogger(__name__)

CONFIG_ENV_VAR = "BESOV_LAB_CONFIG"
OUTPUT_DIR_ENV_VAR = "BESOV_LAB_OUTPUT_DIR"
DEFAULT_CONFIG_NAME = "besov_lab.json"


@dataclass(frozen=True)
class LabSettings:
    """Every tunable of the lab with its documented default"""

    # sum of partition masks versus 1 on the covered cube
    partition_tolerance: float = 1e-12
    # a mask value below this counts as outside the support
    support_threshold: float = 1e-14
    # absolute tolerance for exponent comparisons on float inputs
    rational_tolerance: float = 1e-12
    # block L_p values below this are recorded as exact zeros
    underflow_floor: float = 1e-300
    # relative spectral energy allowed outside a partition's covered cube
    truncation_tolerance: float = 1e-13
    # spectrum entries computed from samples below this fraction of max|F| are FFT round-off
    spectral_noise_floor: float = 1e-13
    # relative delta between the last two ladder levels of a witness row
    witness_tolerance: float = 1e-3
    # dense masks are materialized only below this many bytes
    mask_memory_budget_bytes: int = 512 * 1024 * 1024
    fft_workers: int = 1
    default_seed: int = 0
    output_dir: str = "reports"
    # number of refinement levels in the default witness ladders
    ladder_levels: int = 2

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _read_config_file(path: Path) -> Dict[str, Any]:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            payload = json.load(handle)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"cannot read config file {path}: {e}") from e

    if not isinstance(payload, dict):
        raise ConfigError(f"config file {path} must hold a JSON object")

    known = {f.name for f in fields(LabSettings)}
    unknown = sorted(set(payload) - known)
    if unknown:
        raise ConfigError(f"unknown config keys in {path}: {', '.join(unknown)}")
    return payload


def _validate(settings: LabSettings) -> LabSettings:
    positive = [
        "partition_tolerance", "support_threshold", "rational_tolerance",
        "underflow_floor", "truncation_tolerance", "spectral_noise_floor", "witness_tolerance",
        "mask_memory_budget_bytes", "fft_workers",
    ]
    for name in positive:
        if not getattr(settings, name) > 0:
            raise ConfigError(f"{name} must be positive, got {getattr(settings, name)!r}")
    if settings.ladder_levels < 2:
        raise ConfigError("ladder_levels must be at least 2")
    return settings


def load_settings(path: Optional[os.PathLike] = None) -> LabSettings:
    """
    Build settings from defaults, an optional JSON file and the environment

    Priority for the file:
    1. Explicit ``path`` argument
    2. ``$BESOV_LAB_CONFIG``
    3. ``besov_lab.json`` in the working directory, if present

    Only the output directory may be overridden from the environment
    (``$BESOV_LAB_OUTPUT_DIR``, also read from a ``.env`` file).

    Args:
        path: Optional path to a JSON config file

    Returns:
        Validated LabSettings
    """
    load_dotenv()

    overrides: Dict[str, Any] = {}
    candidate = path or os.getenv(CONFIG_ENV_VAR)
    if candidate:
        overrides = _read_config_file(Path(candidate))
    elif Path(DEFAULT_CONFIG_NAME).is_file():
        overrides = _read_config_file(Path(DEFAULT_CONFIG_NAME))

    try:
        settings = replace(LabSettings(), **overrides)
    except TypeError as e:
        raise ConfigError(f"invalid config values: {e}") from e

    output_dir = os.getenv(OUTPUT_DIR_ENV_VAR)
    if output_dir:
        settings = replace(settings, output_dir=output_dir)

    logger.debug("Loaded settings: %s", settings)
    return _validate(settings)


_settings: Optional[LabSettings] = None


def get_settings() -> LabSettings:
    """Process-wide settings, loaded on first use"""
    global _settings
    if _settings is None:
        _settings = load_settings()
    return _settings


def use_settings(settings: Optional[LabSettings]) -> None:
    """Install settings for the rest of the process; None forces a reload"""
    global _settings
    _settings = settings if settings is None else _validate(settings)

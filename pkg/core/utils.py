"""
Utility functions for the Besov Lab
Number formatting, safe ratios and file I/O for tensors and reports
"""

import json
import math
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

import numpy as np
import pandas as pd

from core.errors import ReportError


def format_number(value: float, decimals: int = 4) -> str:
    """Format number for display, N/A for missing values"""
    if value is None or pd.isna(value):
        return "N/A"
    if math.isinf(value):
        return "∞" if value > 0 else "−∞"
    if value != 0 and (abs(value) >= 1e6 or abs(value) < 10 ** -decimals):
        return f"{value:.{decimals}e}"
    return f"{value:,.{decimals}f}"


def safe_divide(numerator: float, denominator: float, default: float = math.nan) -> float:
    """Divide two numbers, returning default if denominator is 0 or either is missing"""
    if pd.isna(numerator) or pd.isna(denominator) or denominator == 0:
        return default
    return numerator / denominator


def to_jsonable(value: Any) -> Any:
    """Recursively convert numpy scalars, tuples and non-finite floats for json.dump"""
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
    return value


# ============================================================================
# FILE I/O
# ============================================================================

def _ensure_parent(path: Path) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise ReportError(path, f"cannot create directory: {e}") from e


def write_json(path, payload: Dict[str, Any]) -> Path:
    """Write a JSON document with sorted keys"""
    path = Path(path)
    _ensure_parent(path)
    try:
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(to_jsonable(payload), handle, indent=2, sort_keys=True, ensure_ascii=False)
            handle.write("\n")
    except OSError as e:
        raise ReportError(path, f"cannot write JSON: {e}") from e
    return path


def read_json(path) -> Dict[str, Any]:
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except (OSError, json.JSONDecodeError) as e:
        raise ReportError(path, f"cannot read JSON: {e}") from e


def write_csv(path, df: pd.DataFrame) -> Path:
    """CSV with floats at 17 significant digits"""
    path = Path(path)
    _ensure_parent(path)
    try:
        df.to_csv(path, index=False, float_format="%.17g", lineterminator="\n")
    except OSError as e:
        raise ReportError(path, f"cannot write CSV: {e}") from e
    return path


def read_csv(path) -> pd.DataFrame:
    path = Path(path)
    try:
        return pd.read_csv(path, float_precision="round_trip")
    except (OSError, pd.errors.ParserError) as e:
        raise ReportError(path, f"cannot read CSV: {e}") from e


def sidecar_path(path) -> Path:
    return Path(path).with_suffix(".json")


def write_tensor_container(path, array: np.ndarray, metadata: Optional[Dict[str, Any]] = None) -> Path:
    """
    Store a float64 tensor as .npy plus a JSON sidecar

    Args:
        path: Target .npy path; the sidecar sits next to it with suffix .json
        array: Tensor to store (row-major float64)
        metadata: Extra sidecar fields

    Returns:
        Path of the .npy file
    """
    path = Path(path).with_suffix(".npy")
    _ensure_parent(path)
    data = np.ascontiguousarray(array, dtype=np.float64)
    try:
        np.save(path, data, allow_pickle=False)
    except OSError as e:
        raise ReportError(path, f"cannot write tensor: {e}") from e

    sidecar = {"shape": list(data.shape), "dtype": "float64", "order": "C"}
    sidecar.update(metadata or {})
    write_json(sidecar_path(path), sidecar)
    return path


def read_tensor_container(path) -> Tuple[np.ndarray, Dict[str, Any]]:
    """Inverse of write_tensor_container"""
    path = Path(path).with_suffix(".npy")
    try:
        array = np.load(path, allow_pickle=False)
    except (OSError, ValueError) as e:
        raise ReportError(path, f"cannot read tensor: {e}") from e
    metadata = read_json(sidecar_path(path))
    if list(array.shape) != metadata.get("shape"):
        raise ReportError(path, f"tensor shape {array.shape} disagrees with sidecar {metadata.get('shape')}")
    return array, metadata

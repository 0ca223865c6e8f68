"""Atomic JSON and CSV output.

Files are written to a temporary sibling and renamed into place, so readers
never observe a partial file. Floats are rounded to a fixed number of
significant digits to keep reruns byte-identical.
"""

from __future__ import annotations

import json
import logging
import math
import os
import tempfile
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd

from core.config import settings

logger = logging.getLogger(__name__)


def round_floats(value: Any, digits: int | None = None) -> Any:
    """Recursively convert numpy values and round floats; NaN/inf become None."""
    digits = digits or settings.JSON_SIGNIFICANT_DIGITS
    if isinstance(value, dict):
        return {str(key): round_floats(item, digits) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [round_floats(item, digits) for item in value]
    if isinstance(value, np.ndarray):
        return round_floats(value.tolist(), digits)
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if not math.isfinite(value):
            return None
        return float(f"{value:.{digits}g}")
    return value


def _atomic_write(path: Path, write) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    handle = tempfile.NamedTemporaryFile(
        "w", dir=path.parent, prefix=f".{path.name}.", suffix=".tmp", delete=False, encoding="utf-8", newline=""
    )
    try:
        with handle:
            write(handle)
        os.replace(handle.name, path)
    except BaseException:
        Path(handle.name).unlink(missing_ok=True)
        raise
    logger.debug("Wrote %s", path)
    return path


def write_json(path: str | Path, payload: dict) -> Path:
    text = json.dumps(round_floats(payload), indent=2, allow_nan=False) + "\n"
    return _atomic_write(Path(path), lambda handle: handle.write(text))


def write_csv(path: str | Path, frame: pd.DataFrame) -> Path:
    digits = settings.JSON_SIGNIFICANT_DIGITS
    return _atomic_write(
        Path(path),
        lambda handle: frame.to_csv(handle, index=False, float_format=f"%.{digits}g", lineterminator="\n"),
    )

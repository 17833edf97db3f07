"""Location of the bundled data files."""

from __future__ import annotations

import os
from pathlib import Path

ENV_VAR = "MODPI_DATA"


def data_dir(override: str | os.PathLike | None = None) -> Path:
    """Explicit override, else $MODPI_DATA, else the copy shipped with the package."""
    if override is not None:
        return Path(override)
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(__file__).resolve().parent / "data"


def data_file(name: str, override=None) -> Path:
    path = data_dir(override) / name
    if not path.is_file():
        raise FileNotFoundError(f"data file {path} not found (set --data or ${ENV_VAR})")
    return path

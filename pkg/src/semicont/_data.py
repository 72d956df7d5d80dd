"""Location of the shipped edge table and corpus."""

from __future__ import annotations

import os
from importlib import resources
from pathlib import Path

ENV_VAR = "SEMICONT_DATA_DIR"


def data_text(name: str) -> str:
    """Contents of a data file.

    A file of the same name under $SEMICONT_DATA_DIR wins over the shipped copy.
    """
    override = os.environ.get(ENV_VAR)
    if override and (Path(override) / name).is_file():
        return (Path(override) / name).read_text(encoding="utf-8")
    return resources.files("semicont").joinpath("data", name).read_text(encoding="utf-8")

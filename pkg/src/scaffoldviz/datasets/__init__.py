"""Bundled dataset fixtures. See README.md here for provenance."""

from __future__ import annotations

from pathlib import Path

_HERE = Path(__file__).resolve().parent


def iris_path() -> Path:
    return _HERE / "iris.csv"


def wbc_path() -> Path:
    return _HERE / "wbc.csv"


def wbc_project_path() -> Path:
    return _HERE / "wbc_project.json"

"""The bundled synthetic dataset (four seasons, twelve teams; not real NFL data)."""

from __future__ import annotations

from importlib import resources

from .stats_model import Dataset, parse_dataset


def fixture_text() -> str:
    return resources.files("qbsens").joinpath("data/fixture.csv").read_text(encoding="utf-8")


def load_fixture() -> Dataset:
    return parse_dataset(fixture_text())

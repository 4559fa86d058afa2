"""Bundled data assets: the Senegal window fixture and the report schema."""

from __future__ import annotations

import os
from datetime import date
from pathlib import Path

from ..timeseries import Dataset, parse_owid_csv

FIXTURE_FILENAME = "senegal_owid_2022-04-01_2023-04-30.csv"
SCHEMA_FILENAME = "report.schema.json"

FIXTURE_LOCATION = "Senegal"
FIXTURE_DATE_FROM = date(2022, 4, 1)
FIXTURE_DATE_TO = date(2023, 4, 30)

#: Environment variable overriding the bundled fixture path.
FIXTURE_ENV_VAR = "LOGIGROW_FIXTURE"


def fixture_path() -> Path:
    """Path of the bundled snapshot CSV, unless overridden by env var."""
    override = os.environ.get(FIXTURE_ENV_VAR)
    if override:
        return Path(override)
    return Path(__file__).parent / FIXTURE_FILENAME


def schema_path() -> Path:
    return Path(__file__).parent / SCHEMA_FILENAME


def load_fixture(
    location: str = FIXTURE_LOCATION,
    date_from: date | None = FIXTURE_DATE_FROM,
    date_to: date | None = FIXTURE_DATE_TO,
) -> Dataset:
    """Parse the bundled fixture down to a Dataset."""
    with open(fixture_path(), "rb") as fh:
        return parse_owid_csv(fh, location, date_from, date_to)

import csv
from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"


def load_table():
    rows = []
    with open(DATA / "invariants_6_33.csv", newline="") as fh:
        for row in csv.DictReader(fh):
            rows.append({k: (int(v) if v != "" else None) for k, v in row.items()})
    return rows


@pytest.fixture(scope="session")
def table():
    return load_table()

"""Shared fixtures: the bundled dataset, canonical simulation specs, helpers."""

from __future__ import annotations

import datetime as dt
from pathlib import Path

import numpy as np
import pytest

import sleepvar as sv

REPO = Path(__file__).resolve().parent.parent
DATA_DIR = REPO / "data"
GOLDEN_DIR = Path(__file__).resolve().parent / "golden"


def frames_equal(a: sv.SeriesFrame, b: sv.SeriesFrame) -> bool:
    return (
        a.start_date == b.start_date
        and a.names == b.names
        and np.array_equal(a.values, b.values, equal_nan=True)
    )


def make_frame(columns: dict[str, list], start=dt.date(2019, 2, 1)) -> sv.SeriesFrame:
    names = tuple(columns)
    vals = np.array(
        [[np.nan if v is None else float(v) for v in columns[n]] for n in names]
    ).T
    return sv.SeriesFrame(start, names, vals)


# A stable two-variable VAR(2) used across estimator/inference/irf tests.
VAR2_SPEC = sv.VarProcessSpec(
    var_names=("x", "y"),
    p=2,
    intercept=np.array([0.4, -0.1]),
    coef=np.array([[[0.5, 0.1], [0.0, 0.4]], [[0.25, 0.0], [0.1, 0.2]]]),
    innovation_cov=np.array([[1.0, 0.3], [0.3, 2.0]]),
)


@pytest.fixture(scope="session")
def var2_spec() -> sv.VarProcessSpec:
    return VAR2_SPEC


@pytest.fixture(scope="session")
def dataset_frame() -> sv.SeriesFrame:
    """Bundled synthetic dataset: ingested, merged, imputed."""
    merged = sv.merge([
        sv.ingest_sleep(DATA_DIR / "sleep.csv"),
        sv.ingest_mood(DATA_DIR / "mood.csv"),
    ])
    return sv.impute(merged)


@pytest.fixture(scope="session")
def dataset_fit(dataset_frame) -> sv.VarFit:
    return sv.fit_var(dataset_frame, 2)

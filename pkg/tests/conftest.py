import sys
from datetime import date
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))  # make `oracles` importable

from xdalign.similarity import SimilarityMatrix

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir():
    return FIXTURES


def make_matrix(scores, day=None):
    """SimilarityMatrix from a nested list, ids d1..dn / f1..fm."""
    arr = np.asarray(scores, dtype=np.float64)
    return SimilarityMatrix(
        row_ids=tuple(f"d{i + 1}" for i in range(arr.shape[0])),
        col_ids=tuple(f"f{j + 1}" for j in range(arr.shape[1])),
        scores=arr,
        date=day or date(2021, 11, 13),
    )


def random_unit_rows(rng, n, dim):
    """n random unit vectors (float32 storage, norms within matrix tolerance)."""
    rows = rng.standard_normal((n, dim))
    rows /= np.linalg.norm(rows, axis=1)[:, None]
    rows = rows.astype(np.float32)
    rows = rows.astype(np.float64)
    rows /= np.linalg.norm(rows, axis=1)[:, None]
    return rows.astype(np.float32)

"""Scaled cosine similarity and per-date similarity matrices.

Scores are cosine similarity * 100, in [-100, 100]. Comparisons are
restricted to documents published on the same calendar date; each date
bucket yields one dense matrix (side A rows, side B columns).
"""

from dataclasses import dataclass
from datetime import date

import numpy as np


class SimilarityError(ValueError):
    pass


def cosine_score(u, v):
    """100 * cos(u, v). Symmetric, invariant under positive scaling."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape or u.ndim != 1:
        raise SimilarityError(f"dimension mismatch: {u.shape} vs {v.shape}")
    nu = np.linalg.norm(u)
    nv = np.linalg.norm(v)
    if nu == 0.0 or nv == 0.0:
        raise SimilarityError("cosine undefined for zero vector")
    return float(np.clip(100.0 * np.dot(u, v) / (nu * nv), -100.0, 100.0))


@dataclass
class DateBucket:
    """Same-date document ids, split by corpus side."""

    date: date
    a_ids: list
    b_ids: list

    @property
    def alignable(self):
        return bool(self.a_ids) and bool(self.b_ids)


@dataclass
class SimilarityMatrix:
    """Dense score matrix between side-A rows and side-B columns on one date."""

    row_ids: tuple
    col_ids: tuple
    scores: np.ndarray  # float64, shape (len(row_ids), len(col_ids))
    date: date = None

    def __post_init__(self):
        if self.scores.shape != (len(self.row_ids), len(self.col_ids)):
            raise SimilarityError(
                f"scores shape {self.scores.shape} does not match id lists "
                f"({len(self.row_ids)}, {len(self.col_ids)})"
            )


def bucket_by_date(docs, langs):
    """Partition validated documents into per-date buckets (A side = langs[0]).

    Buckets with an empty side are retained; callers check `alignable`.
    """
    lang_a, lang_b = langs
    buckets = {}
    for doc in docs:
        bucket = buckets.get(doc.publish_date)
        if bucket is None:
            bucket = buckets[doc.publish_date] = DateBucket(doc.publish_date, [], [])
        if doc.lang == lang_a:
            bucket.a_ids.append(doc.id)
        else:
            bucket.b_ids.append(doc.id)
    return dict(sorted(buckets.items()))


def similarity_matrix(bucket, embeddings):
    """Score matrix for one date bucket from unit-normalized embeddings.

    Rows follow bucket.a_ids, columns bucket.b_ids, in ingestion order.
    """
    index = embeddings.as_index()
    for doc_id in list(bucket.a_ids) + list(bucket.b_ids):
        if doc_id not in index:
            raise SimilarityError(f"no embedding vector for document {doc_id!r}")
    a = np.stack([index[i] for i in bucket.a_ids]).astype(np.float64)
    b = np.stack([index[i] for i in bucket.b_ids]).astype(np.float64)
    # rows are unit vectors, so cosine is a plain dot product
    scores = np.clip(100.0 * (a @ b.T), -100.0, 100.0)
    return SimilarityMatrix(
        row_ids=tuple(bucket.a_ids),
        col_ids=tuple(bucket.b_ids),
        scores=scores,
        date=bucket.date,
    )

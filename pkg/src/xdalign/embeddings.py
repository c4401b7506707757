"""Embedding provider: produce, persist and load unit-normalized vectors.

Two modes: "file" looks vectors up in a precomputed vector store keyed by
the SHA-256 digest of the text, "remote" POSTs batches to an embedding
service. All vectors are L2-normalized once at ingestion so downstream
cosine reduces to a dot product.

Vector file format (little-endian): magic "XDEMB1\\0", uint32 row count,
uint32 dim, rows as float32, then ids as uint16-length-prefixed UTF-8.
"""

import hashlib
import os
import struct
from dataclasses import dataclass

import numpy as np

MAGIC = b"XDEMB1\x00"


class ProviderError(RuntimeError):
    """Remote embedding service failed or returned an invalid response."""


class VectorFormatError(ValueError):
    """A vector file is corrupt, truncated, or has the wrong magic."""


class NormalizationError(ValueError):
    """A vector could not be normalized (zero norm)."""


@dataclass(frozen=True)
class EmbeddingMatrix:
    """Id-indexed unit-normalized float32 vectors, one row per id."""

    ids: tuple
    vectors: np.ndarray  # shape (len(ids), dim), float32, unit rows

    def __post_init__(self):
        if self.vectors.ndim != 2:
            raise ValueError("vectors must be a 2-D array")
        if len(self.ids) != self.vectors.shape[0]:
            raise ValueError(
                f"{len(self.ids)} ids but {self.vectors.shape[0]} vector rows"
            )
        norms = np.linalg.norm(self.vectors.astype(np.float64), axis=1)
        if len(norms) and np.max(np.abs(norms - 1.0)) > 1e-6:
            worst = int(np.argmax(np.abs(norms - 1.0)))
            raise NormalizationError(
                f"row {worst} (id {self.ids[worst]!r}) has norm {norms[worst]:.8f}"
            )

    @property
    def dim(self):
        return self.vectors.shape[1]

    def row(self, text_id):
        try:
            idx = self.ids.index(text_id)
        except ValueError:
            raise KeyError(text_id) from None
        return self.vectors[idx]

    def as_index(self):
        """Dict view id -> row, for random access."""
        return {i: self.vectors[k] for k, i in enumerate(self.ids)}


@dataclass
class ProviderConfig:
    """How to obtain embeddings: precomputed file or remote HTTP service."""

    mode: str = "file"  # "file" | "remote"
    vector_file: str = ""
    endpoint: str = ""
    model_name: str = ""
    batch_size: int = 64
    auth_token_env: str = ""

    def __post_init__(self):
        if self.mode not in ("file", "remote"):
            raise ValueError(f"unknown provider mode {self.mode!r}")
        if self.mode == "remote" and not self.endpoint:
            raise ValueError("remote mode requires an endpoint")
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")


def build_alignment_text(doc):
    """Title and lead joined by a single space; one empty side degrades to the other."""
    title = doc.title.strip()
    lead = doc.lead.strip()
    if not title and not lead:
        raise ValueError(f"document {doc.id}: both title and lead empty, cannot align")
    if not title:
        return lead
    if not lead:
        return title
    return f"{title} {lead}"


def text_key(text):
    """Stable store key for a text: hex SHA-256 of its UTF-8 bytes."""
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def normalize_rows(rows):
    """L2-normalize rows (float64 math, float32 storage); zero rows are an error."""
    arr = np.asarray(rows, dtype=np.float64)
    if arr.ndim != 2:
        raise ValueError("expected a 2-D array of vectors")
    norms = np.linalg.norm(arr, axis=1)
    zero = np.where(norms == 0.0)[0]
    if len(zero):
        raise NormalizationError(f"zero vector at index {int(zero[0])}")
    return (arr / norms[:, None]).astype(np.float32)


def embed_texts(texts, config, ids=None):
    """Embed texts through the configured provider, preserving input order.

    `ids` labels the returned rows; defaults to each text's store key.
    """
    texts = list(texts)
    if not texts:
        raise ValueError("no texts to embed")
    if ids is None:
        ids = [text_key(t) for t in texts]
    elif len(ids) != len(texts):
        raise ValueError("ids and texts length mismatch")

    if config.mode == "file":
        rows = _lookup_file(texts, config)
    else:
        rows = _embed_remote(texts, config)
    return EmbeddingMatrix(ids=tuple(ids), vectors=normalize_rows(rows))


_STORE_CACHE = {}


def _store_index(path):
    key = (path, os.path.getmtime(path))
    if key not in _STORE_CACHE:
        _STORE_CACHE.clear()  # one store at a time is the common case
        _STORE_CACHE[key] = load_matrix(path).as_index()
    return _STORE_CACHE[key]


def _lookup_file(texts, config):
    if not config.vector_file:
        raise ValueError("file mode requires vector_file")
    index = _store_index(config.vector_file)
    rows = []
    for i, text in enumerate(texts):
        key = text_key(text)
        if key not in index:
            raise ProviderError(
                f"text {i} not found in vector store {config.vector_file}"
            )
        rows.append(index[key])
    return np.stack(rows)


def _embed_remote(texts, config):
    import requests

    headers = {}
    if config.auth_token_env:
        token = os.environ.get(config.auth_token_env, "")
        if token:
            headers["Authorization"] = f"Bearer {token}"

    rows = []
    dim = None
    for start in range(0, len(texts), config.batch_size):
        batch = texts[start : start + config.batch_size]
        resp = requests.post(
            config.endpoint.rstrip("/") + "/embed",
            json={"model": config.model_name, "texts": batch},
            headers=headers,
            timeout=120,
        )
        if not resp.ok:
            raise ProviderError(
                f"embedding service returned {resp.status_code}: {resp.text[:200]}"
            )
        vectors = resp.json().get("vectors")
        if vectors is None or len(vectors) != len(batch):
            raise ProviderError(
                f"expected {len(batch)} vectors, got "
                f"{0 if vectors is None else len(vectors)}"
            )
        for vec in vectors:
            if dim is None:
                dim = len(vec)
            elif len(vec) != dim:
                raise ProviderError(
                    f"dimension mismatch across batches: {len(vec)} != {dim}"
                )
            rows.append(vec)
    return np.asarray(rows, dtype=np.float64)


def save_matrix(matrix, path):
    """Write an EmbeddingMatrix in the binary vector file format."""
    n, dim = matrix.vectors.shape
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<II", n, dim))
        fh.write(np.ascontiguousarray(matrix.vectors, dtype="<f4").tobytes())
        for text_id in matrix.ids:
            raw = text_id.encode("utf-8")
            fh.write(struct.pack("<H", len(raw)))
            fh.write(raw)


def load_matrix(path):
    """Read a vector file back into an EmbeddingMatrix (bit-exact round trip)."""
    with open(path, "rb") as fh:
        data = fh.read()
    if data[: len(MAGIC)] != MAGIC:
        raise VectorFormatError(f"{path}: bad magic bytes")
    off = len(MAGIC)
    if len(data) < off + 8:
        raise VectorFormatError(f"{path}: truncated header")
    n, dim = struct.unpack_from("<II", data, off)
    off += 8
    nbytes = n * dim * 4
    if len(data) < off + nbytes:
        raise VectorFormatError(
            f"{path}: declares {n} rows of dim {dim} but vector data is truncated"
        )
    vectors = np.frombuffer(data[off : off + nbytes], dtype="<f4").reshape(n, dim)
    off += nbytes
    ids = []
    for _ in range(n):
        if len(data) < off + 2:
            raise VectorFormatError(f"{path}: truncated id list")
        (length,) = struct.unpack_from("<H", data, off)
        off += 2
        if len(data) < off + length:
            raise VectorFormatError(f"{path}: truncated id entry")
        ids.append(data[off : off + length].decode("utf-8"))
        off += length
    return EmbeddingMatrix(ids=tuple(ids), vectors=vectors.copy())

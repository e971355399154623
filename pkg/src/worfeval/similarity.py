"""Label similarity providers and the thresholded similarity matrix.

Every provider maps a pair of subtask labels to a score in ``[0, 1]``.
The offline providers (``exact``, ``token_cosine`` and the two precomputed
file formats) are deterministic; ``embedding_service`` reaches a remote
sentence encoder over HTTP.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
import time
import urllib.error
import urllib.request
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import ProviderError, ServiceError

__all__ = [
    "DEFAULT_BETA",
    "PROVIDERS",
    "ENDPOINT_ENV",
    "SimilarityConfig",
    "SimilarityMatrix",
    "ExactProvider",
    "TokenCosineProvider",
    "PrecomputedMatrixProvider",
    "EmbeddingVectorsProvider",
    "EmbeddingServiceClient",
    "EmbeddingServiceProvider",
    "similarity",
    "build_similarity_matrix",
    "resolve_endpoint",
    "make_provider",
]

DEFAULT_BETA = 0.6
PROVIDERS = ("exact", "token_cosine", "precomputed_matrix", "embedding_vectors", "embedding_service")
ENDPOINT_ENV = "WORFEVAL_EMBED_ENDPOINT"


@dataclass(frozen=True)
class SimilarityConfig:
    beta: float = DEFAULT_BETA
    provider: str = "exact"

    def __post_init__(self) -> None:
        if not 0.0 <= self.beta <= 1.0:
            raise ValueError(f"beta must lie in [0, 1], got {self.beta}")
        if self.provider not in PROVIDERS:
            raise ValueError(f"unknown provider {self.provider!r}")


def _clip(x: float) -> float:
    return min(1.0, max(0.0, float(x)))


class ExactProvider:
    name = "exact"

    def similarity(self, a: str, b: str) -> float:
        return 1.0 if a == b else 0.0

    def matrix(self, gold: Sequence[str], pred: Sequence[str], sample_id: Optional[str] = None) -> np.ndarray:
        return np.array([[self.similarity(g, p) for p in pred] for g in gold], dtype=float).reshape(
            len(gold), len(pred)
        )


class TokenCosineProvider:
    """Cosine between binary bags of lowercased whitespace tokens."""

    name = "token_cosine"

    @staticmethod
    def tokens(text: str) -> frozenset[str]:
        return frozenset(text.lower().split())

    def similarity(self, a: str, b: str) -> float:
        ta, tb = self.tokens(a), self.tokens(b)
        if not ta or not tb:
            return 0.0
        return _clip(len(ta & tb) / math.sqrt(len(ta) * len(tb)))

    def matrix(self, gold: Sequence[str], pred: Sequence[str], sample_id: Optional[str] = None) -> np.ndarray:
        return np.array([[self.similarity(g, p) for p in pred] for g in gold], dtype=float).reshape(
            len(gold), len(pred)
        )


def _read_jsonl(path: str | os.PathLike) -> list[dict]:
    with open(path, encoding="utf-8") as fh:
        return [json.loads(line) for line in fh if line.strip()]


class PrecomputedMatrixProvider:
    """Similarity matrices keyed by sample id."""

    name = "precomputed_matrix"

    def __init__(self, matrices: Mapping[str, Sequence[Sequence[float]]]) -> None:
        self.matrices = {k: np.asarray(v, dtype=float) for k, v in matrices.items()}

    @classmethod
    def from_file(cls, path: str | os.PathLike) -> PrecomputedMatrixProvider:
        try:
            return cls({r["id"]: r["matrix"] for r in _read_jsonl(path)})
        except (KeyError, TypeError, json.JSONDecodeError) as exc:
            raise ProviderError(f"malformed similarity file {path}: {exc}") from exc

    def similarity(self, a: str, b: str) -> float:
        raise ProviderError("precomputed matrices are addressed by sample id, not by label pair")

    def matrix(self, gold: Sequence[str], pred: Sequence[str], sample_id: Optional[str] = None) -> np.ndarray:
        if sample_id not in self.matrices:
            raise ProviderError(f"no precomputed similarity matrix for sample {sample_id!r}")
        m = self.matrices[sample_id]
        if len(pred) == 0:
            return np.zeros((len(gold), 0))
        if m.shape != (len(gold), len(pred)):
            raise ProviderError(
                f"matrix for {sample_id!r} has shape {m.shape}, expected {(len(gold), len(pred))}"
            )
        return np.clip(m, 0.0, 1.0)


class _VectorProvider:
    def vectors(self, texts: Sequence[str]) -> np.ndarray:
        raise NotImplementedError

    def similarity(self, a: str, b: str) -> float:
        va, vb = self.vectors([a, b])
        return _clip(np.dot(va, vb))

    def matrix(self, gold: Sequence[str], pred: Sequence[str], sample_id: Optional[str] = None) -> np.ndarray:
        if not gold or not pred:
            return np.zeros((len(gold), len(pred)))
        vecs = self.vectors(list(gold) + list(pred))
        return np.clip(vecs[: len(gold)] @ vecs[len(gold) :].T, 0.0, 1.0)


def _unit_rows(vectors: np.ndarray, where: str) -> np.ndarray:
    norms = np.linalg.norm(vectors, axis=1, keepdims=True)
    if np.any(norms == 0) or not np.all(np.isfinite(vectors)):
        raise ServiceError(f"{where}: zero-length or non-finite vector")
    return vectors / norms


class EmbeddingVectorsProvider(_VectorProvider):
    """Cosine over embeddings looked up by exact label text."""

    name = "embedding_vectors"

    def __init__(self, table: Mapping[str, Sequence[float]]) -> None:
        self.table: dict[str, np.ndarray] = {}
        dim = None
        for label, vec in table.items():
            arr = np.asarray(vec, dtype=float)
            if arr.ndim != 1 or (dim is not None and arr.shape[0] != dim):
                raise ProviderError(f"embedding for {label!r} has inconsistent dimension")
            dim = arr.shape[0]
            norm = np.linalg.norm(arr)
            if norm == 0:
                raise ProviderError(f"embedding for {label!r} is the zero vector")
            self.table[label] = arr / norm

    @classmethod
    def from_file(cls, path: str | os.PathLike) -> EmbeddingVectorsProvider:
        try:
            return cls({r["label"]: r["vector"] for r in _read_jsonl(path)})
        except (KeyError, TypeError, json.JSONDecodeError) as exc:
            raise ProviderError(f"malformed embedding file {path}: {exc}") from exc

    def vectors(self, texts: Sequence[str]) -> np.ndarray:
        missing = [t for t in texts if t not in self.table]
        if missing:
            raise ProviderError(f"no precomputed embedding for {missing[0]!r}")
        return np.stack([self.table[t] for t in texts])


def resolve_endpoint(flag_value: Optional[str] = None) -> Optional[str]:
    """The environment variable takes precedence over the command-line flag."""
    return os.environ.get(ENDPOINT_ENV) or flag_value


class EmbeddingServiceClient:
    """JSON-over-HTTP client for a sentence-embedding service.

    Request body ``{"texts": [...]}``; expected response
    ``{"vectors": [[...], ...]}`` with one equal-length vector per text.
    Vectors are unit-normalized and cached by text hash.  One instance is
    not safe to share between threads, so ``supports_concurrency`` is
    ``False`` and the harness builds a client per worker.
    """

    supports_concurrency = False

    def __init__(
        self,
        endpoint: str,
        *,
        timeout: float = 30.0,
        retries: int = 2,
        backoff: float = 0.5,
        cache: bool = True,
    ) -> None:
        if not endpoint:
            raise ServiceError("no embedding endpoint configured")
        self.endpoint = endpoint
        self.timeout = timeout
        self.retries = retries
        self.backoff = backoff
        self.cache_enabled = cache
        self._cache: dict[str, np.ndarray] = {}
        self._dim: Optional[int] = None

    @staticmethod
    def _key(text: str) -> str:
        return hashlib.sha256(text.encode("utf-8")).hexdigest()

    def _post(self, texts: list[str]) -> list:
        body = json.dumps({"texts": texts}).encode("utf-8")
        last: Exception | None = None
        for attempt in range(self.retries + 1):
            req = urllib.request.Request(
                self.endpoint, data=body, headers={"Content-Type": "application/json"}, method="POST"
            )
            try:
                with urllib.request.urlopen(req, timeout=self.timeout) as resp:
                    payload = json.loads(resp.read().decode("utf-8"))
                break
            except urllib.error.HTTPError as exc:
                last = ServiceError(f"embedding service returned HTTP {exc.code}")
                if exc.code < 500:
                    raise last from exc
            except (urllib.error.URLError, TimeoutError, OSError) as exc:
                last = ServiceError(f"embedding service unreachable: {exc}")
            except json.JSONDecodeError as exc:
                raise ServiceError("embedding service returned invalid JSON") from exc
            if attempt < self.retries:
                time.sleep(self.backoff * (2**attempt))
        else:
            raise last
        vectors = payload.get("vectors") if isinstance(payload, dict) else None
        if not isinstance(vectors, list) or len(vectors) != len(texts):
            raise ServiceError("embedding service response has the wrong number of vectors")
        return vectors

    def embed_batch(self, texts: Sequence[str]) -> list[np.ndarray]:
        texts = list(texts)
        if not texts:
            return []
        if not all(isinstance(t, str) and t for t in texts):
            raise ServiceError("texts must be non-empty strings")
        keys = [self._key(t) for t in texts]
        known = self._cache if self.cache_enabled else {}
        todo: dict[str, str] = {}
        for k, t in zip(keys, texts):
            if k not in known and k not in todo:
                todo[k] = t
        fetched: dict[str, np.ndarray] = {}
        if todo:
            raw = self._post(list(todo.values()))
            try:
                arr = np.asarray(raw, dtype=float)
            except (TypeError, ValueError) as exc:
                raise ServiceError("embedding vectors have mismatched dimensions") from exc
            if arr.ndim != 2 or arr.shape[1] == 0:
                raise ServiceError("embedding vectors have mismatched dimensions")
            if self._dim is not None and arr.shape[1] != self._dim:
                raise ServiceError(f"embedding dimension changed from {self._dim} to {arr.shape[1]}")
            self._dim = arr.shape[1]
            arr = _unit_rows(arr, "embedding service")
            fetched = dict(zip(todo, arr))
            if self.cache_enabled:
                self._cache.update(fetched)
        return [known[k] if k in known else fetched[k] for k in keys]


class EmbeddingServiceProvider(_VectorProvider):
    name = "embedding_service"

    def __init__(self, client: EmbeddingServiceClient) -> None:
        self.client = client

    def vectors(self, texts: Sequence[str]) -> np.ndarray:
        return np.stack(self.client.embed_batch(texts))


def similarity(a: str, b: str, provider) -> float:
    return provider.similarity(a, b)


@dataclass(frozen=True, eq=False)
class SimilarityMatrix:
    """Gold-by-predicted scores with sub-threshold entries zeroed.

    ``gold_ids``/``pred_ids`` name the node behind each row/column; they
    default to 1-based positions.
    """

    values: np.ndarray
    beta: float = DEFAULT_BETA
    gold_ids: tuple = field(default=())
    pred_ids: tuple = field(default=())

    def __post_init__(self) -> None:
        vals = np.array(self.values, dtype=float)
        if vals.ndim != 2:
            if vals.size:
                raise ValueError("similarity matrix must be two-dimensional")
            vals = vals.reshape(len(self.gold_ids), 0)
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        rows, cols = vals.shape
        if not self.gold_ids:
            object.__setattr__(self, "gold_ids", tuple(range(1, rows + 1)))
        if not self.pred_ids:
            object.__setattr__(self, "pred_ids", tuple(range(1, cols + 1)))
        if len(self.gold_ids) != rows or len(self.pred_ids) != cols:
            raise ValueError("node id lists do not match the matrix shape")

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape


def build_similarity_matrix(
    gold_labels: Sequence[str],
    pred_labels: Sequence[str],
    provider=None,
    beta: float = DEFAULT_BETA,
    *,
    sample_id: Optional[str] = None,
    gold_ids: Sequence = (),
    pred_ids: Sequence = (),
) -> SimilarityMatrix:
    """Score every gold/predicted label pair and zero entries below ``beta``."""
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"beta must lie in [0, 1], got {beta}")
    provider = provider or ExactProvider()
    raw = np.asarray(provider.matrix(list(gold_labels), list(pred_labels), sample_id), dtype=float)
    raw = raw.reshape(len(gold_labels), len(pred_labels))
    thresholded = np.where(raw >= beta, raw, 0.0)
    return SimilarityMatrix(
        thresholded,
        beta,
        tuple(gold_ids) or tuple(range(1, len(gold_labels) + 1)),
        tuple(pred_ids) or tuple(range(1, len(pred_labels) + 1)),
    )


def make_provider(
    name: str,
    *,
    sim_file: Optional[str] = None,
    embed_file: Optional[str] = None,
    endpoint: Optional[str] = None,
    timeout: float = 30.0,
    retries: int = 2,
):
    """Instantiate a provider by its configuration name."""
    if name == "exact":
        return ExactProvider()
    if name == "token_cosine":
        return TokenCosineProvider()
    if name == "precomputed_matrix":
        if not sim_file:
            raise ProviderError("precomputed_matrix needs a similarity file")
        return PrecomputedMatrixProvider.from_file(sim_file)
    if name == "embedding_vectors":
        if not embed_file:
            raise ProviderError("embedding_vectors needs an embedding file")
        return EmbeddingVectorsProvider.from_file(embed_file)
    if name == "embedding_service":
        url = resolve_endpoint(endpoint)
        if not url:
            raise ProviderError(f"set --embed-endpoint or {ENDPOINT_ENV}")
        return EmbeddingServiceProvider(EmbeddingServiceClient(url, timeout=timeout, retries=retries))
    raise ProviderError(f"unknown provider {name!r}")

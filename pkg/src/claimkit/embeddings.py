"""Text embedding providers.

Semantic-similarity scoring only needs a deterministic text-to-vector
function; which encoder supplies it is a deployment choice. Two
providers ship here: a hashed bag-of-words fallback (no model, fully
deterministic, adequate for tests and smoke runs) and an HTTP client
for any service exposing a batch-embedding endpoint.
"""
from __future__ import annotations

import threading
from abc import ABC, abstractmethod

import numpy as np

from .textutil import tokenize

FALLBACK_DIMENSION = 1024

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_U64 = 0xFFFFFFFFFFFFFFFF


def fnv1a_64(data: bytes) -> int:
    """64-bit FNV-1a hash."""
    h = _FNV_OFFSET
    for byte in data:
        h ^= byte
        h = (h * _FNV_PRIME) & _U64
    return h


class EmbeddingError(RuntimeError):
    """Raised when a provider cannot produce a usable vector."""


class EmbeddingProvider(ABC):
    """Deterministic text-to-vector function with a fixed dimension."""

    name: str

    @property
    @abstractmethod
    def dimension(self) -> int: ...

    @abstractmethod
    def embed(self, text: str) -> np.ndarray:
        """Embed one text as a 1-D float64 vector of ``dimension`` entries."""


class HashedBowEmbedder(EmbeddingProvider):
    """Hashed bag-of-words fallback embedder.

    Tokens are case-folded with edge punctuation stripped, hashed with
    64-bit FNV-1a into a fixed-size count vector, then L2-normalized.
    Texts sharing no token map to orthogonal vectors, so cosine scores
    stay interpretable. Byte-stable across runs and platforms.
    """

    name = "fallback"

    def __init__(self, dimension: int = FALLBACK_DIMENSION) -> None:
        if dimension < 1:
            raise ValueError("dimension must be positive")
        self._dimension = dimension

    @property
    def dimension(self) -> int:
        return self._dimension

    def embed(self, text: str) -> np.ndarray:
        tokens = tokenize(text)
        if not tokens and text.strip():
            # All-punctuation input still gets a nonzero vector.
            tokens = [text.strip().casefold()]
        vec = np.zeros(self._dimension, dtype=np.float64)
        for token in tokens:
            idx = fnv1a_64(token.encode("utf-8")) % self._dimension
            vec[idx] += 1.0
        norm = np.linalg.norm(vec)
        if norm > 0:
            vec /= norm
        return vec


class HttpEmbedder(EmbeddingProvider):
    """Client for a batch-embedding HTTP service.

    Wire format: POST ``{"texts": ["...", ...]}`` to the configured URL,
    expect ``{"embeddings": [[...], ...]}`` back. The vector dimension
    is learned from the first response and enforced afterwards. Calls
    are serialized through a lock, so one instance is safe to share
    across threads.
    """

    name = "http"

    def __init__(self, url: str, timeout: float = 30.0, retries: int = 2) -> None:
        self.url = url
        self.timeout = timeout
        self.retries = retries
        self._dimension: int | None = None
        self._lock = threading.Lock()
        self._session = None

    @property
    def dimension(self) -> int:
        if self._dimension is None:
            raise EmbeddingError("dimension unknown until the first embed call")
        return self._dimension

    def _post(self, texts: list[str]) -> list[list[float]]:
        import requests

        if self._session is None:
            self._session = requests.Session()
        last_error: Exception | None = None
        for _ in range(self.retries + 1):
            try:
                resp = self._session.post(
                    self.url, json={"texts": texts}, timeout=self.timeout
                )
                resp.raise_for_status()
                payload = resp.json()
                embeddings = payload["embeddings"]
                if len(embeddings) != len(texts):
                    raise EmbeddingError(
                        f"service returned {len(embeddings)} vectors for "
                        f"{len(texts)} texts"
                    )
                return embeddings
            except EmbeddingError:
                raise
            except Exception as exc:  # noqa: BLE001 - network/shape errors retry
                last_error = exc
        raise EmbeddingError(f"embedding request failed: {last_error}") from last_error

    def embed(self, text: str) -> np.ndarray:
        return self.embed_batch([text])[0]

    def embed_batch(self, texts: list[str]) -> list[np.ndarray]:
        with self._lock:
            rows = self._post(texts)
            out = []
            for row in rows:
                vec = np.asarray(row, dtype=np.float64)
                if vec.ndim != 1:
                    raise EmbeddingError("embedding rows must be 1-D")
                if self._dimension is None:
                    self._dimension = int(vec.shape[0])
                elif vec.shape[0] != self._dimension:
                    raise EmbeddingError(
                        f"dimension changed from {self._dimension} to {vec.shape[0]}"
                    )
                out.append(vec)
            return out


def make_provider(spec: str) -> EmbeddingProvider:
    """Build a provider from a CLI-style spec: ``fallback`` or ``http:<url>``.

    A bare URL ("http://host/embed") is also accepted.
    """
    if spec == "fallback":
        return HashedBowEmbedder()
    if spec.startswith(("http://", "https://")):
        return HttpEmbedder(spec)
    if spec.startswith("http:"):
        url = spec[len("http:"):]
        if not url:
            raise ValueError("http embedder needs a URL: http:<url>")
        return HttpEmbedder(url)
    raise ValueError(f"unknown embedder spec: {spec!r} (use fallback or http:<url>)")

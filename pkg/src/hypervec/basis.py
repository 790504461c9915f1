"""Basis-hypervector sets, scalar embeddings, random projection and item memory."""
from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from typing import Dict, Hashable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .core import (
    DEFAULT_DIM,
    DTYPE,
    DimensionMismatchError,
    SeedLike,
    ZeroNormError,
    as_hv,
    cosine_matrix,
    is_bipolar,
    make_rng,
    quantize,
    random_bipolar,
)

RANDOM = "random"
LEVEL = "level"
CIRCULAR = "circular"
KINDS = (RANDOM, LEVEL, CIRCULAR)


@dataclass(frozen=True)
class BasisSet:
    """``m`` bipolar hypervectors stored as the rows of an ``(m, d)`` array."""

    vectors: np.ndarray
    kind: str = RANDOM

    def __post_init__(self):
        if self.vectors.ndim != 2 or self.vectors.shape[0] < 1:
            raise ValueError("a basis set needs at least one vector")
        if self.kind not in KINDS:
            raise ValueError(f"unknown basis kind {self.kind!r}")
        self.vectors.setflags(write=False)

    def __len__(self) -> int:
        return self.vectors.shape[0]

    def __getitem__(self, index):
        return self.vectors[index]

    def __iter__(self) -> Iterator[np.ndarray]:
        return iter(self.vectors)

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    def similarity_matrix(self) -> np.ndarray:
        """Pairwise cosine similarities, shape ``(m, m)``."""
        return cosine_matrix(self.vectors, self.vectors)


def _check_counts(m: int, d: int) -> None:
    if m < 1:
        raise ValueError(f"number of vectors must be positive, got {m}")
    if d < 1:
        raise ValueError(f"dimension must be positive, got {d}")


def random_hv(m: int, d: int = DEFAULT_DIM, seed: SeedLike = None) -> BasisSet:
    """``m`` independent uniformly random bipolar hypervectors."""
    _check_counts(m, d)
    return BasisSet(random_bipolar((m, d), make_rng(seed)), RANDOM)


def level_hv(m: int, d: int = DEFAULT_DIM, seed: SeedLike = None) -> BasisSet:
    """Linearly correlated hypervectors interpolating between two random ends.

    The first and last members are random. A random permutation of the
    coordinates is cut into ``m - 1`` near-equal chunks (earlier chunks take
    the remainder) and each step copies one more chunk from the last member,
    so the similarity of members ``i`` and ``j`` is about
    ``1 - |i - j| / (m - 1)``.
    """
    _check_counts(m, d)
    if m < 2:
        raise ValueError(f"level hypervectors need m >= 2, got {m}")
    rng = make_rng(seed)
    first = random_bipolar(d, rng)
    last = random_bipolar(d, rng)
    chunks = np.array_split(rng.permutation(d), m - 1)

    out = np.empty((m, d), dtype=DTYPE)
    current = first.copy()
    out[0] = current
    for i, chunk in enumerate(chunks, start=1):
        current[chunk] = last[chunk]
        out[i] = current
    return BasisSet(out, LEVEL)


def _circular_states(start: np.ndarray, chunks: Sequence[np.ndarray]) -> Iterator[np.ndarray]:
    # Forward pass flips every chunk once, backward pass flips each back:
    # 2 * len(chunks) steps, the last of which lands on ``start`` again.
    current = start.copy()
    yield current.copy()
    for _ in range(2):
        for chunk in chunks:
            current[chunk] = -current[chunk]
            yield current.copy()


def circular_hv(m: int, d: int = DEFAULT_DIM, seed: SeedLike = None) -> BasisSet:
    """Hypervectors on a ring: similarity falls linearly with cyclic distance.

    Half of the coordinates are split into ``m / 2`` chunks. Flipping the
    chunks one at a time walks to the opposite (orthogonal) point of the ring;
    flipping them back in the same order walks home. ``m`` must be even.
    """
    _check_counts(m, d)
    if m < 2 or m % 2:
        raise ValueError(
            f"circular hypervectors need an even m >= 2, got {m}: the ring is "
            "built from m/2 forward and m/2 backward steps"
        )
    rng = make_rng(seed)
    start = random_bipolar(d, rng)
    flipped = rng.permutation(d)[: d // 2]
    chunks = np.array_split(flipped, m // 2)
    states = list(_circular_states(start, chunks))
    return BasisSet(np.stack(states[:m]), CIRCULAR)


def value_to_index(x, low: float, high: float, m: int):
    """Map values in ``[low, high]`` onto ``m`` equal-width bins.

    Values outside the interval clamp to the first or last bin; ``high`` itself
    lands in the last bin.  Scalars give an ``int``, arrays an integer array.
    """
    if not low < high:
        raise ValueError(f"need low < high, got {low} and {high}")
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    scaled = np.floor((np.asarray(x, dtype=np.float64) - low) / (high - low) * m)
    index = np.clip(scaled, 0, m - 1).astype(np.int64)
    if index.ndim == 0:
        return int(index)
    return index


class LevelEmbedding:
    """Map real values in ``[low, high]`` to level hypervectors."""

    def __init__(self, m: int, d: int = DEFAULT_DIM, low: float = 0.0, high: float = 1.0,
                 seed: SeedLike = None):
        if not low < high:
            raise ValueError(f"need low < high, got {low} and {high}")
        self.basis = level_hv(m, d, seed)
        self.low = float(low)
        self.high = float(high)

    def index(self, x):
        return value_to_index(x, self.low, self.high, len(self.basis))

    def __call__(self, x) -> np.ndarray:
        return self.basis[self.index(x)]


class CircularEmbedding:
    """Map angles (or any periodic quantity) to circular hypervectors.

    Member ``k`` represents the value ``k * period / m``; values are rounded to
    the nearest member and one full period wraps back to member 0.
    """

    def __init__(self, m: int, d: int = DEFAULT_DIM, period: float = 2 * math.pi,
                 seed: SeedLike = None):
        if period <= 0:
            raise ValueError(f"period must be positive, got {period}")
        self.basis = circular_hv(m, d, seed)
        self.period = float(period)

    def index(self, x):
        m = len(self.basis)
        phase = np.mod(np.asarray(x, dtype=np.float64), self.period) / self.period
        index = np.rint(phase * m).astype(np.int64) % m
        if index.ndim == 0:
            return int(index)
        return index

    def __call__(self, x) -> np.ndarray:
        return self.basis[self.index(x)]


class ProjectionEncoder:
    """Sign of a random projection from ``R^m`` into bipolar hyperspace.

    Rows of the ``(d, m)`` matrix are uniform on the unit sphere (normalized
    Gaussian draws), so similar inputs map to similar hypervectors.
    """

    def __init__(self, in_features: int, d: int = DEFAULT_DIM, seed: SeedLike = None):
        _check_counts(in_features, d)
        rng = make_rng(seed)
        matrix = rng.standard_normal((d, in_features))
        norms = np.linalg.norm(matrix, axis=1, keepdims=True)
        # a Gaussian row of exact zeros has probability zero; guard anyway
        norms[norms == 0] = 1.0
        self.matrix = matrix / norms
        self.matrix.setflags(write=False)

    @property
    def in_features(self) -> int:
        return self.matrix.shape[1]

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __call__(self, x) -> np.ndarray:
        return project(self, x)


def project(encoder: ProjectionEncoder, x) -> np.ndarray:
    """Encode ``x`` (shape ``(m,)`` or ``(n, m)``) as bipolar hypervector(s)."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape[-1] != encoder.in_features:
        raise DimensionMismatchError(
            f"input has {x.shape[-1]} features, encoder expects {encoder.in_features}"
        )
    if np.any(np.all(x == 0, axis=-1)):
        raise ZeroNormError("cannot project an all-zero input")
    return quantize(x @ encoder.matrix.T)


class ItemMemory:
    """Labeled bipolar hypervectors with exhaustive nearest-neighbor lookup."""

    def __init__(self, items: Optional[Sequence[Tuple[Hashable, np.ndarray]]] = None):
        self._labels: List[Hashable] = []
        self._index: Dict[Hashable, int] = {}
        self._rows: List[np.ndarray] = []
        self._matrix: Optional[np.ndarray] = None
        for label, vector in items or ():
            self.add(label, vector)

    @classmethod
    def from_basis(cls, basis: BasisSet, labels: Optional[Sequence[Hashable]] = None) -> "ItemMemory":
        labels = list(range(len(basis))) if labels is None else list(labels)
        if len(labels) != len(basis):
            raise ValueError("need one label per basis vector")
        return cls(zip(labels, basis.vectors))

    def add(self, label: Hashable, vector) -> None:
        vector = as_hv(vector)
        if vector.ndim != 1:
            raise ValueError("item memory entries must be 1-D hypervectors")
        if not is_bipolar(vector):
            raise ValueError("item memory entries must be bipolar")
        if label in self._index:
            raise KeyError(f"duplicate label {label!r}")
        if self._rows and vector.shape[0] != self.dim:
            raise DimensionMismatchError(
                f"entry has dimension {vector.shape[0]}, memory holds {self.dim}"
            )
        self._index[label] = len(self._labels)
        self._labels.append(label)
        self._rows.append(vector.copy())
        self._matrix = None

    def __len__(self) -> int:
        return len(self._labels)

    def __contains__(self, label) -> bool:
        return label in self._index

    def __getitem__(self, label) -> np.ndarray:
        return self._rows[self._index[label]]

    @property
    def labels(self) -> List[Hashable]:
        return list(self._labels)

    @property
    def dim(self) -> int:
        if not self._rows:
            raise ValueError("empty item memory has no dimension")
        return self._rows[0].shape[0]

    @property
    def matrix(self) -> np.ndarray:
        if self._matrix is None:
            if not self._rows:
                raise ValueError("item memory is empty")
            self._matrix = np.stack(self._rows)
            self._matrix.setflags(write=False)
        return self._matrix

    def index_of(self, label) -> int:
        return self._index[label]

    def similarities(self, query) -> np.ndarray:
        """Cosine similarity of ``query`` to every entry, in insertion order."""
        if not self._rows:
            raise ValueError("item memory is empty")
        return cosine_matrix(as_hv(query), self.matrix)[0]

    def cleanup(self, query) -> Tuple[Hashable, np.ndarray, float]:
        return cleanup(self, query)


def cleanup(memory: ItemMemory, noisy) -> Tuple[Hashable, np.ndarray, float]:
    """Return ``(label, vector, similarity)`` of the entry nearest to ``noisy``.

    Equal similarities resolve to the earliest inserted entry.
    """
    sims = memory.similarities(noisy)
    best = int(np.argmax(sims))
    label = memory.labels[best]
    return label, memory.matrix[best], float(sims[best])


class Codebook(ItemMemory):
    """Item memory that creates a random hypervector for unseen symbols.

    Each symbol's vector depends only on ``(seed, symbol)`` through a stable
    hash, so it does not matter in which order symbols are first seen.
    """

    def __init__(self, d: int = DEFAULT_DIM, seed: int = 0):
        super().__init__()
        _check_counts(1, d)
        self.d = d
        self.seed = int(seed)

    def _draw(self, symbol: Hashable) -> np.ndarray:
        digest = hashlib.blake2b(repr(symbol).encode("utf-8"), digest_size=8).digest()
        stream = np.random.default_rng([self.seed, int.from_bytes(digest, "little")])
        return random_bipolar(self.d, stream)

    def get(self, symbol: Hashable) -> np.ndarray:
        if symbol not in self:
            self.add(symbol, self._draw(symbol))
        return self[symbol]

    def encode(self, symbols: Sequence[Hashable]) -> np.ndarray:
        """Stack the vectors for a sequence of symbols into shape ``(n, d)``."""
        if len(symbols) == 0:
            return np.empty((0, self.d), dtype=DTYPE)
        return np.stack([self.get(s) for s in symbols])

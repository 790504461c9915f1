"""Stateful data structures, each backed by a single accumulated hypervector.

Construction never involves cleanup, so a structure built incrementally is
bit-identical to the matching one-shot encoding in :mod:`hypervec.encodings`.
Retrieval is approximate; reliability drops as the number of stored items
approaches the order of ``sqrt(d)``.
"""
from __future__ import annotations

from typing import Hashable, List, Optional, Tuple

import numpy as np

from . import encodings
from .basis import ItemMemory, cleanup
from .core import (
    DEFAULT_DIM,
    DTYPE,
    DimensionMismatchError,
    as_hv,
    cosine,
    dot,
    permute,
)


class _Accumulator:
    def __init__(self, d: int = DEFAULT_DIM):
        if d < 1:
            raise ValueError(f"dimension must be positive, got {d}")
        self.d = d
        self.value = np.zeros(d, dtype=DTYPE)

    def _vec(self, v) -> np.ndarray:
        v = as_hv(v)
        if v.shape != (self.d,):
            raise DimensionMismatchError(f"expected a vector of dimension {self.d}, got shape {v.shape}")
        return v


class Multiset(_Accumulator):
    """Bundle of added vectors; membership by cosine, multiplicity by dot product."""

    def __init__(self, d: int = DEFAULT_DIM):
        super().__init__(d)
        self.size = 0

    def __len__(self) -> int:
        return self.size

    def add(self, v) -> None:
        self.value = self.value + self._vec(v)
        self.size += 1

    def remove(self, v) -> None:
        if self.size == 0:
            raise IndexError("remove from an empty multiset")
        self.value = self.value - self._vec(v)
        self.size -= 1

    def contains(self, v) -> float:
        """Cosine similarity between ``v`` and the multiset."""
        return cosine(self.value, self._vec(v))

    def count(self, v) -> float:
        """Estimated multiplicity of bipolar ``v`` (``dot / d``)."""
        return dot(self.value, self._vec(v)) / self.d


class HashTable(_Accumulator):
    """Key-value bundle ``sum K_i * V_i``.

    >>> from hypervec import random_hv
    >>> keys, vals = random_hv(2, 1000, seed=1), random_hv(2, 1000, seed=2)
    >>> t = HashTable(1000)
    >>> t.add(keys[0], vals[0])
    >>> bool((t.get(keys[0]) == vals[0]).all())
    True
    """

    def __init__(self, d: int = DEFAULT_DIM):
        super().__init__(d)
        self.size = 0

    def __len__(self) -> int:
        return self.size

    def add(self, key, value) -> None:
        self.value = self.value + self._vec(key) * self._vec(value)
        self.size += 1

    def remove(self, key, value) -> None:
        if self.size == 0:
            raise IndexError("remove from an empty hash table")
        self.value = self.value - self._vec(key) * self._vec(value)
        self.size -= 1

    def get(self, key) -> np.ndarray:
        """Noisy value bound to ``key``; clean it up against a value memory."""
        if self.size == 0:
            raise KeyError("get from an empty hash table")
        return self.value * self._vec(key)


class Sequence(_Accumulator):
    """Bundle-based sequence usable as a stack or a queue.

    The accumulator always equals ``encodings.sequence`` of the logical list:
    element ``i`` (1-based) of ``m`` sits rotated ``m - i`` times.  Removing
    the first element therefore needs no re-encoding, because the remaining
    elements already sit at the rotations their new positions call for.

    ``memory`` supplies the cleanup step used by :meth:`lookup` and the pops.
    """

    def __init__(self, d: int = DEFAULT_DIM, memory: Optional[ItemMemory] = None):
        super().__init__(d)
        self.memory = memory
        self.length = 0

    def __len__(self) -> int:
        return self.length

    def push_end(self, v) -> None:
        self.value = permute(self.value, 1) + self._vec(v)
        self.length += 1

    def push_start(self, v) -> None:
        # rotation by the length before insertion puts v at position 1
        self.value = permute(self._vec(v), self.length) + self.value
        self.length += 1

    def _require_memory(self) -> ItemMemory:
        if self.memory is None or len(self.memory) == 0:
            raise ValueError("sequence lookup needs a non-empty cleanup memory")
        return self.memory

    def raw(self, i: int) -> np.ndarray:
        """Noisy element at 1-based position ``i`` before cleanup."""
        if not 1 <= i <= self.length:
            raise IndexError(f"position {i} out of range for length {self.length}")
        return permute(self.value, i - self.length)

    def lookup_label(self, i: int) -> Tuple[Hashable, np.ndarray, float]:
        return cleanup(self._require_memory(), self.raw(i))

    def lookup(self, i: int) -> np.ndarray:
        """Cleaned-up element at 1-based position ``i``."""
        return self.lookup_label(i)[1].copy()

    def pop_end(self) -> np.ndarray:
        if self.length == 0:
            raise IndexError("pop from an empty sequence")
        last = self.lookup(self.length)
        self.value = permute(self.value - last, -1)
        self.length -= 1
        return last

    def pop_start(self) -> np.ndarray:
        if self.length == 0:
            raise IndexError("pop from an empty sequence")
        first = self.lookup(1)
        self.value = self.value - permute(first, self.length - 1)
        self.length -= 1
        return first


class Graph(_Accumulator):
    """Graph encoded as the bundle of its edges over labeled vertex vectors."""

    DIRECTIONS = ("out", "in", "undirected")

    def __init__(self, vertices: ItemMemory, directed: bool = False):
        super().__init__(vertices.dim)
        self.vertices = vertices
        self.directed = directed
        self.edge_count = 0

    def __len__(self) -> int:
        return self.edge_count

    def _vertex(self, label) -> np.ndarray:
        if label not in self.vertices:
            raise KeyError(f"unknown vertex {label!r}")
        return self.vertices[label]

    def add_edge(self, i, j) -> None:
        self.value = self.value + encodings.edge_term(self._vertex(i), self._vertex(j), self.directed)
        self.edge_count += 1

    def remove_edge(self, i, j) -> None:
        if self.edge_count == 0:
            raise IndexError("remove from an empty graph")
        self.value = self.value - encodings.edge_term(self._vertex(i), self._vertex(j), self.directed)
        self.edge_count -= 1

    def neighbors(self, i, direction: Optional[str] = None) -> List[Tuple[Hashable, float]]:
        """All vertices ranked by similarity to the neighbor query of ``i``.

        ``direction`` defaults to ``"out"`` for directed graphs and
        ``"undirected"`` otherwise.
        """
        if self.edge_count == 0:
            raise ValueError("neighbor query on an empty graph")
        if direction is None:
            direction = "out" if self.directed else "undirected"
        if direction not in self.DIRECTIONS:
            raise ValueError(f"direction must be one of {self.DIRECTIONS}, got {direction!r}")
        if self.directed and direction == "undirected":
            raise ValueError("use 'out' or 'in' on a directed graph")
        if not self.directed and direction != "undirected":
            direction = "undirected"
        query = encodings.neighbor_query(self.value, self._vertex(i), direction)
        sims = self.vertices.similarities(query)
        order = np.argsort(-sims, kind="stable")
        labels = self.vertices.labels
        return [(labels[k], float(sims[k])) for k in order]

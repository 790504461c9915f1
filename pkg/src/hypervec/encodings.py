"""Encoding patterns that combine many hypervectors into one.

All functions accept either a sequence of 1-D hypervectors or a stacked
``(n, d)`` array, and reject empty inputs: an empty bundle would be the zero
vector, which has no cosine similarity to anything.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np

from .basis import BasisSet
from .core import DimensionMismatchError, as_hv, permute


def _stack(values, what: str = "values") -> np.ndarray:
    if isinstance(values, np.ndarray):
        arr = as_hv(values)
    else:
        if len(values) == 0:
            raise ValueError(f"cannot encode an empty list of {what}")
        arr = np.stack([as_hv(v) for v in values])
    if arr.ndim != 2:
        raise ValueError(f"{what} must be 1-D hypervectors")
    if arr.shape[0] == 0:
        raise ValueError(f"cannot encode an empty list of {what}")
    return arr


def _rotations(arr: np.ndarray, shifts: np.ndarray) -> np.ndarray:
    """Rotate row ``k`` of ``arr`` right by ``shifts[k]``."""
    d = arr.shape[1]
    cols = (np.arange(d)[None, :] - (shifts[:, None] % d)) % d
    return np.take_along_axis(arr, cols, axis=1)


def multiset(values) -> np.ndarray:
    """Bundle of all values."""
    return _stack(values).sum(axis=0)


def hash_table(keys, values) -> np.ndarray:
    """Bundle of the key-value bindings ``sum_i K_i * V_i``."""
    k = _stack(keys, "keys")
    v = _stack(values, "values")
    if k.shape[0] != v.shape[0]:
        raise ValueError(f"got {k.shape[0]} keys but {v.shape[0]} values")
    if k.shape[1] != v.shape[1]:
        raise DimensionMismatchError(f"dimension mismatch: {k.shape[1]} vs {v.shape[1]}")
    return (k * v).sum(axis=0)


def sequence(values) -> np.ndarray:
    """Bundle-based sequence: element ``i`` of ``m`` is rotated ``m - i`` times.

    The last element is left in place, so appending is ``permute(S) + V``.
    """
    arr = _stack(values)
    m = arr.shape[0]
    return _rotations(arr, np.arange(m - 1, -1, -1)).sum(axis=0)


def bound_sequence(values) -> np.ndarray:
    """Binding-based sequence: rotated elements are multiplied, not added."""
    arr = _stack(values)
    m = arr.shape[0]
    return np.prod(_rotations(arr, np.arange(m - 1, -1, -1)), axis=0)


def ngrams(tokens, n: int = 3) -> np.ndarray:
    """Bundle of every window of ``n`` consecutive tokens.

    Inside a window the token at offset ``j`` is rotated ``n - j - 1`` times
    and the window is bound together; windows are then summed.
    """
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    arr = _stack(tokens, "tokens")
    m = arr.shape[0]
    if m < n:
        raise ValueError(f"need at least n={n} tokens, got {m}")
    windows = m - n + 1
    grams = permute(arr[0:windows], n - 1)
    for j in range(1, n):
        grams = grams * permute(arr[j:j + windows], n - j - 1)
    return grams.sum(axis=0)


@dataclass
class EdgeList:
    """Edges as pairs of vertex indices (0-based)."""

    edges: List[Tuple[int, int]] = field(default_factory=list)
    directed: bool = False

    def __len__(self) -> int:
        return len(self.edges)


def edge_term(source, target, directed: bool) -> np.ndarray:
    if directed:
        return as_hv(source) * permute(target, 1)
    return as_hv(source) * as_hv(target)


def graph(edges: EdgeList, vertices: BasisSet) -> np.ndarray:
    """Bundle of edge bindings; directed edges rotate the target vertex once."""
    if len(edges.edges) == 0:
        raise ValueError("cannot encode a graph without edges")
    idx = np.asarray(edges.edges, dtype=np.int64)
    if idx.ndim != 2 or idx.shape[1] != 2:
        raise ValueError("edges must be (source, target) pairs")
    m = len(vertices)
    if idx.min() < 0 or idx.max() >= m:
        raise IndexError(f"edge endpoint out of range for {m} vertices")
    src = vertices.vectors[idx[:, 0]]
    dst = vertices.vectors[idx[:, 1]]
    if edges.directed:
        dst = permute(dst, 1)
    return (src * dst).sum(axis=0)


def neighbor_query(graph_hv, vertex, direction: str = "undirected") -> np.ndarray:
    """Unbind ``vertex`` from a graph encoding to expose its neighbors.

    For directed graphs an edge ``(i, j)`` is stored as ``V_i * P(V_j)``:
    out-neighbors of ``i`` are ``P^-1(G * V_i)`` and in-neighbors of ``j`` are
    ``G * P(V_j)``.
    """
    g = as_hv(graph_hv)
    if direction == "undirected":
        return g * as_hv(vertex)
    if direction == "out":
        return permute(g * as_hv(vertex), -1)
    if direction == "in":
        return g * permute(vertex, 1)
    raise ValueError(f"direction must be 'out', 'in' or 'undirected', got {direction!r}")

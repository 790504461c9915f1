"""Bipolar hypervectors and the Multiply-Add-Permute operation set.

Hypervectors are plain 1-D ``numpy`` arrays of ``float32``.  Bipolar vectors
hold exactly ``-1.0`` and ``+1.0``; bundling produces integer-valued (or, for
real-valued inputs, arbitrary) accumulators.  Every function here is pure and
returns a new array; operands are never modified in place.

Batched inputs of shape ``(n, d)`` are accepted wherever an operation is
naturally element-wise.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

DTYPE = np.float32
DEFAULT_DIM = 10_000

SeedLike = Union[None, int, np.random.Generator]


class DimensionMismatchError(ValueError):
    """Operands of a binary operation have different dimensions."""


class ZeroNormError(ValueError):
    """A similarity was requested against an all-zero vector."""


def make_rng(seed: SeedLike = None) -> np.random.Generator:
    """Return a generator for ``seed``.

    An existing ``Generator`` is passed through untouched so callers can thread
    one stream through several calls.  Integers must fit in 64 unsigned bits.
    """
    if isinstance(seed, np.random.Generator):
        return seed
    if seed is not None:
        seed = int(seed)
        if not 0 <= seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return np.random.default_rng(seed)


def as_hv(x) -> np.ndarray:
    return np.asarray(x, dtype=DTYPE)


def _check_same_dim(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape[-1] != b.shape[-1]:
        raise DimensionMismatchError(
            f"dimension mismatch: {a.shape[-1]} vs {b.shape[-1]}"
        )


def is_bipolar(a) -> bool:
    a = np.asarray(a)
    return bool(np.all(np.abs(a) == 1))


def random_bipolar(shape, rng: SeedLike = None) -> np.ndarray:
    """Uniform i.i.d. samples from {-1, +1}."""
    rng = make_rng(rng)
    bits = rng.integers(0, 2, size=shape, dtype=np.int8)
    return (2 * bits - 1).astype(DTYPE)


def bind(a, b) -> np.ndarray:
    """Element-wise product. Self-inverse on bipolar vectors."""
    a, b = as_hv(a), as_hv(b)
    _check_same_dim(a, b)
    return a * b


def bundle(a, b) -> np.ndarray:
    """Element-wise sum, left unquantized."""
    a, b = as_hv(a), as_hv(b)
    _check_same_dim(a, b)
    return a + b


def bundle_all(vectors, dim: Optional[int] = None) -> np.ndarray:
    """Sum of any number of vectors.

    An empty input gives the zero vector of length ``dim``; note that the zero
    vector has no defined cosine similarity.
    """
    vectors = [as_hv(v) for v in vectors]
    if not vectors:
        if dim is None:
            raise ValueError("dim is required to bundle zero operands")
        return np.zeros(dim, dtype=DTYPE)
    out = vectors[0].copy()
    for v in vectors[1:]:
        _check_same_dim(out, v)
        out += v
    return out


def bundle_inverse(s, v) -> np.ndarray:
    """Remove ``v`` from the bundle ``s``."""
    s, v = as_hv(s), as_hv(v)
    _check_same_dim(s, v)
    return s - v


def negate(a) -> np.ndarray:
    return -as_hv(a)


def permute(a, shifts: int = 1) -> np.ndarray:
    """Cyclic rotation to the right by ``shifts`` coordinates.

    Negative shifts rotate left, so ``permute(permute(a, i), -i)`` is ``a``.
    For a batch the rotation is applied to each row.
    """
    a = as_hv(a)
    d = a.shape[-1]
    return np.roll(a, int(shifts) % d if d else 0, axis=-1)


def quantize(a) -> np.ndarray:
    """Sign into {-1, +1}; zeros go to +1."""
    a = as_hv(a)
    return np.where(a < 0, DTYPE(-1), DTYPE(1))


def dot(a, b) -> float:
    a, b = as_hv(a), as_hv(b)
    _check_same_dim(a, b)
    return float(np.dot(a.astype(np.float64), b.astype(np.float64)))


def cosine(a, b) -> float:
    """Cosine similarity of two vectors, computed in double precision."""
    a = as_hv(a).astype(np.float64)
    b = as_hv(b).astype(np.float64)
    _check_same_dim(a, b)
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na == 0 or nb == 0:
        raise ZeroNormError("cosine similarity is undefined for a zero vector")
    value = float(np.dot(a, b) / (na * nb))
    return min(1.0, max(-1.0, value))


def cosine_matrix(a, b) -> np.ndarray:
    """Cosine similarity between every row of ``a`` and every row of ``b``.

    Returns shape ``(len(a), len(b))``; 1-D inputs are treated as one row.
    """
    a = np.atleast_2d(as_hv(a)).astype(np.float64)
    b = np.atleast_2d(as_hv(b)).astype(np.float64)
    _check_same_dim(a, b)
    na = np.linalg.norm(a, axis=1)
    nb = np.linalg.norm(b, axis=1)
    if np.any(na == 0) or np.any(nb == 0):
        raise ZeroNormError("cosine similarity is undefined for a zero vector")
    sims = (a @ b.T) / np.outer(na, nb)
    return np.clip(sims, -1.0, 1.0)


@dataclass
class TieBreak:
    """How :func:`majority` resolves coordinates whose sum is zero.

    Build one with :meth:`bias`, :meth:`random` or :meth:`auxiliary`.  The
    random variant owns its generator, so reusing the same instance continues
    the same stream of coin flips.
    """

    kind: str
    rng: Optional[np.random.Generator] = None
    vector: Optional[np.ndarray] = None

    BIAS = "bias"
    RANDOM = "random"
    AUXILIARY = "auxiliary"

    @classmethod
    def bias(cls) -> "TieBreak":
        return cls(cls.BIAS)

    @classmethod
    def random(cls, seed: SeedLike = None) -> "TieBreak":
        return cls(cls.RANDOM, rng=make_rng(seed))

    @classmethod
    def auxiliary(cls, vector) -> "TieBreak":
        vector = as_hv(vector)
        if vector.ndim != 1 or not is_bipolar(vector):
            raise ValueError("auxiliary tie-break vector must be a bipolar 1-D vector")
        return cls(cls.AUXILIARY, vector=vector)

    def resolve(self, ties: np.ndarray) -> np.ndarray:
        """Values (+1/-1) for the coordinates flagged in the boolean mask."""
        n = int(np.count_nonzero(ties))
        if self.kind == self.BIAS:
            return np.ones(n, dtype=DTYPE)
        if self.kind == self.RANDOM:
            return random_bipolar(n, self.rng)
        if self.kind == self.AUXILIARY:
            if self.vector.shape[-1] != ties.shape[-1]:
                raise DimensionMismatchError(
                    f"auxiliary vector has dimension {self.vector.shape[-1]}, "
                    f"operands have {ties.shape[-1]}"
                )
            return self.vector[ties]
        raise ValueError(f"unknown tie-break kind {self.kind!r}")


def majority(operands: Sequence, tie: TieBreak) -> np.ndarray:
    """Element-wise majority vote of bipolar operands."""
    if len(operands) == 0:
        raise ValueError("majority needs at least one operand")
    stacked = np.stack([as_hv(v) for v in operands])
    if stacked.ndim != 2:
        raise ValueError("majority operands must be 1-D hypervectors")
    if not is_bipolar(stacked):
        raise ValueError("majority operands must be bipolar")
    total = stacked.sum(axis=0)
    out = np.where(total < 0, DTYPE(-1), DTYPE(1))
    ties = total == 0
    if ties.any():
        out[ties] = tie.resolve(ties)
    return out


def iterative_majority(operands: Sequence, tie: TieBreak) -> np.ndarray:
    """Left fold of two-argument majority: ``maj(maj(maj(v1, v2), v3), ...)``.

    With two operands every disagreeing coordinate is a tie, so the result
    drifts away from the majority of all operands.  A fixed tie value makes
    each step a per-coordinate OR/AND (associative); random ties make the
    grouping matter.
    """
    if len(operands) == 0:
        raise ValueError("majority needs at least one operand")
    result = as_hv(operands[0])
    if not is_bipolar(result):
        raise ValueError("majority operands must be bipolar")
    for v in operands[1:]:
        result = majority([result, v], tie)
    return result.copy()

"""Centroid classification: one bundled class-vector per label."""
from __future__ import annotations

import json
import struct
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .core import DTYPE, DimensionMismatchError, ZeroNormError, as_hv

MAGIC = b"HVCENTRD"
FORMAT_VERSION = 1
_HEADER = struct.Struct("<8sIQQ")  # magic, version, d, k
# cosines this close to the best are treated as ties (floating-point noise)
TIE_TOLERANCE = 1e-9


def _argmax_first(sims: np.ndarray) -> np.ndarray:
    """Row-wise argmax where near-equal maxima resolve to the lowest index."""
    sims = np.atleast_2d(sims)
    best = sims.max(axis=1, keepdims=True)
    return np.argmax(sims >= best - TIE_TOLERANCE, axis=1)


@dataclass
class CentroidModel:
    """Class-vectors stored as raw (unquantized, unnormalized) sums.

    ``class_vectors[i]`` is the bundle of every training encoding labeled
    ``labels[i]``; ``counts[i]`` is how many there were.
    """

    labels: List[Hashable]
    class_vectors: np.ndarray
    counts: np.ndarray
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if len(self.labels) < 1:
            raise ValueError("a model needs at least one class")
        if self.class_vectors.shape[0] != len(self.labels):
            raise ValueError("need one class-vector per label")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("class labels must be unique")

    @property
    def dim(self) -> int:
        return self.class_vectors.shape[1]

    @property
    def num_classes(self) -> int:
        return len(self.labels)

    def similarities(self, queries) -> np.ndarray:
        """Cosine similarity of each query to each class, shape ``(n, k)``.

        A class-vector that summed to zero gets similarity ``-inf`` so it can
        never win.
        """
        q = np.atleast_2d(as_hv(queries)).astype(np.float64)
        if q.shape[1] != self.dim:
            raise DimensionMismatchError(f"query has dimension {q.shape[1]}, model has {self.dim}")
        qn = np.linalg.norm(q, axis=1)
        if np.any(qn == 0):
            raise ZeroNormError("cannot classify a zero query vector")
        c = self.class_vectors.astype(np.float64)
        cn = np.linalg.norm(c, axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            sims = (q @ c.T) / np.outer(qn, cn)
        sims[:, cn == 0] = -np.inf
        return sims

    def predict(self, query) -> Tuple[Hashable, np.ndarray]:
        return predict(self, query)

    def predict_batch(self, queries) -> List[Hashable]:
        best = _argmax_first(self.similarities(queries))
        return [self.labels[i] for i in best]

    def save(self, path: Union[str, Path], **metadata) -> Tuple[Path, Path]:
        return save_model(self, path, **metadata)


def fit(samples: Iterable[Tuple[Any, Hashable]],
        labels: Optional[Sequence[Hashable]] = None) -> CentroidModel:
    """Bundle encoded samples per label.

    ``labels`` fixes the class order (and thus argmax tie-breaking); by default
    the sorted set of labels seen.  Every declared class needs a sample.
    """
    samples = list(samples)
    if not samples:
        raise ValueError("cannot fit a model on zero samples")
    seen = {label for _, label in samples}
    if labels is None:
        try:
            labels = sorted(seen)
        except TypeError:
            labels = list(dict.fromkeys(label for _, label in samples))
    labels = list(labels)
    index = {label: i for i, label in enumerate(labels)}
    unknown = seen - set(index)
    if unknown:
        raise ValueError(f"samples carry undeclared labels: {sorted(map(repr, unknown))}")

    d = as_hv(samples[0][0]).shape[-1]
    vectors = np.zeros((len(labels), d), dtype=DTYPE)
    counts = np.zeros(len(labels), dtype=np.int64)
    for hv, label in samples:
        hv = as_hv(hv)
        if hv.shape != (d,):
            raise DimensionMismatchError(f"sample has shape {hv.shape}, expected ({d},)")
        i = index[label]
        vectors[i] += hv
        counts[i] += 1
    empty = [labels[i] for i in np.flatnonzero(counts == 0)]
    if empty:
        raise ValueError(f"no samples for classes {empty!r}")
    return CentroidModel(labels, vectors, counts)


def predict(model: CentroidModel, query) -> Tuple[Hashable, np.ndarray]:
    """Label of the most similar class-vector, plus all class similarities.

    Ties go to the class listed first.
    """
    query = as_hv(query)
    if query.ndim != 1:
        raise ValueError("predict takes a single hypervector; use predict_batch")
    sims = model.similarities(query)[0]
    return model.labels[int(_argmax_first(sims)[0])], sims


def save_model(model: CentroidModel, path: Union[str, Path], **metadata) -> Tuple[Path, Path]:
    """Write ``path`` (binary class-vectors) and ``path + '.json'`` (metadata).

    Binary layout: 8-byte magic, uint32 version, uint64 d, uint64 k, then
    ``k * d`` little-endian float32 values, one class-vector after another.
    """
    path = Path(path)
    sidecar = path.with_name(path.name + ".json")
    k, d = model.class_vectors.shape
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, FORMAT_VERSION, d, k))
        fh.write(np.ascontiguousarray(model.class_vectors, dtype="<f4").tobytes())
    meta = dict(model.metadata)
    meta.update(metadata)
    doc = {
        "format_version": FORMAT_VERSION,
        "labels": list(model.labels),
        "counts": [int(c) for c in model.counts],
        "metadata": meta,
    }
    with open(sidecar, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True, ensure_ascii=False)
        fh.write("\n")
    return path, sidecar


def load_model(path: Union[str, Path]) -> CentroidModel:
    path = Path(path)
    raw = path.read_bytes()
    if len(raw) < _HEADER.size:
        raise ValueError(f"{path}: file too short for a model header")
    magic, version, d, k = _HEADER.unpack_from(raw)
    if magic != MAGIC:
        raise ValueError(f"{path}: not a centroid model file")
    if version != FORMAT_VERSION:
        raise ValueError(f"{path}: unsupported format version {version}")
    body = raw[_HEADER.size:]
    if len(body) != 4 * d * k:
        raise ValueError(f"{path}: expected {4 * d * k} bytes of class-vectors, found {len(body)}")
    vectors = np.frombuffer(body, dtype="<f4").reshape(k, d).astype(DTYPE)

    doc = json.loads(path.with_name(path.name + ".json").read_text(encoding="utf-8"))
    labels = doc["labels"]
    if len(labels) != k:
        raise ValueError(f"{path}: sidecar lists {len(labels)} labels for {k} class-vectors")
    return CentroidModel(labels, vectors, np.asarray(doc["counts"], dtype=np.int64),
                         doc.get("metadata", {}))

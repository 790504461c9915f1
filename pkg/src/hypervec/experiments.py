"""Desk-scale experiments: basis similarity profiles, majority-bundling
divergence, the fruit-record walkthrough and character n-gram language ID.

Each function returns plain Python/numpy results; :mod:`hypervec.cli` turns
them into files.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import basis as _basis
from .core import (
    DEFAULT_DIM,
    TieBreak,
    cosine,
    cosine_matrix,
    make_rng,
    majority,
    quantize,
    random_bipolar,
)
from .data import TextCorpus, TextEncoder
from .learn import CentroidModel, fit
from .structures import HashTable

log = logging.getLogger(__name__)

GENERATORS = {
    _basis.RANDOM: _basis.random_hv,
    _basis.LEVEL: _basis.level_hv,
    _basis.CIRCULAR: _basis.circular_hv,
}

STRATEGIES = ("Bias", "Random", "Auxiliary", "Addition")


def spawn_seeds(seed: int, count: int) -> List[np.random.SeedSequence]:
    return np.random.SeedSequence(seed).spawn(count)


def similarity_profile(kind: str, m: int = 10, d: int = DEFAULT_DIM, seed: int = 0,
                       reps: int = 1) -> np.ndarray:
    """Pairwise cosine matrix of a basis set, averaged over ``reps`` draws."""
    if kind not in GENERATORS:
        raise ValueError(f"kind must be one of {sorted(GENERATORS)}, got {kind!r}")
    if reps < 1:
        raise ValueError("reps must be positive")
    total = np.zeros((m, m))
    for child in spawn_seeds(seed, reps):
        total += GENERATORS[kind](m, d, np.random.default_rng(child)).similarity_matrix()
    return total / reps


BASELINES = ("mean", "quantized")


def bundle_divergence(operand_count: int = 100, d: int = DEFAULT_DIM, reps: int = 25,
                      seed: int = 0, baseline: str = "mean") -> Dict[str, np.ndarray]:
    """Iterative two-operand majority versus exact bundling.

    For every prefix length ``n`` in ``2..operand_count`` and each tie-break
    strategy, the mean (over ``reps``) cosine between the folded majority of
    the first ``n`` operands and the baseline: the exact sum of those operands
    (``"mean"``; cosine ignores the ``1/n`` scale) or its quantization
    (``"quantized"``).  The ``Addition`` entry is bundling by plain addition,
    i.e. the quantized sum for the quantized baseline, scored against it.

    Returns ``{"counts": array, strategy: array}`` with one value per prefix.
    """
    if operand_count < 2:
        raise ValueError("operand_count must be at least 2")
    if reps < 1:
        raise ValueError("reps must be positive")
    if baseline not in BASELINES:
        raise ValueError(f"baseline must be one of {BASELINES}, got {baseline!r}")
    counts = np.arange(2, operand_count + 1)
    sums = {name: np.zeros(len(counts)) for name in STRATEGIES}
    for child in spawn_seeds(seed, reps):
        rng = np.random.default_rng(child)
        operands = random_bipolar((operand_count, d), rng)
        ties = {
            "Bias": TieBreak.bias(),
            "Random": TieBreak.random(rng),
            "Auxiliary": TieBreak.auxiliary(random_bipolar(d, rng)),
        }
        folded = {name: operands[0] for name in ties}
        exact = operands[0].copy()
        for pos, n in enumerate(counts):
            v = operands[n - 1]
            exact = exact + v
            target = quantize(exact) if baseline == "quantized" else exact
            # an exact sum can cancel to all zeros (only plausible for tiny d);
            # score that as orthogonal to every majority result
            nonzero = bool(np.any(target))
            for name, tie in ties.items():
                folded[name] = majority([folded[name], v], tie)
                sums[name][pos] += cosine(folded[name], target) if nonzero else 0.0
            sums["Addition"][pos] += cosine(target, target) if nonzero else 1.0
    out = {name: total / reps for name, total in sums.items()}
    out["counts"] = counts
    return out


FRUITS = ("apple", "lemon", "mango")
SEASONS = ("winter", "spring", "summer", "fall")
VARIABLES = ("fruit", "weight", "season")
RECORDS = (("apple", 149.0, "fall"), ("lemon", 70.5, "winter"), ("mango", 173.2, "summer"))
WEIGHT_RANGE = (0.0, 200.0)
WEIGHT_LEVELS = 10


@dataclass
class RecordQuery:
    record: int
    variable: str
    expected_index: int
    similarities: np.ndarray
    member_names: Tuple[str, ...]

    @property
    def argmax(self) -> int:
        return int(np.argmax(self.similarities))


def record_demo(d: int = DEFAULT_DIM, seed: int = 0) -> List[RecordQuery]:
    """Encode the three fruit records as hash tables and query every key.

    Fruits use random basis vectors, weights ten level vectors over
    ``[0, 200]``, seasons four circular vectors and the variable names three
    random vectors.  For each record and variable the query result is compared
    against every member of the matching basis.
    """
    rng = make_rng(seed)
    fruits = _basis.random_hv(len(FRUITS), d, rng)
    weights = _basis.level_hv(WEIGHT_LEVELS, d, rng)
    seasons = _basis.circular_hv(len(SEASONS), d, rng)
    variables = _basis.random_hv(len(VARIABLES), d, rng)
    weight_names = tuple(str(i) for i in range(WEIGHT_LEVELS))

    results: List[RecordQuery] = []
    for r, (fruit, weight, season) in enumerate(RECORDS):
        w_i = _basis.value_to_index(weight, *WEIGHT_RANGE, WEIGHT_LEVELS)
        table = HashTable(d)
        table.add(variables[0], fruits[FRUITS.index(fruit)])
        table.add(variables[1], weights[w_i])
        table.add(variables[2], seasons[SEASONS.index(season)])
        for v, (basis_set, names, expected) in enumerate((
            (fruits, FRUITS, FRUITS.index(fruit)),
            (weights, weight_names, w_i),
            (seasons, SEASONS, SEASONS.index(season)),
        )):
            query = table.get(variables[v])
            sims = cosine_matrix(query, basis_set.vectors)[0]
            results.append(RecordQuery(r + 1, VARIABLES[v], expected, sims, names))
    return results


@dataclass
class LangIdResult:
    accuracy: float
    labels: List[str]
    confusion: np.ndarray  # rows: true label, columns: predicted label
    train_skipped: int
    test_skipped: int
    model: CentroidModel

    @property
    def chance(self) -> float:
        return 1.0 / len(self.labels)

    def metrics(self) -> dict:
        per_class = {}
        for i, label in enumerate(self.labels):
            total = int(self.confusion[i].sum())
            correct = int(self.confusion[i, i])
            per_class[label] = {
                "correct": correct,
                "total": total,
                "accuracy": correct / total if total else None,
            }
        return {
            "accuracy": self.accuracy,
            "chance": self.chance,
            "labels": self.labels,
            "per_class": per_class,
            "test_samples": int(self.confusion.sum()),
            "train_skipped": self.train_skipped,
            "test_skipped": self.test_skipped,
        }


def _encode_corpus(corpus: TextCorpus, encoder: TextEncoder) -> Tuple[List[Tuple[np.ndarray, str]], int]:
    encoded = []
    skipped = 0
    for text, label in corpus:
        hv = encoder(text)
        if hv is None:
            skipped += 1
            continue
        encoded.append((hv, label))
    return encoded, skipped


def language_id(train: TextCorpus, test: TextCorpus, n: int = 3, d: int = DEFAULT_DIM,
                seed: int = 0, labels: Optional[Sequence[str]] = None) -> LangIdResult:
    """Train a centroid model on character n-gram encodings and evaluate it."""
    encoder = TextEncoder(n, d, seed)
    train_enc, train_skipped = _encode_corpus(train, encoder)
    test_enc, test_skipped = _encode_corpus(test, encoder)
    if train_skipped or test_skipped:
        log.warning("skipped %d train and %d test sentences shorter than n=%d",
                    train_skipped, test_skipped, n)
    if not train_enc or not test_enc:
        raise ValueError("no sentences long enough to encode")
    if labels is None:
        labels = sorted(set(train.labels) | set(test.labels))
    labels = list(labels)
    model = fit(train_enc, labels)
    model.metadata.update({"encoder": encoder.describe(), "seed": seed})

    predicted = model.predict_batch(np.stack([hv for hv, _ in test_enc]))
    index = {label: i for i, label in enumerate(labels)}
    confusion = np.zeros((len(labels), len(labels)), dtype=np.int64)
    for (_, truth), guess in zip(test_enc, predicted):
        confusion[index[truth], index[guess]] += 1
    accuracy = float(np.trace(confusion) / confusion.sum())
    return LangIdResult(accuracy, labels, confusion, train_skipped, test_skipped, model)

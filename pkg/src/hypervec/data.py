"""Text corpora for language identification and synthetic classification data."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import List, Optional, Tuple, Union

import numpy as np

from .basis import Codebook
from .core import DEFAULT_DIM, make_rng, random_bipolar
from .encodings import ngrams

SPLITS = ("train", "test")

_WHITESPACE = re.compile(r"\s+")


class CorpusError(Exception):
    """A corpus directory is missing, empty or unreadable."""


@dataclass
class TextCorpus:
    texts: List[str]
    labels: List[str]
    split: str = "train"

    def __len__(self) -> int:
        return len(self.texts)

    def __iter__(self):
        return iter(zip(self.texts, self.labels))

    @property
    def label_set(self) -> List[str]:
        return sorted(set(self.labels))


def bundled_corpus_root() -> Path:
    """Directory of the small sample corpus shipped with the package."""
    return Path(str(resources.files("hypervec") / "corpus"))


def normalize_text(text: str) -> str:
    """Lowercase and collapse whitespace runs to one space."""
    return _WHITESPACE.sub(" ", text.lower()).strip()


def load_corpus(root: Union[str, Path], split: str = "train") -> TextCorpus:
    """Read ``<root>/<split>/<label>/*.txt``, one sample per nonempty line.

    Samples are ordered by file path, then line number.  Lines are returned as
    stored (minus the trailing newline); normalization happens at encoding.
    """
    root = Path(root)
    if not root.is_dir():
        raise CorpusError(f"corpus root {root} does not exist")
    base = root / split
    if not base.is_dir():
        raise CorpusError(f"corpus split directory {base} does not exist")

    texts: List[str] = []
    labels: List[str] = []
    for path in sorted(base.glob("*/*.txt")):
        label = path.parent.name
        try:
            content = path.read_text(encoding="utf-8")
        except UnicodeDecodeError as exc:
            raise CorpusError(f"{path}: not valid UTF-8 ({exc.reason} at byte {exc.start})") from exc
        for line in content.splitlines():
            if line.strip():
                texts.append(line)
                labels.append(label)
    if not texts:
        raise CorpusError(f"no samples found under {base}")
    return TextCorpus(texts, labels, split)


class TextEncoder:
    """Character n-gram encoder for normalized text."""

    def __init__(self, n: int = 3, d: int = DEFAULT_DIM, seed: int = 0):
        if n < 1:
            raise ValueError(f"n must be at least 1, got {n}")
        self.n = n
        self.codebook = Codebook(d, seed)

    @property
    def dim(self) -> int:
        return self.codebook.d

    def describe(self) -> dict:
        return {"kind": "char-ngram", "n": self.n, "dim": self.dim, "seed": self.codebook.seed,
                "normalization": "lowercase, collapse whitespace"}

    def __call__(self, text: str) -> Optional[np.ndarray]:
        """Encoding of ``text``, or ``None`` when it has fewer than ``n`` characters."""
        chars = list(normalize_text(text))
        if len(chars) < self.n:
            return None
        return ngrams(self.codebook.encode(chars), self.n)


@dataclass
class SyntheticSpec:
    class_count: int = 2
    samples_per_class: int = 50
    dimension: int = DEFAULT_DIM
    flip_probability: float = 0.1
    seed: int = 0

    def __post_init__(self):
        if not 0 <= self.flip_probability < 0.5:
            raise ValueError(f"flip_probability must be in [0, 0.5), got {self.flip_probability}")
        if self.class_count < 1 or self.samples_per_class < 1 or self.dimension < 1:
            raise ValueError("class_count, samples_per_class and dimension must be positive")


@dataclass
class SyntheticDataset:
    samples: np.ndarray
    labels: np.ndarray
    prototypes: np.ndarray = field(repr=False)

    def pairs(self) -> List[Tuple[np.ndarray, int]]:
        return list(zip(self.samples, self.labels.tolist()))


def synth_classification(spec: SyntheticSpec) -> SyntheticDataset:
    """Noisy copies of random bipolar prototypes, grouped by class.

    Each coordinate of each sample is flipped independently with probability
    ``spec.flip_probability``.
    """
    rng = make_rng(spec.seed)
    k, n, d = spec.class_count, spec.samples_per_class, spec.dimension
    prototypes = random_bipolar((k, d), rng)
    labels = np.repeat(np.arange(k), n)
    flips = rng.random((k * n, d)) < spec.flip_probability
    samples = np.where(flips, -prototypes[labels], prototypes[labels])
    return SyntheticDataset(samples, labels, prototypes)

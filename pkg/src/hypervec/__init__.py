"""Hyperdimensional computing with bipolar Multiply-Add-Permute hypervectors."""

__version__ = "0.1.0"

from .core import (  # noqa: E402
    DEFAULT_DIM,
    DimensionMismatchError,
    TieBreak,
    ZeroNormError,
    bind,
    bundle,
    bundle_all,
    bundle_inverse,
    cosine,
    cosine_matrix,
    dot,
    is_bipolar,
    iterative_majority,
    majority,
    make_rng,
    negate,
    permute,
    quantize,
    random_bipolar,
)
from .basis import (  # noqa: E402
    BasisSet,
    CircularEmbedding,
    Codebook,
    ItemMemory,
    LevelEmbedding,
    ProjectionEncoder,
    circular_hv,
    cleanup,
    level_hv,
    project,
    random_hv,
    value_to_index,
)
from .encodings import (  # noqa: E402
    EdgeList,
    bound_sequence,
    graph,
    hash_table,
    multiset,
    ngrams,
    sequence,
)
from .learn import CentroidModel, fit, load_model, predict, save_model  # noqa: E402

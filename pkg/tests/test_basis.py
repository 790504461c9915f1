import math

import numpy as np
import pytest

from hypervec import (
    BasisSet,
    CircularEmbedding,
    Codebook,
    DimensionMismatchError,
    ItemMemory,
    LevelEmbedding,
    ProjectionEncoder,
    ZeroNormError,
    circular_hv,
    cleanup,
    cosine,
    is_bipolar,
    level_hv,
    negate,
    project,
    random_bipolar,
    random_hv,
    value_to_index,
)
from hypervec.basis import _circular_states

D = 10_000


def circdist(i, j, m):
    k = abs(i - j) % m
    return min(k, m - k)


def test_random_hv_domain():
    b = random_hv(1, 4, seed=0)
    assert len(b) == 1 and b.dim == 4
    assert is_bipolar(b.vectors)


def test_random_hv_off_diagonal():
    sims = random_hv(3, D, seed=1).similarity_matrix()
    off = sims[~np.eye(3, dtype=bool)]
    assert np.all(np.abs(off) < 0.05)
    assert np.allclose(np.diag(sims), 1.0)


def test_random_hv_coordinates_are_balanced():
    vectors = random_hv(10_000, 64, seed=2).vectors
    means = vectors.mean(axis=0)
    assert np.all(np.abs(means) < 0.05)


@pytest.mark.parametrize("gen", [random_hv, level_hv, circular_hv])
def test_generators_reject_bad_sizes(gen):
    with pytest.raises(ValueError):
        gen(0, 10, seed=0)
    with pytest.raises(ValueError):
        gen(2, 0, seed=0)


def test_generators_are_seed_reproducible():
    for gen in (random_hv, level_hv, circular_hv):
        a = gen(6, 500, seed=123).vectors
        b = gen(6, 500, seed=123).vectors
        c = gen(6, 500, seed=124).vectors
        assert (a == b).all()
        assert not (a == c).all()


def test_basis_set_is_read_only():
    b = random_hv(2, 8, seed=0)
    with pytest.raises(ValueError):
        b.vectors[0, 0] = 5


def test_level_endpoints_are_random():
    b = level_hv(2, D, seed=3)
    assert abs(cosine(b[0], b[1])) < 0.05


def test_level_rejects_single_member():
    with pytest.raises(ValueError):
        level_hv(1, 100, seed=0)


def test_level_pair_expectation():
    sims = [cosine(level_hv(10, D, seed=s)[0], level_hv(10, D, seed=s)[4]) for s in range(20)]
    assert abs(np.mean(sims) - (1 - 4 / 9)) < 0.05


def test_level_members_interpolate_exactly():
    b = level_hv(10, 1000, seed=5)
    first, last = b[0], b[-1]
    for k in range(10):
        # every coordinate of every member comes from one of the two ends
        assert np.all((b[k] == first) | (b[k] == last))
    # number of coordinates already copied grows by a chunk per step
    copied = [(np.sum((b[k] == last) & (first != last))) for k in range(10)]
    assert copied == sorted(copied)
    assert (b[-1] == last).all()


def test_level_rows_decrease_monotonically():
    sims = level_hv(10, D, seed=6).similarity_matrix()
    for i in range(10):
        right = sims[i, i:]
        left = sims[i, : i + 1][::-1]
        assert np.all(np.diff(right) < 0)
        assert np.all(np.diff(left) < 0)


def test_level_chunk_sizes_differ_by_at_most_one():
    m, d = 7, 1003
    b = level_hv(m, d, seed=1)
    changed = [int(np.sum(b[k] != b[k + 1])) for k in range(m - 1)]
    # changes are bounded by chunk sizes; with first != last in ~half the coords
    sizes = [len(c) for c in np.array_split(np.arange(d), m - 1)]
    assert max(sizes) - min(sizes) <= 1
    assert sizes == sorted(sizes, reverse=True)
    assert all(c <= s for c, s in zip(changed, sizes))


def test_circular_rejects_odd_m():
    with pytest.raises(ValueError, match="even"):
        circular_hv(5, 100, seed=0)


def test_circular_opposite_points_orthogonal():
    b = circular_hv(4, D, seed=7)
    assert abs(cosine(b[0], b[2])) < 0.05
    assert abs(cosine(b[1], b[3])) < 0.05


def test_circular_wraparound_symmetry():
    b = circular_hv(4, D, seed=8)
    assert abs(cosine(b[0], b[1]) - cosine(b[0], b[3])) < 0.05


def test_circular_full_cycle_returns_to_start():
    rng = np.random.default_rng(0)
    start = random_bipolar(1000, rng)
    chunks = np.array_split(rng.permutation(1000)[:500], 5)
    states = list(_circular_states(start, chunks))
    assert len(states) == 11
    assert (states[-1] == start).all()
    assert not any((s == start).all() for s in states[1:-1])


def test_circular_profile_matches_ring_distance():
    m = 10
    sims = circular_hv(m, D, seed=9).similarity_matrix()
    for i in range(m):
        for j in range(m):
            assert abs(sims[i, j] - (1 - 2 * circdist(i, j, m) / m)) < 0.07


def test_value_to_index_examples():
    assert value_to_index(149.0, 0, 200, 10) == 7
    assert value_to_index(0, 0, 200, 10) == 0
    assert value_to_index(200, 0, 200, 10) == 9
    assert value_to_index(-50, 0, 200, 10) == 0
    assert value_to_index(500, 0, 200, 10) == 9
    assert value_to_index(np.array([0.0, 70.5, 173.2]), 0, 200, 10).tolist() == [0, 3, 8]
    with pytest.raises(ValueError):
        value_to_index(1, 5, 5, 10)


def test_level_embedding_matches_explicit_index():
    emb = LevelEmbedding(10, 1000, low=0, high=200, seed=4)
    assert (emb(149.0) == emb.basis[value_to_index(149.0, 0, 200, 10)]).all()
    assert emb(np.array([0.0, 199.0])).shape == (2, 1000)


def test_circular_embedding_wraps():
    emb = CircularEmbedding(8, 500, seed=2)
    assert emb.index(0.0) == 0
    assert emb.index(2 * math.pi) == 0
    assert emb.index(-math.pi / 4) == 7
    assert emb.index(math.pi) == 4
    assert (emb(2 * math.pi - 1e-9) == emb.basis[0]).all()


def test_projection_rows_unit_norm():
    enc = ProjectionEncoder(5, 2000, seed=0)
    assert np.allclose(np.linalg.norm(enc.matrix, axis=1), 1.0, atol=1e-6)


def test_projection_scale_and_sign():
    enc = ProjectionEncoder(6, 2000, seed=1)
    x = np.random.default_rng(0).normal(size=6)
    hx = project(enc, x)
    assert is_bipolar(hx)
    assert (project(enc, 2 * x) == hx).all()
    nonzero = (enc.matrix @ x) != 0
    assert (project(enc, -x)[nonzero] == negate(hx)[nonzero]).all()
    assert enc(np.stack([x, -x])).shape == (2, 2000)


def test_projection_errors():
    enc = ProjectionEncoder(3, 100, seed=1)
    with pytest.raises(DimensionMismatchError):
        project(enc, np.ones(4))
    with pytest.raises(ZeroNormError):
        project(enc, np.zeros(3))


@pytest.mark.parametrize("angle", [0.3, 1.0, math.pi / 2, 2.5])
def test_projection_preserves_angles(angle):
    # sign random projections: P(sign disagrees) = angle / pi per row
    rng = np.random.default_rng(int(angle * 100))
    sims = []
    for seed in range(10):
        enc = ProjectionEncoder(8, D, seed=seed)
        u = rng.normal(size=8)
        u /= np.linalg.norm(u)
        w = rng.normal(size=8)
        w -= (w @ u) * u
        w /= np.linalg.norm(w)
        v = math.cos(angle) * u + math.sin(angle) * w
        sims.append(cosine(project(enc, u), project(enc, v)))
    assert abs(np.mean(sims) - (1 - 2 * angle / math.pi)) < 0.05


def test_item_memory_exact_match():
    basis = random_hv(5, D, seed=3)
    mem = ItemMemory.from_basis(basis, "abcde")
    label, vec, sim = cleanup(mem, basis[2])
    assert label == "c" and sim == pytest.approx(1.0)
    assert (vec == basis[2]).all()


def test_item_memory_recovers_noisy_entry(rng):
    basis = random_hv(10, D, seed=4)
    mem = ItemMemory.from_basis(basis)
    for k in range(10):
        noisy = basis[k].copy()
        noisy[rng.choice(D, D // 10, replace=False)] *= -1
        label, _, sim = mem.cleanup(noisy)
        assert label == k
        assert sim == pytest.approx(0.8, abs=1e-9)


def test_cleanup_is_idempotent(rng):
    mem = ItemMemory.from_basis(random_hv(6, 1000, seed=5))
    for _ in range(10):
        query = rng.normal(size=1000)
        label, vec, _ = cleanup(mem, query)
        assert cleanup(mem, vec)[0] == label


def test_cleanup_tie_goes_to_first_inserted():
    v = random_bipolar(16, 0)
    mem = ItemMemory([("first", v), ("second", -v)])
    # orthogonal-to-both query: equal (zero) similarity
    q = np.zeros(16)
    q[0] = 1
    q[1] = v[0] * v[1] * -1
    sims = mem.similarities(q)
    assert sims[0] == sims[1]
    assert cleanup(mem, q)[0] == "first"


def test_item_memory_errors():
    mem = ItemMemory()
    with pytest.raises(ValueError):
        cleanup(mem, np.ones(4))
    mem.add("a", np.ones(4))
    with pytest.raises(KeyError):
        mem.add("a", -np.ones(4))
    with pytest.raises(DimensionMismatchError):
        mem.add("b", np.ones(5))
    with pytest.raises(ValueError):
        mem.add("c", np.array([1.0, 2.0, 1.0, 1.0]))
    with pytest.raises(ZeroNormError):
        cleanup(mem, np.zeros(4))


def test_codebook_is_order_independent():
    a = Codebook(256, seed=3)
    b = Codebook(256, seed=3)
    a.encode(list("abc"))
    b.encode(list("cba"))
    for ch in "abc":
        assert (a.get(ch) == b.get(ch)).all()
    assert not (Codebook(256, seed=4).get("a") == a.get("a")).all()
    assert a.encode([]).shape == (0, 256)
    assert abs(cosine(a.get("a"), a.get("b"))) < 0.3

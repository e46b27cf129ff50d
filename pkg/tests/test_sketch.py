import math

import numpy as np
import pytest

from lpsketch import (
    ProjectorKind,
    apply,
    derive_seed,
    distortion_stats,
    extended_projector,
    projected_dimension,
    sample_projector,
)
from lpsketch.errors import BadEpsilon, BadSparsity, DimensionMismatch
from lpsketch.sketch import Projector

KINDS = ["gaussian", "rademacher", "sparse", "gaussian-orthogonal"]


@pytest.mark.parametrize("n, k", [(600, 289), (1200, 321), (2400, 352)])
def test_projected_dimension_reference_values(n, k):
    assert projected_dimension(n, 0.2) == k


def test_projected_dimension_errors():
    for eps in (0.0, 1.0, -0.1):
        with pytest.raises(BadEpsilon):
            projected_dimension(100, eps)


@pytest.mark.parametrize("kind", KINDS)
def test_same_seed_same_matrix(kind):
    a = sample_projector(kind, 20, 50, 7)
    b = sample_projector(kind, 20, 50, 7)
    np.testing.assert_array_equal(a.entries, b.entries)
    assert not np.array_equal(a.entries, sample_projector(kind, 20, 50, 8).entries)


def test_serialization_regenerates_entries():
    T = sample_projector("sparse", 10, 30, 99, q=0.01)
    d = T.to_dict()
    assert set(d) == {"kind", "q", "k", "m", "seed"}
    np.testing.assert_array_equal(Projector.from_dict(d).entries, T.entries)


def test_sparse_values_and_scale():
    q = 1 / 6
    T = sample_projector("sparse", 100, 1000, 3, q=q)
    vals = np.unique(T.entries)
    s = 1 / math.sqrt(2 * q * 100)
    np.testing.assert_allclose(vals, [-s, 0.0, s])
    # nonzero fraction: binomial with p = 1/3 over 1e5 draws, sd ~ 0.0015
    assert abs(np.mean(T.entries != 0) - 1 / 3) <= 0.01


def test_bad_sparsity():
    for q in (0.0, 0.6, -1):
        with pytest.raises(BadSparsity):
            sample_projector("sparse", 3, 3, 0, q=q)


@pytest.mark.parametrize("kind", KINDS)
def test_entry_moments(kind):
    k, m = 100, 200
    T = sample_projector(kind, k, m, 11)
    e = T.entries.ravel()
    if kind != "gaussian-orthogonal":
        assert abs(e.mean()) <= 3 * e.std() / math.sqrt(e.size)
    assert abs(np.mean(e**2) - 1 / k) <= 0.05 / k


@pytest.mark.parametrize("kind", KINDS)
def test_expected_squared_norm_is_one(kind):
    y = np.random.default_rng(0).standard_normal(200)
    y /= np.linalg.norm(y)
    vals = [np.sum(apply(sample_projector(kind, 100, 200, s), y) ** 2) for s in range(1000)]
    assert abs(np.mean(vals) - 1.0) <= 0.05


@pytest.mark.parametrize("kind", ["gaussian", "rademacher", "sparse"])
def test_nonzero_vector_never_annihilated(kind):
    y = np.zeros(30)
    y[4] = 1.0
    y[17] = -2.0
    zeros = sum(not np.any(apply(sample_projector(kind, 5, 30, s), y)) for s in range(1000))
    if kind != "sparse":
        # +-1 and +-2 never cancel, and a Gaussian row vanishes with probability 0
        assert zeros == 0
    else:
        # a row vanishes iff both entries are 0: (2/3)^2 per row, independent rows
        p = (4 / 9) ** 5
        assert abs(zeros - 1000 * p) <= 4 * math.sqrt(1000 * p * (1 - p))


def test_apply_basics():
    T = sample_projector("gaussian", 4, 6, 1)
    np.testing.assert_array_equal(apply(T, np.zeros(6)), np.zeros(4))
    x, y = np.arange(6.0), np.ones(6)
    np.testing.assert_allclose(apply(T, x + y), apply(T, x) + apply(T, y), atol=1e-12)
    assert apply(T, np.ones((6, 3))).shape == (4, 3)
    with pytest.raises(DimensionMismatch):
        apply(T, np.ones(5))


def test_apply_is_deterministic():
    M = np.random.default_rng(2).random((40, 5))
    a = apply(sample_projector("sparse", 10, 40, 5), M)
    b = apply(sample_projector("sparse", 10, 40, 5), M)
    assert a.tobytes() == b.tobytes()


def test_unit_vectors_concentrate():
    k = projected_dimension(600, 0.2)
    rng = np.random.default_rng(4)
    Y = rng.standard_normal((100, 700))
    Y /= np.linalg.norm(Y, axis=1, keepdims=True)
    T = sample_projector("sparse", k, 700, 12)
    norms = np.linalg.norm(apply(T, Y.T), axis=0)
    assert np.mean((norms >= 0.8) & (norms <= 1.2)) >= 0.9


def test_extended_projector():
    T = sample_projector("gaussian", 3, 5, 0)
    np.testing.assert_array_equal(extended_projector(T, 0), T.entries)
    E = extended_projector(T, 1)
    assert E.shape == (4, 6)
    M = np.random.default_rng(1).standard_normal((6, 7))
    out = E @ M
    np.testing.assert_array_equal(out[0], M[0])
    np.testing.assert_allclose(out[1:], T.entries @ M[1:])


def test_distortion_of_zero_and_y():
    T = sample_projector("gaussian", 10, 20, 3)
    y = np.random.default_rng(5).standard_normal(20)
    s = distortion_stats(T, [np.zeros(20), y], 0.2)
    assert s.n_pairs == 1
    assert s.max_relative_error == pytest.approx(abs(np.linalg.norm(T.entries @ y) / np.linalg.norm(y) - 1))


def test_distortion_random_points():
    rng = np.random.default_rng(6)
    P = rng.standard_normal((50, 1000))
    T = sample_projector("gaussian", projected_dimension(50, 0.2), 1000, 1)
    s = distortion_stats(T, P, 0.2)
    assert s.n_pairs == 50 * 49 // 2
    assert 0 <= s.fraction_within <= 1 and s.fraction_within >= 0.9


def test_inner_products_of_orthonormal_pairs():
    # observed eps over 20 seeds: the bound holds for most projectors
    k = projected_dimension(50, 0.2)
    Q = np.linalg.qr(np.random.default_rng(7).standard_normal((500, 10)))[0].T
    ok = 0
    for s in range(20):
        st = distortion_stats(sample_projector("gaussian", k, 500, s), Q, 0.2)
        ok += st.inner_product_max_violation <= 0.2 * 1.5
        assert st.inner_product_violation_fraction <= 0.2
    assert ok >= 18


def test_distortion_shape_check():
    with pytest.raises(DimensionMismatch):
        distortion_stats(sample_projector("gaussian", 2, 3, 0), np.ones((3, 4)), 0.1)


def test_derive_seed():
    assert derive_seed(1, 2) == derive_seed(1, 2)
    assert derive_seed(1, 2) != derive_seed(1, 3) != derive_seed(2, 2)
    assert 0 <= derive_seed(0, 0) < 2**64


def test_orthogonal_rows():
    T = sample_projector(ProjectorKind.GAUSSIAN_ORTHOGONAL, 5, 40, 0)
    np.testing.assert_allclose(T.entries @ T.entries.T, (40 / 5) * np.eye(5), atol=1e-12)
    with pytest.raises(ValueError):
        sample_projector(ProjectorKind.GAUSSIAN_ORTHOGONAL, 50, 40, 0)

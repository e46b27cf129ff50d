import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lpsketch import StandardFormLp, denormalize_solution, normalize, quality_metrics, solve
from lpsketch.errors import DimensionMismatch, ZeroColumn, ZeroRhs
from lpsketch.lp_model import NormalizedLp, load_lp, save_lp

from conftest import random_feasible_lp


def test_rejects_inconsistent_shapes():
    with pytest.raises(DimensionMismatch):
        StandardFormLp([1, 1], [[1, 1]], [1, 2])
    with pytest.raises(DimensionMismatch):
        StandardFormLp([1], [[1, 1]], [1])
    with pytest.raises(ValueError):
        StandardFormLp([1], [[1]], [1], theta=0.0)


def test_arrays_are_read_only():
    lp = StandardFormLp([1.0], [[1.0]], [1.0])
    with pytest.raises(ValueError):
        lp.A[0, 0] = 2.0


def test_normalize_identity_columns():
    nrm = normalize(StandardFormLp([1, 1], np.eye(2), [2, 0]))
    np.testing.assert_array_equal(nrm.lp.A, np.eye(2))
    np.testing.assert_array_equal(nrm.lp.b, [1, 0])
    assert nrm.rhs_scale == 2


def test_normalize_three_four_five():
    nrm = normalize(StandardFormLp([1], [[3], [4]], [3, 4]))
    np.testing.assert_allclose(nrm.lp.A[:, 0], [0.6, 0.8], atol=1e-15)
    assert nrm.column_scales[0] == 5


def test_normalize_errors():
    with pytest.raises(ZeroRhs):
        normalize(StandardFormLp([1, 1], np.eye(2), [0, 0]))
    with pytest.raises(ZeroColumn) as info:
        normalize(StandardFormLp([1, 1, 1], [[1, 0, 0], [0, 0, 1]], [1, 1]))
    assert info.value.column == 1


def test_normalized_invariants(rng):
    lp, _ = random_feasible_lp(rng, 5, 8)
    nrm = normalize(lp)
    np.testing.assert_allclose(np.linalg.norm(nrm.lp.A, axis=0), 1.0, atol=1e-12)
    assert abs(np.linalg.norm(nrm.lp.b) - 1.0) <= 1e-12
    assert (nrm.column_scales > 0).all() and nrm.rhs_scale > 0


def test_normalize_round_trip_feasibility(rng):
    lp, _ = random_feasible_lp(rng, 5, 8)
    nrm = normalize(lp)
    res = solve(nrm.lp)
    x = denormalize_solution(res.x, nrm)
    assert np.abs(lp.A @ x - lp.b).max() <= 1e-9 * (1 + np.abs(lp.b).max())
    # optimum of the scaled problem maps to the optimum of the original one
    direct = solve(lp)
    assert abs(lp.c @ x - direct.objective) <= 1e-9 * abs(direct.objective)
    assert abs(nrm.rhs_scale * nrm.cost_scale * res.objective - direct.objective) <= 1e-9 * direct.objective


@pytest.mark.parametrize(
    "scales, rhs, xt, expected",
    [((1.0, 1.0), 2.0, (1.0, 0.0), (2.0, 0.0)), ((1.0, 1.0), 1.0, (0.3, 0.7), (0.3, 0.7)), ((5.0,), 2.0, (1.0,), (0.4,))],
)
def test_denormalize_formula(scales, rhs, xt, expected):
    lp = StandardFormLp(np.ones(len(scales)), np.eye(1, len(scales)), [1.0])
    nrm = NormalizedLp(lp, np.array(scales), rhs)
    np.testing.assert_allclose(denormalize_solution(xt, nrm), expected)


def test_denormalize_dimension_check():
    nrm = normalize(StandardFormLp([1, 1], np.eye(2), [1, 1]))
    with pytest.raises(DimensionMismatch):
        denormalize_solution([1.0], nrm)


def test_metrics_at_optimum():
    lp = StandardFormLp([1, 1], np.eye(2), [1, 1])
    q = quality_metrics(lp, [1, 1], 2.0, 2.0)
    assert (q.feas, q.neg, q.obj) == (0.0, 0.0, 0.0)


def test_metrics_hand_computed():
    lp = StandardFormLp([1, 1], np.eye(2), [1, 1])
    q = quality_metrics(lp, [1, -1], 2.0, 0.0)
    assert q.feas == 1.0
    assert q.neg == 0.5
    assert q.obj == 1.0


def test_metrics_conventions():
    lp = StandardFormLp([1, 1], np.eye(2), [1, 1])
    q = quality_metrics(lp, [0, 0], 0.0, 0.5)
    assert q.neg == 0.0
    assert q.obj == 0.5 and q.obj_absolute


def _scalar_metrics(A, b, x, vr, vc):
    # loop-based second implementation
    m, n = len(A), len(A[0])
    num = 0.0
    for i in range(m):
        num += abs(sum(A[i][j] * x[j] for j in range(n)) - b[i])
    feas = num / sum(abs(v) for v in b)
    x1 = sum(abs(v) for v in x)
    neg = sum(-v for v in x if v < 0) / x1
    return feas, neg, abs(vr - vc) / abs(vr)


def test_metrics_match_scalar_recomputation(rng):
    from lpsketch import retrieve_pseudoinverse

    lp, _ = random_feasible_lp(rng, 10, 15)
    res = solve(lp)
    H = list(res.basis)[:7]
    rep = retrieve_pseudoinverse(lp, H, v_reference=res.objective)
    feas, neg, obj = _scalar_metrics(lp.A.tolist(), lp.b.tolist(), rep.x.tolist(), res.objective, float(lp.c @ rep.x))
    assert abs(rep.metrics.feas - feas) <= 1e-12
    assert abs(rep.metrics.neg - neg) <= 1e-12
    assert abs(rep.metrics.obj - obj) <= 1e-12


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_metrics_permutation_invariance(seed):
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((4, 6))
    b = rng.standard_normal(4)
    x = rng.standard_normal(6)
    pr, pc = rng.permutation(4), rng.permutation(6)
    a = quality_metrics(StandardFormLp(np.ones(6), A, b), x, 1.5, 1.2)
    p = quality_metrics(StandardFormLp(np.ones(6), A[pr][:, pc], b[pr]), x[pc], 1.5, 1.2)
    assert a.feas == pytest.approx(p.feas, rel=1e-12)
    assert a.neg == pytest.approx(p.neg, rel=1e-12)
    assert a.obj == p.obj


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), m=st.integers(1, 6), extra=st.integers(0, 6))
def test_normalize_maps_feasible_points_back(seed, m, extra):
    rng = np.random.default_rng(seed)
    n = m + extra
    lp, _ = random_feasible_lp(rng, m, n)
    nrm = normalize(lp)
    # any feasible point of the scaled LP: scale the planted one
    res = solve(nrm.lp)
    x = denormalize_solution(res.x, nrm)
    assert np.abs(lp.A @ x - lp.b).sum() <= 1e-9 * np.abs(lp.b).sum()


def test_feas_zero_iff_exact(rng):
    lp, x = random_feasible_lp(rng, 3, 5)
    assert quality_metrics(lp, x, 1.0, 1.0).feas <= 1e-15
    y = x.copy()
    y[0] += 1e-6
    assert quality_metrics(lp, y, 1.0, 1.0).feas > 0


def test_json_round_trip(tmp_path, rng):
    lp = StandardFormLp(rng.standard_normal(4), rng.standard_normal((2, 4)), rng.standard_normal(2), theta=3.25)
    path = tmp_path / "lp.json"
    save_lp(lp, path)
    doc = json.loads(path.read_text())
    assert set(doc) == {"m", "n", "c", "A", "b", "theta"}
    back = load_lp(path)
    np.testing.assert_array_equal(back.A, lp.A)
    np.testing.assert_array_equal(back.b, lp.b)
    np.testing.assert_array_equal(back.c, lp.c)
    assert back.theta == lp.theta


def test_json_size_mismatch():
    with pytest.raises(DimensionMismatch):
        StandardFormLp.from_dict({"m": 2, "n": 1, "c": [1], "A": [[1]], "b": [1]})

import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from geoinv import _accel
from geoinv.errors import DegenerateCloud, DimensionMismatch, InvalidDimension, MalformedFile
from geoinv.moments import (PointCloud, central_moments, centroid, format_points, moments_from_mapping,
                            normalize_cloud, parse_points, random_cloud, uniform_scale_normalize)
from geoinv.multiindex import enumerate_up_to

SQUARE = PointCloud([[1, 1], [1, -1], [-1, 1], [-1, -1]])


def naive_moments(coords, weights, max_order):
    """Double loop over points and indices, no vectorization."""
    n = coords.shape[1]
    c = [sum(w * x[j] for x, w in zip(coords, weights)) / sum(weights) for j in range(n)]
    out = {}
    for idx in enumerate_up_to(n, max_order):
        total = 0.0
        for x, w in zip(coords, weights):
            t = w
            for j in range(n):
                t *= (x[j] - c[j]) ** idx[j]
            total += t
        out[idx] = total
    return out


@pytest.mark.parametrize("coords, expected", [
    ([[3, 4]], [3, 4]),
    ([[0, 0], [2, 0]], [1, 0]),
    (SQUARE.coords, [0, 0]),
])
def test_centroid_examples(coords, expected):
    np.testing.assert_allclose(centroid(PointCloud(coords)), expected)


def test_unit_square_moments():
    t = central_moments(SQUARE, 2)
    assert t[(0, 0)] == 4
    assert t[(2, 0)] == 4 and t[(0, 2)] == 4
    assert t[(1, 1)] == 0


def test_first_order_moments_vanish():
    t = central_moments(random_cloud(3, 200, seed=4), 1)
    for idx in [(1, 0, 0), (0, 1, 0), (0, 0, 1)]:
        assert abs(t[idx]) < 1e-13


def test_matches_naive_oracle():
    rng = np.random.default_rng(11)
    coords = rng.normal(size=(100, 3)) + [1.0, -2.0, 0.5]
    weights = rng.uniform(0.2, 2.0, size=100)
    t = central_moments(PointCloud(coords, weights), 4)
    ref = naive_moments(coords, weights, 4)
    scale = max(abs(v) for v in ref.values())
    for idx, v in ref.items():
        assert abs(t[idx] - v) <= 1e-12 * max(abs(v), 1e-3 * scale)


def test_uniform_scale_normalize():
    t = central_moments(random_cloud(2, 50, seed=1), 3)
    norm = uniform_scale_normalize(t)
    assert norm[(0, 0)] == pytest.approx(1.0)
    assert norm[(1, 1)] == pytest.approx(t[(1, 1)] / t[(0, 0)] ** 2)


def test_uniform_scale_normalize_is_scale_invariant():
    cloud = random_cloud(2, 80, seed=2)
    sigma = 2.0
    scaled = PointCloud(cloud.coords * sigma, cloud.weights * sigma ** 2)
    a = uniform_scale_normalize(central_moments(cloud, 4))
    b = uniform_scale_normalize(central_moments(scaled, 4))
    for idx in a:
        assert b[idx] == pytest.approx(a[idx], rel=1e-10, abs=1e-14)


def test_translation_does_not_change_moments():
    cloud = random_cloud(3, 60, seed=3)
    moved = PointCloud(cloud.coords + [5.0, -7.0, 2.5], cloud.weights)
    a, b = central_moments(cloud, 3), central_moments(moved, 3)
    for idx in a.values:
        assert b[idx] == pytest.approx(a[idx], rel=1e-9, abs=1e-12)


def test_numpy_and_compiled_paths_agree():
    if not _accel.HAVE_NUMBA:
        pytest.skip("numba unavailable")
    rng = np.random.default_rng(5)
    x = rng.normal(size=(3000, 3))
    w = rng.uniform(0.5, 1.5, size=3000)
    exps = np.array(enumerate_up_to(3, 4), dtype=np.int64)
    for comp in (False, True):
        a = _accel.moment_sums_numpy(x, w, exps, comp)
        b = _accel.moment_sums_numba(x, w, exps, comp)
        np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-12)


def test_compensated_path_agrees():
    cloud = random_cloud(2, 5000, seed=6)
    a = central_moments(cloud, 4, compensated=False)
    b = central_moments(cloud, 4, compensated=True)
    for idx in a.values:
        assert b[idx] == pytest.approx(a[idx], rel=1e-11, abs=1e-14)


def test_normalize_cloud():
    cloud = normalize_cloud(PointCloud([[0, 0], [4, 0], [0, 4]], [1, 2, 3]))
    assert cloud.total_weight() == pytest.approx(1.0)
    np.testing.assert_allclose(centroid(cloud), [0, 0], atol=1e-15)
    r2 = cloud.weights @ (cloud.coords ** 2).sum(axis=1)
    assert r2 == pytest.approx(1.0)


def test_degenerate_clouds():
    with pytest.raises(DegenerateCloud):
        centroid(PointCloud([[1, 1]], [0.0]))
    with pytest.raises(DegenerateCloud):
        normalize_cloud(PointCloud([[1, 1], [1, 1]]))


def test_cloud_shape_errors():
    with pytest.raises(DimensionMismatch):
        PointCloud([[1, 2], [3, 4]], [1.0])
    with pytest.raises(InvalidDimension):
        PointCloud([[1], [2]])


def test_parse_points_with_and_without_weights():
    c = parse_points("# a comment\n1 2\n3 4\n")
    assert c.dimension == 2 and list(c.weights) == [1, 1]
    c = parse_points("1 2 0.5\n3 4 2\n", dim=2)
    assert list(c.weights) == [0.5, 2.0]
    c = parse_points("# dim=2\n1 2 0.5\n")
    assert c.dimension == 2 and c.weights[0] == 0.5


@pytest.mark.parametrize("text", ["1 2\n3\n", "1 x\n", "", "# dim=2\n1 2 3 4\n"])
def test_parse_points_errors(text):
    with pytest.raises(MalformedFile):
        parse_points(text)


def test_parse_points_reports_line():
    with pytest.raises(MalformedFile) as exc:
        parse_points("1 2\n\n3 4\n5\n")
    assert exc.value.line == 4


def test_format_round_trip():
    cloud = random_cloud(3, 20, seed=9)
    back = parse_points(format_points(cloud))
    np.testing.assert_array_equal(back.coords, cloud.coords)
    np.testing.assert_array_equal(back.weights, cloud.weights)


def test_moments_from_mapping():
    t = moments_from_mapping(2, {(0, 0): 4, (2, 0): 4})
    assert t.max_order == 2 and t.mu0 == 4
    with pytest.raises(DimensionMismatch):
        moments_from_mapping(2, {(0, 0, 0): 1})


@settings(max_examples=30, deadline=None)
@given(arrays(np.float64, (12, 2), elements=st.floats(-5, 5)),
       arrays(np.float64, (2,), elements=st.floats(-50, 50)))
def test_translation_property(coords, shift):
    w = np.linspace(0.5, 1.5, 12)
    a = central_moments(PointCloud(coords, w), 3)
    b = central_moments(PointCloud(coords + shift, w), 3)
    for idx in a.values:
        assert b[idx] == pytest.approx(a[idx], rel=1e-6, abs=1e-6)


def test_disable_flag_selects_numpy():
    env = dict(os.environ, GEOINV_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", "from geoinv import _accel; print(_accel.backend())"],
                         capture_output=True, text=True, env=env, check=True)
    assert out.stdout.strip() == "numpy"

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geoinv.errors import BasisMismatch
from geoinv.generators import (RotationPlane, derivative_single, fan_planes, generator_sign_convention,
                               operator_from_generator, operator_on_basis, planes_for, restricted_operator,
                               rotation_planes)
from geoinv.moments import PointCloud, central_moments, random_cloud
from geoinv.multiindex import MultiIndex, product_basis
from geoinv.poly import evaluate_vector


@pytest.fixture
def v12():
    return product_basis([(2, 1)], 2)


def test_planes():
    assert rotation_planes(2) == [(1, 2)]
    assert rotation_planes(3) == [(1, 2), (1, 3), (2, 3)]
    assert len(rotation_planes(4)) == 6
    assert fan_planes(4) == [(1, 2), (1, 3), (1, 4)]
    assert planes_for(3, "all") == rotation_planes(3)
    with pytest.raises(ValueError):
        planes_for(3, "diagonal")


def test_sign_convention_2d():
    assert generator_sign_convention(RotationPlane(1, 2), 2) == [[0, -1], [1, 0]]


def test_sign_convention_3d_yz_block():
    # unit speed about the x-axis: dy/dt = -z, dz/dt = y
    assert generator_sign_convention(RotationPlane(2, 3), 3) == [[0, 0, 0], [0, 0, -1], [0, 1, 0]]


@pytest.mark.parametrize("plane", rotation_planes(4))
def test_generator_antisymmetric(plane):
    E = np.array(generator_sign_convention(plane, 4))
    assert not (E + E.T).any()
    assert np.abs(E).sum() == 2


def test_invalid_plane():
    with pytest.raises(ValueError):
        generator_sign_convention(RotationPlane(2, 2), 3)
    with pytest.raises(ValueError):
        generator_sign_convention(RotationPlane(1, 4), 3)


def test_derivative_single_examples():
    p = RotationPlane(1, 2)
    assert derivative_single(MultiIndex((2, 0)), p) == {(1, 1): -2}
    assert derivative_single(MultiIndex((1, 1)), p) == {(2, 0): 1, (0, 2): -1}
    assert derivative_single(MultiIndex((0, 0, 0)), RotationPlane(1, 3)) == {}


def test_operator_on_order_two(v12):
    M = operator_on_basis(v12, RotationPlane(1, 2))
    assert M.to_dense() == [[0, -2, 0], [1, 0, -1], [0, 2, 0]]


def test_operator_is_a_copy(v12):
    M = operator_on_basis(v12, RotationPlane(1, 2))
    M.add(0, 0, 7)
    assert operator_on_basis(v12, RotationPlane(1, 2)).row(0) == {1: -2}


def test_product_rule_row():
    desc = product_basis([(2, 2)], 2)
    M = operator_on_basis(desc, RotationPlane(1, 2))
    m20, m11, m02 = MultiIndex((2, 0)), MultiIndex((1, 1)), MultiIndex((0, 2))
    row = M.row(desc.position({m20: 1, m02: 1}))
    assert row == {desc.position({m20: 1, m11: 1}): 2, desc.position({m11: 1, m02: 1}): -2}


def test_sign_flip_with_negated_generator():
    desc = product_basis([(3, 2)], 3)
    for p in rotation_planes(3):
        E = generator_sign_convention(p, 3)
        neg = [[-x for x in row] for row in E]
        assert operator_from_generator(desc, neg) == -operator_on_basis(desc, p)


def test_commutator_closure_3d():
    desc = product_basis([(2, 2)], 3)
    m12, m13, m23 = (operator_on_basis(desc, RotationPlane(*p)) for p in [(1, 2), (1, 3), (2, 3)])
    assert m12 @ m23 - m23 @ m12 == -m13


def test_disjoint_planes_commute_4d():
    desc = product_basis([(2, 1), (1, 1)], 4)
    a = operator_on_basis(desc, RotationPlane(1, 2))
    b = operator_on_basis(desc, RotationPlane(3, 4))
    assert (a @ b - b @ a).is_zero()


def test_zero_order_moment_has_zero_derivative():
    desc = product_basis([(0, 1)], 2)
    assert operator_on_basis(desc, RotationPlane(1, 2)).to_dense() == [[0]]
    # mu0 is a constant factor, so mu0 * v12 differentiates like v12
    mixed = product_basis([(0, 1), (2, 1)], 2)
    plain = product_basis([(2, 1)], 2)
    p = RotationPlane(1, 2)
    assert operator_on_basis(mixed, p).to_dense() == operator_on_basis(plain, p).to_dense()


def test_restricted_rows():
    desc = product_basis([(2, 2)], 2)
    full = operator_on_basis(desc, RotationPlane(1, 2))
    sub = restricted_operator(desc, RotationPlane(1, 2), [2, 3])
    assert sub.to_dense() == [full.to_dense()[2], full.to_dense()[3]]


def test_product_rule_term_outside_basis_raises():
    # any integer generator lifts, e.g. a stretch along x
    desc = product_basis([(2, 1)], 2)
    assert operator_from_generator(desc, [[1, 0], [0, 0]]).to_dense() == [[2, 0, 0], [0, 1, 0], [0, 0, 0]]
    # a basis missing entries cannot absorb the derivative
    partial = product_basis([(2, 1)], 2)
    object.__setattr__(partial, "_lookup", {partial[0].key(): 0})
    with pytest.raises(BasisMismatch):
        operator_from_generator(partial, generator_sign_convention(RotationPlane(1, 2), 2))


def test_plane_outside_dimension_raises(v12):
    with pytest.raises(ValueError):
        operator_on_basis(v12, RotationPlane(1, 3))


def _rotation(n, plane, angle):
    a, b = plane[0] - 1, plane[1] - 1
    R = np.eye(n)
    c, s = np.cos(angle), np.sin(angle)
    R[a, a] = R[b, b] = c
    R[b, a], R[a, b] = s, -s
    return R


@pytest.mark.parametrize("n, parts", [(2, [(2, 1)]), (2, [(3, 2)]), (3, [(2, 2)]), (4, [(2, 1), (1, 2)])])
def test_finite_difference_oracle(n, parts):
    desc = product_basis(parts, n)
    cloud = random_cloud(n, 60, seed=n)
    top = desc.max_order()
    delta = 1e-6

    def vec(c):
        t = central_moments(c, top).values
        return np.array([evaluate_vector([1], [e], t) for e in desc])

    for plane in rotation_planes(n):
        M = operator_on_basis(desc, plane).to_numpy()
        fwd = PointCloud(cloud.coords @ _rotation(n, plane, delta).T, cloud.weights)
        bwd = PointCloud(cloud.coords @ _rotation(n, plane, -delta).T, cloud.weights)
        fd = (vec(fwd) - vec(bwd)) / (2 * delta)
        exact = M @ vec(cloud)
        scale = max(np.abs(exact).max(), 1e-3)
        np.testing.assert_allclose(fd, exact, atol=1e-6 * scale)


@settings(max_examples=25, deadline=None)
@given(n=st.integers(2, 4), p=st.integers(1, 4))
def test_operator_preserves_order(n, p):
    desc = product_basis([(p, 1)], n)
    for plane in rotation_planes(n):
        M = operator_on_basis(desc, plane)
        assert M.shape == (len(desc), len(desc))
        # rotation derivatives of order-p moments are order-p combinations with zero diagonal
        assert all(r not in M.row(r) for r in range(len(desc)))

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sol3 import core
from sol3.errors import DomainError

coord = st.floats(-3, 3, allow_nan=False)
points = st.tuples(coord, coord, coord)


def test_group_mul_examples():
    assert np.allclose(core.group_mul((0, 0, 0), (1.5, -2, 0.3)), (1.5, -2, 0.3))
    assert np.allclose(core.group_mul((1.5, -2, 0.3), (0, 0, 0)), (1.5, -2, 0.3))
    expected = (1 + math.exp(-3), 2 + math.exp(3), 3)
    assert np.allclose(core.group_mul((1, 2, 3), (1, 1, 0)), expected, rtol=1e-15)


def test_group_inv_examples():
    assert np.array_equal(core.group_inv((0, 0, 0)), [0, 0, 0])
    assert np.allclose(core.group_inv((1, 0, 0)), (-1, 0, 0))
    assert np.allclose(core.group_inv((1, 2, 3)), (-math.e**3, -2 * math.exp(-3), -3))


def test_group_axioms_vectorized():
    rng = np.random.default_rng(0)
    p, q, r = rng.uniform(-3, 3, size=(3, 1000, 3))
    lhs = core.group_mul(core.group_mul(p, q), r)
    rhs = core.group_mul(p, core.group_mul(q, r))
    assert np.allclose(lhs, rhs, rtol=1e-12, atol=1e-12)
    assert np.allclose(core.group_mul(p, core.group_inv(p)), 0, atol=1e-12)
    assert np.allclose(core.group_mul(core.group_inv(p), p), 0, atol=1e-12)


@given(points, points)
def test_inverse_of_product(p, q):
    lhs = core.group_inv(core.group_mul(p, q))
    rhs = core.group_mul(core.group_inv(q), core.group_inv(p))
    assert np.allclose(lhs, rhs, rtol=1e-10, atol=1e-10)


def test_rejects_bad_points():
    with pytest.raises(DomainError):
        core.group_mul((0, 0, 400), (0, 0, 0))
    with pytest.raises(DomainError):
        core.group_inv((np.nan, 0, 0))
    with pytest.raises(DomainError):
        core.group_mul((0, 0), (0, 0, 0))


def test_metric_examples():
    assert core.metric((0, 0, 0), (1, 0, 0), (1, 0, 0)) == pytest.approx(1.0)
    assert core.metric((0, 0, 1), (1, 0, 0), (1, 0, 0)) == pytest.approx(math.e**2)
    assert core.metric((0.4, -1, 2.2), (0, 0, 1), (1, 0, 0)) == 0.0


@given(points, points, points)
@settings(max_examples=200)
def test_left_invariance(p, q, u):
    """Left translation by p is an isometry: <dL u, dL u> at p*q equals <u, u> at q."""
    moved = core.left_translate_vector(p, u)
    lhs = core.metric(core.group_mul(p, q), moved, moved)
    rhs = core.metric(q, u, u)
    assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-12)


def test_frame_conversion_examples():
    assert np.allclose(core.coord_to_frame((0, 0, 0), (1, 2, 3)), (1, 2, 3))
    g, fp = 0.7, -1.3
    assert np.allclose(core.coord_to_frame((0, 0, g), (1, fp, 0)), (math.exp(g), fp * math.exp(-g), 0))


@given(points, points)
def test_frame_is_orthonormal(p, u):
    w = core.coord_to_frame(p, u)
    assert np.dot(w, w) == pytest.approx(core.metric(p, u, u), rel=1e-12, abs=1e-12)
    assert np.allclose(core.frame_to_coord(p, w), u, rtol=1e-12, atol=1e-12)


def test_connection_table():
    assert np.array_equal(core.connection(1, 1), [0, 0, -1])
    assert np.array_equal(core.connection(1, 2), [0, 0, 0])
    assert np.array_equal(core.connection(2, 3), [0, -1, 0])
    assert np.array_equal(core.connection(1, 3), [1, 0, 0])
    assert np.array_equal(core.connection(2, 2), [0, 0, 1])
    with pytest.raises(IndexError):
        core.connection(0, 1)
    with pytest.raises(ValueError):
        core.CONNECTION[0, 0, 0] = 1.0


def test_connection_is_metric_compatible():
    # <nabla_i E_j, E_k> + <E_j, nabla_i E_k> = 0 for an orthonormal frame
    c = core.CONNECTION
    assert np.allclose(c + np.transpose(c, (0, 2, 1)), 0)


def test_connection_matches_christoffel_oracle():
    rng = np.random.default_rng(1)
    for p in rng.uniform(-3, 3, size=(10, 3)):
        assert np.max(np.abs(core.frame_connection_fd(p) - core.CONNECTION)) < 1e-6


def test_ambient_covariant_derivative_examples():
    assert np.allclose(core.ambient_covariant_derivative((1, 0, 0), (1, 0, 0), (0, 0, 0)), (0, 0, -1))
    assert np.allclose(core.ambient_covariant_derivative((0.3, -2, 5), (0, 0, 0), (0, 0, 0)), 0)
    assert np.allclose(core.ambient_covariant_derivative((0, 1, 0), (0, 0, 1), (0, 0, 0)), (0, -1, 0))


def test_isometry_examples():
    assert np.allclose(core.apply_isometry(core.IsometryElement("translate_x", 2), (1, 1, 1)), (3, 1, 1))
    p = np.array([0.3, -1.2, 0.7])
    assert np.allclose(core.apply_isometry(core.IsometryElement("shear_z", 0), p), p)
    assert np.allclose(core.apply_isometry(core.IsometryElement("shear_z", 1), (1, 1, 0)),
                       (math.exp(-1), math.e, 1))
    with pytest.raises(ValueError):
        core.IsometryElement("rotate", 1.0)


@pytest.mark.parametrize("kind", core.IsometryElement.KINDS)
def test_isometries_preserve_metric(kind):
    rng = np.random.default_rng(2)
    for c in (-1.0, 0.5, 2.0):
        iso = core.IsometryElement(kind, c)
        for p, u in zip(rng.uniform(-2, 2, (20, 3)), rng.uniform(-2, 2, (20, 3))):
            lhs = core.metric(core.apply_isometry(iso, p), core.push_vector(iso, u), core.push_vector(iso, u))
            assert lhs == pytest.approx(core.metric(p, u, u), rel=1e-12)


def test_isometry_composition():
    a, b = core.IsometryElement("shear_z", 0.4), core.IsometryElement("shear_z", -1.1)
    p = np.array([0.5, 0.2, -0.3])
    assert np.allclose(core.apply_isometry(a.compose(b), p),
                       core.apply_isometry(a, core.apply_isometry(b, p)))


def test_killing_fields():
    kx, ky, kz = core.killing_fields((0, 0, 0))
    assert np.allclose(kz, (0, 0, 1))
    kx, ky, kz = core.killing_fields((1, 1, 0))
    assert np.allclose(kz, (-1, 1, 1))
    for p in [(2, -1, 0.5), (-0.3, 0.8, -1.2)]:
        ax, ay, _ = core.killing_fields(p)
        assert np.allclose(ax, (1, 0, 0)) and np.allclose(ay, (0, 1, 0))


@pytest.mark.parametrize("index", [0, 1, 2])
def test_killing_equation(index):
    rng = np.random.default_rng(3 + index)
    for p, u, v in zip(*rng.uniform(-1.5, 1.5, size=(3, 10, 3))):
        assert abs(core.killing_defect_fd(p, index, u, v)) < 1e-6

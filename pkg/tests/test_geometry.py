import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zernike_derham.errors import FrameUndefinedError
from zernike_derham.geometry import (
    DEFAULT_SEED,
    ROT90,
    check_symmetry_adapted,
    default_seed,
    frame,
    harmonic,
    matmul,
    matvec,
    n_weight,
    rot,
    sample_disk,
    sigma,
    t_weight,
)
from zernike_derham.zernike import FieldEvaluator, y_eval

angles = st.floats(0, 2 * np.pi, allow_nan=False)
radii = st.floats(0.05, 0.95, allow_nan=False)


def test_rot_examples():
    np.testing.assert_allclose(rot(0.0), np.eye(2), atol=1e-16)
    np.testing.assert_allclose(rot(np.pi / 2), [[0, -1], [1, 0]], atol=1e-15)
    np.testing.assert_array_equal(ROT90, [[0, -1], [1, 0]])


def test_frame_examples():
    er, et = frame(1.0, 0.0)
    np.testing.assert_allclose(er, [1, 0])
    np.testing.assert_allclose(et, [0, 1])
    er, et = frame(0.0, 2.0)
    np.testing.assert_allclose(er, [0, 1])
    np.testing.assert_allclose(et, [-1, 0])
    with pytest.raises(FrameUndefinedError):
        frame(0.0, 0.0)


def test_weight_examples():
    np.testing.assert_allclose(sigma(1.0, 0.0), np.diag([1.0, -1.0]))
    np.testing.assert_allclose(n_weight(0.6, 0.8), [[0.36, 0.48], [0.48, 0.64]], atol=1e-15)
    np.testing.assert_allclose(matmul(t_weight(0.3, 0.4), n_weight(0.3, 0.4)), 0.75 * np.eye(2), atol=1e-15)


def test_tn_product_everywhere(disk_points):
    x, y = disk_points
    TN = matmul(t_weight(x, y), n_weight(x, y))
    NT = matmul(n_weight(x, y), t_weight(x, y))
    ref = (1 - x * x - y * y) * np.eye(2)[:, :, None]
    np.testing.assert_allclose(TN, ref, atol=1e-15)
    np.testing.assert_allclose(NT, ref, atol=1e-15)


@settings(max_examples=80, deadline=None)
@given(r=radii, th=angles, phi=angles)
def test_frame_equivariance(r, th, phi):
    p = np.array([r * np.cos(th), r * np.sin(th)])
    q = rot(phi) @ p
    er, et = frame(*p)
    er2, et2 = frame(*q)
    np.testing.assert_allclose(rot(phi) @ er, er2, atol=1e-13)
    np.testing.assert_allclose(rot(phi) @ et, et2, atol=1e-13)


@settings(max_examples=80, deadline=None)
@given(r=radii, th=angles, phi=angles)
def test_weight_equivariance(r, th, phi):
    p = np.array([r * np.cos(th), r * np.sin(th)])
    R = rot(phi)
    q = R @ p
    for W in (sigma, n_weight, t_weight):
        np.testing.assert_allclose(W(*q) @ R, R @ W(*p), atol=1e-13)


def test_quarter_turn_intertwines_n_and_t(disk_points):
    x, y = disk_points
    lhs = np.einsum("ij,jkp->ikp", ROT90, n_weight(x, y))
    rhs = np.einsum("ijp,jk->ikp", t_weight(x, y), ROT90)
    np.testing.assert_allclose(lhs, rhs, atol=1e-13)


def test_normal_weight_kills_tangential_on_circle():
    th = np.linspace(0, 2 * np.pi, 17)
    x, y = np.cos(th), np.sin(th)
    er, et = frame(x, y)
    # N maps everything onto the normal direction and T onto the tangential one
    np.testing.assert_allclose(np.sum(et * matvec(n_weight(x, y), np.array([np.ones_like(x), 2 * y])), axis=0), 0, atol=1e-15)
    np.testing.assert_allclose(np.sum(er * matvec(t_weight(x, y), np.array([np.ones_like(x), 2 * y])), axis=0), 0, atol=1e-15)


def test_harmonic_matches_polar(disk_points):
    x, y = disk_points
    r, th = np.hypot(x, y), np.arctan2(y, x)
    for a, b in [(0, 0), (1, 1), (3, -1), (4, 2), (5, -5)]:
        np.testing.assert_allclose(harmonic(a, b, x, y), r**a * np.exp(1j * b * th), atol=1e-14)
    with pytest.raises(ValueError):
        harmonic(1, 2, x, y)
    with pytest.raises(ValueError):
        harmonic(2, 1, x, y)


def test_symmetry_adapted_examples():
    for m in range(-4, 5):
        f = FieldEvaluator(lambda x, y, m=m: y_eval(m, x, y), "scalar", abs(m), m)
        assert check_symmetry_adapted(f, m, "scalar") < 1e-12
    const = lambda x, y: np.array([np.ones_like(x), np.zeros_like(x)])  # noqa: E731
    assert check_symmetry_adapted(const, 0, "vector") > 0.1
    zero_v = lambda x, y: np.zeros((2,) + np.shape(x))  # noqa: E731
    zero_m = lambda x, y: np.zeros((2, 2) + np.shape(x))  # noqa: E731
    assert check_symmetry_adapted(zero_v, 3, "vector") == 0.0
    assert check_symmetry_adapted(zero_m, -2, "matrix") == 0.0
    with pytest.raises(ValueError):
        check_symmetry_adapted(zero_v, 0, "tensor")


def test_wrong_mode_is_detected():
    f = lambda x, y: y_eval(2, x, y)  # noqa: E731
    assert check_symmetry_adapted(f, 2, "scalar") < 1e-12
    assert check_symmetry_adapted(f, 1, "scalar") > 1e-3


def test_sampling_is_seeded(monkeypatch):
    monkeypatch.delenv("DERHAM_SEED", raising=False)
    assert default_seed() == DEFAULT_SEED == 20260326
    monkeypatch.setenv("DERHAM_SEED", "7")
    assert default_seed() == 7
    a = sample_disk(10, np.random.default_rng(1))
    b = sample_disk(10, np.random.default_rng(1))
    np.testing.assert_array_equal(a, b)
    assert np.all(np.hypot(*sample_disk(500, np.random.default_rng(2), radius=0.5)) <= 0.5)

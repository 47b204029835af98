import numpy as np
import pytest

from conftest import poly_partial
from zernike_derham.errors import IndexRangeError, ScaledFormRequired
from zernike_derham.geometry import check_symmetry_adapted, sigma
from zernike_derham.verify import gram
from zernike_derham.zernike import (
    ModeIndex,
    enumerate_degree,
    homogeneous_basis,
    mat_y_eval,
    mat_z_eval,
    mat_z_field,
    scaled_vec_y0_eval,
    vec_y_eval,
    vec_z_eval,
    vec_z_field,
    w_eval,
    y_eval,
    z_eval,
    zernike_field,
)

P = (0.3, -0.45)


# ---------------------------------------------------------------- examples


def test_scalar_harmonic_examples():
    assert y_eval(0, *P) == 1
    assert y_eval(2, 1.0, 1.0) == pytest.approx(2j)
    assert y_eval(-2, 1.0, 1.0) == pytest.approx(-2j)


def test_scalar_zernike_examples(disk_points):
    x, y = disk_points
    for lam in (0.0, 1.0, 2.5):
        np.testing.assert_allclose(z_eval(lam, 0, 0, x, y), 1.0)
    np.testing.assert_allclose(z_eval(0, 0, 1, x, y), 2 * (x * x + y * y) - 1, atol=1e-15)
    assert z_eval(0, 0, 1, 1.0, 0.0) == pytest.approx(1.0)
    np.testing.assert_allclose(w_eval(0, 0, x, y), 1 - x * x - y * y, atol=1e-15)
    assert w_eval(0, 0, 0.5, 0.0) == pytest.approx(0.75)


def test_vector_harmonic_examples(disk_points):
    x, y = disk_points
    for s in (1, -1):
        v = vec_y_eval(s, x, y)
        np.testing.assert_allclose(v[0], 1.0)
        np.testing.assert_allclose(v[1], s * 1j)
    np.testing.assert_allclose(scaled_vec_y0_eval(1, x, y), [x - 1j * y, y + 1j * x], atol=1e-15)
    np.testing.assert_allclose(vec_y_eval(2, 1.0, 0.0), [1, 1j], atol=1e-15)
    with pytest.raises(ScaledFormRequired):
        vec_y_eval(0, *P)


def test_vector_zernike_examples(disk_points):
    x, y = disk_points
    for m in (-3, -1, 2, 4):
        np.testing.assert_allclose(vec_z_eval(1.0, m, 0, 1, x, y), vec_y_eval(m, x, y), atol=1e-14)
    np.testing.assert_allclose(vec_z_eval(0.5, 1, 1, 2, 1.0, 0.0), [1, -1j], atol=1e-15)
    v = vec_z_eval(0, 0, 1, 1, np.array([0.0]), np.array([0.0]))
    assert np.all(np.isfinite(v))


def test_matrix_examples(disk_points):
    x, y = disk_points
    Y2 = mat_y_eval(2, x, y)
    np.testing.assert_allclose(Y2[:, :, 0], [[1, 1j], [1j, -1]], atol=1e-15)
    np.testing.assert_allclose(Y2, Y2[:, :, :1] * np.ones(x.size), atol=1e-15)
    for m in (2, -3, 4):
        np.testing.assert_allclose(mat_z_eval(1.0, m, 0, 1, x, y), mat_y_eval(m, x, y), atol=1e-14)
    np.testing.assert_allclose(mat_z_eval(0.0, 2, 1, 2, 1.0, 0.0), [[1, 1j], [-1j, 1]], atol=1e-15)
    for m in (-1, 0, 1):
        with pytest.raises(ScaledFormRequired):
            mat_y_eval(m, *P)


def test_enumeration_examples():
    assert enumerate_degree("scalar_z", 2) == [ModeIndex("z", 2, 0, lam=0.0), ModeIndex("z", -2, 0, lam=0.0), ModeIndex("z", 0, 1, lam=0.0)]
    vec = {(i.m, i.j, i.nu) for i in enumerate_degree("vec_z", 2)}
    assert vec == {(3, 0, 1), (-3, 0, 1), (1, 1, 1), (-1, 1, 1), (1, 1, 2), (-1, 1, 2)}
    mat = {(i.m, i.j, i.nu) for i in enumerate_degree("mat_Z", 0)}
    assert mat == {(2, 0, 1), (-2, 0, 1), (0, 1, 2), (0, 1, 3)}


@pytest.mark.parametrize(
    "call",
    [
        lambda: vec_z_field(0, 0, 0, 1),
        lambda: vec_z_field(0, 2, 0, 2),
        lambda: vec_z_field(0, 2, 1, 3),
        lambda: mat_z_field(0, 0, 1, 1),
        lambda: mat_z_field(0, 1, 0, 1),
        lambda: mat_z_field(0, 3, 1, 4),
        lambda: mat_z_field(0, 3, 0, 2),
        lambda: enumerate_degree("z", -1),
    ],
)
def test_index_ranges(call):
    with pytest.raises(IndexRangeError):
        call()


# ---------------------------------------------------------------- invariants


@pytest.mark.parametrize("n", range(13))
def test_degree_counts(n):
    assert len(enumerate_degree("z", n)) == n + 1
    assert len(enumerate_degree("vec_z", n)) == 2 * (n + 1)
    assert len(enumerate_degree("mat_z", n)) == 4 * (n + 1)
    for fam in ("z", "vec_z", "mat_z"):
        idx = enumerate_degree(fam, n)
        assert len(set(idx)) == len(idx)
        assert all(zernike_field(i).degree == n for i in idx)


@pytest.mark.parametrize("kind,size", [("scalar", 1), ("vector", 2), ("matrix", 4)])
def test_homogeneous_bases_span(kind, size, rng):
    x, y = rng.uniform(-1, 1, (2, 80))
    for n in range(7):
        basis = homogeneous_basis(kind, n)
        assert len(basis) == size * (n + 1)
        A = np.array([np.asarray(f(x, y)).reshape(-1) for f in basis])
        assert np.linalg.matrix_rank(A, tol=1e-9) == size * (n + 1)
        for f in basis:
            np.testing.assert_allclose(f(2 * x, 2 * y), 2.0**n * f(x, y), rtol=1e-12, atol=1e-12)


@pytest.mark.parametrize("n", range(6))
def test_symmetry_adapted_modes(n):
    for fam, kind in (("z", "scalar"), ("vec_z", "vector"), ("mat_z", "matrix")):
        for idx in enumerate_degree(fam, n, 1.0):
            f = zernike_field(idx)
            peak = float(np.max(np.abs(f(*np.random.default_rng(0).uniform(-0.7, 0.7, (2, 50))))))
            assert check_symmetry_adapted(f, idx.m, kind) < 1e-12 * max(1.0, peak), idx.label()


def test_gradient_of_scalar_harmonic(rng):
    # grad y_m = |m| times the vector harmonic of the same mode
    x, y = rng.uniform(-0.6, 0.6, (2, 30))
    for m in (-4, -2, -1, 1, 3, 5):
        f = lambda xx, yy, m=m: y_eval(m, xx, yy)  # noqa: E731
        grad = np.array([poly_partial(f, 0, x, y, abs(m)), poly_partial(f, 1, x, y, abs(m))])
        np.testing.assert_allclose(grad, abs(m) * vec_y_eval(m, x, y), atol=1e-12)


def test_sigma_factor_of_second_family(disk_points):
    # z^2_{mj} carries Sigma applied to a mode m+2s vector harmonic
    x, y = disk_points
    v = vec_z_eval(0.0, 1, 1, 2, x, y)
    ref = np.einsum("ijp,jp->ip", sigma(x, y), vec_y_eval(1, x, y))
    np.testing.assert_allclose(v, ref, atol=1e-14)


@pytest.mark.parametrize("lam", [0.0, 1.0, 2.0])
def test_scalar_orthogonality_to_degree_ten(lam):
    fields = [zernike_field(i) for n in range(11) for i in enumerate_degree("z", n, lam)]
    rep = gram(fields, lam)
    assert rep.max_offdiag_rel < 1e-10
    assert rep.hermitian_residual < 1e-12
    assert rep.min_diag > 0


@pytest.mark.parametrize("lam", [0.0, 1.0, 2.0])
@pytest.mark.parametrize("fam", ["vec_z", "mat_z"])
def test_vector_and_matrix_orthogonality(lam, fam):
    fields = [zernike_field(i) for n in range(9) for i in enumerate_degree(fam, n, lam)]
    assert gram(fields, lam).max_offdiag_rel < 1e-10

import numpy as np
import pytest

from conftest import poly_partial
from zernike_derham.derham import (
    OPS,
    CylinderModeIndex,
    ExpansionTerm,
    apply_op,
    betti_numbers,
    composition_vanishes,
    curl_n,
    cyl_curl,
    cyl_div,
    cyl_grad,
    cylinder_field,
    disk_apply,
    div_t,
    enumerate_subcomplexes,
    exactness_check,
    grad_w,
    kappa,
    subcomplex,
    validate_cylinder,
)
from zernike_derham.diskbases import basis_field, n_pm_field, t_field
from zernike_derham.errors import IndexRangeError
from zernike_derham.geometry import sample_disk
from zernike_derham.verify import fd_apply
from zernike_derham.zernike import ModeIndex, w_field, z_field

Z = lambda m, j: ModeIndex("z", m, j, lam=0.0)  # noqa: E731


def cyl(domain, family, m, j, k, slot):
    zf = {
        "periodic": "exp",
        "finite": {("w", "scalar"): "c32", ("n+", "horizontal"): "c32", ("n-", "horizontal"): "c32",
                   ("z", "vertical"): "c32"}.get((family, slot), "legendre"),
    }[domain]
    return CylinderModeIndex(family, m, j, k, slot, zf)


# ---------------------------------------------------------------- disk examples


def test_gradient_examples():
    assert grad_w(0, 0) == [ExpansionTerm(-1, ModeIndex("n+", 0, 1))]
    assert grad_w(3, 2) == [ExpansionTerm(-3, ModeIndex("n+", 3, 3))]


def test_kappa_examples():
    assert kappa(0, 1) == 4
    assert abs(kappa(1, 1) - 240j / 37) < 1e-14
    assert abs(kappa(-1, 1) + 240j / 37) < 1e-14
    with pytest.raises(IndexRangeError):
        kappa(0, 0)


def test_curl_and_div_examples():
    assert curl_n(2, 1, "+") == []
    assert curl_n(0, 1, "-") == [ExpansionTerm(-4, Z(0, 1))]
    assert div_t(0, 1, "-") == [ExpansionTerm(4, Z(0, 1))]
    assert div_t(-3, 2, "+") == []
    with pytest.raises(IndexRangeError):
        curl_n(0, 0, "-")
    with pytest.raises(IndexRangeError):
        disk_apply("div", ModeIndex("w", 0, 0))


# ---------------------------------------------------------------- cylinder examples


def test_periodic_gradient_example():
    terms = cyl_grad("periodic", cyl("periodic", "w", 1, 2, 3, "scalar"))
    assert terms == [
        ExpansionTerm(-3, cyl("periodic", "n+", 1, 3, 3, "horizontal")),
        ExpansionTerm(3j, cyl("periodic", "w", 1, 2, 3, "vertical")),
    ]


def test_periodic_curl_example():
    terms = cyl_curl("periodic", cyl("periodic", "n-", 2, 1, -1, "horizontal"))
    assert terms == [
        ExpansionTerm(-1j, cyl("periodic", "t-", 2, 1, -1, "horizontal")),
        ExpansionTerm(-kappa(2, 1), cyl("periodic", "z", 2, 1, -1, "vertical")),
    ]


def test_finite_div_example():
    for k in range(4):
        terms = cyl_div("finite", cyl("finite", "z", 1, 2, k, "vertical"))
        assert terms == [ExpansionTerm(-(k + 1) * (k + 2), cyl("finite", "z", 1, 2, k + 1, "scalar"))]


def test_invalid_cylinder_indices():
    with pytest.raises(IndexRangeError):
        validate_cylinder("finite", CylinderModeIndex("w", 0, 0, 0, "scalar", "exp"))
    with pytest.raises(IndexRangeError):
        validate_cylinder("finite", CylinderModeIndex("w", 0, 0, -1, "scalar", "c32"))
    with pytest.raises(IndexRangeError):
        validate_cylinder("periodic", CylinderModeIndex("t+", 0, 0, 0, "horizontal", "exp"))
    with pytest.raises(IndexRangeError):
        cyl_grad("periodic", cyl("periodic", "z", 0, 0, 0, "scalar"))
    with pytest.raises(IndexRangeError):
        validate_cylinder("annulus", cyl("periodic", "w", 0, 0, 0, "scalar"))


# ---------------------------------------------------------------- exact disk identities


@pytest.mark.parametrize("m", range(-4, 5))
def test_gradient_theorem_exact(m, rng):
    # derivatives from contour sampling are exact up to rounding
    x, y = sample_disk(20, rng)
    for j in range(5):
        w = w_field(m, j)
        g = np.array([poly_partial(w, 0, x, y, w.degree), poly_partial(w, 1, x, y, w.degree)])
        rhs = sum(t.coefficient * basis_field(t.target)(x, y) for t in grad_w(m, j))
        np.testing.assert_allclose(g, rhs, atol=1e-11)


@pytest.mark.parametrize("m", range(-4, 5))
def test_curl_theorem_exact(m, rng):
    x, y = sample_disk(20, rng)
    for j in range(5):
        for sign in "+-":
            try:
                n = n_pm_field(m, j, sign)
                t = t_field(m, j, sign)
            except IndexRangeError:
                continue
            curl = poly_partial(n, 0, x, y, n.degree)[1] - poly_partial(n, 1, x, y, n.degree)[0]
            div = poly_partial(t, 0, x, y, t.degree)[0] + poly_partial(t, 1, x, y, t.degree)[1]
            c_rhs = sum((tt.coefficient * basis_field(tt.target)(x, y) for tt in curl_n(m, j, sign)), np.zeros(x.size))
            d_rhs = sum((tt.coefficient * basis_field(tt.target)(x, y) for tt in div_t(m, j, sign)), np.zeros(x.size))
            scale = max(1.0, float(np.max(np.abs(c_rhs))))
            np.testing.assert_allclose(curl, c_rhs, atol=1e-11 * scale)
            np.testing.assert_allclose(div, d_rhs, atol=1e-11 * scale)


# ---------------------------------------------------------------- finite differences


def _fd_residual(domain, mmax, jmax, kmax, x, y, z):
    worst = 0.0
    seen = set()
    for chain in enumerate_subcomplexes(domain, mmax, jmax, kmax):
        for i, op in enumerate(OPS[domain]):
            for b in chain.spaces[i]:
                if (op, b) in seen:
                    continue
                seen.add((op, b))
                terms = apply_op(domain, op, b)
                if domain == "disk":
                    lhs = fd_apply(op if op == "grad" else "curl2d", basis_field(b), (x, y), domain="disk")
                    rhs = sum((t.coefficient * basis_field(t.target)(x, y) for t in terms), 0.0)
                else:
                    lhs = fd_apply(op + "3d", cylinder_field(b), (x, y, z), domain=domain)
                    rhs = sum((t.coefficient * cylinder_field(t.target)(x, y, z) for t in terms), 0.0)
                worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst, len(seen)


@pytest.mark.parametrize("domain", ["disk", "periodic", "finite"])
def test_recurrences_against_finite_differences(domain, rng):
    x, y = sample_disk(50, rng, radius=0.9)
    z = rng.uniform(-0.9, 0.9, 50)
    worst, count = _fd_residual(domain, 4, 4, 3, x, y, z)
    assert count > 50
    assert worst < 1e-6


def test_finite_cylinder_z_factors():
    # d/dz[(1 - z^2) C_k] = -(k+1)(k+2) P_{k+1}: the scalar z-factors used on the finite cylinder
    z = np.linspace(-0.8, 0.8, 9)
    x = y = np.zeros_like(z)
    for k in range(4):
        f = cylinder_field(cyl("finite", "w", 0, 0, k, "scalar"))
        g = cylinder_field(cyl("finite", "w", 0, 0, k + 1, "vertical"))
        dz = fd_apply("grad3d", f, (x, y, z))[2]
        np.testing.assert_allclose(dz, -(k + 1) * (k + 2) * g(x, y, z)[2], atol=1e-6)


# ---------------------------------------------------------------- sub-complexes


def test_subcomplex_examples():
    c = subcomplex("disk", "main", 2, 0)
    rep = exactness_check(c)
    assert rep.dims == (1, 2, 1) and rep.exact
    tail = subcomplex("periodic", "vertical", 0, 0, 0)
    rep = exactness_check(tail)
    assert not rep.exact
    assert rep.homology == (0, 0, 1, 1)
    const = exactness_check(subcomplex("disk", "constants"))
    assert not const.exact and const.homology == (0, 0, 1)
    with pytest.raises(IndexRangeError):
        subcomplex("disk", "mode0", 0)
    with pytest.raises(ValueError):
        subcomplex("disk", "bogus")


@pytest.mark.parametrize("domain", ["disk", "periodic", "finite"])
def test_compositions_vanish_exactly(domain):
    for c in enumerate_subcomplexes(domain):
        assert composition_vanishes(c)
        for A, B in zip(c.maps, c.maps[1:]):
            if A.size and B.size:
                assert np.all(B @ A == 0)


@pytest.mark.parametrize(
    "domain,betti", [("disk", (0, 0, 1)), ("periodic", (0, 0, 1, 1)), ("finite", (0, 0, 0, 1))]
)
def test_betti_numbers(domain, betti):
    chains = enumerate_subcomplexes(domain)
    assert betti_numbers(domain, chains) == betti
    nonexact = [c for c in chains if not exactness_check(c).exact]
    assert len(nonexact) == 1


def _truncated_spaces(domain, M, J, K):
    """Every basis element of the truncated spaces, stage by stage."""
    ms = range(-M, M + 1)
    jm = lambda m: 1 if m == 0 else 0  # noqa: E731
    if domain == "disk":
        return [
            {ModeIndex("w", m, j) for m in ms for j in range(J + 1)},
            {ModeIndex("n+", m, j) for m in ms for j in range(1, J + 2)}
            | {ModeIndex("n-", m, j) for m in ms for j in range(jm(m), J + 2)},
            {Z(m, j) for m in ms for j in range(J + 2)},
        ]
    C = lambda *a: cyl(domain, *a)  # noqa: E731
    if domain == "periodic":
        ks = range(-K, K + 1)
        k1 = k2 = ks
    else:
        ks, k1, k2 = range(K + 1), range(K + 2), range(K + 2)
    return [
        {C("w", m, j, k, "scalar") for m in ms for j in range(J + 1) for k in ks},
        {C("n+", m, j, k, "horizontal") for m in ms for j in range(1, J + 2) for k in ks}
        | {C("n-", m, j, k, "horizontal") for m in ms for j in range(jm(m), J + 2) for k in ks}
        | {C("w", m, j, k, "vertical") for m in ms for j in range(J + 1) for k in k1},
        {C("t+", m, j, k, "horizontal") for m in ms for j in range(1, J + 2) for k in k1}
        | {C("t-", m, j, k, "horizontal") for m in ms for j in range(jm(m), J + 2) for k in k1}
        | {C("z", m, j, k, "vertical") for m in ms for j in range(J + 2) for k in ks},
        {C("z", m, j, k, "scalar") for m in ms for j in range(J + 2) for k in k2},
    ]


@pytest.mark.parametrize("domain", ["disk", "periodic", "finite"])
def test_every_basis_element_lies_in_exactly_one_chain(domain):
    M, J, K = 3, 2, 2
    want = _truncated_spaces(domain, M, J, K)
    counts = [dict() for _ in want]
    for c in enumerate_subcomplexes(domain, M, J, K):
        for s, space in enumerate(c.spaces):
            for b in space:
                counts[s][b] = counts[s].get(b, 0) + 1
    for s in range(len(want)):
        assert set(counts[s]) == want[s]
        assert set(counts[s].values()) == {1}


def test_disk_gradient_of_constant_weight():
    x, y = np.array([0.3, -0.1]), np.array([0.4, 0.7])
    (term,) = grad_w(0, 0)
    np.testing.assert_allclose(term.coefficient * basis_field(term.target)(x, y), -2 * np.array([x, y]), atol=1e-15)
    np.testing.assert_allclose(z_field(0, 0, 0)(x, y), 1.0)

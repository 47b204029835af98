"""Verification suites, one per acceptance criterion.

Each suite returns a :class:`SuiteResult` made of named checks with a
measured value and a tolerance.  The CLI ``verify`` command and the
acceptance tests both run these.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .derham import (
    DOMAINS,
    OPS,
    apply_op,
    betti_numbers,
    composition_vanishes,
    curl_n,
    cylinder_field,
    enumerate_subcomplexes,
    exactness_check,
    grad_w,
    kappa,
)
from .diskbases import basis_field, n_field, n_pm_field, t_field, t_nu_field
from .geometry import default_seed, sample_disk
from .modm import (
    block_jacobi,
    cosine_distance,
    family_position,
    lr_blocks,
    p_ab_eval,
    position_label,
    q_coeffs,
    q_element,
    q_eval,
    q_weight,
    rq_const,
    weight_modify_lu,
)
from .verify import brute_orthogonalize, fd_apply, gram, m_gram
from .zernike import ModeIndex, enumerate_degree, w_field, z_field, zernike_field


@dataclass
class Check:
    name: str
    value: float
    tol: float
    passed: bool | None = None
    boolean: bool = False

    def __post_init__(self):
        if self.passed is None:
            self.passed = bool(self.value < self.tol)

    @classmethod
    def flag(cls, name: str, ok: bool) -> "Check":
        return cls(name, 0.0 if ok else 1.0, 0.5, bool(ok), boolean=True)

    def line(self) -> str:
        head = "PASS" if self.passed else "FAIL"
        if self.boolean:
            return f"{head} {self.name}"
        return f"{head} {self.name}: {self.value:.3e} (tol {self.tol:.0e})"


@dataclass
class SuiteResult:
    name: str
    criterion: int
    title: str
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, value: float, tol: float) -> None:
        self.checks.append(Check(name, float(value), tol))

    def worst(self) -> float:
        return max((c.value / c.tol for c in self.checks), default=0.0)


def _rng(seed: int | None) -> np.random.Generator:
    return np.random.default_rng(default_seed() if seed is None else seed)


# ---------------------------------------------------------------- 1


def suite_zernike(lams=(0.0, 1.0, 2.0), maxdeg: int = 8) -> SuiteResult:
    res = SuiteResult("zernike", 1, "scalar/vector/matrix Zernike orthogonality")
    t0 = time.perf_counter()
    for lam in lams:
        for fam in ("z", "vec_z", "mat_z"):
            fields = [zernike_field(i) for n in range(maxdeg + 1) for i in enumerate_degree(fam, n, lam)]
            rep = gram(fields, lam)
            res.add(f"{fam} lam={lam:g} maxdeg={maxdeg} max_offdiag_rel", rep.max_offdiag_rel, 1e-10)
    res.add("runtime seconds", time.perf_counter() - t0, 10.0)
    return res


# ---------------------------------------------------------------- 2


def _q_family(b: int, maxdeg: int) -> list:
    return [q_element(b, *reversed(position_label(i))) for i in range(2 * maxdeg + 1)]


def suite_qbasis(bs=(0, 1, 2, 3), maxdeg: int = 8) -> SuiteResult:
    res = SuiteResult("qbasis", 2, "q-basis orthogonality under diag(1, 1-t) t^b")
    for b in bs:
        G = m_gram(_q_family(b, maxdeg), q_weight(b))
        d = np.sqrt(np.abs(np.diag(G)))
        R = np.abs(G) / np.outer(d, d)
        np.fill_diagonal(R, 0.0)
        res.add(f"b={b} n<={maxdeg} max_offdiag_rel", R.max(), 1e-10)
    return res


# ---------------------------------------------------------------- 3


def suite_lu(bs=(0, 1, 2), maxdeg: int = 8) -> SuiteResult:
    res = SuiteResult("lu", 3, "LU weight modification equals the closed-form q-basis")
    for b in bs:
        lu = weight_modify_lu(q_weight(b), maxdeg)
        brute = brute_orthogonalize(q_weight(b), maxdeg)
        closed = [q_coeffs(b, *reversed(position_label(i))) for i in range(2 * maxdeg + 1)]
        res.add(
            f"b={b} LU vs closed form cosine distance",
            max(cosine_distance(f.coeffs, q.coeffs) for f, q in zip(lu, closed)),
            1e-9,
        )
        res.add(
            f"b={b} brute force vs closed form cosine distance",
            max(cosine_distance(f.coeffs, q.coeffs) for f, q in zip(brute, closed)),
            1e-9,
        )
    return res


# ---------------------------------------------------------------- 4


def _pblock(b: int, n: int, t) -> np.ndarray:
    """Stack (2, size, T) of the block-n members (p_n^2, p_n^1), or p_0^1."""
    if n == 0:
        return p_ab_eval(0, b, 1, 0, t)[:, None, :]
    return np.stack([p_ab_eval(0, b, 2, n, t), p_ab_eval(0, b, 1, n, t)], axis=1)


def block_recurrence_residual(b: int, which: str, nmax: int, t) -> float:
    T = block_jacobi(b, which, nmax + 2)
    S = np.array([1.0, -1.0])[:, None, None] if which == "T2" else 1.0
    worst = 0.0
    for n in range(nmax + 1):
        lhs = t * S * _pblock(b, n, t)
        rhs = np.einsum("ikt,kj->ijt", _pblock(b, n, t), T.A[n]) + np.einsum("ikt,kj->ijt", _pblock(b, n + 1, t), T.B[n])
        if n > 0:
            rhs = rhs + np.einsum("ikt,kj->ijt", _pblock(b, n - 1, t), T.C[n])
        scale = np.maximum(1.0, np.abs(lhs))
        worst = max(worst, float(np.max(np.abs(lhs - rhs) / scale)))
    return worst


def raising_lowering_residuals(b: int, nmax: int, t) -> list[float]:
    """Residuals of the four raising/lowering identities between p^{(0,b)} and q^{(b)}."""

    def p(nu, n):
        return p_ab_eval(0, b, nu, n, t)

    def q(nu, n):
        if n < 0 or (nu == 2 and n == 0):
            return np.zeros((2, t.size))
        return q_eval(b, nu, n, t)

    D = np.array([np.ones_like(t), 1 - t])
    worst = [0.0] * 4

    def upd(i, lhs, terms):
        rhs = sum(terms)
        scale = np.maximum(1.0, np.abs(lhs) + sum(np.abs(x) for x in terms))
        worst[i] = max(worst[i], float(np.max(np.abs(lhs - rhs) / scale)))

    for n in range(nmax + 1):
        r = rq_const(b, n)
        s = 2 * n + b
        if n >= 1:
            upd(
                0,
                p(2, n),
                [
                    -(n - 1) * (n + b + 1) / (2 * s * (s + 1)) * q(2, n - 1),
                    2 * (n + b) * (n + b + 1) / (s + 1) ** 2 * q(1, n - 1),
                    n * r / (2 * (s + 1) ** 2 * (s + 2)) * q(2, n),
                ],
            )
        lower = []
        if n >= 1:
            lower = [(n - 1) * n / (2 * s * (s + 1)) * q(2, n - 1), -2 * n * (n + b) / (s + 1) ** 2 * q(1, n - 1)]
        upd(
            1,
            p(1, n),
            lower
            + [
                n * (n + b + 1) * (6 * n + 3 * b + 5) / (2 * (s + 1) ** 2 * (s + 2)) * q(2, n),
                2 * (n + b + 1) / (s + 1) * q(1, n),
            ],
        )
        if n >= 1:
            upd(
                2,
                r * D * q(2, n),
                [
                    r * p(2, n),
                    (n + b + 1) * (6 * n + 3 * b + 5) * p(1, n),
                    -(n + b + 2) * (s + 1) * p(2, n + 1),
                    (n + 1) * (s + 1) * p(1, n + 1),
                ],
            )
        upd(3, r / (s + 1) * D * q(1, n), [(s + 3) * p(1, n), (n + b + 2) * p(2, n + 1), -(n + 1) * p(1, n + 1)])
    return worst


def suite_lemma10(bs=(0, 1, 2, 3), nmax: int = 8, npts: int = 50, seed: int | None = None) -> SuiteResult:
    res = SuiteResult("lemma10", 4, "block three-term and raising/lowering recurrences")
    t = _rng(seed).random(npts)
    for b in bs:
        for which in ("T1", "T2"):
            res.add(f"b={b} {which} three-term recurrence", block_recurrence_residual(b, which, nmax, t), 1e-11)
        for i, r in enumerate(raising_lowering_residuals(b, nmax, t)):
            res.add(f"b={b} raising/lowering identity {i + 1}", r, 1e-11)
    return res


# ---------------------------------------------------------------- 5


def lr_block_residuals(b: int, nmax: int) -> list[float]:
    N = nmax + 2
    T1 = block_jacobi(b, "T1", N)
    T2 = block_jacobi(b, "T2", N)
    L, R = lr_blocks(b, N)
    w = [0.0] * 4
    w[0] = np.max(np.abs(np.eye(1) + (T2.A[0] - T1.A[0]) / 2 - L.diag[0] @ R.diag[0]))
    for n in range(1, nmax + 1):
        lhs = np.eye(2) + (T2.A[n] - T1.A[n]) / 2
        w[0] = max(w[0], np.max(np.abs(lhs - L.diag[n] @ R.diag[n] - L.off[n - 1] @ R.off[n - 1])))
        w[1] = max(w[1], np.max(np.abs((T2.B[n - 1] - T1.B[n - 1]) / 2 - L.off[n - 1] @ R.diag[n - 1])))
        w[2] = max(w[2], np.max(np.abs((T2.C[n] - T1.C[n]) / 2 - L.diag[n - 1] @ R.off[n - 1])))
    # the same statement as one dense factorisation
    K = 2 * nmax + 1
    X = np.eye(T1.to_dense().shape[0]) + (T2.to_dense() - T1.to_dense()) / 2
    w[3] = np.max(np.abs(X[:K, :K] - (L.to_dense() @ R.to_dense())[:K, :K]))
    return [float(v) for v in w]


def suite_lemma11(bs=(0, 1, 2, 3), nmax: int = 10) -> SuiteResult:
    res = SuiteResult("lemma11", 5, "block identities for the L R factorisation")
    names = ("diagonal blocks", "sub-diagonal blocks", "super-diagonal blocks", "dense product")
    for b in bs:
        for name, r in zip(names, lr_block_residuals(b, nmax)):
            res.add(f"b={b} {name}", r, 1e-12)
    return res


# ---------------------------------------------------------------- 6, 7


def _interior(npts: int, seed: int | None):
    return sample_disk(npts, _rng(seed), radius=0.9)


def suite_gradient(mmax: int = 4, jmax: int = 4, npts: int = 50, seed: int | None = None) -> SuiteResult:
    res = SuiteResult("gradient", 6, "grad w_mj = -(j+1) n^+_{m,j+1}")
    x, y = _interior(npts, seed)
    worst = 0.0
    for m in range(-mmax, mmax + 1):
        for j in range(jmax + 1):
            lhs = fd_apply("grad", w_field(m, j), (x, y), domain="disk")
            rhs = sum(t.coefficient * basis_field(t.target)(x, y) for t in grad_w(m, j))
            worst = max(worst, float(np.max(np.linalg.norm(lhs - rhs, axis=0))))
    res.add(f"|m|<={mmax} j<={jmax} finite-difference residual", worst, 5e-6)
    # grad w_00 = -n^+_01 = -2(x, y): compare the expansion with the exact gradient of 1 - r^2
    (term,) = grad_w(0, 0)
    spot = term.coefficient * basis_field(term.target)(x, y) - (-2 * np.array([x, y]))
    res.add("grad w_00 = -2(x, y) exact", float(np.max(np.abs(spot))), 1e-14)
    return res


def suite_curl(mmax: int = 4, jmax: int = 4, npts: int = 50, seed: int | None = None) -> SuiteResult:
    res = SuiteResult("curl", 7, "curl n^+ = 0 and curl n^- = -kappa z")
    x, y = _interior(npts, seed)
    wp = wm = 0.0
    for m in range(-mmax, mmax + 1):
        for j in range(jmax + 1):
            if j >= 1:
                c = fd_apply("curl2d", n_pm_field(m, j, "+"), (x, y), domain="disk")
                assert curl_n(m, j, "+") == []
                wp = max(wp, float(np.max(np.abs(c))))
            if j >= (1 if m == 0 else 0):
                c = fd_apply("curl2d", n_pm_field(m, j, "-"), (x, y), domain="disk")
                rhs = sum(t.coefficient * basis_field(t.target)(x, y) for t in curl_n(m, j, "-"))
                wm = max(wm, float(np.max(np.abs(c - rhs))))
    res.add(f"curl n^+ residual (|m|<={mmax}, j<={jmax})", wp, 5e-6)
    res.add(f"curl n^- + kappa z residual (|m|<={mmax}, j<={jmax})", wm, 5e-6)
    res.add("kappa_(1,1) = 240/37 i", abs(kappa(1, 1) - 240j / 37), 1e-14)
    return res


# ---------------------------------------------------------------- 8


def boundary_fields(maxdeg: int = 11) -> list:
    """All implemented n- and t-type fields of degree <= maxdeg."""
    out = []
    for mm in range(maxdeg + 2):
        for m in ([mm, -mm] if mm else [0]):
            for j in range(maxdeg + 1):
                for nu in (1, 2):
                    if (m == 0 and j < 1) or (nu == 2 and j < 1):
                        continue
                    f = n_field(m, j, nu)
                    if f.degree <= maxdeg:
                        out.append(("n", f))
                        out.append(("t", t_nu_field(m, j, nu)))
                for sign in "+-":
                    if j < (1 if sign == "+" or m == 0 else 0):
                        continue
                    f = n_pm_field(m, j, sign)
                    if f.degree <= maxdeg:
                        out.append(("n", f))
                        out.append(("t", t_field(m, j, sign)))
    return out


def suite_boundary(maxdeg: int = 11, npts: int = 64) -> SuiteResult:
    res = SuiteResult("boundary", 8, "normal and tangential boundary traces")
    th = 2 * np.pi * np.arange(npts) / npts
    x, y = np.cos(th), np.sin(th)
    er = np.array([x, y])
    et = np.array([-y, x])
    wn = wt = 0.0
    count = 0
    for kind, f in boundary_fields(maxdeg):
        v = f(x, y)
        if kind == "n":
            wn = max(wn, float(np.max(np.abs(np.sum(et * v, axis=0)))))
        else:
            wt = max(wt, float(np.max(np.abs(np.sum(er * v, axis=0)))))
        count += 1
    res.add(f"max |e_theta . n| over {count // 2} fields", wn, 1e-11)
    res.add(f"max |e_r . t| over {count // 2} fields", wt, 1e-11)
    return res


# ---------------------------------------------------------------- 9


def suite_cylinder(
    domains=("periodic", "finite"), mmax: int = 3, jmax: int = 3, kmax: int = 3, npts: int = 50, seed: int | None = None
) -> SuiteResult:
    res = SuiteResult("cylinder", 9, "cylinder grad/curl/div recurrences")
    x, y = _interior(npts, seed)
    z = _rng(None if seed is None else seed + 1).uniform(-0.9, 0.9, npts)
    for domain in domains:
        worst = 0.0
        seen = set()
        comp = True
        for chain in enumerate_subcomplexes(domain, mmax, jmax, kmax):
            comp = comp and composition_vanishes(chain)
            for i, op in enumerate(OPS[domain]):
                for b in chain.spaces[i]:
                    if (op, b) in seen:
                        continue
                    seen.add((op, b))
                    lhs = fd_apply(op + "3d", cylinder_field(b), (x, y, z), domain=domain)
                    terms = apply_op(domain, op, b)
                    rhs = sum(t.coefficient * cylinder_field(t.target)(x, y, z) for t in terms) if terms else 0.0
                    worst = max(worst, float(np.max(np.abs(lhs - rhs))))
        res.add(f"{domain}: {len(seen)} expansions vs finite differences", worst, 5e-6)
        res.checks.append(Check.flag(f"{domain}: curl grad = 0 and div curl = 0 on coefficients", comp))
    return res


# ---------------------------------------------------------------- 10

EXPECTED_NONEXACT = {
    "disk": {("constants", (0, 0, None)): (0, 0, 1)},
    "periodic": {("vertical", (0, 0, 0)): (0, 0, 1, 1)},
    "finite": {("constants", (0, 0, 0)): (0, 0, 0, 1)},
}


def suite_complexes(domains=DOMAINS, mmax: int = 4, jmax: int = 4, kmax: int = 3) -> SuiteResult:
    res = SuiteResult("complexes", 10, "sub-complex exactness and Betti numbers")
    for domain in domains:
        chains = enumerate_subcomplexes(domain, mmax, jmax, kmax)
        found = {}
        comp = True
        for c in chains:
            rep = exactness_check(c)
            comp = comp and rep.composition_zero
            if not rep.exact:
                found[(c.kind, c.params)] = rep.homology
        ok = found == EXPECTED_NONEXACT[domain]
        res.checks.append(Check.flag(f"{domain}: {len(chains)} chains, non-exact = {sorted(found)}", ok))
        res.checks.append(Check.flag(f"{domain}: compositions vanish", comp))
        total = sum(betti_numbers(domain, chains))
        want = 2 if domain == "periodic" else 1
        res.checks.append(Check.flag(f"{domain}: total Betti number {total} (expected {want})", total == want))
    return res


SUITES = {
    "zernike": suite_zernike,
    "qbasis": suite_qbasis,
    "lu": suite_lu,
    "lemma10": suite_lemma10,
    "lemma11": suite_lemma11,
    "gradient": suite_gradient,
    "curl": suite_curl,
    "boundary": suite_boundary,
    "cylinder": suite_cylinder,
    "complexes": suite_complexes,
}

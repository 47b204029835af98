"""Command-line front end.

Commands: ``eval`` (one basis element at one point), ``gram`` (Gram matrix
of a truncated family), ``verify`` (run an acceptance suite) and ``field``
(sample a field on a grid or on the boundary ring).

Exit codes: 0 success, 1 usage error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import inspect
import json
import sys

import numpy as np

from . import suites
from .derham import DOMAINS, enumerate_subcomplexes, exactness_check
from .diskbases import N_WEIGHT, enumerate_v_degree, n_field, n_pm_field, t_field, t_nu_field, v_n_field
from .verify import gram
from .zernike import (
    FAMILY_ALIASES,
    enumerate_degree,
    mat_y_field,
    mat_z_field,
    vec_y_field,
    vec_z_field,
    w_field,
    z_field,
    zernike_field,
)

EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 1, 2

FIELD_FAMILIES = ("z", "w", "vec_y", "vec_z", "mat_y", "mat_z", "vN", "n", "t", "n+", "n-", "t+", "t-")
GRAM_FAMILIES = ("z", "w", "vec_z", "mat_z", "vN")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------- formatting


def _fmt_real(v: float) -> str:
    s = "%.15g" % v
    return "0" if s == "-0" else s


def fmt_value(v) -> str:
    """Stdout form: reals plainly, complex numbers as (re, im), arrays nested."""
    v = np.asarray(v)
    if v.ndim:
        return "(" + ", ".join(fmt_value(c) for c in v) + ")"
    z = complex(v)
    if abs(z.imag) <= 1e-13 * max(1.0, abs(z.real)):
        return _fmt_real(z.real)
    return f"({_fmt_real(z.real)}, {_fmt_real(z.imag)})"


def _e(v: float) -> str:
    return "%.15e" % v


# ---------------------------------------------------------------- field construction


def make_field(family: str, m: int, j: int, nu: int | None, lam: float):
    fam = FAMILY_ALIASES.get(family, family)
    if fam not in FIELD_FAMILIES:
        raise UsageError(f"unknown family {family!r}; choose from {', '.join(FIELD_FAMILIES)}")
    nu1 = 1 if nu is None else nu
    if fam == "z":
        return z_field(lam, m, j)
    if fam == "w":
        return w_field(m, j)
    if fam == "vec_y":
        return vec_y_field(m)
    if fam == "mat_y":
        return mat_y_field(m)
    if fam == "vec_z":
        return vec_z_field(lam, m, j, nu1)
    if fam == "mat_z":
        return mat_z_field(lam, m, j, nu1)
    if fam == "vN":
        return v_n_field(m, j, nu1)
    if fam == "n":
        return n_field(m, j, nu1)
    if fam == "t":
        return t_nu_field(m, j, nu1)
    if fam in ("n+", "n-"):
        return n_pm_field(m, j, fam[1])
    return t_field(m, j, fam[1])


def _parse_point(text: str) -> tuple[float, float]:
    try:
        x, y = (float(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"--at expects 'x,y', got {text!r}") from None
    return x, y


# ---------------------------------------------------------------- eval


def cmd_eval(args) -> int:
    f = make_field(args.family, args.m, args.j, args.nu, args.lam)
    x, y = _parse_point(args.at)
    value = f(np.array(x), np.array(y))
    if args.json:
        rec = {
            "family": args.family,
            "m": args.m,
            "j": args.j,
            "nu": args.nu,
            "value_re": np.real(value).tolist(),
            "value_im": np.imag(value).tolist(),
        }
        print(json.dumps(rec))
    else:
        print(fmt_value(value))
    return EXIT_OK


# ---------------------------------------------------------------- gram


def gram_fields(families: list[str], maxdeg: int, lam: float) -> list:
    fields = []
    for family in families:
        fam = FAMILY_ALIASES.get(family, family)
        if fam not in GRAM_FAMILIES:
            raise UsageError(f"gram supports families {', '.join(GRAM_FAMILIES)}, got {family!r}")
        for n in range(maxdeg + 1):
            if fam in ("z", "vec_z", "mat_z"):
                fields += [zernike_field(i) for i in enumerate_degree(fam, n, lam)]
            elif fam == "w":
                fields += [w_field(m, j) for m in range(-n, n + 1) for j in range(n + 1) if 2 * j + abs(m) + 2 == n]
            else:
                fields += [v_n_field(m, j, nu) for (m, j, nu) in enumerate_v_degree(n)]
    kinds = {f.kind for f in fields}
    if len(kinds) > 1:
        raise UsageError(f"cannot mix value kinds {sorted(kinds)} in one Gram matrix")
    return fields


def _write_gram(path: str, rep, labels: list[str], as_json: bool) -> None:
    G = rep.matrix
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        if as_json:
            json.dump(
                {
                    "basis": labels,
                    "matrix_re": [[_e(v) for v in row] for row in G.real],
                    "matrix_im": [[_e(v) for v in row] for row in G.imag],
                    "max_offdiag_rel": _e(rep.max_offdiag_rel),
                },
                fh,
                indent=1,
            )
            fh.write("\n")
            return
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["row", "col", "label_row", "label_col", "re", "im"])
        for i in range(G.shape[0]):
            for k in range(G.shape[1]):
                w.writerow([i, k, labels[i], labels[k], _e(G[i, k].real), _e(G[i, k].imag)])
        fh.write(f"# max_offdiag_rel={_e(rep.max_offdiag_rel)}\n")


def cmd_gram(args) -> int:
    families = [s.strip() for s in args.family.split(",") if s.strip()]
    fields = gram_fields(families, args.maxdeg, args.lam)
    weight = {"none": None, "N": N_WEIGHT}[args.weight]
    if weight is not None and fields[0].kind != "vector":
        raise UsageError("--weight N applies to vector families only")
    rep = gram(fields, args.lam, weight=weight)
    labels = [f.index.label() if f.index is not None else str(i) for i, f in enumerate(fields)]
    if args.out:
        _write_gram(args.out, rep, labels, args.json or args.out.endswith(".json"))
    print(f"basis_size={len(fields)}")
    print(f"max_offdiag_rel={_fmt_real(rep.max_offdiag_rel)}")
    return EXIT_OK if rep.max_offdiag_rel < args.tol else EXIT_FAIL


# ---------------------------------------------------------------- verify


def _suite_kwargs(name: str, args) -> dict:
    params = inspect.signature(suites.SUITES[name]).parameters
    degree_key = "nmax" if "nmax" in params else "maxdeg"
    offered = {
        "mmax": ("--mmax", args.mmax),
        "jmax": ("--jmax", args.jmax),
        "kmax": ("--kmax", args.kmax),
        "npts": ("--npts", args.npts),
        degree_key: ("--maxdeg", args.maxdeg),
        "bs": ("--b", None if args.b is None else (args.b,)),
        "lams": ("--lambda", None if args.lam is None else (args.lam,)),
        "domains": ("--domain", None if args.domain is None else (args.domain,)),
        "seed": ("--seed", args.seed),
    }
    kwargs = {}
    for key, (flag, value) in offered.items():
        if value is None:
            continue
        if key not in params:
            raise UsageError(f"suite {name!r} does not accept {flag}")
        kwargs[key] = value
    return kwargs


def _complex_table(path: str, args) -> None:
    kw = {k: getattr(args, k) for k in ("mmax", "jmax", "kmax") if getattr(args, k) is not None}
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["domain", "kind", "params", "dims", "ranks", "homology", "exact"])
        for domain in (args.domain,) if args.domain else DOMAINS:
            for c in enumerate_subcomplexes(domain, **kw):
                rep = exactness_check(c)
                w.writerow(
                    [domain, c.kind, " ".join(map(str, c.params)), " ".join(map(str, rep.dims)),
                     " ".join(map(str, rep.ranks)), " ".join(map(str, rep.homology)), int(rep.exact)]
                )


def cmd_verify(args) -> int:
    res = suites.SUITES[args.suite](**_suite_kwargs(args.suite, args))
    for c in res.checks:
        print(c.line())
    if args.table:
        if args.suite != "complexes":
            raise UsageError("--table is only available for the complexes suite")
        _complex_table(args.table, args)
    print(f"{'PASS' if res.passed else 'FAIL'} criterion {res.criterion} ({res.name}): {res.title}")
    return EXIT_OK if res.passed else EXIT_FAIL


# ---------------------------------------------------------------- field


def _columns(kind: str) -> list[str]:
    if kind == "scalar":
        return ["re_u", "im_u"]
    if kind == "vector":
        return ["re_u", "im_u", "re_v", "im_v"]
    return [f"{p}_u{a}{b}" for a in (1, 2) for b in (1, 2) for p in ("re", "im")]


def _grid(args) -> tuple[np.ndarray, np.ndarray, dict]:
    if args.ring:
        th = 2 * np.pi * np.arange(args.ring) / args.ring
        return np.cos(th), np.sin(th), {"type": "ring", "n": args.ring}
    if args.polar:
        try:
            nr, nth = (int(v) for v in args.polar.split(","))
        except ValueError:
            raise UsageError(f"--polar expects 'nr,ntheta', got {args.polar!r}") from None
        r = np.linspace(0.0, 1.0, nr)
        th = 2 * np.pi * np.arange(nth) / nth
        R, TH = np.meshgrid(r, th, indexing="ij")
        return (R * np.cos(TH)).ravel(), (R * np.sin(TH)).ravel(), {"type": "polar", "nr": nr, "ntheta": nth}
    n = args.grid
    g = np.linspace(-1.0, 1.0, n)
    X, Y = np.meshgrid(g, g)  # rows run over y, columns over x
    return X.ravel(), Y.ravel(), {"type": "cartesian", "n": n}


def cmd_field(args) -> int:
    f = make_field(args.family, args.m, args.j, args.nu, args.lam)
    x, y, grid = _grid(args)
    inside = x * x + y * y <= 1 + 1e-12
    vals = np.asarray(f(x, y)).reshape(-1, x.size)
    cols = _columns(f.kind)
    extra = []
    if args.ring and f.kind == "vector":
        extra = ["abs_normal", "abs_tangential"]
        normal = np.abs(x * vals[0] + y * vals[1])
        tangential = np.abs(-y * vals[0] + x * vals[1])
    out = open(args.out, "w", encoding="utf-8", newline="\n") if args.out else sys.stdout
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["x", "y"] + cols + extra)
        for p in range(x.size):
            row = [_e(x[p]), _e(y[p])]
            if inside[p]:
                for c in vals[:, p]:
                    row += [_e(c.real), _e(c.imag)]
                if extra:
                    row += [_e(normal[p]), _e(tangential[p])]
            else:
                row += [""] * (len(cols) + len(extra))
            w.writerow(row)
    finally:
        if args.out:
            out.close()
    if args.out:
        meta = {
            "family": args.family,
            "m": args.m,
            "j": args.j,
            "nu": args.nu,
            "lambda": args.lam,
            "degree": f.degree,
            "grid": grid,
            "records": int(x.size),
        }
        with open(args.out + ".meta.json", "w", encoding="utf-8", newline="\n") as fh:
            json.dump(meta, fh, indent=1)
            fh.write("\n")
    return EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="zernike-derham", description="Orthogonal polynomial bases for the de Rham complex on disks and cylinders.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def indices(sp):
        sp.add_argument("--family", required=True, help=f"one of {', '.join(FIELD_FAMILIES)}")
        sp.add_argument("--m", type=int, required=True)
        sp.add_argument("--j", type=int, default=0)
        sp.add_argument("--nu", type=int, default=None)
        sp.add_argument("--lambda", dest="lam", type=float, default=0.0)

    e = sub.add_parser("eval", help="evaluate one basis element at a point")
    indices(e)
    e.add_argument("--at", required=True, help="point as x,y")
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_eval)

    g = sub.add_parser("gram", help="Gram matrix of a truncated family")
    g.add_argument("--family", required=True, help="comma-separated list from " + ", ".join(GRAM_FAMILIES))
    g.add_argument("--lambda", dest="lam", type=float, default=0.0)
    g.add_argument("--maxdeg", type=int, default=6)
    g.add_argument("--weight", choices=("none", "N"), default="none")
    g.add_argument("--tol", type=float, default=1e-10)
    g.add_argument("--out", default=None, help="CSV (or JSON with --json / .json suffix) output path")
    g.add_argument("--json", action="store_true")
    g.set_defaults(func=cmd_gram)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=tuple(suites.SUITES))
    v.add_argument("--mmax", type=int)
    v.add_argument("--jmax", type=int)
    v.add_argument("--kmax", type=int)
    v.add_argument("--npts", type=int)
    v.add_argument("--maxdeg", type=int)
    v.add_argument("--b", type=int)
    v.add_argument("--lambda", dest="lam", type=float)
    v.add_argument("--domain", choices=DOMAINS)
    v.add_argument("--seed", type=int)
    v.add_argument("--table", default=None, help="write the sub-complex table (complexes suite) as CSV")
    v.set_defaults(func=cmd_verify)

    f = sub.add_parser("field", help="sample a field on a grid")
    indices(f)
    grid = f.add_mutually_exclusive_group()
    grid.add_argument("--grid", type=int, default=20, help="n for an n x n Cartesian grid on [-1, 1]^2")
    grid.add_argument("--polar", default=None, help="nr,ntheta polar grid")
    grid.add_argument("--ring", type=int, default=None, help="n equispaced points on the unit circle")
    f.add_argument("--out", default=None)
    f.set_defaults(func=cmd_field)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit codes: 0 success, 2 usage error, 3 domain error, 4 not constructible,
5 regression mismatch in ``reproduce``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import bounds, constructions, evolume, legendre, optimizer, projector
from .errors import NotConstructible, OptInterpError, UnknownName
from .geometry import Ball, Cube, PointCloud, Simplex, VertexPolytope
from .serialize import load_body, load_simplex, simplex_to_dict

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_NOT_CONSTRUCTIBLE, EXIT_MISMATCH = 0, 2, 3, 4, 5


class UsageError(Exception):
    pass


class RegressionMismatch(Exception):
    def __init__(self, count: int, payload):
        super().__init__(f"{count} regression mismatch(es)")
        self.payload = payload


# --- argument helpers ---------------------------------------------------------


def parse_body(spec: str, n: int | None = None):
    """``cube:7``, ``ball:3``, ``poly:<path>``, ``cloud:<path>``, or a bare
    ``cube``/``ball`` together with ``--n``."""
    kind, _, arg = spec.partition(":")
    if kind in ("cube", "ball"):
        if arg:
            try:
                dim = int(arg)
            except ValueError:
                raise UsageError(f"bad dimension in body spec {spec!r}") from None
            if n is not None and n != dim:
                raise UsageError(f"--n {n} conflicts with body spec {spec!r}")
        elif n is None:
            raise UsageError(f"body {kind!r} needs a dimension: {kind}:N or --n N")
        else:
            dim = n
        return Cube(dim) if kind == "cube" else Ball(dim)
    if kind in ("poly", "cloud") and arg:
        k = load_body(arg)
        if kind == "poly" and not isinstance(k, VertexPolytope):
            k = VertexPolytope(getattr(k, "points", getattr(k, "vertices", None)))
        if kind == "cloud" and not isinstance(k, PointCloud):
            k = PointCloud(getattr(k, "vertices", getattr(k, "points", None)))
        return k
    raise UsageError(f"unrecognised body spec {spec!r}")


def parse_simplex(src: str) -> Simplex:
    if src.startswith("catalog:"):
        return constructions.catalog(src.split(":", 1)[1])
    if src.startswith("regular-cube:"):
        return constructions.regular_simplex_in_cube(int(src.split(":", 1)[1]))
    if src.startswith("regular-ball:"):
        return constructions.regular_simplex_in_ball(int(src.split(":", 1)[1]))
    path = Path(src)
    if not path.exists():
        raise UsageError(f"no such simplex file {src!r}")
    return load_simplex(path)


# --- output -------------------------------------------------------------------


def _plain(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, (list, tuple)):
        return "[" + ",".join(_plain(x) for x in v) + "]"
    return str(v)


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, np.ndarray):
        return v.tolist()
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, float) and not math.isfinite(v):
        return repr(v)
    return v


def render(result, config: dict, fmt: str) -> str:
    """Format a scalar, a record (dict) or a table (list of dicts)."""
    if fmt == "json":
        return json.dumps({"config": _jsonable(config), "result": _jsonable(result)}, indent=2)
    if fmt == "csv":
        rows = result if isinstance(result, list) else [result if isinstance(result, dict) else {"value": result}]
        buf = io.StringIO()
        cols = list(rows[0]) if rows else []
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n", extrasaction="ignore")
        w.writeheader()
        for r in rows:
            w.writerow({k: _plain(v) for k, v in r.items()})
        return buf.getvalue().rstrip("\n")
    if isinstance(result, list):
        return "\n".join(" ".join(f"{k}={_plain(v)}" for k, v in r.items()) for r in result)
    if isinstance(result, dict):
        return "\n".join(f"{k}={_plain(v)}" for k, v in result.items())
    return _plain(result)


# --- commands -----------------------------------------------------------------


def cmd_legendre(a):
    if a.action == "eval":
        return float(legendre.chi(a.n, a.t))
    if a.lower:
        return legendre.chi_inv_lower(a.n, a.s)
    return legendre.chi_inv(a.n, a.s)


def cmd_evol(a):
    if a.action == "recurrence":
        return {"n": a.n, "t": a.t, "residual": evolume.e_measure_recurrence_check(a.n, a.t)}
    spec = evolume.EnGammaSpec(a.n, a.gamma)
    if a.action == "exact":
        return evolume.e_volume_exact(spec)
    est = evolume.e_volume_mc(spec, samples=a.samples, seed=a.seed)
    return {
        "estimate": est.estimate,
        "std_error": est.std_error,
        "exact": evolume.e_volume_exact(spec),
        "samples": est.samples,
        "seed": est.seed,
    }


def cmd_norm(a):
    k = parse_body(a.body, a.n)
    s = parse_simplex(a.simplex)
    rep = projector.norm(s, k)
    return {"norm": rep.value, "witness": rep.witness_point.tolist(), "signs": [int(x) for x in rep.witness_signs]}


def cmd_absorb(a):
    k = parse_body(a.body, a.n)
    rep = projector.absorption(k, parse_simplex(a.simplex))
    return {"xi": rep.xi, "alpha": rep.alpha, "circumscribed": rep.circumscribed}


def cmd_bounds(a):
    rep = bounds.bound_report(a.body, a.n)
    out = {"n": rep.n, "body": rep.body}
    out["best_lower"] = rep.best_lower()
    out["best_upper"] = rep.best_upper()
    out["exact"] = rep.exact if rep.exact is not None else ""
    if a.format == "json":
        return rep.to_dict() | {"consistent": rep.consistent()}
    if a.body == "ball":
        out["k"] = bounds.ball_optimum(a.n).k
    return out


def cmd_construct(a):
    if a.what == "hadamard":
        return constructions.hadamard(a.m).astype(int).tolist()
    if a.what == "regular-cube":
        return simplex_to_dict(constructions.regular_simplex_in_cube(a.n))
    if a.what == "regular-ball":
        return simplex_to_dict(constructions.regular_simplex_in_ball(a.n, radius=a.radius))
    if a.name is None:
        return [{"name": nm, "n": constructions.catalog(nm).n} for nm in constructions.CATALOG_NAMES]
    return simplex_to_dict(constructions.catalog(a.name))


def cmd_search(a):
    k = parse_body(a.body, a.n)
    mode = {"exhaustive": "exhaustive_cube_vertices", "continuous": "continuous_local"}[a.mode]
    cfg = optimizer.SearchConfig(k, mode, a.restarts, a.max_iters, a.step, a.seed)
    res = optimizer.search(cfg)
    cert = optimizer.certify(res, k)
    return res.to_dict() | {"global_lower": cert.global_lower, "gap": cert.gap}


def _nu_rows():
    return [
        {"n": n, "nu": str(v), "h": int(bounds.h_value(n)), "nu_float": float(v)}
        for n, v in bounds.NU_TABLE.items()
    ]


def _theta_rows(n_max: int):
    return bounds.bound_table_rows(n_max)


def _k_rows(n_max: int | None):
    ns = sorted(set(range(1, (n_max or 15) + 1)) | set(bounds.K_TABLE if n_max is None else ()))
    rows = []
    for n in ns:
        opt = bounds.ball_optimum(n)
        printed = bounds.K_TABLE.get(n)
        rows.append(
            {
                "n": n,
                "k": opt.k,
                "printed_k": "" if printed is None else printed,
                "p": opt.p,
                "tie": opt.tie,
            }
        )
    return rows


def cmd_tables(a):
    if a.table == "nu":
        return _nu_rows()
    if a.table == "theta-upper":
        return _theta_rows(a.n_max or 27)
    return _k_rows(a.n_max)


def _exact_checks():
    cases = [
        (1, Simplex([[0.0], [1.0]])),
        (2, constructions.catalog("golden_triangle")),
        (3, constructions.catalog("S_prime_3")),
        (7, constructions.catalog("hadamard_7")),
    ]
    rows = []
    for n, s in cases:
        got = projector.norm(s, Cube(n)).value
        want = bounds.THETA_UPPER_TABLE[n].value
        rows.append({"n": n, "computed": got, "expected": want, "diff": abs(got - want), "ok": abs(got - want) < 1e-9})
    return rows


def _write_csv(path: Path, rows):
    path.write_text(render(rows, {}, "csv") + "\n")


def cmd_reproduce(a):
    out = Path(a.out)
    out.mkdir(parents=True, exist_ok=True)
    nu = _nu_rows()
    for row in nu:
        if row["n"] <= constructions.MAX_EXHAUSTIVE_DIM:
            d = constructions.maxvol_simplex_cube(row["n"], "exhaustive").determinant
            row["h_computed"] = int(d)
            row["ok"] = int(d) == row["h"]
        else:
            row["h_computed"], row["ok"] = "", True
    theta = _theta_rows(27)
    for row in theta:
        row["ok"] = row["upper_table"] == "" or row["lower_53"] <= row["upper_table"] + 1e-9
    krows = [r | {"ok": r["printed_k"] == "" or r["k"] == r["printed_k"]} for r in _k_rows(None)]
    exact = _exact_checks()
    files = {"nu.csv": nu, "theta_upper.csv": theta, "ball_k.csv": krows, "exact_checks.csv": exact}
    for name, rows in files.items():
        _write_csv(out / name, rows)
    mismatches = sum(not r["ok"] for rows in files.values() for r in rows)
    summary = {"out": str(out), "files": sorted(files), "mismatches": mismatches}
    if mismatches:
        raise RegressionMismatch(mismatches, summary)
    return summary


# --- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "plain"), default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="optinterp", description="Linear interpolation projector norms and bounds.")
    p.add_argument("--format", choices=("json", "csv", "plain"), default="plain")
    sub = p.add_subparsers(dest="command", required=True)

    leg = sub.add_parser("legendre", parents=[common], help="standardized Legendre polynomials")
    legs = leg.add_subparsers(dest="action", required=True)
    e = legs.add_parser("eval", parents=[common])
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--t", type=float, required=True)
    i = legs.add_parser("inv", parents=[common])
    i.add_argument("--n", type=int, required=True)
    i.add_argument("--s", type=float, required=True)
    i.add_argument("--lower", action="store_true", help="closed-form lower estimate instead of the inverse")
    leg.set_defaults(func=cmd_legendre)

    ev = sub.add_parser("evol", parents=[common], help="volume of E(n, gamma)")
    evs = ev.add_subparsers(dest="action", required=True)
    for name in ("exact", "mc"):
        q = evs.add_parser(name, parents=[common])
        q.add_argument("--n", type=int, required=True)
        q.add_argument("--gamma", type=float, required=True)
        if name == "mc":
            q.add_argument("--samples", type=int, default=10**6)
            q.add_argument("--seed", type=int, default=0)
    r = evs.add_parser("recurrence", parents=[common])
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--t", type=float, required=True)
    ev.set_defaults(func=cmd_evol)

    for name, func, hlp in (
        ("norm", cmd_norm, "projector norm on a body"),
        ("absorb", cmd_absorb, "absorption indices xi and alpha"),
    ):
        q = sub.add_parser(name, parents=[common], help=hlp)
        q.add_argument("--body", required=True, help="cube:N, ball:N, poly:PATH, cloud:PATH (or cube/ball with --n)")
        q.add_argument("--n", type=int)
        q.add_argument("--simplex", required=True, help="catalog:NAME, regular-cube:N, regular-ball:N or a JSON file")
        q.set_defaults(func=func)

    b = sub.add_parser("bounds", parents=[common], help="bounds on the minimal projector norm")
    b.add_argument("--body", choices=("cube", "ball"), required=True)
    b.add_argument("--n", type=int, required=True)
    b.set_defaults(func=cmd_bounds)

    c = sub.add_parser("construct", parents=[common], help="Hadamard matrices and named simplices")
    cs = c.add_subparsers(dest="what", required=True)
    h = cs.add_parser("hadamard", parents=[common])
    h.add_argument("--m", type=int, required=True)
    rc = cs.add_parser("regular-cube", parents=[common])
    rc.add_argument("--n", type=int, required=True)
    rb = cs.add_parser("regular-ball", parents=[common])
    rb.add_argument("--n", type=int, required=True)
    rb.add_argument("--radius", type=float, default=1.0)
    cat = cs.add_parser("catalog", parents=[common])
    cat.add_argument("--name", help="omit to list the catalog")
    c.set_defaults(func=cmd_construct)

    s = sub.add_parser("search", parents=[common], help="seeded search for small-norm nodes")
    s.add_argument("--body", required=True)
    s.add_argument("--n", type=int)
    s.add_argument("--mode", choices=("exhaustive", "continuous"), default="continuous")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--restarts", type=int, default=16)
    s.add_argument("--max-iters", type=int, default=20000)
    s.add_argument("--step", type=float, default=0.25)
    s.set_defaults(func=cmd_search)

    t = sub.add_parser("tables", parents=[common], help="regression tables")
    t.add_argument("table", choices=("nu", "theta-upper", "ball-k"))
    t.add_argument("--n-max", type=int)
    t.set_defaults(func=cmd_tables)

    rp = sub.add_parser("reproduce", parents=[common], help="write all tables as CSV and check them")
    rp.add_argument("--out", required=True)
    rp.set_defaults(func=cmd_reproduce)
    return p


def _config(a) -> dict:
    return {k: v for k, v in vars(a).items() if k != "func"}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    config = _config(a)
    if a.format != "json":
        print("# config: " + json.dumps(_jsonable(config), sort_keys=True), file=stderr)
    try:
        result = a.func(a)
    except UsageError as e:
        print(f"usage error: {e}", file=stderr)
        return EXIT_USAGE
    except UnknownName as e:
        print(f"usage error: {e.args[0] if e.args else e}", file=stderr)
        return EXIT_USAGE
    except NotConstructible as e:
        print(f"not constructible: {e}", file=stderr)
        return EXIT_NOT_CONSTRUCTIBLE
    except RegressionMismatch as e:
        print(render(e.payload, config, a.format), file=stdout)
        print(f"regression mismatch: {e}", file=stderr)
        return EXIT_MISMATCH
    except (OptInterpError, ValueError) as e:
        print(f"domain error: {e}", file=stderr)
        return EXIT_DOMAIN
    print(render(result, config, a.format), file=stdout)
    return EXIT_OK


def main() -> None:
    sys.exit(run())

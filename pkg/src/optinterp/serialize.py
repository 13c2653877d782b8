"""JSON encoding of simplices and bodies.

Simplices and vertex polytopes: ``{"n": int, "vertices": [[...], ...]}``.
Built-in bodies: ``{"body": "cube", "n": int}`` and
``{"body": "ball", "n": int, "center": [...], "radius": float}``.
Point clouds: ``{"body": "cloud", "n": int, "points": [[...], ...]}``.

Floats go through ``json``, which writes the shortest repr that reads back
to the same double.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import DimensionMismatch, DomainError
from .geometry import Ball, Body, Cube, PointCloud, Simplex, VertexPolytope


def _rows(a) -> list:
    return np.asarray(a, dtype=float).tolist()


def simplex_to_dict(s: Simplex) -> dict:
    return {"n": s.n, "vertices": _rows(s.vertices)}


def simplex_from_dict(d: dict) -> Simplex:
    try:
        s = Simplex(d["vertices"])
    except KeyError:
        raise DomainError("simplex JSON needs a 'vertices' field") from None
    if "n" in d and int(d["n"]) != s.n:
        raise DimensionMismatch(f"declared n={d['n']} but vertices are in R^{s.n}")
    return s


def body_to_dict(k: Body) -> dict:
    if isinstance(k, Cube):
        return {"body": "cube", "n": k.n}
    if isinstance(k, Ball):
        return {"body": "ball", "n": k.n, "center": _rows(k.center), "radius": k.radius}
    if isinstance(k, VertexPolytope):
        return {"n": k.n, "vertices": _rows(k.vertices)}
    if isinstance(k, PointCloud):
        return {"body": "cloud", "n": k.n, "points": _rows(k.points)}
    raise DomainError(f"cannot serialise {type(k).__name__}")


def body_from_dict(d: dict) -> Body:
    kind = d.get("body", "poly")
    if kind == "cube":
        return Cube(int(d["n"]))
    if kind == "ball":
        return Ball(int(d["n"]), d.get("center"), float(d.get("radius", 1.0)))
    if kind in ("poly", "polytope"):
        k = VertexPolytope(d["vertices"])
    elif kind == "cloud":
        k = PointCloud(d["points"])
    else:
        raise DomainError(f"unknown body kind {kind!r}")
    if "n" in d and int(d["n"]) != k.n:
        raise DimensionMismatch(f"declared n={d['n']} but points are in R^{k.n}")
    return k


def dumps(obj) -> str:
    if isinstance(obj, Simplex):
        obj = simplex_to_dict(obj)
    elif isinstance(obj, (Cube, Ball, VertexPolytope, PointCloud)):
        obj = body_to_dict(obj)
    return json.dumps(obj)


def load_simplex(path) -> Simplex:
    return simplex_from_dict(json.loads(Path(path).read_text()))


def load_body(path) -> Body:
    return body_from_dict(json.loads(Path(path).read_text()))

"""Simplices, bodies and the barycentric (basic Lagrange) system of a simplex.

A simplex in R^n is stored as an ``(n+1, n)`` array of vertices.  Its vertex
matrix appends a column of ones; the columns of the inverse matrix hold the
coefficients of the barycentric coordinates ``lambda_j``::

    lambda_j(x) = l[0, j] x_1 + ... + l[n-1, j] x_n + l[n, j]

All arithmetic is float64.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
import scipy.linalg
from scipy.optimize import linprog
from scipy.spatial import Delaunay

from .errors import (
    DegenerateSimplex,
    DimensionMismatch,
    DomainError,
    UnsupportedBody,
)

#: relative threshold for |det A| below which a simplex counts as degenerate
DEGENERACY_RTOL = 1e-12
#: largest cube whose vertex list is ever materialised as one array
MAX_CUBE_VERTEX_DIM = 20


def as_point(x, n: int | None = None) -> np.ndarray:
    p = np.asarray(x, dtype=float).reshape(-1)
    if n is not None and p.shape[0] != n:
        raise DimensionMismatch(f"expected a point in R^{n}, got length {p.shape[0]}")
    if not np.all(np.isfinite(p)):
        raise DomainError("point has non-finite coordinates")
    return p


@dataclass(frozen=True, eq=False)
class Simplex:
    """``n+1`` vertices in R^n.  Degenerate simplices may be built; operations
    that need an inverse raise :class:`DegenerateSimplex`."""

    vertices: np.ndarray

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[0] != v.shape[1] + 1 or v.shape[1] < 1:
            raise DimensionMismatch(f"a simplex in R^n needs an (n+1, n) vertex array, got {v.shape}")
        if not np.all(np.isfinite(v)):
            raise DomainError("simplex has non-finite coordinates")
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    @property
    def n(self) -> int:
        return self.vertices.shape[1]

    def centroid(self) -> np.ndarray:
        return self.vertices.mean(axis=0)

    def is_degenerate(self) -> bool:
        A = vertex_matrix(self)
        scale = np.linalg.norm(A, axis=1).max()
        return abs(_det(A)) <= DEGENERACY_RTOL * scale**self.n

    def __repr__(self):
        return f"Simplex(n={self.n}, vertices={self.vertices.tolist()})"


def vertex_matrix(s: Simplex) -> np.ndarray:
    """Rows ``(x^(j), 1)`` for the vertices ``x^(j)``."""
    return np.hstack([s.vertices, np.ones((s.n + 1, 1))])


def _det(A: np.ndarray) -> float:
    return float(np.linalg.det(A))


def determinant(s: Simplex) -> float:
    return _det(vertex_matrix(s))


def _require_nondegenerate(s: Simplex) -> None:
    if s.is_degenerate():
        raise DegenerateSimplex(f"simplex is degenerate (det = {determinant(s):.3e})")


def volume(s: Simplex) -> float:
    """``|det A| / n!``."""
    _require_nondegenerate(s)
    return abs(determinant(s)) / math.factorial(s.n)


@dataclass(frozen=True, eq=False)
class BarycentricSystem:
    """Inverse vertex matrix ``L`` with ``lambda(x) = (x, 1) @ L``."""

    inverse_matrix: np.ndarray

    @property
    def n(self) -> int:
        return self.inverse_matrix.shape[0] - 1

    @property
    def gradients(self) -> np.ndarray:
        """Row ``j`` is the gradient of ``lambda_j``; shape ``(n+1, n)``."""
        return self.inverse_matrix[:-1, :].T

    @property
    def offsets(self) -> np.ndarray:
        return self.inverse_matrix[-1, :]

    def __call__(self, x) -> np.ndarray:
        return eval_lambda(self, x)


def barycentric_system(s: Simplex) -> BarycentricSystem:
    _require_nondegenerate(s)
    A = vertex_matrix(s)
    lu_piv = scipy.linalg.lu_factor(A)
    L = scipy.linalg.lu_solve(lu_piv, np.eye(s.n + 1))
    L.setflags(write=False)
    return BarycentricSystem(L)


def eval_lambda(b: BarycentricSystem, x) -> np.ndarray:
    """Barycentric coordinates of a point, or of each row of an ``(m, n)`` array."""
    X = np.asarray(x, dtype=float)
    if X.shape[-1] != b.n:
        raise DimensionMismatch(f"expected points in R^{b.n}, got trailing size {X.shape[-1]}")
    return X @ b.inverse_matrix[:-1, :] + b.inverse_matrix[-1, :]


def axial_diameter(s: Simplex, i: int) -> float:
    """Longest segment inside ``s`` parallel to axis ``i`` (0-based).

    Solved as the LP ``max t`` over ``(x, t)`` subject to ``x`` and ``x + t e_i``
    both lying in ``s``.
    """
    n = s.n
    if not 0 <= i < n:
        raise DomainError(f"axis index {i} outside 0..{n - 1}")
    b = barycentric_system(s)
    G, c = b.gradients, b.offsets
    # lambda_j(x) >= 0  and  lambda_j(x) + t * l_ij >= 0, written as A_ub z <= b_ub
    A1 = np.hstack([-G, np.zeros((n + 1, 1))])
    A2 = np.hstack([-G, -G[:, i : i + 1]])
    res = linprog(
        c=np.r_[np.zeros(n), -1.0],
        A_ub=np.vstack([A1, A2]),
        b_ub=np.r_[c, c],
        bounds=[(None, None)] * n + [(0, None)],
        method="highs",
    )
    if res.status != 0:
        raise DegenerateSimplex(f"axial diameter LP failed: {res.message}")
    return float(-res.fun)


def axial_diameter_closed_form(s: Simplex, i: int) -> float:
    """``2 / sum_j |l_ij|``; checked against :func:`axial_diameter` in tests."""
    b = barycentric_system(s)
    return 2.0 / float(np.abs(b.gradients[:, i]).sum())


# --- bodies -----------------------------------------------------------------


@dataclass(frozen=True)
class Cube:
    """The unit cube ``[0, 1]^n``."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("cube dimension must be >= 1")


@dataclass(frozen=True, eq=False)
class Ball:
    n: int
    center: np.ndarray = None
    radius: float = 1.0

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("ball dimension must be >= 1")
        c = np.zeros(self.n) if self.center is None else as_point(self.center, self.n)
        c.setflags(write=False)
        object.__setattr__(self, "center", c)
        if not self.radius > 0:
            raise DomainError("ball radius must be positive")
        object.__setattr__(self, "radius", float(self.radius))


def _affinely_spanning(P: np.ndarray) -> bool:
    if P.shape[0] < P.shape[1] + 1:
        return False
    D = P[1:] - P[0]
    return np.linalg.matrix_rank(D) == P.shape[1]


@dataclass(frozen=True, eq=False)
class VertexPolytope:
    """Convex hull of a vertex list with nonempty interior."""

    vertices: np.ndarray

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float)
        if v.ndim != 2:
            raise DimensionMismatch("vertex list must be a 2-d array")
        if not _affinely_spanning(v):
            raise DomainError("vertex polytope needs >= n+1 affinely spanning vertices")
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    @property
    def n(self) -> int:
        return self.vertices.shape[1]


@dataclass(frozen=True, eq=False)
class PointCloud:
    """A finite point set E; its hull is used where a convex body is needed."""

    points: np.ndarray

    def __post_init__(self):
        p = np.array(self.points, dtype=float)
        if p.ndim != 2 or p.shape[0] == 0:
            raise DomainError("point cloud must be a nonempty (m, n) array")
        p.setflags(write=False)
        object.__setattr__(self, "points", p)

    @property
    def n(self) -> int:
        return self.points.shape[1]


Body = Union[Cube, Ball, VertexPolytope, PointCloud]


def cube_vertices(n: int) -> np.ndarray:
    """All ``2^n`` cube vertices in lexicographic order (first coordinate most significant)."""
    if n > MAX_CUBE_VERTEX_DIM:
        raise DomainError(f"refusing to list 2^{n} cube vertices (cap n <= {MAX_CUBE_VERTEX_DIM})")
    return bits_table(n)


def bits_table(n: int) -> np.ndarray:
    idx = np.arange(2**n, dtype=np.int64)
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    return ((idx[:, None] >> shifts) & 1).astype(float)


def body_vertices(k: Body) -> np.ndarray:
    """Finite set on which convex functions over ``k`` attain their maximum."""
    if isinstance(k, Cube):
        return cube_vertices(k.n)
    if isinstance(k, VertexPolytope):
        return k.vertices
    if isinstance(k, PointCloud):
        return k.points
    raise UnsupportedBody(f"{type(k).__name__} has no finite vertex set")


@dataclass(frozen=True)
class VolumeEstimate:
    value: float
    std_error: float = 0.0
    approximate: bool = False
    samples: int = 0
    seed: int | None = None


def kappa(n: int) -> float:
    """Volume of the unit ball in R^n (parity-split closed forms)."""
    k, odd = divmod(n, 2)
    if not odd:
        return math.pi**k / math.factorial(k)
    return 2.0 * math.factorial(k) * (4.0 * math.pi) ** k / math.factorial(2 * k + 1)


def body_volume(k: Body, samples: int = 10**6, seed: int = 0) -> VolumeEstimate:
    """Exact volume for cubes and balls; seeded Monte Carlo for vertex polytopes."""
    if isinstance(k, Cube):
        return VolumeEstimate(1.0)
    if isinstance(k, Ball):
        return VolumeEstimate(kappa(k.n) * k.radius**k.n)
    if isinstance(k, VertexPolytope):
        return _polytope_volume_mc(k, samples, seed)
    raise UnsupportedBody("volume of a point cloud is undefined; use its hull")


def _polytope_volume_mc(k: VertexPolytope, samples: int, seed: int) -> VolumeEstimate:
    lo, hi = k.vertices.min(axis=0), k.vertices.max(axis=0)
    box = float(np.prod(hi - lo))
    tri = Delaunay(k.vertices)
    rng = np.random.default_rng(seed)
    hits = 0
    chunk = 1 << 17
    done = 0
    while done < samples:
        m = min(chunk, samples - done)
        X = lo + (hi - lo) * rng.random((m, k.n))
        hits += int(np.count_nonzero(tri.find_simplex(X) >= 0))
        done += m
    p = hits / samples
    return VolumeEstimate(
        value=box * p,
        std_error=box * math.sqrt(p * (1 - p) / samples),
        approximate=True,
        samples=samples,
        seed=seed,
    )


def contains(k: Body, x, tol: float = 1e-12) -> bool:
    p = as_point(x, k.n)
    if isinstance(k, Cube):
        return bool(np.all(p >= -tol) and np.all(p <= 1 + tol))
    if isinstance(k, Ball):
        return bool(np.linalg.norm(p - k.center) <= k.radius * (1 + tol) + tol)
    if isinstance(k, VertexPolytope):
        return _in_hull(k.vertices, p)
    if isinstance(k, PointCloud):
        return bool(np.any(np.all(np.abs(k.points - p) <= tol, axis=1)))
    raise UnsupportedBody(type(k).__name__)


def _in_hull(V: np.ndarray, p: np.ndarray) -> bool:
    # feasibility of  mu >= 0,  sum mu = 1,  V^T mu = p
    m = V.shape[0]
    res = linprog(
        c=np.zeros(m),
        A_eq=np.vstack([V.T, np.ones((1, m))]),
        b_eq=np.r_[p, 1.0],
        bounds=[(0, None)] * m,
        method="highs",
    )
    return res.status == 0


def simplex_in_body(s: Simplex, k: Body, tol: float = 1e-9) -> bool:
    if s.n != k.n:
        raise DimensionMismatch(f"simplex in R^{s.n} vs body in R^{k.n}")
    if isinstance(k, PointCloud):
        # nodes must lie in the hull of E
        return all(_in_hull(k.points, v) for v in s.vertices)
    return all(contains(k, v, tol) for v in s.vertices)

"""Norms of linear Lagrange interpolation projectors and absorption indices.

For nodes forming a simplex ``S`` with barycentric coordinates ``lambda_j``,
the operator norm on ``C(K)`` is ``max_{x in K} sum_j |lambda_j(x)|``.  The
maximand is convex, so on a polytope it suffices to scan the vertices.  On a
ball every sign pattern ``f`` gives an affine form ``sum_j f_j lambda_j`` whose
maximum is available in closed form.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    EmptyVertexSet,
    SimplexNotInBody,
    TooManySignVectors,
    UnsupportedBody,
)
from .geometry import (
    Ball,
    BarycentricSystem,
    Body,
    Cube,
    PointCloud,
    Simplex,
    VertexPolytope,
    barycentric_system,
    bits_table,
    eval_lambda,
    simplex_in_body,
)

#: exact cube enumeration runs in O(2^n (n+1)); n = 27 takes ~15 s
MAX_CUBE_NORM_DIM = 28
#: sign vectors enumerated for a ball: 2^n after the f <-> -f symmetry
MAX_BALL_NORM_DIM = 25
_LOW_BITS = 16
_ROWS_PER_CHUNK = 1 << 16
TOL = 1e-9


@dataclass(frozen=True, eq=False)
class Projector:
    nodes: Simplex
    system: BarycentricSystem

    @classmethod
    def from_simplex(cls, s: Simplex) -> "Projector":
        return cls(s, barycentric_system(s))

    @property
    def n(self) -> int:
        return self.nodes.n


def as_projector(p) -> Projector:
    return p if isinstance(p, Projector) else Projector.from_simplex(p)


@dataclass(frozen=True, eq=False)
class NormReport:
    value: float
    witness_point: np.ndarray
    witness_signs: np.ndarray

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "witness": self.witness_point.tolist(),
            "signs": [int(v) for v in self.witness_signs],
        }


@dataclass(frozen=True, eq=False)
class AbsorptionReport:
    xi: float
    alpha: float
    circumscribed: bool
    maxima: np.ndarray  # max over K of -lambda_j, one per vertex
    witnesses: np.ndarray  # maximising point for each j

    def to_dict(self) -> dict:
        return {
            "xi": self.xi,
            "alpha": self.alpha,
            "circumscribed": self.circumscribed,
            "maxima": self.maxima.tolist(),
            "witnesses": self.witnesses.tolist(),
        }


def _report_at(p: Projector, x: np.ndarray) -> NormReport:
    lam = eval_lambda(p.system, x)
    signs = np.where(lam < 0, -1, 1)
    return NormReport(float(np.abs(lam).sum()), np.asarray(x, float), signs)


def norm_over_vertex_set(p, vertices) -> NormReport:
    """``max_x sum_j |lambda_j(x)|`` over a finite point list.

    Covers cubes, vertex polytopes and point clouds.  Ties go to the first
    listed point.
    """
    p = as_projector(p)
    V = np.asarray(vertices, dtype=float)
    if V.size == 0:
        raise EmptyVertexSet("no vertices to maximise over")
    if V.ndim != 2 or V.shape[1] != p.n:
        raise DimensionMismatch(f"expected an (m, {p.n}) vertex array, got {V.shape}")
    best, best_i = -np.inf, 0
    for start in range(0, V.shape[0], _ROWS_PER_CHUNK):
        vals = np.abs(eval_lambda(p.system, V[start : start + _ROWS_PER_CHUNK])).sum(axis=1)
        i = int(np.argmax(vals))
        if vals[i] > best:
            best, best_i = vals[i], start + i
    return _report_at(p, V[best_i])


def norm_over_cube(p, n: int | None = None) -> NormReport:
    """Exact norm on ``[0,1]^n`` by enumerating all ``2^n`` vertices.

    The vertex set is split into leading and trailing coordinates; the
    contribution of the trailing block is tabulated once and shifted for each
    leading pattern, so memory stays at ``O(2^16 n)``.  Vertices are visited in
    lexicographic order and the first maximiser wins.
    """
    p = as_projector(p)
    n = p.n if n is None else n
    if n != p.n:
        raise DimensionMismatch(f"projector in R^{p.n} vs cube in R^{n}")
    if n > MAX_CUBE_NORM_DIM:
        raise TooManySignVectors(f"cube enumeration capped at n <= {MAX_CUBE_NORM_DIM}")
    L = p.system.inverse_matrix
    n_low = min(n, _LOW_BITS)
    n_high = n - n_low
    low_bits = bits_table(n_low)
    lowT = L[n_high:n, :].T @ low_bits.T  # (n+1, 2^n_low)
    buf = np.empty_like(lowT)
    acc = np.empty(lowT.shape[1])
    high_bits = bits_table(n_high) if n_high else np.zeros((1, 0))
    best, best_idx = -np.inf, 0
    for h, hb in enumerate(high_bits):
        base = L[n, :] + hb @ L[:n_high, :]
        np.add(lowT, base[:, None], out=buf)
        np.abs(buf, out=buf)
        buf.sum(axis=0, out=acc)
        i = int(np.argmax(acc))
        if acc[i] > best:
            best, best_idx = acc[i], (h << n_low) + i
    witness = ((best_idx >> np.arange(n - 1, -1, -1)) & 1).astype(float)
    return _report_at(p, witness)


def _sign_rows(k: int) -> np.ndarray:
    # row r holds the signs 1 - 2*bit of r, most significant bit first
    return 1.0 - 2.0 * bits_table(k)


def norm_over_ball(p, ball: Ball) -> NormReport:
    """Exact norm on ``B(x0; R)``.

    For a sign vector ``f`` the affine form ``sum_j f_j lambda_j`` has maximum
    ``sum_j f_j lambda_j(x0) + R * ||sum_j f_j g_j||`` over the ball, where
    ``g_j`` is the gradient of ``lambda_j``.  Pairing ``f`` with ``-f`` lets us
    fix ``f_0 = +1`` and take an absolute value.
    """
    p = as_projector(p)
    if not isinstance(ball, Ball):
        raise UnsupportedBody("norm_over_ball needs a Ball")
    n = p.n
    if ball.n != n:
        raise DimensionMismatch(f"projector in R^{n} vs ball in R^{ball.n}")
    if n > MAX_BALL_NORM_DIM:
        raise TooManySignVectors(f"ball norm enumerates 2^n sign vectors; capped at n <= {MAX_BALL_NORM_DIM}")
    G = p.system.gradients  # (n+1, n)
    c = eval_lambda(p.system, ball.center)  # lambda_j at the centre
    R = ball.radius
    n_low = min(n, 12)
    n_high = n - n_low
    # free signs f_1..f_n; split into a leading block (n_high) and trailing block
    Fl = _sign_rows(n_low)
    Gl, cl_coef = G[1 + n_high :], c[1 + n_high :]
    Ul = Fl @ Gl
    cl = Fl @ cl_coef
    nl = np.einsum("ij,ij->i", Ul, Ul)
    Fh = _sign_rows(n_high) if n_high else np.zeros((1, 0))
    Gh, ch_coef = G[1 : 1 + n_high], c[1 : 1 + n_high]
    best, best_idx = -np.inf, 0
    block = max(1, (1 << 20) >> n_low)
    for start in range(0, Fh.shape[0], block):
        F = Fh[start : start + block]
        Uh = G[0] + F @ Gh
        ch = c[0] + F @ ch_coef
        nh = np.einsum("ij,ij->i", Uh, Uh)
        sq = nh[:, None] + 2.0 * (Uh @ Ul.T) + nl[None, :]
        vals = np.abs(ch[:, None] + cl[None, :]) + R * np.sqrt(np.maximum(sq, 0.0))
        i = int(np.argmax(vals))
        if vals.flat[i] > best:
            r, col = divmod(i, vals.shape[1])
            best, best_idx = vals.flat[i], ((start + r) << n_low) + col
    bits = (best_idx >> np.arange(n - 1, -1, -1)) & 1
    f = np.concatenate([[1.0], 1.0 - 2.0 * bits])
    if f @ c < 0:
        f = -f
    u = f @ G
    un = np.linalg.norm(u)
    x = ball.center + (R * u / un if un > 0 else 0.0)
    value = float(f @ eval_lambda(p.system, x))
    return NormReport(value, x, f.astype(int))


def norm(p, body: Body) -> NormReport:
    p = as_projector(p)
    if body.n != p.n:
        raise DimensionMismatch(f"projector in R^{p.n} vs body in R^{body.n}")
    if isinstance(body, Cube):
        return norm_over_cube(p)
    if isinstance(body, Ball):
        return norm_over_ball(p, body)
    if isinstance(body, VertexPolytope):
        return norm_over_vertex_set(p, body.vertices)
    if isinstance(body, PointCloud):
        return norm_over_vertex_set(p, body.points)
    raise UnsupportedBody(type(body).__name__)


# --- absorption -------------------------------------------------------------


def affine_max(body: Body, grads: np.ndarray, offsets: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Maximum of ``x -> grads[j] @ x + offsets[j]`` over the body, for each ``j``.

    Returns the maxima and one maximising point per form.
    """
    grads = np.atleast_2d(np.asarray(grads, float))
    offsets = np.asarray(offsets, float).reshape(-1)
    if isinstance(body, Cube):
        X = (grads > 0).astype(float)
        return np.einsum("ij,ij->i", grads, X) + offsets, X
    if isinstance(body, Ball):
        norms = np.linalg.norm(grads, axis=1)
        safe = np.where(norms > 0, norms, 1.0)
        X = body.center + body.radius * grads / safe[:, None]
        return grads @ body.center + offsets + body.radius * norms, X
    if isinstance(body, (VertexPolytope, PointCloud)):
        V = body.vertices if isinstance(body, VertexPolytope) else body.points
        vals = V @ grads.T + offsets  # (m, k)
        idx = np.argmax(vals, axis=0)
        return vals[idx, np.arange(len(offsets))], V[idx]
    raise UnsupportedBody(type(body).__name__)


def _neg_lambda_maxima(k: Body, s: Simplex) -> tuple[np.ndarray, np.ndarray]:
    if not simplex_in_body(s, k):
        raise SimplexNotInBody("every node must lie in the body")
    b = barycentric_system(s)
    return affine_max(k, -b.gradients, -b.offsets)


def _xi_from_maxima(m: np.ndarray, n: int) -> float:
    top = float(m.max())
    # K inside S: every -lambda_j stays <= 0 on K, and the index is 1 by definition
    if top <= 1e-12:
        return 1.0
    return (n + 1) * top + 1.0


def absorption(k: Body, s: Simplex) -> AbsorptionReport:
    m, W = _neg_lambda_maxima(k, s)
    xi_val = _xi_from_maxima(m, s.n)
    alpha_val = float(m.sum()) + 1.0
    circ = bool(m.max() - m.min() <= TOL)
    return AbsorptionReport(xi_val, alpha_val, circ, m, W)


def xi(k: Body, s: Simplex) -> float:
    """Absorption index: the least ``sigma >= 1`` with ``K`` inside ``sigma S``
    (dilation about the centroid of ``S``)."""
    m, _ = _neg_lambda_maxima(k, s)
    return _xi_from_maxima(m, s.n)


def alpha(k: Body, s: Simplex) -> float:
    """Least ``sigma`` such that a translate of ``sigma S`` contains ``K``."""
    m, _ = _neg_lambda_maxima(k, s)
    return float(m.sum()) + 1.0


def circumscribed_check(k: Body, s: Simplex) -> bool:
    """True iff ``xi(K;S) S`` is circumscribed around ``K``."""
    m, _ = _neg_lambda_maxima(k, s)
    return bool(m.max() - m.min() <= TOL)


def sandwich_bounds(norm_value: float, n: int) -> tuple[float, float]:
    lo = (n + 1) / (2 * n) * (norm_value - 1) + 1
    hi = (n + 1) / 2 * (norm_value - 1) + 1
    return lo, hi


def sandwich_check(norm_value: float, xi_val: float, n: int, slack: float = TOL) -> bool:
    lo, hi = sandwich_bounds(norm_value, n)
    return lo - slack <= xi_val <= hi + slack


@dataclass(frozen=True)
class MaxVolCheck:
    ok: bool
    xi: float
    norm: float
    n: int
    simplex: Simplex

    def __bool__(self):
        return self.ok


def maxvol_norm_bound_check(k: Body, seed: int = 0) -> MaxVolCheck:
    """For a maximum-volume simplex in ``K``: ``xi <= n + 2`` and ``||P|| <= n + 1``."""
    from .constructions import maxvol_simplex

    s = maxvol_simplex(k, seed=seed)
    n = k.n
    xv = xi(k, s)
    nv = norm(Projector.from_simplex(s), k).value
    return MaxVolCheck(xv <= n + 2 + TOL and nv <= n + 1 + TOL, xv, nv, n, s)

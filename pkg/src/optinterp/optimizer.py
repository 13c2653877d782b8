"""Seeded search for interpolation nodes with small projector norm."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .bounds import theta_cube_lower, theta_lower_general
from .errors import DegenerateSimplex, DimensionTooLarge, UnsupportedBody
from .geometry import Ball, Body, Cube, Simplex, body_volume, cube_vertices, volume
from .projector import Projector, norm

MAX_EXHAUSTIVE_DIM = 4
MIN_STEP = 1e-9
DEGENERACY_FLOOR = 1e-10
MODES = ("exhaustive_cube_vertices", "continuous_local")


@dataclass(frozen=True)
class SearchConfig:
    body: Body
    mode: str = "continuous_local"
    restarts: int = 16
    max_iters: int = 20000
    step_init: float = 0.25
    seed: int = 0

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if not self.step_init > 0:
            raise ValueError("step_init must be positive")


@dataclass(eq=False)
class SearchResult:
    best: Projector
    norm: float
    trace: list = field(default_factory=list)  # per-restart list of accepted values
    seed_used: int | None = None
    best_restart: int = 0

    def to_dict(self) -> dict:
        return {
            "norm": self.norm,
            "nodes": self.best.nodes.vertices.tolist(),
            "seed": self.seed_used,
            "best_restart": self.best_restart,
            "restart_best": [t[-1] for t in self.trace],
        }


def _result(nodes: np.ndarray, body: Body, **kw) -> SearchResult:
    p = Projector.from_simplex(Simplex(nodes))
    return SearchResult(p, norm(p, body).value, **kw)


# --- exhaustive ---------------------------------------------------------------


def exhaustive_cube_vertex_search(n: int) -> SearchResult:
    """Best projector whose nodes are vertices of ``[0,1]^n``.

    All ``C(2^n, n+1)`` vertex subsets are scanned; degenerate ones are
    skipped and the first minimiser in lexicographic subset order wins.
    """
    if n > MAX_EXHAUSTIVE_DIM:
        raise DimensionTooLarge(f"exhaustive vertex search is limited to n <= {MAX_EXHAUSTIVE_DIM}")
    V = cube_vertices(n)
    Vh = np.hstack([V, np.ones((len(V), 1))])
    combos = np.array(list(itertools.combinations(range(len(V)), n + 1)))
    A = Vh[combos]  # (m, n+1, n+1)
    ok = np.abs(np.linalg.det(A)) > 0.5  # 0/1 determinants are integers
    Ls = np.linalg.inv(A[ok])
    # sum_j |lambda_j(v)| for every subset and every cube vertex
    vals = np.abs(np.einsum("vk,mkj->mvj", Vh, Ls)).sum(axis=2).max(axis=1)
    i = int(np.argmin(vals))
    nodes = V[combos[ok][i]].astype(float)
    return _result(nodes, Cube(n), trace=[[float(vals[i])]], seed_used=None)


# --- continuous local search --------------------------------------------------


class _Objective:
    """Norm of the projector as a function of the node matrix.

    Independent of the projector module so the search and its certificate
    do not share code paths.
    """

    def __init__(self, body: Body):
        n = body.n
        if isinstance(body, Cube):
            self._pts = np.hstack([cube_vertices(n), np.ones((2**n, 1))])
            self._ball = None
        elif isinstance(body, Ball):
            signs = np.array(list(itertools.product((1.0, -1.0), repeat=n)))
            self._signs = np.hstack([np.ones((len(signs), 1)), signs])
            self._ball = body
        else:
            raise UnsupportedBody("continuous search supports Cube and Ball")

    def __call__(self, X: np.ndarray) -> float:
        A = np.hstack([X, np.ones((len(X), 1))])
        L = np.linalg.inv(A)
        if self._ball is None:
            return float(np.abs(self._pts @ L).sum(axis=1).max())
        n = X.shape[1]
        G = L[:n].T
        c = np.append(self._ball.center, 1.0) @ L
        U = self._signs @ G
        vals = np.abs(self._signs @ c) + self._ball.radius * np.sqrt(np.einsum("ij,ij->i", U, U))
        return float(vals.max())


def _project(body: Body, x: np.ndarray) -> np.ndarray:
    if isinstance(body, Cube):
        return np.clip(x, 0.0, 1.0)
    d = x - body.center
    r = np.linalg.norm(d)
    return x if r <= body.radius else body.center + d * (body.radius / r)


def _random_interior(body: Body, rng: np.random.Generator) -> np.ndarray:
    n = body.n
    if isinstance(body, Cube):
        return rng.random((n + 1, n))
    g = rng.standard_normal((n + 1, n))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    return body.center + body.radius * g * rng.random((n + 1, 1)) ** (1.0 / n)


def _abs_det(X: np.ndarray) -> float:
    return abs(float(np.linalg.det(np.hstack([X, np.ones((len(X), 1))]))))


def _directions(n: int) -> np.ndarray:
    """Coordinate axes plus the pairwise diagonals ``e_i +- e_k``.

    The diagonals let the search slide along kinks of the max-type objective
    where every single-axis move is uphill.
    """
    dirs = [np.eye(n)[i] for i in range(n)]
    for i, k in itertools.combinations(range(n), 2):
        for s in (1.0, -1.0):
            d = np.zeros(n)
            d[i], d[k] = 1.0, s
            dirs.append(d / math.sqrt(2))
    return np.array(dirs)


def _try(f, body, Y, best, floor):
    Y = np.array([_project(body, y) for y in Y])
    if _abs_det(Y) <= floor:
        return None
    val = f(Y)
    return (Y, val) if val < best else None


def _pattern_search(f, body: Body, X: np.ndarray, step: float, max_iters: int, rng):
    """Derivative-free descent with step halving.

    Each sweep polls single-node moves along :func:`_directions`; when none
    helps, random directions in the full node space are polled (moving
    several nodes at once escapes kinks), and only then is the step halved.
    """
    dirs = _directions(body.n)
    floor = DEGENERACY_FLOOR * _abs_det(X)
    best = f(X)
    trace = [best]
    iters = 0
    n_random = 2 * X.size
    while step >= MIN_STEP and iters < max_iters:
        hit = None
        for j in range(len(X)):
            for d in dirs:
                for sgn in (1.0, -1.0):
                    iters += 1
                    Y = X.copy()
                    Y[j] = X[j] + sgn * step * d
                    hit = _try(f, body, Y, best, floor)
                    if hit:
                        break
                if hit:
                    break
            if hit:
                break
        if not hit:
            D = rng.standard_normal((n_random,) + X.shape)
            D /= np.linalg.norm(D.reshape(n_random, -1), axis=1)[:, None, None]
            for d in D:
                iters += 1
                hit = _try(f, body, X + step * d, best, floor)
                if hit:
                    break
        if hit:
            X, best = hit
            trace.append(best)
        else:
            step /= 2
    return X, best, trace


def continuous_local_search(config: SearchConfig) -> SearchResult:
    """Pattern search over node positions with seeded random restarts.

    Each restart draws its start from ``default_rng([seed, restart])``; the
    result is the restart with the smallest norm, lowest index on ties.
    """
    body = config.body
    if not isinstance(body, (Cube, Ball)):
        raise UnsupportedBody("continuous search supports Cube and Ball")
    f = _Objective(body)
    best_X, best_val, best_r, traces = None, math.inf, 0, []
    for r in range(config.restarts):
        rng = np.random.default_rng([config.seed, r])
        X = _random_interior(body, rng)
        while _abs_det(X) < 1e-6:
            X = _random_interior(body, rng)
        X, val, trace = _pattern_search(f, body, X, config.step_init, config.max_iters, rng)
        traces.append(trace)
        if val < best_val:
            best_X, best_val, best_r = X, val, r
    res = _result(best_X, body, trace=traces, seed_used=config.seed, best_restart=best_r)
    return res


def search(config: SearchConfig) -> SearchResult:
    if config.mode == "exhaustive_cube_vertices":
        if not isinstance(config.body, Cube):
            raise UnsupportedBody("vertex search runs on the cube")
        return exhaustive_cube_vertex_search(config.body.n)
    return continuous_local_search(config)


# --- certification ------------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    norm: float
    reported_norm: float
    projector_lower: float  # chi_n^{-1}(vol K / vol S)
    global_lower: float
    gap: float

    @property
    def consistent(self) -> bool:
        return abs(self.norm - self.reported_norm) <= 1e-9 and self.norm >= self.global_lower - 1e-9

    def to_dict(self) -> dict:
        return {
            "norm": self.norm,
            "reported_norm": self.reported_norm,
            "projector_lower": self.projector_lower,
            "global_lower": self.global_lower,
            "gap": self.gap,
            "consistent": self.consistent,
        }


def _global_lower(body: Body) -> float:
    n = body.n
    if isinstance(body, Cube):
        return theta_cube_lower(n)
    if isinstance(body, Ball):
        return 3 - 4 / (n + 1)
    raise UnsupportedBody("global lower bounds are known for Cube and Ball")


def certify(result, body: Body) -> Certificate:
    """Recompute the norm and compare it with the available lower bounds.

    ``result`` may be a :class:`SearchResult` or a bare simplex.
    """
    if isinstance(result, SearchResult):
        s, reported = result.best.nodes, result.norm
    else:
        s = result.nodes if isinstance(result, Projector) else result
        reported = None
    value = norm(s, body).value
    if reported is None:
        reported = value
    vs = volume(s)
    if vs <= 0:
        raise DegenerateSimplex("zero-volume node simplex")
    per = theta_lower_general(body_volume(body).value, vs, body.n)
    glob = _global_lower(body)
    return Certificate(value, reported, per, glob, max(0.0, value - glob))

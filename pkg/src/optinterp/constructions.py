"""Hadamard matrices, regular simplices, named extremal simplices and
maximum-volume simplex search among cube vertices."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
import scipy.linalg

from .errors import DimensionTooLarge, DomainError, NotConstructible, UnknownName
from .geometry import (
    Ball,
    Body,
    Cube,
    PointCloud,
    Simplex,
    VertexPolytope,
    as_point,
    bits_table,
)

MAX_EXHAUSTIVE_DIM = 5
MAX_HEURISTIC_DIM = 12


# --- Hadamard matrices ------------------------------------------------------


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    return all(q % d for d in range(2, math.isqrt(q) + 1))


def _quadratic_character(q: int) -> np.ndarray:
    chi = np.array([0] + [1 if pow(a, (q - 1) // 2, q) == 1 else -1 for a in range(1, q)])
    return chi


def _jacobsthal(q: int) -> np.ndarray:
    chi = _quadratic_character(q)
    i = np.arange(q)
    return chi[(i[None, :] - i[:, None]) % q]


def sylvester(k: int) -> np.ndarray:
    H = np.ones((1, 1), dtype=np.int64)
    for _ in range(k):
        H = np.block([[H, H], [H, -H]])
    return H


def paley_i(q: int) -> np.ndarray:
    """Order ``q + 1`` for a prime ``q = 3 mod 4``."""
    Q = _jacobsthal(q)
    S = np.zeros((q + 1, q + 1), dtype=np.int64)
    S[0, 1:] = 1
    S[1:, 0] = -1
    S[1:, 1:] = Q
    return S + np.eye(q + 1, dtype=np.int64)


def paley_ii(q: int) -> np.ndarray:
    """Order ``2 (q + 1)`` for a prime ``q = 1 mod 4``."""
    Q = _jacobsthal(q)
    C = np.zeros((q + 1, q + 1), dtype=np.int64)
    C[0, 1:] = 1
    C[1:, 0] = 1
    C[1:, 1:] = Q
    zero_block = np.array([[1, -1], [-1, -1]], dtype=np.int64)
    unit_block = np.array([[1, 1], [1, -1]], dtype=np.int64)
    return np.block([[zero_block if c == 0 else c * unit_block for c in row] for row in C])


@lru_cache(maxsize=None)
def _hadamard(m: int) -> np.ndarray | None:
    if m == 1:
        return np.ones((1, 1), dtype=np.int64)
    if m == 2 or (m % 4 == 0 and m & (m - 1) == 0):
        return sylvester(m.bit_length() - 1)
    if m % 4:
        return None
    if _is_prime(m - 1) and (m - 1) % 4 == 3:
        return paley_i(m - 1)
    q = m // 2 - 1
    if _is_prime(q) and q % 4 == 1:
        return paley_ii(q)
    for a in range(2, m // 2 + 1):
        if m % a:
            continue
        A, B = _hadamard(a), _hadamard(m // a)
        if A is not None and B is not None:
            return np.kron(A, B)
    return None


def hadamard(m: int) -> np.ndarray:
    """A Hadamard matrix of order ``m``.

    Built from Sylvester doubling, Paley I (``m - 1`` prime, ``= 3 mod 4``),
    Paley II (``m/2 - 1`` prime, ``= 1 mod 4``) and Kronecker products of
    those.  Raises :class:`NotConstructible` for any other order (e.g. 92).
    """
    if m < 1:
        raise DomainError("order must be positive")
    H = _hadamard(m)
    if H is None:
        raise NotConstructible(f"no implemented construction yields a Hadamard matrix of order {m}")
    return H.copy()


def is_hadamard(H: np.ndarray) -> bool:
    H = np.asarray(H, dtype=np.int64)
    m = H.shape[0]
    return bool(np.isin(H, (-1, 1)).all() and np.array_equal(H @ H.T, m * np.eye(m, dtype=np.int64)))


# --- regular simplices ------------------------------------------------------


def regular_simplex_in_cube(n: int) -> Simplex:
    """Regular simplex with vertices at cube vertices, from a Hadamard matrix of order n+1.

    Rows are normalised so the first column is all ones; the remaining
    columns map ``+1 -> 1`` and ``-1 -> 0``.
    """
    H = hadamard(n + 1)
    H = H * H[:, :1]
    return Simplex((H[:, 1:] + 1) // 2)


def hadamard_norm_bound_check(n: int) -> bool:
    """``||P_S|| <= sqrt(n + 1)`` on ``Q_n`` for the Hadamard simplex."""
    from .projector import norm_over_cube

    value = norm_over_cube(regular_simplex_in_cube(n)).value
    return value <= math.sqrt(n + 1) + 1e-9


def regular_simplex_in_ball(n: int, center=None, radius: float = 1.0) -> Simplex:
    """Regular simplex inscribed in ``B(center; radius)``.

    The standard basis of R^(n+1), centred on its barycentre, is expressed in
    the orthonormal Helmert basis of the sum-zero hyperplane and rescaled.
    """
    if not radius > 0:
        raise DomainError("radius must be positive")
    c = np.zeros(n) if center is None else as_point(center, n)
    if n == 0:
        raise DomainError("dimension must be >= 1")
    Hm = scipy.linalg.helmert(n + 1)  # (n, n+1), rows orthonormal and orthogonal to ones
    V = Hm.T * (radius * math.sqrt((n + 1) / n))
    return Simplex(V + c)


# --- named simplices --------------------------------------------------------

TAU = (3 - math.sqrt(5)) / 2

_CATALOG = {
    "golden_triangle": (2, [[0, 0], [1, TAU], [TAU, 1]]),
    "S_prime_3": (3, [[1, 1, 0], [1, 0, 1], [0, 1, 1], [0, 0, 0]]),
    "S_doubleprime_3": (3, [[0.5, 0, 0], [0.5, 1, 0], [0, 0.5, 1], [1, 0.5, 1]]),
    "hadamard_7": (
        7,
        [
            [1, 1, 1, 1, 1, 1, 1],
            [0, 1, 0, 1, 0, 1, 0],
            [0, 0, 1, 1, 0, 0, 1],
            [1, 0, 0, 1, 1, 0, 0],
            [0, 0, 0, 0, 1, 1, 1],
            [1, 0, 1, 0, 0, 1, 0],
            [1, 1, 0, 0, 0, 0, 1],
            [0, 1, 1, 0, 1, 0, 0],
        ],
    ),
}

CATALOG_NAMES = tuple(_CATALOG)


def catalog(name: str) -> Simplex:
    """Extremal node simplices in the unit cube with known minimal norms."""
    try:
        _, verts = _CATALOG[name]
    except KeyError:
        raise UnknownName(f"unknown catalog entry {name!r}; choose from {', '.join(CATALOG_NAMES)}") from None
    return Simplex(verts)


def catalog_body(name: str) -> Cube:
    if name not in _CATALOG:
        raise UnknownName(name)
    return Cube(_CATALOG[name][0])


# --- maximum volume simplices -----------------------------------------------


@dataclass(frozen=True, eq=False)
class MaxVolResult:
    simplex: Simplex
    volume: float
    determinant: float  # |det| of the vertex matrix (an integer for cube vertices)
    mode: str
    seed: int | None = None
    restarts: int = 0
    trace: list = field(default_factory=list)  # best |det| per restart


def _batched_abs_det(points: np.ndarray, combos: np.ndarray) -> np.ndarray:
    A = points[combos]  # (b, n+1, n)
    A = np.concatenate([A, np.ones(A.shape[:2] + (1,))], axis=2)
    return np.abs(np.linalg.det(A))


def _exhaustive(points: np.ndarray, n: int, chunk: int = 1 << 16) -> tuple[np.ndarray, float]:
    combos = itertools.combinations(range(points.shape[0]), n + 1)
    best, best_combo = -1.0, None
    while True:
        block = np.array(list(itertools.islice(combos, chunk)), dtype=np.int64)
        if block.size == 0:
            break
        d = _batched_abs_det(points, block)
        i = int(np.argmax(d))
        # strict improvement keeps the lexicographically first maximiser
        if d[i] > best + 1e-9:
            best, best_combo = float(d[i]), block[i]
    return points[best_combo], best


def _ascend_cube(A: np.ndarray, n: int, max_iters: int) -> np.ndarray:
    """Steepest ascent by single vertex exchange.

    Replacing vertex ``j`` by ``x`` scales ``|det|`` by ``|lambda_j(x)|``; over
    cube vertices the best ``x`` for each ``j`` is read off the signs of the
    gradient of ``lambda_j``.
    """
    for _ in range(max_iters):
        L = np.linalg.inv(A)
        g, c = L[:n, :], L[n, :]
        up = np.clip(g, 0, None).sum(axis=0) + c
        down = -(np.clip(g, None, 0).sum(axis=0) + c)
        gain = np.maximum(up, down)
        j = int(np.argmax(gain))
        if gain[j] <= 1 + 1e-9:
            break
        A[j, :n] = (g[:, j] > 0) if up[j] >= down[j] else (g[:, j] < 0)
    return A


def _ascend_points(A: np.ndarray, P: np.ndarray, max_iters: int) -> np.ndarray:
    n = P.shape[1]
    Ph = np.hstack([P, np.ones((P.shape[0], 1))])
    for _ in range(max_iters):
        lam = np.abs(Ph @ np.linalg.inv(A))  # (m, n+1)
        i, j = np.unravel_index(int(np.argmax(lam)), lam.shape)
        if lam[i, j] <= 1 + 1e-9:
            break
        A[j, :n] = P[i]
    return A


def _random_start(rng, sample, n: int) -> np.ndarray:
    for _ in range(10_000):
        A = np.hstack([sample(rng), np.ones((n + 1, 1))])
        if abs(np.linalg.det(A)) > 1e-9:
            return A
    raise DomainError("could not draw a nondegenerate starting simplex")


def _heuristic(sample, ascend, n: int, restarts: int, seed: int, max_iters: int):
    best_A, best, trace = None, -1.0, []
    for r in range(restarts):
        rng = np.random.default_rng([seed, r])
        A = ascend(_random_start(rng, sample, n), max_iters)
        d = abs(np.linalg.det(A))
        trace.append(d)
        if d > best + 1e-9:
            best_A, best = A.copy(), d
    return best_A[:, :n], best, trace


def maxvol_simplex_cube(
    n: int,
    mode: str = "exhaustive",
    seed: int = 0,
    restarts: int = 50,
    max_iters: int = 10_000,
) -> MaxVolResult:
    """Largest simplex with vertices among the ``2^n`` cube vertices.

    ``exhaustive`` (n <= 5) scans every ``(n+1)``-subset and is exact;
    ``heuristic`` (n <= 12) runs seeded steepest-ascent vertex exchange from
    ``restarts`` random starts and reports the best found.
    """
    if mode == "exhaustive":
        if n > MAX_EXHAUSTIVE_DIM:
            raise DimensionTooLarge(f"exhaustive search is limited to n <= {MAX_EXHAUSTIVE_DIM}")
        V, d = _exhaustive(bits_table(n), n)
        d = float(round(d))
        return MaxVolResult(Simplex(V), d / math.factorial(n), d, mode)
    if mode == "heuristic":
        if n > MAX_HEURISTIC_DIM:
            raise DimensionTooLarge(f"heuristic search is limited to n <= {MAX_HEURISTIC_DIM}")
        V, d, trace = _heuristic(
            lambda rng: rng.integers(0, 2, size=(n + 1, n)).astype(float),
            lambda A, it: _ascend_cube(A, n, it),
            n,
            restarts,
            seed,
            max_iters,
        )
        d = float(round(d))
        return MaxVolResult(Simplex(V), d / math.factorial(n), d, mode, seed, restarts, [float(round(t)) for t in trace])
    raise DomainError(f"unknown mode {mode!r}")


def maxvol_simplex_points(
    points, seed: int = 0, restarts: int = 20, exhaustive_limit: int = 200_000
) -> MaxVolResult:
    """Largest simplex with vertices in a finite point set."""
    P = np.asarray(points, dtype=float)
    m, n = P.shape
    if math.comb(m, n + 1) <= exhaustive_limit:
        V, d = _exhaustive(P, n)
        return MaxVolResult(Simplex(V), d / math.factorial(n), d, "exhaustive")
    V, d, trace = _heuristic(
        lambda rng: P[rng.choice(m, size=n + 1, replace=False)],
        lambda A, it: _ascend_points(A, P, it),
        n,
        restarts,
        seed,
        10_000,
    )
    return MaxVolResult(Simplex(V), d / math.factorial(n), d, "heuristic", seed, restarts, trace)


def maxvol_simplex(body: Body, seed: int = 0) -> Simplex:
    """A maximum-volume simplex in the body (best found where search is heuristic)."""
    n = body.n
    if isinstance(body, Ball):
        return regular_simplex_in_ball(n, body.center, body.radius)
    if isinstance(body, Cube):
        if n <= MAX_EXHAUSTIVE_DIM:
            return maxvol_simplex_cube(n, "exhaustive").simplex
        if n <= MAX_HEURISTIC_DIM:
            return maxvol_simplex_cube(n, "heuristic", seed=seed).simplex
        return regular_simplex_in_cube(n)
    if isinstance(body, VertexPolytope):
        return maxvol_simplex_points(body.vertices, seed=seed).simplex
    if isinstance(body, PointCloud):
        return maxvol_simplex_points(body.points, seed=seed).simplex
    raise DomainError(type(body).__name__)

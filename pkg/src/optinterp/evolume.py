"""The polytope ``E(n, gamma) = {x : sum|x_j| + |1 - sum x_j| <= gamma}``.

Its volume is ``chi_n(gamma) / n!``.  A seeded Monte Carlo estimator gives an
independent check of that identity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, DomainError
from .legendre import chi

#: samples drawn per independent substream of the Monte Carlo estimator
MC_CHUNK = 1 << 18


@dataclass(frozen=True)
class EnGammaSpec:
    n: int
    gamma: float

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("dimension must be >= 1")
        if not self.gamma >= 1:
            raise DomainError(f"gamma must be >= 1, got {self.gamma}")


@dataclass(frozen=True)
class MCEstimate:
    estimate: float
    std_error: float
    samples: int
    seed: int
    hits: int


def _gauge(X: np.ndarray) -> np.ndarray:
    return np.abs(X).sum(axis=-1) + np.abs(1.0 - X.sum(axis=-1))


def e_contains(spec: EnGammaSpec, x) -> bool:
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.shape[0] != spec.n:
        raise DimensionMismatch(f"expected a point in R^{spec.n}")
    return bool(_gauge(x) <= spec.gamma)


def e_volume_exact(spec: EnGammaSpec) -> float:
    return chi(spec.n, spec.gamma) / math.factorial(spec.n)


def e_volume_mc(spec: EnGammaSpec, samples: int = 10**6, seed: int = 0) -> MCEstimate:
    """Uniform sampling in the box ``[-gamma, gamma]^n``, which encloses E.

    The budget is split into fixed-size chunks, each with its own substream
    spawned from ``SeedSequence(seed)``, so the result depends only on
    ``(samples, seed)`` and the chunks may be evaluated in any order.
    """
    if samples < 10**4:
        raise DomainError("use at least 10^4 samples")
    n, g = spec.n, spec.gamma
    n_chunks = -(-samples // MC_CHUNK)
    streams = np.random.SeedSequence(seed).spawn(n_chunks)
    hits = 0
    for c, ss in enumerate(streams):
        m = min(MC_CHUNK, samples - c * MC_CHUNK)
        X = np.random.default_rng(ss).uniform(-g, g, size=(m, n))
        hits += int(np.count_nonzero(_gauge(X) <= g))
    box = (2.0 * g) ** n
    p = hits / samples
    return MCEstimate(
        estimate=box * p,
        std_error=box * math.sqrt(p * (1.0 - p) / samples),
        samples=samples,
        seed=seed,
        hits=hits,
    )


def e_measure_recurrence_check(n: int, t: float) -> float:
    """Residual of the three-term recurrence linking the volumes of E(n-1), E(n), E(n+1)."""
    if n < 1:
        raise DomainError("n must be >= 1")

    def mes(k: int) -> float:
        return chi(k, t) / math.factorial(k)

    rhs = (2 * n + 1) / (n + 1) ** 2 * t * mes(n) - mes(n - 1) / (n + 1) ** 2
    return abs(mes(n + 1) - rhs)

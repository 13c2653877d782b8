"""Standardized Legendre polynomials ``chi_n`` (normalised by ``chi_n(1) = 1``)."""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError

MAX_DEGREE = 200
_BISECT_ITERS = 200


def _check_degree(n: int) -> None:
    if n < 0 or n > MAX_DEGREE:
        raise DomainError(f"degree must lie in 0..{MAX_DEGREE}, got {n}")


def chi(n: int, t):
    """Evaluate ``chi_n(t)`` with the three-term recurrence.

    Parameters
    ----------
    n : int
        degree, ``0 <= n <= 200``
    t : float or ndarray
        argument(s)

    Returns
    -------
    float or ndarray
        same shape as ``t``
    """
    _check_degree(n)
    t = np.asarray(t, dtype=float)
    prev, cur = np.ones_like(t), t.copy()
    if n == 0:
        cur = prev
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1) * t * cur - k * prev) / (k + 1)
    return cur.item() if cur.ndim == 0 else cur


def chi_sum(n: int, gamma: float) -> float:
    """``chi_n(gamma)`` from the binomial-square sum, valid for ``gamma >= 1``::

        2^-n * sum_i C(n, i)^2 (gamma - 1)^(n - i) (gamma + 1)^i
    """
    _check_degree(n)
    if gamma < 1:
        raise DomainError(f"gamma must be >= 1, got {gamma}")
    a, b = (gamma - 1) / 2, (gamma + 1) / 2
    return math.fsum(math.comb(n, i) ** 2 * a ** (n - i) * b**i for i in range(n + 1))


def chi_inv(n: int, s: float) -> float:
    """Inverse of ``chi_n`` on ``[1, inf)``.

    ``chi_n`` is increasing there for ``n >= 1``, so bisection on a bracket
    grown by doubling from ``t = 1`` always converges.
    """
    if n < 1:
        raise DomainError("chi_inv needs degree >= 1")
    _check_degree(n)
    if not s >= 1:
        raise DomainError(f"chi_inv is defined for s >= 1, got {s}")
    if n == 1:
        return float(s)
    lo, hi = 1.0, 2.0
    while chi(n, hi) < s:
        lo, hi = hi, 2.0 * hi
    for _ in range(_BISECT_ITERS):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if chi(n, mid) < s:
            lo = mid
        else:
            hi = mid
    # pick whichever bracket end reproduces s more closely
    return lo if abs(chi(n, lo) - s) < abs(chi(n, hi) - s) else hi


def chi_inv_lower(n: int, s: float) -> float:
    """Closed-form lower estimate ``(s / C(n, floor(n/2)))^(1/n)`` of ``chi_inv``, n > 1."""
    if n <= 1:
        raise DomainError("chi_inv_lower needs degree > 1")
    if s < 1:
        raise DomainError(f"s must be >= 1, got {s}")
    return (s / math.comb(n, n // 2)) ** (1.0 / n)

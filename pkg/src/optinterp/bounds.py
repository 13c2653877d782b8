"""Closed-form bounds and known values for the minimal projector norm
``theta_n(K)`` on the cube ``Q_n = [0,1]^n`` and the unit ball ``B_n``."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError
from .geometry import kappa
from .legendre import chi, chi_inv

# Maximum volume of a simplex in Q_n, n = 1..12.
NU_TABLE: dict[int, Fraction] = {
    1: Fraction(1),
    2: Fraction(1, 2),
    3: Fraction(1, 3),
    4: Fraction(1, 8),
    5: Fraction(1, 24),
    6: Fraction(1, 80),
    7: Fraction(2, 315),
    8: Fraction(1, 720),
    9: Fraction(1, 2520),
    10: Fraction(1, 11340),
    11: Fraction(9, 246400),
    12: Fraction(3, 394240),
}

# Printed k_n values for the ball.
K_TABLE: dict[int, int] = {
    1: 1, 2: 1, 3: 1, 4: 1, 5: 2, 6: 2, 7: 3, 8: 3, 9: 3,
    10: 4, 11: 4, 12: 5, 13: 5, 14: 6, 15: 6,
    50: 22, 100: 45, 1000: 485,
}  # fmt: skip

BALL_CONSTANT = math.pi ** (1 / 3) / (math.sqrt(12 * math.e) * 3 ** (1 / 6))
SQRT_CONSTANT = 2 * math.sqrt(2) / (3 * math.e)


@dataclass(frozen=True)
class TableEntry:
    """One row of the known upper estimates of ``theta_n(Q_n)``.

    ``exact`` marks rows where the value is the minimal norm itself rather
    than an upper estimate.  ``fraction`` is set where the value is rational.
    """

    n: int
    value: float
    text: str
    exact: bool = False
    fraction: Fraction | None = None


def _entry(n, value, text, exact=False):
    frac = value if isinstance(value, Fraction) else None
    return TableEntry(n, float(value), text, exact, frac)


THETA_UPPER_TABLE: dict[int, TableEntry] = {
    e.n: e
    for e in [
        _entry(1, Fraction(1), "1", exact=True),
        _entry(2, 2 * math.sqrt(5) / 5 + 1, "2*sqrt(5)/5+1", exact=True),
        _entry(3, Fraction(2), "2", exact=True),
        _entry(4, 3 * (4 + math.sqrt(2)) / 7, "3*(4+sqrt(2))/7"),
        _entry(5, 2.448804, "2.448804"),
        _entry(6, 2.6000, "2.6000..."),
        _entry(7, Fraction(5, 2), "5/2", exact=True),
        _entry(8, Fraction(22, 7), "22/7"),
        _entry(9, Fraction(3), "3"),
        _entry(10, Fraction(19, 5), "19/5"),
        _entry(11, Fraction(3), "3"),
        _entry(12, Fraction(17, 5), "17/5"),
        _entry(13, Fraction(49, 13), "49/13"),
        _entry(14, Fraction(21, 5), "21/5"),
        _entry(15, Fraction(7, 2), "7/2"),
        _entry(16, Fraction(21, 5), "21/5"),
        _entry(17, Fraction(139, 34), "139/34"),
        _entry(18, 5.1400, "5.1400..."),
        _entry(19, Fraction(4), "4"),
        _entry(20, 4.68879, "4.68879..."),
        _entry(21, Fraction(251, 50), "251/50"),
        _entry(22, Fraction(1817, 335), "1817/335"),
        _entry(23, Fraction(9, 2), "9/2"),
        _entry(24, Fraction(103, 21), "103/21"),
        _entry(25, Fraction(5), "5"),
        _entry(26, Fraction(474, 91), "474/91"),
        _entry(27, Fraction(5), "5"),
    ]
}


def upper_estimates_table() -> dict[int, TableEntry]:
    return dict(THETA_UPPER_TABLE)


# --- volumes ----------------------------------------------------------------


def sigma(n: int) -> float:
    """Volume of the regular simplex inscribed in the unit ball."""
    return math.sqrt(n + 1) * ((n + 1) / n) ** (n / 2) / math.factorial(n)


def kappa_sigma(n: int) -> tuple[float, float]:
    if n < 1:
        raise DomainError("n must be >= 1")
    return kappa(n), sigma(n)


def ball_ratio(n: int) -> float:
    """``kappa_n / sigma_n``; at least 1 for every n."""
    return kappa(n) / sigma(n)


@dataclass(frozen=True)
class NuBounds:
    lower: float
    upper: float
    upper_even: float | None
    upper_1mod4: float | None

    def best_upper(self) -> float:
        return min(v for v in (self.upper, self.upper_even, self.upper_1mod4) if v is not None)


def nu_bounds(n: int) -> NuBounds:
    """Bounds on the maximum simplex volume ``nu_n`` in ``Q_n``.

    The general upper bound is attained exactly when ``n + 1`` is a Hadamard
    order; the sharper even and ``n = 1 mod 4`` bounds are ``None`` when
    their congruence does not hold.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    base = (n + 1) ** ((n + 1) / 2) / (2**n * math.factorial(n))
    even = n ** (n / 2) * math.sqrt(2 * n + 1) / (2**n * math.factorial(n)) if n % 2 == 0 else None
    one_mod_4 = None
    if n > 1 and n % 4 == 1:
        one_mod_4 = (n - 1) ** ((n - 1) / 2) / (2 ** (n - 1) * math.factorial(n - 1))
    return NuBounds(0.75 ** ((n + 1) / 2) * base, base, even, one_mod_4)


def nu_value(n: int) -> tuple[float, str]:
    """``nu_n`` from the table, or the best valid upper bound beyond it."""
    if n in NU_TABLE:
        return float(NU_TABLE[n]), "table"
    return nu_bounds(n).best_upper(), "hadamard-upper-bound"


def h_value(n: int) -> Fraction:
    """Maximum 0/1 determinant of order n, ``h_n = n! nu_n`` (table range only)."""
    return math.factorial(n) * NU_TABLE[n]


# --- lower bounds -----------------------------------------------------------


def theta_lower_general(vol: float, simp: float, n: int) -> float:
    """``chi_n^{-1}(vol / simp)``: lower bound for any node simplex of volume
    ``simp`` (or at most ``simp``) inside a body of volume ``vol``."""
    if simp <= 0:
        raise DomainError("simplex volume must be positive")
    ratio = vol / simp
    if ratio < 1:
        # allow rounding noise when the body is itself the simplex
        if ratio > 1 - 1e-12:
            ratio = 1.0
        else:
            raise DomainError(f"body volume {vol} is below simplex volume {simp}")
    return chi_inv(n, ratio)


def theta_cube_lower(n: int) -> float:
    """``max(3 - 4/(n+1), chi_n^{-1}(1/nu_n))``.

    Beyond the table, an upper bound on ``nu_n`` is used, which keeps the
    second term a valid (weaker) lower bound.
    """
    return max(theta_cube_lower_parts(n)[:2])


def theta_cube_lower_parts(n: int) -> tuple[float, float, str]:
    nu, source = nu_value(n)
    return 3 - 4 / (n + 1), chi_inv(n, 1 / nu), source


def theta_cube_sqrt_lower(n: int) -> tuple[float, float]:
    """``(sqrt(n-1)/e, 2 sqrt(2)/(3e) * sqrt(n))``."""
    if n < 1:
        raise DomainError("n must be >= 1")
    return math.sqrt(n - 1) / math.e, SQRT_CONSTANT * math.sqrt(n)


def theta_ball_lower(n: int) -> tuple[float, float]:
    """``(chi_n^{-1}(kappa_n / sigma_n), c * sqrt(n))`` with ``c = 0.2135...``."""
    if n < 1:
        raise DomainError("n must be >= 1")
    return theta_lower_general(kappa(n), sigma(n), n), BALL_CONSTANT * math.sqrt(n)


def xi_cube_bounds(n: int) -> tuple[float, float]:
    """``n <= xi_n(Q_n) <= (n^2 - 3)/(n - 1)`` for n > 2; upper ``n + 1`` otherwise."""
    if n < 1:
        raise DomainError("n must be >= 1")
    if n <= 2:
        return float(n), float(n + 1)
    return float(n), (n * n - 3) / (n - 1)


# --- the ball ---------------------------------------------------------------


def psi(n: int, t: float) -> float:
    return 2 * math.sqrt(n) / (n + 1) * math.sqrt(t * (n + 1 - t)) + abs(1 - 2 * t / (n + 1))


@dataclass(frozen=True)
class BallOptimum:
    n: int
    a: int
    psi_a: float
    psi_a1: float
    p: float
    k: int
    tie: bool


def ball_optimum(n: int) -> BallOptimum:
    """``theta_n(B_n) = p_n = max(psi(a_n), psi(a_n + 1))``.

    ``k_n`` is the argument attaining the larger value; on an exact tie
    (within 1e-12) ``a_n + 1`` is chosen and ``tie`` is set.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    a = math.floor((n + 1) / 2 - math.sqrt(n + 1) / 2)
    pa, pa1 = psi(n, a), psi(n, a + 1)
    tie = abs(pa - pa1) <= 1e-12
    k = a if pa > pa1 and not tie else a + 1
    return BallOptimum(n, a, pa, pa1, max(pa, pa1), k, tie)


def theta_ball_34_check(n: int) -> bool:
    """Whether ``theta_n(B_n) = 3 - 4/(n+1)``."""
    return abs(ball_optimum(n).p - (3 - 4 / (n + 1))) <= 1e-9


# --- the n_0 condition ------------------------------------------------------


@dataclass(frozen=True)
class N0Condition:
    n: int
    product: float
    nu_source: str

    @property
    def holds(self) -> bool:
        return self.product < 1

    @property
    def conclusive(self) -> bool:
        # with an upper bound for nu_n, only "holds" is informative
        return self.nu_source == "table" or self.holds


def n0_condition(n: int) -> N0Condition:
    if n <= 2:
        raise DomainError("the condition is stated for n > 2")
    nu, source = nu_value(n)
    return N0Condition(n, chi(n, (3 * n - 5) / (n - 1)) * nu, source)


def n0_sufficient(n: int) -> bool:
    """``chi_n((3n-5)/(n-1)) * nu_n < 1``, which implies the strict form of the
    right-hand sandwich inequality on ``Q_n``."""
    return n0_condition(n).holds


# --- reports ----------------------------------------------------------------


@dataclass
class BoundReport:
    n: int
    body: str
    lower_bounds: list = field(default_factory=list)  # (value, tag)
    upper_bounds: list = field(default_factory=list)
    exact: float | None = None

    def best_lower(self) -> float:
        return max(v for v, _ in self.lower_bounds)

    def best_upper(self) -> float:
        return min(v for v, _ in self.upper_bounds)

    def consistent(self, tol: float = 1e-9) -> bool:
        if self.upper_bounds and self.best_lower() > self.best_upper() + tol:
            return False
        if self.exact is not None:
            if self.exact < self.best_lower() - tol:
                return False
            if self.upper_bounds and self.exact > self.best_upper() + tol:
                return False
        return True

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "body": self.body,
            "lower_bounds": [{"value": v, "formula": t} for v, t in self.lower_bounds],
            "upper_bounds": [{"value": v, "formula": t} for v, t in self.upper_bounds],
            "exact": self.exact,
        }


def bound_report(body: str, n: int) -> BoundReport:
    if n < 1:
        raise DomainError("n must be >= 1")
    if body == "cube":
        tri, leg, source = theta_cube_lower_parts(n)
        sq1, sq2 = theta_cube_sqrt_lower(n)
        rep = BoundReport(n, "cube")
        rep.lower_bounds += [
            (tri, "xi-sandwich: 3 - 4/(n+1)"),
            (leg, f"legendre: chi_n^-1(1/nu_n) [nu_n from {source}]"),
            (sq1, "sqrt(n-1)/e"),
            (sq2, "2*sqrt(2)/(3e)*sqrt(n)"),
        ]
        rep.upper_bounds.append((float(n + 1), "max-volume simplex: n + 1"))
        entry = THETA_UPPER_TABLE.get(n)
        if entry is not None:
            rep.upper_bounds.append((entry.value, f"known upper estimate {entry.text}"))
            if entry.exact:
                rep.exact = entry.value
        return rep
    if body == "ball":
        leg, c_sqrt = theta_ball_lower(n)
        opt = ball_optimum(n)
        rep = BoundReport(n, "ball")
        rep.lower_bounds += [
            (3 - 4 / (n + 1), "xi-sandwich: 3 - 4/(n+1)"),
            (leg, "legendre: chi_n^-1(kappa_n/sigma_n)"),
            (c_sqrt, "0.2135*sqrt(n)"),
            (math.sqrt(n), "sqrt(n)"),
        ]
        rep.upper_bounds += [
            (float(n + 1), "max-volume simplex: n + 1"),
            (math.sqrt(n + 1), "sqrt(n+1)"),
        ]
        rep.exact = opt.p
        return rep
    raise DomainError(f"bounds are available for 'cube' and 'ball', not {body!r}")


CSV_COLUMNS = ["n", "lower_53", "lower_sqrt", "upper_table", "exact_if_known", "provenance"]


def bound_table_rows(n_max: int = 27) -> list[dict]:
    rows = []
    for n in range(1, n_max + 1):
        tri, leg, source = theta_cube_lower_parts(n)
        entry = THETA_UPPER_TABLE.get(n)
        rows.append(
            {
                "n": n,
                "lower_53": max(tri, leg),
                "lower_sqrt": max(theta_cube_sqrt_lower(n)),
                "upper_table": entry.value if entry else "",
                "exact_if_known": entry.value if entry and entry.exact else "",
                "provenance": f"nu_n:{source}" + (f";upper:{entry.text}" if entry else ""),
            }
        )
    return rows


def bound_table_csv(n_max: int = 27) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    for row in bound_table_rows(n_max):
        w.writerow({k: repr(v) if isinstance(v, float) else v for k, v in row.items()})
    return buf.getvalue()

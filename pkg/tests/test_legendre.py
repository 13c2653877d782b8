import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from optinterp.errors import DomainError
from optinterp.legendre import chi, chi_inv, chi_inv_lower, chi_sum

# explicit low-degree polynomials, independent of the recurrence
EXPLICIT = {
    0: lambda t: 1.0,
    1: lambda t: t,
    2: lambda t: (3 * t**2 - 1) / 2,
    3: lambda t: (5 * t**3 - 3 * t) / 2,
    4: lambda t: (35 * t**4 - 30 * t**2 + 3) / 8,
    5: lambda t: (63 * t**5 - 70 * t**3 + 15 * t) / 8,
}


def test_chi_examples():
    for n in range(0, 40):
        assert chi(n, 1.0) == pytest.approx(1.0)
    assert chi(2, 2) == pytest.approx(11 / 2)
    assert chi(3, 2) == pytest.approx(17)


@pytest.mark.parametrize("n", sorted(EXPLICIT))
def test_chi_matches_explicit_polynomials(n):
    for t in (-1.0, -0.3, 0.0, 0.7, 1.0, 2.5, 7.0):
        assert chi(n, t) == pytest.approx(EXPLICIT[n](t), rel=1e-12, abs=1e-12)


def test_chi_vectorised():
    t = np.array([1.0, 2.0, 3.0])
    np.testing.assert_allclose(chi(3, t), [EXPLICIT[3](x) for x in t])


def test_chi_sum_examples():
    assert chi_sum(2, 2) == pytest.approx(11 / 2)
    assert chi_sum(7, 1) == pytest.approx(1.0)
    assert chi_sum(5, 3) == pytest.approx(chi(5, 3), rel=1e-12)
    with pytest.raises(DomainError):
        chi_sum(3, 0.5)


@pytest.mark.parametrize("gamma", [1, 1.5, 2, 5, 10])
def test_chi_sum_agrees_with_recurrence(gamma):
    for n in range(0, 31):
        assert chi_sum(n, gamma) == pytest.approx(chi(n, gamma), rel=1e-9)


def test_chi_inv_examples():
    for n in range(1, 10):
        assert chi_inv(n, 1.0) == 1.0
    for s in (1.0, 3.3, 1e5):
        assert chi_inv(1, s) == s
    assert chi_inv(2, 5.5) == pytest.approx(2.0, rel=1e-12)
    assert chi_inv(2, 2) == pytest.approx(math.sqrt(5 / 3), rel=1e-12)
    with pytest.raises(DomainError):
        chi_inv(3, 0.9)


@pytest.mark.parametrize("s", [1, 2, 10, 1e6])
def test_chi_inv_round_trip(s):
    for n in range(1, 31):
        assert chi(n, chi_inv(n, s)) == pytest.approx(s, rel=1e-9)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 40), st.floats(1.0, 50.0), st.floats(1e-6, 10.0))
def test_chi_monotone_on_upper_branch(n, t, dt):
    assert chi(n, t) < chi(n, t + dt) or n == 0


def test_chi_inv_lower_examples():
    assert chi_inv_lower(2, 2) == pytest.approx(1.0)
    assert chi_inv_lower(4, 1) == pytest.approx((1 / 6) ** 0.25)
    assert chi_inv_lower(3, 10) == pytest.approx((10 / 3) ** (1 / 3))
    with pytest.raises(DomainError):
        chi_inv_lower(1, 2)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 40), st.floats(1.0, 1e8))
def test_chi_inv_lower_below_inverse(n, s):
    assert chi_inv_lower(n, s) < chi_inv(n, s)

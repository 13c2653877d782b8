import math

import numpy as np
import pytest

from optinterp.errors import DimensionMismatch, DomainError
from optinterp.evolume import (
    EnGammaSpec,
    e_contains,
    e_measure_recurrence_check,
    e_volume_exact,
    e_volume_mc,
)


def test_contains_examples():
    assert e_contains(EnGammaSpec(1, 2), [-0.5])
    assert e_contains(EnGammaSpec(1, 2), [1.5])
    assert not e_contains(EnGammaSpec(1, 2), [1.6])
    for n in (1, 3, 6):
        assert e_contains(EnGammaSpec(n, 1), np.eye(n)[0])
    assert not e_contains(EnGammaSpec(2, 2), [2, 0])
    with pytest.raises(DimensionMismatch):
        e_contains(EnGammaSpec(2, 2), [1, 2, 3])


def test_contains_symmetric_in_coordinates(rng):
    spec = EnGammaSpec(4, 2.5)
    for x in rng.uniform(-2, 2, size=(200, 4)):
        assert e_contains(spec, x) == e_contains(spec, rng.permutation(x))


def test_exact_volumes():
    assert e_volume_exact(EnGammaSpec(1, 2)) == pytest.approx(2, abs=1e-12)
    assert e_volume_exact(EnGammaSpec(2, 2)) == pytest.approx(11 / 4, abs=1e-12)
    assert e_volume_exact(EnGammaSpec(3, 2)) == pytest.approx(17 / 6, abs=1e-12)
    for n in range(1, 8):
        assert e_volume_exact(EnGammaSpec(n, 1)) == pytest.approx(1 / math.factorial(n))


def test_gamma_below_one_rejected():
    with pytest.raises(DomainError):
        EnGammaSpec(2, 0.99)


def test_mc_examples():
    est = e_volume_mc(EnGammaSpec(2, 2), samples=10**6, seed=0)
    assert abs(est.estimate - 2.75) <= 3 * est.std_error
    assert 0.004 < est.std_error < 0.008
    one = e_volume_mc(EnGammaSpec(1, 1), samples=10**5, seed=1)
    assert abs(one.estimate - 1) <= 3 * one.std_error
    for seed in (5, 6):
        e = e_volume_mc(EnGammaSpec(3, 2), samples=10**6, seed=seed)
        assert abs(e.estimate - 17 / 6) <= 3 * e.std_error


def test_mc_is_deterministic_per_seed():
    a = e_volume_mc(EnGammaSpec(3, 1.5), samples=10**5, seed=9)
    b = e_volume_mc(EnGammaSpec(3, 1.5), samples=10**5, seed=9)
    c = e_volume_mc(EnGammaSpec(3, 1.5), samples=10**5, seed=10)
    assert a == b
    assert a.hits != c.hits


def test_mc_rejects_tiny_budgets():
    with pytest.raises(DomainError):
        e_volume_mc(EnGammaSpec(2, 2), samples=100)


def test_recurrence_examples():
    assert e_measure_recurrence_check(1, 2) == pytest.approx(0, abs=1e-14)
    assert e_measure_recurrence_check(1, 1) == pytest.approx(0, abs=1e-14)
    assert e_measure_recurrence_check(4, 3) < 1e-10


@pytest.mark.parametrize("t", [1, 2, 5])
def test_recurrence_sweep(t):
    for n in range(1, 21):
        assert e_measure_recurrence_check(n, t) < 1e-10

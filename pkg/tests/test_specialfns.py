import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nslct import DomainError
from nslct.specialfns import digamma_fn, gamma_fn

mpmath = pytest.importorskip("mpmath")

EULER_GAMMA = 0.5772156649015328606


def test_gamma_half_and_integers():
    assert gamma_fn(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-12)
    for k in range(1, 12):
        assert gamma_fn(float(k)) == pytest.approx(math.factorial(k - 1), rel=1e-13)


def test_digamma_half():
    want = -EULER_GAMMA - 2.0 * math.log(2.0)
    assert digamma_fn(0.5) == pytest.approx(want, rel=1e-12)


def test_digamma_one_is_minus_euler():
    assert digamma_fn(1.0) == pytest.approx(-EULER_GAMMA, rel=1e-12)


def test_domain_rejection():
    for bad in (0.0, -1.5, math.nan, math.inf):
        with pytest.raises(DomainError):
            gamma_fn(bad)
        with pytest.raises(DomainError):
            digamma_fn(bad)


def test_gamma_against_mpmath_grid():
    xs = np.linspace(0.05, 30.0, 240)
    for x in xs:
        want = float(mpmath.gamma(x))
        assert gamma_fn(float(x)) == pytest.approx(want, rel=1e-12)


def test_digamma_against_mpmath_grid():
    xs = np.linspace(0.05, 30.0, 240)
    for x in xs:
        want = float(mpmath.digamma(x))
        assert digamma_fn(float(x)) == pytest.approx(want, rel=1e-12, abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(x=st.floats(0.01, 60.0))
def test_gamma_recurrence(x):
    assert gamma_fn(x + 1.0) == pytest.approx(x * gamma_fn(x), rel=1e-13)


@settings(max_examples=200, deadline=None)
@given(x=st.floats(0.01, 60.0))
def test_digamma_recurrence(x):
    got = digamma_fn(x + 1.0)
    want = digamma_fn(x) + 1.0 / x
    assert got == pytest.approx(want, rel=1e-12, abs=1e-11)

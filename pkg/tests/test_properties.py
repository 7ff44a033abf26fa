import math

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from chainmap import io
from chainmap.chain import (
    hahn_chain,
    jacobi_chain,
    jacobi_recurrence,
    littleq_chain,
    littleq_coefficients,
)
from chainmap.measures import Measure
from chainmap.orthopoly import affine_transform, gauss_rule, lanczos_rkpw, to_orthonormal

exponents = st.floats(0.0, 4.0)
deltas = st.floats(1.05, 5.0)
finite = st.floats(allow_nan=False, allow_infinity=False)


@given(finite)
def test_fmt_round_trips_every_double(x):
    assert float(io.fmt(x)) == x


@given(exponents, st.integers(2, 60))
def test_jacobi_chain_invariants(s, n):
    cp = jacobi_chain(0.1, s, 1.0, n)
    assert np.all(cp.t > 0)
    assert np.all((cp.omega >= 0) & (cp.omega <= 1))
    assert np.all(cp.t <= 1)


@given(exponents, st.floats(-3, 3), st.floats(0.1, 5))
def test_affine_round_trip(s, a, width):
    rc = jacobi_recurrence(s, 25)
    there = affine_transform(rc, (0.0, 1.0), (a, a + width))
    back = affine_transform(there, (a, a + width), (0.0, 1.0))
    np.testing.assert_allclose(back.alpha, rc.alpha, rtol=1e-13, atol=1e-13)
    np.testing.assert_allclose(back.beta, rc.beta, rtol=1e-13)


@settings(max_examples=20, deadline=None)
@given(st.floats(0.0, 3.0), st.floats(-2, 2), st.floats(0.5, 3))
def test_affine_covariance(s, a, width):
    direct = lanczos_rkpw(Measure.from_weight(lambda y: np.power((y - a) / width, s), a, a + width), 12)
    mapped = affine_transform(jacobi_recurrence(s, 12), (0.0, 1.0), (a, a + width))
    np.testing.assert_allclose(direct.alpha, mapped.alpha, rtol=1e-12, atol=1e-12 * width)
    np.testing.assert_allclose(direct.beta, mapped.beta, rtol=1e-11)


@given(exponents, st.integers(1, 20))
def test_gauss_rule_reproduces_moments(s, n):
    rule = gauss_rule(jacobi_recurrence(s, n), n)
    assert np.all(rule.weights > 0)
    assert np.all((rule.nodes > 0) & (rule.nodes < 1))
    for r in range(2 * n):
        assert math.isclose(rule.integrate(lambda x: x**r), 1 / (s + r + 1), rel_tol=1e-12)


@given(exponents, st.integers(3, 40))
def test_orthonormal_consistency(s, n):
    rc = jacobi_recurrence(s, n)
    A, B, C = to_orthonormal(rc)
    k = np.arange(len(A))
    np.testing.assert_allclose(A / C, rc.alpha[k], rtol=1e-14)
    np.testing.assert_allclose(1 / C**2, rc.beta[k + 1], rtol=1e-14)
    np.testing.assert_allclose(B[1:] ** 2, rc.beta[k[1:]] * C[1:] ** 2, rtol=1e-14)


@given(exponents, deltas)
def test_littleq_identity_holds(s, delta):
    A, C, nsq = littleq_coefficients(s, delta, 20)
    m = np.arange(1, 20)
    np.testing.assert_allclose(C[m], A[m - 1] * nsq[m] / nsq[m - 1], rtol=1e-12)


@given(exponents, deltas, st.integers(2, 30))
def test_littleq_chain_inside_support(s, delta, n):
    cp = littleq_chain(0.1, s, 1.0, delta, n)
    assert np.all(cp.t > 0)
    assert np.all((cp.omega > 0) & (cp.omega <= 1))


@given(exponents, st.integers(1, 300), st.data())
def test_hahn_chain_inside_support(s, big_n, data):
    n = data.draw(st.integers(1, big_n + 1))
    cp = hahn_chain(0.1, s, 1.0, big_n, n)
    assert np.all(cp.t > 0)
    assert np.all((cp.omega >= 0) & (cp.omega <= 1))

import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from chainmap.chain import jacobi_recurrence
from chainmap.errors import MeasureDegenerate, PrecisionExhausted, UnboundedSupport
from chainmap.measures import Measure, PowerLawExpCutoff, PowerLawHardCutoff, induced_measure
from chainmap.orthopoly import (
    Engine,
    QuadratureRule,
    RecurrenceCoefficients,
    affine_transform,
    discretise,
    gauss_rule,
    lanczos_rkpw,
    moment_gram_schmidt,
    stieltjes_discretised,
    to_orthonormal,
)


def power_measure(s):
    return Measure.from_weight(lambda x: np.power(x, s), 0.0, 1.0, moment_fn=lambda r: 1.0 / (s + r + 1))


def frac_array(values):
    return np.array([float(Fraction(v)) for v in values])


@pytest.mark.parametrize("engine", [stieltjes_discretised, lanczos_rkpw])
def test_engines_match_exact_rationals(engine, derived):
    exact = derived["gram_schmidt"]["s=1"]
    rc = engine(power_measure(1), 4)
    np.testing.assert_allclose(rc.alpha, frac_array(exact["alpha"][:4]), rtol=1e-12)
    np.testing.assert_allclose(rc.beta, frac_array(exact["beta"][:4]), rtol=1e-12)


@pytest.mark.parametrize("engine", [stieltjes_discretised, lanczos_rkpw])
def test_uniform_weight_single_term(engine):
    rc = engine(Measure.from_weight(lambda x: np.ones_like(x), 0.0, 1.0), 1)
    assert math.isclose(rc.alpha[0], 0.5, rel_tol=1e-14)
    assert math.isclose(rc.beta[0], 1.0, rel_tol=1e-14)


@pytest.mark.parametrize("engine", [stieltjes_discretised, lanczos_rkpw])
def test_point_masses_support_exactly_k(engine):
    m = Measure.from_points([0.1, 0.4, 0.9], [1.0, 2.0, 0.5])
    rc = engine(m, 3)
    rule = gauss_rule(rc, 3)
    np.testing.assert_allclose(rule.nodes, [0.1, 0.4, 0.9], atol=1e-14)
    np.testing.assert_allclose(rule.weights, [1.0, 2.0, 0.5], rtol=1e-13)
    with pytest.raises(MeasureDegenerate):
        engine(m, 4)


def test_lanczos_single_node():
    rc = lanczos_rkpw(QuadratureRule([0.3], [2.5]), 1)
    assert rc.alpha[0] == 0.3 and rc.beta[0] == 2.5


def test_lanczos_chebyshev_weight():
    # first kind on [-1, 1]: beta_1 = 1/2, beta_k = 1/4 afterwards
    m = Measure.from_weight(lambda y: 1 / np.sqrt(np.clip((1 + y) * (1 - y), 1e-300, None)), -1.0, 1.0, mass=math.pi)
    rc = lanczos_rkpw(m, 12, tol=1e-10)
    np.testing.assert_allclose(rc.alpha, 0.0, atol=1e-9)
    assert math.isclose(rc.beta[1], 0.5, rel_tol=1e-8)
    np.testing.assert_allclose(rc.beta[2:], 0.25, rtol=1e-8)


@pytest.mark.parametrize("s", [0.0, 1.0, 2.0])
def test_engines_agree_within_estimates(s):
    m = induced_measure(PowerLawHardCutoff(0.1, s, 1.0))
    a = stieltjes_discretised(m, 60)
    b = lanczos_rkpw(m, 60)
    bound = np.maximum(a.est_error, b.est_error) * 10 + 1e-13
    assert np.all(np.abs(a.alpha - b.alpha) / np.abs(b.alpha) <= bound)
    assert np.all(np.abs(a.beta - b.beta) / b.beta <= bound)


def test_bounds_on_bounded_support():
    m = induced_measure(PowerLawHardCutoff(0.1, 0.5, 1.0))
    rc = lanczos_rkpw(m, 80)
    assert np.all(rc.beta[1:] > 0)
    assert np.all((rc.alpha >= 0) & (rc.alpha <= 1))
    assert np.all(rc.beta[1:] <= 1.0)


def test_gram_schmidt_double_precision_breaks_down():
    with pytest.raises(PrecisionExhausted) as info:
        moment_gram_schmidt(power_measure(1), 40)
    assert info.value.partial is not None and info.value.partial.n_terms >= 10


def test_gram_schmidt_extended_precision(derived):
    rc = moment_gram_schmidt(induced_measure(PowerLawHardCutoff(0.5, 1.0, 1.0)), 10, precision_digits=100)
    exact = derived["gram_schmidt"]["s=1"]
    with mpmath.workdps(100):
        for k in range(10):
            for key in ("alpha", "beta"):
                fr = Fraction(exact[key][k])
                ref = mpmath.mpf(fr.numerator) / fr.denominator
                assert abs(rc.meta[key + "_hp"][k] - ref) < mpmath.mpf(10) ** -60


def test_gram_schmidt_first_moment_ratio():
    m = induced_measure(PowerLawExpCutoff(0.2, 1.5, 1.0))
    rc = moment_gram_schmidt(m, 1)
    assert math.isclose(rc.alpha[0], m.moment(1) / m.moment(0), rel_tol=1e-15)


def test_to_orthonormal_chebyshev_limits():
    rc = RecurrenceCoefficients(np.zeros(6), np.full(6, 0.25))
    A, B, C = to_orthonormal(rc)
    np.testing.assert_allclose(A, 0.0)
    np.testing.assert_allclose(B, 1.0)
    np.testing.assert_allclose(C, 2.0)


def test_to_orthonormal_jacobi_first_term():
    rc = jacobi_recurrence(0.0, 3, mass=1.0)
    _, _, C = to_orthonormal(rc)
    assert math.isclose(C[0], 2 * math.sqrt(3), rel_tol=1e-14)  # beta_1 = 1/12


def test_orthonormal_round_trip():
    rc = jacobi_recurrence(1.5, 20)
    A, B, C = to_orthonormal(rc)
    np.testing.assert_allclose(A / C, rc.alpha[:-1], rtol=1e-14)
    np.testing.assert_allclose(1 / C**2, rc.beta[1:], rtol=1e-14)
    np.testing.assert_allclose(B**2, rc.beta[:-1] * C**2, rtol=1e-14)


def test_affine_identity():
    rc = jacobi_recurrence(1.0, 8)
    out = affine_transform(rc, (0, 1), (0, 1))
    np.testing.assert_array_equal(out.alpha, rc.alpha)
    np.testing.assert_array_equal(out.beta, rc.beta)


def test_affine_legendre_to_unit_interval():
    leg = RecurrenceCoefficients(np.zeros(5), [2.0] + [k * k / (4 * k * k - 1) for k in range(1, 5)])
    out = affine_transform(leg, (-1, 1), (0, 1))
    np.testing.assert_allclose(out.alpha, 0.5)
    np.testing.assert_allclose(out.beta, jacobi_recurrence(0.0, 5).beta, rtol=1e-14)


def test_affine_round_trip():
    rc = jacobi_recurrence(2.0, 15)
    back = affine_transform(affine_transform(rc, (0, 1), (-3.0, 7.5)), (-3.0, 7.5), (0, 1))
    np.testing.assert_allclose(back.alpha, rc.alpha, rtol=1e-14)
    np.testing.assert_allclose(back.beta, rc.beta, rtol=1e-14)


def test_affine_covariance_against_direct_computation():
    a, b = 2.0, 5.0
    direct = lanczos_rkpw(Measure.from_weight(lambda y: (y - a) / (b - a), a, b), 20)
    mapped = affine_transform(lanczos_rkpw(power_measure(1), 20), (0, 1), (a, b))
    np.testing.assert_allclose(direct.alpha, mapped.alpha, rtol=1e-12)
    np.testing.assert_allclose(direct.beta, mapped.beta, rtol=1e-12)


def test_affine_rejects_half_line():
    with pytest.raises(UnboundedSupport):
        affine_transform(jacobi_recurrence(0.0, 3), (0, math.inf), (0, 1))


def test_gauss_two_point_legendre():
    rule = gauss_rule(jacobi_recurrence(0.0, 2), 2)
    np.testing.assert_allclose(rule.nodes, [(3 - math.sqrt(3)) / 6, (3 + math.sqrt(3)) / 6], rtol=1e-14)
    np.testing.assert_allclose(rule.weights, [0.5, 0.5], rtol=1e-14)


def test_gauss_one_point():
    rc = jacobi_recurrence(1.0, 3)
    rule = gauss_rule(rc, 1)
    assert rule.nodes[0] == rc.alpha[0] and rule.weights[0] == rc.beta[0]


def test_gauss_reproduces_moments():
    s, n = 2, 5
    rule = gauss_rule(jacobi_recurrence(s, n), n)
    for r in range(2 * n):
        assert abs(rule.integrate(lambda x: x**r) * (s + r + 1) - 1) < 1e-13


def test_discretise_respects_mass():
    m = induced_measure(PowerLawExpCutoff(0.1, 1.0, 1.0))
    rule = discretise(m, 400, 10)
    assert math.isclose(rule.mass, m.mass, rel_tol=1e-12)


def test_merged_keeps_geometric_lattice():
    nodes = 2.0 ** -np.arange(200)
    rule = QuadratureRule(nodes[::-1], np.ones(200)).merged()
    assert len(rule) == 200


def test_engine_enum_round_trip():
    assert Engine("lanczos") is Engine.LANCZOS

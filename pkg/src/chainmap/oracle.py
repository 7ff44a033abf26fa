"""Slow, independent reference values.

Exact rational recurrence coefficients from a Hankel factorisation,
brute-force orthogonality sums for the little q-Jacobi and Hahn families,
and extended-precision quadrature.  Nothing here shares code with the
double-precision engines it is meant to judge.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

import mpmath
import numpy as np

from chainmap.errors import MomentMatrixSingular, SingularityUndeclared, TailNotConverged
from chainmap.measures import Measure, PowerLawExpCutoff, PowerLawHardCutoff
from chainmap.orthopoly import Engine, RecurrenceCoefficients

DEFAULT_DPS = 100


@dataclass(frozen=True)
class ExactCoefficients:
    """Monic recurrence coefficients as exact rationals (``beta[0]`` is the mass)."""

    alpha: tuple
    beta: tuple

    def to_float(self) -> RecurrenceCoefficients:
        return RecurrenceCoefficients([float(a) for a in self.alpha], [float(b) for b in self.beta],
                                      Engine.CLOSED_FORM, meta={"oracle": "exact-rational"})


def power_moments(s: int, count: int) -> list[Fraction]:
    """``mu_r = 1/(s + r + 1)`` for ``x^s`` on ``[0, 1]``."""
    return [Fraction(1, s + r + 1) for r in range(count)]


def gram_schmidt_exact(moments: Sequence, n: int) -> ExactCoefficients:
    """Exact ``alpha_k``, ``beta_k`` for ``k < n`` from ``mu_0 .. mu_2n``.

    Factorises the Hankel matrix ``H = L D L^T`` with unit lower ``L``:
    row ``j`` of ``L`` expands ``x^j`` in the monic orthogonal basis, ``D``
    holds the squared norms.  Then ``beta_k = D_k / D_(k-1)`` and
    ``alpha_k = L[k+1, k] - L[k, k-1]``.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    mom = [Fraction(m) for m in moments]
    size = n + 1
    if len(mom) < 2 * size - 1:
        raise ValueError(f"need {2 * size - 1} moments, got {len(mom)}")
    L = [[Fraction(0)] * size for _ in range(size)]
    D = [Fraction(0)] * size
    for j in range(size):
        for k in range(j + 1):
            acc = mom[j + k] - sum(L[j][i] * L[k][i] * D[i] for i in range(k))
            if k == j:
                if acc <= 0:
                    if j < n:
                        raise MomentMatrixSingular(f"Hankel pivot {j} is {acc}")
                    # the last row only feeds alpha_(n-1); a zero pivot there is harmless
                D[j] = acc
                L[j][j] = Fraction(1)
            else:
                L[j][k] = acc / D[k]
    alpha = tuple(L[k + 1][k] - (L[k][k - 1] if k else 0) for k in range(n))
    beta = tuple(D[0] if k == 0 else D[k] / D[k - 1] for k in range(n))
    return ExactCoefficients(alpha, beta)


# ---------------------------------------------------------------------------
# discrete orthogonality


def _littleq_poly(k: int, x, q, a):
    """``2phi1(q^-k, a q^(k+1); a q; q; q x)`` summed term by term."""
    total = mpmath.mpf(0)
    num1 = num2 = den1 = den2 = mpmath.mpf(1)
    for i in range(k + 1):
        if i:
            # running q-Pochhammer symbols (z; q)_i
            num1 *= 1 - q ** (i - 1 - k)
            num2 *= 1 - a * q ** (k + i)
            den1 *= 1 - a * q**i
            den2 *= 1 - q**i
        total += num1 * num2 / (den1 * den2) * (q * x) ** i
    return total


def _hahn_poly(k: int, x: int, a, b, big_n: int):
    """``3F2(-k, k+a+b+1, -x; a+1, -N; 1)`` as a finite sum."""
    total = mpmath.mpf(0)
    for i in range(min(k, x) + 1):
        num = mpmath.rf(-k, i) * mpmath.rf(k + a + b + 1, i) * mpmath.rf(-x, i)
        den = mpmath.rf(a + 1, i) * mpmath.rf(-big_n, i) * mpmath.factorial(i)
        total += num / den
    return total


def discrete_orthogonality_sum(family: str, k: int, l: int, terms: Optional[int] = None, *,
                               delta: float = 2.0, s: float = 0.0, big_n: int = 10,
                               dps: int = DEFAULT_DPS, tail_tol: Optional[float] = None):
    """``sum_n weight(n) p_k(n) p_l(n)`` at ``dps`` digits.

    ``family='littleq'`` uses weight ``delta^(-n(1+s))`` on ``x = delta^-n``;
    the series is cut after ``terms`` points and the geometric tail bound
    must fall below ``tail_tol`` (default ``10^-(dps-10)``) relative to
    ``delta^(-max(k,l)(1+s))``, the scale of the norms.  ``family='hahn'`` sums ``binom(s+x, x)`` over
    ``x = 0..N`` exactly; ``terms`` may not cut that sum short.
    """
    # the little q-Jacobi series cancels by about delta^(k^2/2)
    guard = int(math.ceil(max(k, l) ** 2 * math.log10(delta) / 2)) if family == "littleq" and delta > 1 else 0
    with mpmath.workdps(dps + 10 + guard):
        if family == "littleq":
            d = mpmath.mpf(delta)
            q = 1 / d
            sm = mpmath.mpf(s)
            a = q**sm
            ratio = q ** (1 + sm)
            tol = mpmath.mpf(10) ** (-(dps - 10)) if tail_tol is None else mpmath.mpf(tail_tol)
            # norms shrink like ratio^k, so the target scales with it
            target = tol * ratio ** max(k, l)
            if terms is None:
                terms = int(mpmath.ceil(mpmath.log(target) / mpmath.log(ratio))) + 1
            # p_k -> 1 near x = 0, so the remaining weight bounds the tail
            tail = ratio**terms / (1 - ratio)
            if tail > target / (1 - ratio):
                raise TailNotConverged(f"tail {mpmath.nstr(tail, 5)} after {terms} terms exceeds {mpmath.nstr(tol, 5)}")
            total = mpmath.mpf(0)
            for n in range(terms):
                x = q**n
                total += ratio**n * _littleq_poly(k, x, q, a) * _littleq_poly(l, x, q, a)
            return +total
        if family == "hahn":
            if terms is not None and terms < big_n + 1:
                raise TailNotConverged(f"Hahn sum needs all {big_n + 1} points, got {terms}")
            sm = mpmath.mpf(s)
            total = mpmath.mpf(0)
            for x in range(big_n + 1):
                w = mpmath.binomial(sm + x, x)
                total += w * _hahn_poly(k, x, sm, 0, big_n) * _hahn_poly(l, x, sm, 0, big_n)
            return +total
    raise ValueError(f"unknown family {family!r}")


def littleq_norm_sq(k: int, delta: float, s: float, dps: int = DEFAULT_DPS):
    """Closed form ``N_k^2`` with q-shifted factorials, at ``dps`` digits."""
    with mpmath.workdps(dps + 10):
        q = 1 / mpmath.mpf(delta)
        sm = mpmath.mpf(s)
        val = q ** (k * (1 + sm)) * mpmath.qp(q, q, k) ** 2 / (mpmath.qp(q ** (sm + 1), q, k) ** 2 * (1 - q ** (2 * k + 1 + sm)))
        return +val


def hahn_norm_formula(k: int, big_n: int, s: float, dps: int = DEFAULT_DPS):
    """Closed-form Hahn normalisation expression with ``beta_H = 0``.

    ``(-1)^k (k+a+b+1)_(N+1) (b+1)_k k! / ((2k+a+b+1) (a+1)_k (-N)_k N!)``;
    comparison with ``discrete_orthogonality_sum`` shows it is the squared
    norm ``rho_k^2``, not ``rho_k``.
    """
    with mpmath.workdps(dps + 10):
        a, b = mpmath.mpf(s), mpmath.mpf(0)
        val = ((-1) ** k * mpmath.rf(k + a + b + 1, big_n + 1) * mpmath.rf(b + 1, k) * mpmath.factorial(k)
               / ((2 * k + a + b + 1) * mpmath.rf(a + 1, k) * mpmath.rf(-big_n, k) * mpmath.factorial(big_n)))
        return +val


# ---------------------------------------------------------------------------
# quadrature


def _mp_weight(m: Measure) -> Callable:
    src = m.source
    if isinstance(src, (PowerLawHardCutoff, PowerLawExpCutoff)):
        s = mpmath.mpf(src.s)
        g = mpmath.mpf(m.g)
        wc = mpmath.mpf(src.omega_c)
        coef = 2 * mpmath.mpf(src.alpha) * wc ** (1 - s) * g ** (1 + s)
        if isinstance(src, PowerLawHardCutoff):
            return lambda x: coef * x**s
        return lambda x: coef * x**s * mpmath.exp(-g / wc * x)
    # generic weights are only known in double precision
    return lambda x: mpmath.mpf(float(m.w(np.array([float(x)]))[0]))


def highprec_quadrature(m: Measure, f: Callable, digits: int = 50, singular: Sequence[float] = (),
                        weight: Optional[Callable] = None):
    """``integral f dmu`` to about ``digits`` digits with tanh-sinh quadrature.

    ``f`` takes and returns mpmath numbers.  Endpoints where ``f w`` blows
    up must be listed in ``singular``; an undeclared blow-up raises.
    Discrete measures are summed exactly.
    """
    with mpmath.workdps(digits + 15):
        if m.discrete:
            return +mpmath.fsum(mpmath.mpf(float(wk)) * f(mpmath.mpf(float(xk))) for xk, wk in zip(m.nodes, m.masses))
        w = weight or _mp_weight(m)
        lo = mpmath.mpf(m.lo)
        hi = mpmath.mpf(m.hi) if m.bounded else mpmath.inf
        integrand = lambda x: f(x) * w(x)  # noqa: E731
        width = (hi - lo) if m.bounded else mpmath.mpf(1)
        mid = lo + width / 2
        scale = abs(integrand(mid)) + 1
        probes = [(m.lo, lo + width * mpmath.mpf(10) ** -30)]
        if m.bounded:
            probes.append((m.hi, hi - width * mpmath.mpf(10) ** -30))
        for edge, x in probes:
            if any(math.isclose(edge, p, rel_tol=0, abs_tol=1e-300) for p in singular):
                continue
            v = integrand(x)
            if not mpmath.isfinite(v) or abs(v) > 1e12 * scale:
                raise SingularityUndeclared(f"integrand blows up near {edge}; declare it in `singular`")
        pts = [lo, *[mpmath.mpf(p) for p in m.breakpoints], hi]
        return +mpmath.quad(integrand, pts)


def szego_power_law(s: float, digits: int = 50):
    """``integral_0^1 ln(x^s) / sqrt(1 - (2x-1)^2) dx`` by direct quadrature."""
    unit = Measure.from_weight(lambda x: np.ones_like(x), 0.0, 1.0, mass=1.0)
    sm = mpmath.mpf(s)
    return highprec_quadrature(unit, lambda x: sm * mpmath.log(x) / mpmath.sqrt(1 - (2 * x - 1) ** 2),
                               digits, singular=(0.0, 1.0), weight=lambda x: mpmath.mpf(1))


# ---------------------------------------------------------------------------
# fixture


FIXTURE_DIGITS = 40


def _str(v) -> str:
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    return mpmath.nstr(v, FIXTURE_DIGITS, min_fixed=-1, max_fixed=-1)


def _case_gram_schmidt() -> dict:
    out = {}
    for s in (0, 1, 2, 3):
        ex = gram_schmidt_exact(power_moments(s, 2 * 13 + 1), 12)
        out[f"s={s}"] = {"alpha": [_str(v) for v in ex.alpha], "beta": [_str(v) for v in ex.beta]}
    return out


def _case_littleq_norms() -> dict:
    out = {}
    for delta in (1.5, 2.0, 3.0):
        for s in (0.0, 0.5, 1.0, 2.0):
            out[f"delta={delta},s={s}"] = [
                _str(discrete_orthogonality_sum("littleq", k, k, delta=delta, s=s, dps=60)) for k in range(16)
            ]
    return out


def _case_hahn_norms() -> dict:
    out = {}
    for big_n in (5, 10, 20):
        for s in (0.0, 1.0, 2.5):
            out[f"N={big_n},s={s}"] = [
                _str(discrete_orthogonality_sum("hahn", k, k, big_n=big_n, s=s, dps=60)) for k in range(big_n + 1)
            ]
    return out


def _case_szego() -> dict:
    return {f"s={s}": _str(szego_power_law(s, 45)) for s in (0.5, 1.0, 3.0)}


def _case_quadrature() -> dict:
    hard = Measure.from_weight(lambda x: np.ones_like(x), 0.0, 1.0, mass=1.0)
    half = Measure.from_weight(lambda x: np.exp(-x), 0.0, math.inf, mass=1.0)
    return {
        "x^3 on [0,1]": _str(highprec_quadrature(hard, lambda x: x**3, 50, weight=lambda x: mpmath.mpf(1))),
        "x^2 e^-x on [0,inf)": _str(highprec_quadrature(half, lambda x: x**2, 50, weight=lambda x: mpmath.exp(-x))),
    }


def _case_jacobi_s1() -> dict:
    # n = 0 values by direct moment ratios: alpha_0 = mu_1/mu_0, beta_1 = mu_2/mu_0 - alpha_0^2
    with mpmath.workdps(60):
        mu = [mpmath.mpf(1) / (2 + r) for r in range(3)]
        a0 = mu[1] / mu[0]
        b1 = mu[2] / mu[0] - a0**2
        return {"omega0": _str(a0), "t0": _str(mpmath.sqrt(b1))}


CASES: dict[str, Callable[[], dict]] = {
    "gram_schmidt": _case_gram_schmidt,
    "hahn_norms": _case_hahn_norms,
    "jacobi_s1": _case_jacobi_s1,
    "littleq_norms": _case_littleq_norms,
    "quadrature": _case_quadrature,
    "szego": _case_szego,
}


def derived_values(cases: Optional[Sequence[str]] = None) -> dict:
    names = sorted(CASES) if not cases else list(cases)
    unknown = [c for c in names if c not in CASES]
    if unknown:
        raise KeyError(f"unknown oracle case(s): {', '.join(unknown)}")
    return {name: CASES[name]() for name in names}


def dumps_fixture(data: dict) -> str:
    return json.dumps(data, indent=1, sort_keys=True) + "\n"

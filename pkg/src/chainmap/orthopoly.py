"""Three-term recurrence coefficients of orthogonal polynomials.

Monic polynomials obey ``pi_{k+1}(x) = (x - alpha_k) pi_k(x) - beta_k pi_{k-1}(x)``.
``beta[0]`` stores the total mass ``mu_0`` so that ``sqrt(beta[0])`` is the
norm of ``pi_0``.

Engines
-------
``stieltjes_discretised``
    discretised Stieltjes procedure on a refined composite Gauss-Legendre rule.
``lanczos_rkpw``
    Gragg-Harrod / RKPW orthogonal reduction of the discrete measure.
``moment_gram_schmidt``
    Gram-Schmidt on raw moments.  Unstable in double precision on purpose;
    with ``precision_digits >= 80`` it is accurate far beyond double.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional, Sequence, Union

import mpmath
import numpy as np
from numpy.typing import NDArray
from scipy import special
from scipy.linalg import LinAlgError, eigh_tridiagonal

from chainmap.errors import (
    ConfigError,
    EigenFailure,
    MeasureDegenerate,
    NoConvergence,
    PrecisionExhausted,
    UnboundedSupport,
)
from chainmap.measures import Measure, PowerLawExpCutoff, PowerLawHardCutoff

EPS = np.finfo(float).eps

#: hard cap on quadrature points; ``CHAINMAP_QUAD_MAX`` overrides it
QUAD_MAX = 2**20

# geometric grading ratio and depth toward endpoints of a support piece
_GRADE_RATIO = 0.15
_GRADE_DEPTH = 17
_SINGULAR_DEPTH = 4
# geometric panel growth on the half-line beyond the unit panel
_HALF_LINE_GROWTH = 1.5
# relative size of the neglected half-line tail
_TAIL_REL = 1e-30


class Engine(str, Enum):
    CLOSED_FORM = "closed-form"
    STIELTJES = "stieltjes"
    LANCZOS = "lanczos"
    GRAM_SCHMIDT = "gram-schmidt"


def _frozen(a) -> NDArray:
    a = np.array(a, dtype=float)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class RecurrenceCoefficients:
    """Monic recurrence coefficients ``alpha[k]``, ``beta[k]`` for ``k < n_terms``."""

    alpha: NDArray
    beta: NDArray
    engine: Engine = Engine.CLOSED_FORM
    est_error: Optional[NDArray] = None
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        alpha, beta = _frozen(self.alpha), _frozen(self.beta)
        if alpha.shape != beta.shape or alpha.ndim != 1:
            raise ValueError("alpha and beta must be 1-d arrays of equal length")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)
        err = np.zeros_like(alpha) if self.est_error is None else self.est_error
        object.__setattr__(self, "est_error", _frozen(err))
        object.__setattr__(self, "engine", Engine(self.engine))

    @property
    def n_terms(self) -> int:
        return len(self.alpha)

    @property
    def mass(self) -> float:
        return float(self.beta[0])

    def truncate(self, n: int) -> "RecurrenceCoefficients":
        return replace(self, alpha=self.alpha[:n], beta=self.beta[:n], est_error=self.est_error[:n])


@dataclass(frozen=True)
class QuadratureRule:
    """Discrete measure ``sum_i weights[i] delta(x - nodes[i])``."""

    nodes: NDArray
    weights: NDArray

    def __post_init__(self):
        x, w = _frozen(self.nodes), _frozen(self.weights)
        if x.shape != w.shape or x.ndim != 1:
            raise ValueError("nodes and weights must be 1-d arrays of equal length")
        object.__setattr__(self, "nodes", x)
        object.__setattr__(self, "weights", w)

    def __len__(self):
        return len(self.nodes)

    @property
    def mass(self) -> float:
        return float(np.sum(self.weights))

    def integrate(self, f) -> float:
        return float(np.sum(self.weights * f(self.nodes)))

    def merged(self, span: float = 1e-14) -> "QuadratureRule":
        """Sort nodes, drop zero weights and merge nodes closer than ``span`` (relative)."""
        order = np.argsort(self.nodes, kind="stable")
        x, w = self.nodes[order], self.weights[order]
        keep = w > 0
        x, w = x[keep], w[keep]
        if len(x) < 2:
            return QuadratureRule(x, w)
        # local scale: geometric lattices accumulate at zero and must stay distinct
        local = np.maximum(np.abs(x[1:]), np.abs(x[:-1]))
        new_group = np.concatenate(([True], np.diff(x) > span * local))
        if np.all(new_group):
            return QuadratureRule(x, w)
        idx = np.cumsum(new_group) - 1
        ws = np.bincount(idx, weights=w)
        xs = np.bincount(idx, weights=w * x) / ws
        return QuadratureRule(xs, ws)


def _quad_max() -> int:
    env = os.environ.get("CHAINMAP_QUAD_MAX")
    if not env:
        return QUAD_MAX
    try:
        cap = int(env)
    except ValueError:
        raise ConfigError(f"CHAINMAP_QUAD_MAX must be an integer, got {env!r}") from None
    if cap < 2:
        raise ConfigError(f"CHAINMAP_QUAD_MAX must be >= 2, got {cap}")
    return cap


# ---------------------------------------------------------------------------
# discretisation of continuous measures


def _graded_edges(lo: float, hi: float, left: int = _GRADE_DEPTH, right: int = _GRADE_DEPTH) -> list[float]:
    """Panel edges on ``[lo, hi]`` refined geometrically toward each end (``left``/``right`` levels)."""
    half = 0.5 * (hi - lo)
    mid = lo + half
    edges = [lo]
    edges += [lo + half * _GRADE_RATIO**j for j in range(left, 0, -1)]
    edges.append(mid)
    edges += [hi - half * _GRADE_RATIO**j for j in range(1, right + 1)]
    edges.append(hi)
    return edges


def _end_exponent(m: Measure, edge: float, inward: float) -> float:
    """Local power ``p`` of ``w ~ |x - edge|^p`` from samples near the edge.

    Two slope estimates at ``h`` and ``2h`` are Richardson-combined to remove
    the first-order smooth correction.
    """
    d = 1e-6 * inward
    w = [float(m.w(np.array([edge + k * d]))[0]) for k in (1, 2, 4)]
    if not all(v > 0 for v in w):
        return 0.0
    p1, p2 = math.log(w[1] / w[0]) / math.log(2.0), math.log(w[2] / w[1]) / math.log(2.0)
    return 2 * p1 - p2


def _end_depth(p: float) -> int:
    # singular ends get a Gauss-Jacobi panel instead of deep grading,
    # which would leave too few digits in x - edge
    return _SINGULAR_DEPTH if p < -1e-6 else _GRADE_DEPTH


def _half_line_extent(m: Measure, degree: int) -> float:
    """Point beyond which ``w(x) x^degree`` carries less than ``_TAIL_REL`` of its mass."""
    lo = m.lo
    x = lo + 1.0
    best = -math.inf
    for _ in range(400):
        w = float(m.w(np.array([x]))[0])
        lf = (math.log(w) if w > 0 else -math.inf) + degree * math.log(max(x, 1.0)) + math.log(x - lo)
        best = max(best, lf)
        if lf < best + math.log(_TAIL_REL) and x > 2 * (lo + 1.0):
            return x
        x = lo + (x - lo) * 1.25
    raise NoConvergence("half-line weight does not decay fast enough to bound the quadrature tail")


def _panel_edges(m: Measure, n: int) -> list[tuple[float, float, Optional[tuple[str, float]]]]:
    """Panels ``(a, b, end)``; ``end = (side, p)`` marks a singular support end."""
    panels = []

    def add(edges, p_left=None, p_right=None):
        last = len(edges) - 2
        for i, (a, b) in enumerate(zip(edges[:-1], edges[1:])):
            end = None
            if i == 0 and p_left is not None and p_left < -1e-6:
                end = ("left", p_left)
            elif i == last and p_right is not None and p_right < -1e-6:
                end = ("right", p_right)
            panels.append((a, b, end))

    if m.bounded:
        cuts = [m.lo, m.hi]
        for a, b in m.gaps:
            cuts += [a, b]
        cuts = sorted(set(cuts))
        pieces = [(a, b) for a, b in zip(cuts[:-1], cuts[1:])
                  if not any(ga <= a and b <= gb for ga, gb in m.gaps)]
        for a, b in pieces:
            pl, pr = _end_exponent(m, a, b - a), _end_exponent(m, b, a - b)
            edges = _graded_edges(a, b, _end_depth(pl), _end_depth(pr))
            inner = [p for p in m.breakpoints if a < p < b]
            add(sorted(set(edges) | set(inner)), pl, pr)
        return panels
    lo = m.lo
    pl = _end_exponent(m, lo, 1.0)
    edges = _graded_edges(lo, lo + 2.0, _end_depth(pl), 0)[:-1]
    edges = [e for e in edges if e <= lo + 1.0]
    top = _half_line_extent(m, 2 * n + 2)
    x = lo + 1.0
    while x < top:
        x = lo + (x - lo) * _HALF_LINE_GROWTH
        edges.append(x)
    add(edges, pl, None)
    return panels


def discretise(m: Measure, npoints: int, n: int = 1) -> QuadratureRule:
    """Composite Gauss rule with about ``npoints`` nodes approximating ``m``.

    Panels are graded geometrically toward every support endpoint so that
    algebraic endpoint behaviour of the weight is integrated to full accuracy;
    an end where the weight blows up gets a Gauss-Jacobi panel matched to
    its local power.  Points are distributed in proportion to the square
    root of the panel width, the resolution orthogonal polynomials need near
    endpoints.  ``n`` sets how far the half-line rule must reach.
    """
    if m.discrete:
        return QuadratureRule(m.nodes, m.masses).merged()
    panels = _panel_edges(m, n)
    widths = np.array([b - a for a, b, _ in panels])
    ref = np.max(widths)
    share = np.maximum(np.sqrt(widths / ref), 0.2)
    counts = np.maximum(np.ceil(npoints * share / np.sum(share)).astype(int), 4)
    xs, ws = [], []
    cache = {}
    for (a, b, end), k in zip(panels, counts):
        half = 0.5 * (b - a)
        if end is None:
            if k not in cache:
                cache[k] = np.polynomial.legendre.leggauss(int(k))
            t, wt = cache[k]
            x = a + half * (t + 1.0)
            xs.append(x)
            ws.append(half * wt * m.w(x))
            continue
        side, p = end
        if side == "left":
            # (1 + t)^p absorbed by the rule; divide it out of w
            t, wt = special.roots_jacobi(int(k), 0.0, p)
            x = a + half * (t + 1.0)
            ws.append(half * wt * m.w(x) / (1.0 + t) ** p)
        else:
            t, wt = special.roots_jacobi(int(k), p, 0.0)
            x = a + half * (t + 1.0)
            ws.append(half * wt * m.w(x) / (1.0 - t) ** p)
        xs.append(x)
    x = np.concatenate(xs)
    w = np.concatenate(ws)
    keep = w > 0
    return QuadratureRule(x[keep], w[keep])


# ---------------------------------------------------------------------------
# engines on a discrete rule


def stieltjes(rule: QuadratureRule, n: int) -> tuple[NDArray, NDArray]:
    """Discretised Stieltjes procedure with orthonormal scaling.

    Works with ``p_k = pi_k / ||pi_k||`` so values stay O(1) for any support.
    """
    x, w = rule.nodes, rule.weights
    alpha = np.empty(n)
    beta = np.empty(n)
    beta[0] = np.sum(w)
    p_prev = np.zeros_like(x)
    p = np.full_like(x, 1.0 / math.sqrt(beta[0]))
    for k in range(n):
        alpha[k] = np.sum(w * x * p * p)
        if k == n - 1:
            break
        r = (x - alpha[k]) * p
        if k > 0:
            r -= math.sqrt(beta[k]) * p_prev
        b = float(np.sum(w * r * r))
        if not b > 0:
            raise MeasureDegenerate(f"beta[{k + 1}] = {b} is not positive")
        beta[k + 1] = b
        p_prev, p = p, r / math.sqrt(b)
    return alpha, beta


def rkpw(rule: QuadratureRule, n: int) -> tuple[NDArray, NDArray]:
    """RKPW (Gragg-Harrod) reduction, keeping only the leading ``n`` entries.

    Nodes are absorbed one at a time by a chase of plane rotations written in
    squared form.  Entries beyond ``n`` never feed back into the leading
    block, so truncating the chase is exact.
    """
    x = [float(v) for v in rule.nodes]
    w = [float(v) for v in rule.weights]
    ncap = len(x)
    p0 = [0.0] * n
    p1 = [0.0] * n
    p0[0] = x[0]
    p1[0] = w[0]
    filled = 1
    for j in range(1, ncap):
        pn = w[j]
        gam, sig, t = 1.0, 0.0, 0.0
        xlam = x[j]
        top = min(filled + 1, n)
        for k in range(top):
            if k == filled:
                p0[k] = xlam
                p1[k] = 0.0
            p1k = p1[k]
            rho = p1k + pn
            tmp = gam * rho
            tsig = sig
            if rho <= 0.0:
                gam, sig = 1.0, 0.0
            else:
                gam = p1k / rho
                sig = pn / rho
            tk = sig * (p0[k] - xlam) - gam * t
            p0[k] -= tk - t
            t = tk
            if sig <= 0.0:
                pn = tsig * p1k
            else:
                pn = t * t / sig
            p1[k] = tmp
        filled = top
    return np.array(p0), np.array(p1)


# ---------------------------------------------------------------------------
# public engine entry points


def _distinct_support(m: Union[Measure, QuadratureRule]) -> Optional[int]:
    if isinstance(m, QuadratureRule):
        return len(m.merged())
    if m.discrete:
        return len(QuadratureRule(m.nodes, m.masses).merged())
    return None


def _rounding_floor(n: int) -> NDArray:
    return 8 * EPS * (np.arange(n) + 1.0)


def _rel_change(a0, b0, a1, b1) -> NDArray:
    scale = np.maximum(np.abs(a1), np.sqrt(np.abs(b1)))
    scale[0] = max(scale[0], abs(a1[0]), np.finfo(float).tiny)
    da = np.abs(a1 - a0) / scale
    db = np.abs(b1 - b0) / np.abs(b1)
    return np.maximum(da, db)


def _refined(m: Measure, n: int, solver, engine: Engine, quad_points: Optional[int], tol: float,
             max_points: Optional[int]) -> RecurrenceCoefficients:
    cap = max_points or _quad_max()
    npts = max(quad_points or 0, 4 * n, 64)
    prev = None
    while True:
        rule = discretise(m, npts, n)
        a, b = solver(rule, n)
        if prev is not None:
            change = _rel_change(prev[0], prev[1], a, b)
            if np.max(change) < tol:
                err = np.maximum(change, _rounding_floor(n))
                return RecurrenceCoefficients(a, b, engine, err, {"quad_points": len(rule)})
        prev = (a, b)
        if 2 * npts > cap:
            raise NoConvergence(f"coefficients did not settle to {tol:g} within {cap} quadrature points")
        npts *= 2


def _check_length(m, n):
    if n < 1:
        raise ValueError("need at least one coefficient")
    k = _distinct_support(m)
    if k is not None and n > k:
        raise MeasureDegenerate(f"a {k}-point measure supports only {k} orthogonal polynomials, {n} requested")


def stieltjes_discretised(m: Union[Measure, QuadratureRule], n: int, quad_points: Optional[int] = None,
                          tol: float = 1e-12, max_points: Optional[int] = None) -> RecurrenceCoefficients:
    """First ``n`` recurrence coefficients by the discretised Stieltjes procedure.

    Continuous measures are discretised and the rule doubled until successive
    coefficient sets agree to ``tol``; discrete measures are used as is.
    """
    _check_length(m, n)
    if isinstance(m, QuadratureRule) or m.discrete:
        rule = m.merged() if isinstance(m, QuadratureRule) else discretise(m, 0)
        a, b = stieltjes(rule, n)
        return RecurrenceCoefficients(a, b, Engine.STIELTJES, _rounding_floor(n), {"quad_points": len(rule)})
    return _refined(m, n, stieltjes, Engine.STIELTJES, quad_points, tol, max_points)


def lanczos_rkpw(m: Union[QuadratureRule, Measure], n: int, quad_points: Optional[int] = None,
                 tol: float = 1e-12, max_points: Optional[int] = None) -> RecurrenceCoefficients:
    """First ``n`` recurrence coefficients by orthogonal (RKPW) reduction.

    Accepts a quadrature rule directly, or a measure which is discretised
    and refined exactly as in ``stieltjes_discretised``.
    """
    _check_length(m, n)
    if isinstance(m, QuadratureRule) or m.discrete:
        rule = m.merged() if isinstance(m, QuadratureRule) else discretise(m, 0)
        # absorbing heavy nodes first keeps the squared rotations well scaled
        order = np.argsort(-rule.weights, kind="stable")
        a, b = rkpw(QuadratureRule(rule.nodes[order], rule.weights[order]), n)
        if np.any(b[1:] <= 0):
            raise MeasureDegenerate("non-positive beta in Lanczos reduction")
        return RecurrenceCoefficients(a, b, Engine.LANCZOS, _rounding_floor(n), {"quad_points": len(rule)})

    def solver(rule, k):
        order = np.argsort(-rule.weights, kind="stable")
        a, b = rkpw(QuadratureRule(rule.nodes[order], rule.weights[order]), k)
        if np.any(b[1:] <= 0):
            raise MeasureDegenerate("non-positive beta in Lanczos reduction")
        return a, b

    return _refined(m, n, solver, Engine.LANCZOS, quad_points, tol, max_points)


def _gram_schmidt(mom: Sequence, n: int, zero, one):
    """Monic Gram-Schmidt on ``1, x, x^2, ...`` using moments ``mom[r]``.

    Generic in the number type; returns ``alpha, beta`` lists (``beta[0] = mom[0]``).
    """

    def inner(p, q, shift=0):
        acc = zero
        for i, pi in enumerate(p):
            if pi == 0:
                continue
            for j, qj in enumerate(q):
                acc += pi * qj * mom[i + j + shift]
        return acc

    polys, norms = [], []
    alpha, beta = [], []
    for k in range(n):
        p = [zero] * k + [one]
        for q, nq in zip(polys, norms):
            c = inner(p, q) / nq
            for i, qi in enumerate(q):
                p[i] -= c * qi
        nk = inner(p, p)
        if not nk > 0:
            raise PrecisionExhausted(f"norm of pi_{k} is {nk}: all significant digits lost", (alpha, beta))
        beta.append(nk if k == 0 else nk / norms[-1])
        alpha.append(inner(p, p, 1) / nk)
        polys.append(p)
        norms.append(nk)
    return alpha, beta


def _mp_moments(m: Measure, count: int):
    src = m.source
    g = mpmath.mpf(m.g)
    if isinstance(src, PowerLawHardCutoff):
        s = mpmath.mpf(src.s)
        coef = 2 * mpmath.mpf(src.alpha) * mpmath.mpf(src.omega_c) ** (1 - s) * g ** (1 + s)
        xm = mpmath.mpf(src.omega_c) / g
        return [coef * xm ** (s + r + 1) / (s + r + 1) for r in range(count)]
    if isinstance(src, PowerLawExpCutoff):
        s = mpmath.mpf(src.s)
        coef = 2 * mpmath.mpf(src.alpha) * mpmath.mpf(src.omega_c) ** (1 - s) * g ** (1 + s)
        k = g / mpmath.mpf(src.omega_c)
        return [coef * mpmath.gamma(s + r + 1) / k ** (s + r + 1) for r in range(count)]
    if m.discrete:
        xs = [mpmath.mpf(float(v)) for v in m.nodes]
        ws = [mpmath.mpf(float(v)) for v in m.masses]
        return [mpmath.fsum(wk * xk**r for xk, wk in zip(xs, ws)) for r in range(count)]
    hi = mpmath.inf if not m.bounded else mpmath.mpf(m.hi)
    pts = [mpmath.mpf(m.lo), *[mpmath.mpf(p) for p in m.breakpoints], hi]

    def f(r):
        return lambda x: x**r * mpmath.mpf(float(m.w(np.array([float(x)]))[0]))

    return [mpmath.quad(f(r), pts) for r in range(count)]


def moment_gram_schmidt(m: Measure, n: int, precision_digits: int = 16) -> RecurrenceCoefficients:
    """Recurrence coefficients from raw moments by Gram-Schmidt.

    At ``precision_digits <= 16`` the arithmetic is IEEE double and the
    result degrades quickly with ``n`` (Hankel conditioning).  Above that
    the computation runs in mpmath at the requested precision and the
    high-precision values are kept in ``meta['alpha_hp']``/``meta['beta_hp']``.
    """
    if n < 1:
        raise ValueError("need at least one coefficient")
    if precision_digits <= 16:
        mom = [float(m.moment(r)) for r in range(2 * n)]
        try:
            a, b = _gram_schmidt(mom, n, 0.0, 1.0)
        except PrecisionExhausted as exc:
            pa, pb = exc.partial
            partial = RecurrenceCoefficients(pa, pb, Engine.GRAM_SCHMIDT) if pa else None
            raise PrecisionExhausted(str(exc), partial) from None
        return RecurrenceCoefficients(a, b, Engine.GRAM_SCHMIDT, None, {"precision_digits": 16})
    with mpmath.workdps(precision_digits):
        mom = _mp_moments(m, 2 * n)
        try:
            a, b = _gram_schmidt(mom, n, mpmath.mpf(0), mpmath.mpf(1))
        except PrecisionExhausted as exc:
            pa, pb = exc.partial
            partial = RecurrenceCoefficients([float(v) for v in pa], [float(v) for v in pb], Engine.GRAM_SCHMIDT) if pa else None
            raise PrecisionExhausted(str(exc), partial) from None
        meta = {
            "precision_digits": precision_digits,
            "alpha_hp": tuple(a),
            "beta_hp": tuple(b),
        }
        return RecurrenceCoefficients([float(v) for v in a], [float(v) for v in b], Engine.GRAM_SCHMIDT, None, meta)


# ---------------------------------------------------------------------------
# transforms and quadrature


def to_orthonormal(rc: RecurrenceCoefficients) -> tuple[NDArray, NDArray, NDArray]:
    """Orthonormal recurrence ``p_{k+1} = (C_k x - A_k) p_k - B_k p_{k-1}``.

    Returns arrays for ``k = 0 .. n_terms - 2``.
    """
    a, b = rc.alpha, rc.beta
    nxt = np.sqrt(b[1:])
    return a[:-1] / nxt, np.sqrt(b[:-1] / b[1:]), 1.0 / nxt


def affine_transform(rc: RecurrenceCoefficients, src: tuple[float, float], dst: tuple[float, float]) -> RecurrenceCoefficients:
    """Coefficients after mapping the support ``src`` onto ``dst`` by ``y = m x + c``.

    The weight values are carried over, so the total mass scales by ``m``.
    """
    (a, b), (c, d) = src, dst
    if not all(math.isfinite(v) for v in (a, b, c, d)):
        raise UnboundedSupport("affine maps need bounded intervals")
    if not (b > a and d > c):
        raise ValueError("intervals must have positive length")
    scale = (d - c) / (b - a)
    shift = c - scale * a
    alpha = scale * rc.alpha + shift
    beta = rc.beta * scale**2
    beta[0] = rc.beta[0] * scale
    return replace(rc, alpha=alpha, beta=beta)


def gauss_rule(rc: RecurrenceCoefficients, n: int) -> QuadratureRule:
    """``n``-point Gauss rule from the Jacobi matrix (Golub-Welsch)."""
    if n < 1 or n > rc.n_terms:
        raise ValueError(f"need 1 <= n <= {rc.n_terms}")
    if np.any(rc.beta[:n] <= 0):
        raise MeasureDegenerate("Jacobi matrix needs positive beta")
    if n == 1:
        return QuadratureRule([rc.alpha[0]], [rc.beta[0]])
    try:
        nodes, vecs = eigh_tridiagonal(rc.alpha[:n], np.sqrt(rc.beta[1:n]))
    except (LinAlgError, ValueError) as exc:
        raise EigenFailure(str(exc)) from exc
    return QuadratureRule(nodes, rc.beta[0] * vecs[0, :] ** 2)

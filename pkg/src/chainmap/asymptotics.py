"""Szegő-class test and tail diagnostics for chain coefficients.

A measure on ``[a, b]`` is in the Szegő class when

    integral_a^b ln w(x) / sqrt(1 - y(x)^2) dx > -inf,   y = (2x - a - b)/(b - a).

Its recurrence coefficients then approach ``(a + b)/2`` and ``(b - a)^2/16``,
so the chain tends to a uniform one with ``omega_inf = g (a+b)/2`` and
``t_inf = g (b-a)/4``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from numpy.typing import NDArray
from scipy import integrate

from chainmap.chain import ChainParameters
from chainmap.measures import Measure

#: Szegő integrals below this are treated as divergent.
DIVERGENCE_CUTOFF = -1e6


@dataclass(frozen=True)
class TailDiagnostics:
    predicted_tail: tuple[float, float]
    measured: NDArray  # rows (n, |omega_n - omega_inf|, |t_n - t_inf|)
    order_omega: float
    order_t: float
    converging: bool
    note: str = ""


@dataclass(frozen=True)
class SzegoReport:
    in_class: bool
    szego_integral: float
    predicted_tail: Optional[tuple[float, float]]
    measured_convergence: NDArray = field(default_factory=lambda: np.empty((0, 3)))
    note: str = ""
    tail: Optional[TailDiagnostics] = None

    def to_dict(self) -> dict:
        out = {
            "in_class": self.in_class,
            "szego_integral": _jsonable(self.szego_integral),
            "predicted_tail": None if self.predicted_tail is None else list(self.predicted_tail),
            "measured_convergence": [[int(r[0]), float(r[1]), float(r[2])] for r in self.measured_convergence],
            "note": self.note,
        }
        if self.tail is not None:
            out["convergence_order"] = {"omega": _jsonable(self.tail.order_omega), "t": _jsonable(self.tail.order_t)}
            out["tail_converging"] = self.tail.converging
            if self.tail.note:
                out["tail_note"] = self.tail.note
        return out


def _jsonable(v: float):
    if math.isfinite(v):
        return v
    return str(v)


def _endpoint_exponent(w, edge: float, inward: float) -> Optional[float]:
    """Local power ``p`` in ``w ~ |x - edge|^p`` from two nearby samples."""
    h = 1e-7 * abs(inward)
    x1, x2 = edge + math.copysign(h, inward), edge + math.copysign(2 * h, inward)
    w1, w2 = float(w(np.array([x1]))[0]), float(w(np.array([x2]))[0])
    if not (w1 > 0 and w2 > 0):
        return None
    p = math.log(w2 / w1) / math.log(abs(x2 - edge) / abs(x1 - edge))
    return 0.0 if abs(p) < 1e-9 else p


def szego_integral(m: Measure) -> float:
    """Value of the Szegő integral; ``-inf`` for gaps or vanishing endpoints.

    With ``x = a + (b-a) cos^2(theta/2)`` the integral becomes
    ``(b-a)/2 integral_0^pi ln w d theta``.  Power-law zeros at the ends are
    subtracted analytically: ``integral_0^pi ln cos^2(theta/2) d theta = -2 pi ln 2``.
    """
    a, b = m.lo, m.hi
    width = b - a
    if m.discrete or m.gaps:
        return -math.inf
    p_a = _endpoint_exponent(m.w, a, width)
    p_b = _endpoint_exponent(m.w, b, -width)
    if p_a is None or p_b is None:
        return -math.inf

    def integrand(theta: float) -> float:
        c2 = math.cos(theta / 2) ** 2
        s2 = math.sin(theta / 2) ** 2
        x = a + width * c2
        wx = float(m.w(np.array([x]))[0])
        if not wx > 0:
            return math.log(1e-300)
        r = math.log(wx)
        if p_a:
            r -= p_a * math.log(c2)
        if p_b:
            r -= p_b * math.log(s2)
        return r

    # breakpoints of w mapped to theta
    pts = sorted(2 * math.acos(math.sqrt(min(max((x - a) / width, 0.0), 1.0))) for x in m.breakpoints if a < x < b)
    pts = [p for p in pts if 0 < p < math.pi]
    with warnings.catch_warnings():
        # roundoff warnings only mean the 1e-13 target was not certified
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, _ = integrate.quad(integrand, 0.0, math.pi, points=pts or None, limit=max(400, 4 * len(pts)),
                                epsabs=1e-14, epsrel=1e-13)
    return 0.5 * width * (val - 2 * math.pi * math.log(2) * (p_a + p_b))


def tail_diagnostics(cp: ChainParameters, g: float, x_max: float, x_min: float = 0.0) -> TailDiagnostics:
    """Deviation of the chain from its predicted uniform tail.

    The convergence order is the negative log-log slope of the deviations
    over the second half of the chain.  ``converging`` requires the
    windowed maximum deviation of the last quarter to fall below that of the
    first quarter, for both energies and hoppings.
    """
    if cp.length < 10:
        raise ValueError(f"tail diagnostics need at least 10 sites, got {cp.length}")
    om_inf = g * (x_min + x_max) / 2
    t_inf = g * (x_max - x_min) / 4
    n = np.arange(len(cp.t))
    d_om = np.abs(cp.omega[: len(cp.t)] - om_inf)
    d_t = np.abs(cp.t - t_inf)
    measured = np.column_stack([n, d_om, d_t])

    def order(dev: NDArray) -> float:
        sel = (n >= max(len(n) // 2, 1)) & (dev > 0)
        if sel.sum() < 2:
            return math.inf
        slope = np.polyfit(np.log(n[sel]), np.log(dev[sel]), 1)[0]
        return float(-slope)

    q = max(len(n) // 4, 1)
    converging = bool(d_om[-q:].max() < d_om[:q].max() and d_t[-q:].max() < d_t[:q].max())
    note = ""
    if cp.t[-1] < 0.5 * t_inf and np.all(np.diff(cp.t[-q:]) < 0):
        converging = False
        note = "hoppings vanish toward the end of the chain: finite discrete measure, no uniform tail"
    elif not converging:
        note = "no convergence toward the uniform tail"
    return TailDiagnostics((om_inf, t_inf), measured, order(d_om), order(d_t), converging, note)


def szego_check(m: Measure, chain: Optional[ChainParameters] = None) -> SzegoReport:
    """Classify ``m`` and, if a chain is supplied, measure its tail convergence."""
    if not m.bounded:
        return SzegoReport(False, math.nan, None, note="not applicable: unbounded support")
    predicted = (m.g * (m.lo + m.hi) / 2, m.g * (m.hi - m.lo) / 4)
    if m.discrete:
        value, note = -math.inf, "discrete measure: the weight vanishes almost everywhere"
    elif m.gaps:
        value, note = -math.inf, f"weight vanishes on {len(m.gaps)} interval(s); split the support"
    else:
        value = szego_integral(m)
        note = "" if value > DIVERGENCE_CUTOFF else "log-weight not integrable"
    tail = None
    measured = np.empty((0, 3))
    if chain is not None and chain.length >= 10:
        tail = tail_diagnostics(chain, m.g, m.hi, m.lo)
        measured = tail.measured
    return SzegoReport(bool(value > DIVERGENCE_CUTOFF), value, predicted, measured, note, tail)

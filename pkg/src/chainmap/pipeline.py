"""From a spectral density to chains, star models and diagnostics.

Glue between the measure, engine and chain layers used by the CLI and
handy from Python.  Gapped densities are split and each segment gets its
own chain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np
from numpy.typing import NDArray

from chainmap.chain import (
    ChainParameters,
    DiscretisedStarModel,
    chain_from_coefficients,
    hahn_chain,
    jacobi_chain,
    jacobi_recurrence,
    laguerre_chain,
    laguerre_recurrence,
    littleq_chain,
    littleq_max_sites,
)
from chainmap.errors import ConfigError, MeasureDegenerate, PrecisionExhausted
from chainmap.measures import (
    Gapped,
    LinearDiscretised,
    LogDiscretised,
    Measure,
    PointMasses,
    PowerLawExpCutoff,
    PowerLawHardCutoff,
    SpectralDensity,
    eta0,
    induced_measure,
    split_gapped,
)
from chainmap.orthopoly import (
    RecurrenceCoefficients,
    gauss_rule,
    lanczos_rkpw,
    moment_gram_schmidt,
    stieltjes_discretised,
)

CLOSED_FORM_TYPES = (PowerLawHardCutoff, PowerLawExpCutoff, LogDiscretised, LinearDiscretised)


def unwrap(J: SpectralDensity) -> SpectralDensity:
    """A single-segment gapped density covering its whole base domain is just the base."""
    if isinstance(J, Gapped) and len(J.segments) == 1:
        d, lo, hi = J.segments[0]
        if (lo, hi) == tuple(d.domain):
            return d
    return J


def has_closed_form(J: SpectralDensity) -> bool:
    return isinstance(unwrap(J), CLOSED_FORM_TYPES)


def closed_form_chain(J: SpectralDensity, n: int) -> ChainParameters:
    J = unwrap(J)
    if isinstance(J, PowerLawHardCutoff):
        return jacobi_chain(J.alpha, J.s, J.omega_c, n)
    if isinstance(J, PowerLawExpCutoff):
        return laguerre_chain(J.alpha, J.s, J.omega_c, n)
    if isinstance(J, LogDiscretised):
        cap = littleq_max_sites(J.s, J.delta)
        if n > cap:
            raise MeasureDegenerate(f"log-discretised bath with delta={J.delta}, s={J.s} supports {cap} sites "
                                    f"before weights underflow, {n} requested")
        return littleq_chain(J.alpha, J.s, J.omega_c, J.delta, n)
    if isinstance(J, LinearDiscretised):
        if n > J.n_modes + 1:
            raise MeasureDegenerate(f"{J.n_modes + 1} bath modes support at most {J.n_modes + 1} sites, {n} requested")
        return hahn_chain(J.alpha, J.s, J.omega_c, J.n_modes, n)
    raise ConfigError(f"no closed form for {type(J).__name__}")


def _asymptote(m: Measure):
    if m.bounded and not m.discrete and not m.gaps:
        return (m.g * (m.lo + m.hi) / 2, m.g * (m.hi - m.lo) / 4)
    return None


def engine_recurrence(m: Measure, n: int, engine: str, tol: float = 1e-12) -> RecurrenceCoefficients:
    if engine == "stieltjes":
        return stieltjes_discretised(m, n, tol=tol)
    if engine == "lanczos":
        return lanczos_rkpw(m, n, tol=tol)
    if engine == "gram-schmidt":
        return moment_gram_schmidt(m, n)
    if engine.startswith("gram-schmidt@"):
        return moment_gram_schmidt(m, n, int(engine.split("@", 1)[1]))
    raise ConfigError(f"unknown engine {engine!r}")


def segment_chain(J: SpectralDensity, n: int, engine: str = "auto", tol: float = 1e-12,
                  check: bool = False) -> ChainParameters:
    """Chain of ``n`` sites for a density with contiguous support."""
    if engine == "closed-form" or (engine == "auto" and has_closed_form(J)):
        cp = closed_form_chain(J, n)
        if not check:
            return cp
        m = induced_measure(unwrap(J))
        ref = chain_from_coefficients(stieltjes_discretised(m, n, tol=tol), m.g)
        return replace(cp, meta={**cp.meta, "cross_check": "stieltjes", "cross_check_disagreement": float(np.max(disagreement(cp, ref)))})
    m = induced_measure(J)
    primary = "lanczos" if engine == "auto" else engine
    cp = chain_from_coefficients(engine_recurrence(m, n, primary, tol), m.g, asymptote=_asymptote(m))
    if check and primary != "stieltjes":
        ref = chain_from_coefficients(stieltjes_discretised(m, n, tol=tol), m.g)
        cp = replace(cp, meta={**cp.meta, "cross_check": "stieltjes", "cross_check_disagreement": float(np.max(disagreement(cp, ref)))})
    return cp


def map_density(J: SpectralDensity, n: int, engine: str = "auto", tol: float = 1e-12,
                check: bool = False) -> list[ChainParameters]:
    """One chain per support segment of ``J``."""
    return [segment_chain(seg, n, engine, tol, check) for seg in split_gapped(J)]


def disagreement(a: ChainParameters, b: ChainParameters) -> NDArray:
    """Per-site max relative difference of ``omega_n`` and ``t_n``."""
    n = min(a.length, b.length)
    tiny = np.finfo(float).tiny

    def rel(x, y):
        return np.abs(x - y) / np.maximum(np.maximum(np.abs(x), np.abs(y)), tiny)

    d = rel(a.omega[:n], b.omega[:n])
    m = min(len(a.t), len(b.t), n)
    d[:m] = np.maximum(d[:m], rel(a.t[:m], b.t[:m]))
    return d


@dataclass(frozen=True)
class Comparison:
    engines: tuple[str, ...]
    max_disagreement: NDArray  # per site, over all engine pairs
    breakdown: dict  # engine -> first index it could not deliver


def _chain_by(J: SpectralDensity, n: int, engine: str, tol: float) -> tuple[ChainParameters, Optional[int]]:
    if engine in ("auto", "closed-form", "stieltjes", "lanczos"):
        return segment_chain(J, n, engine, tol), None
    m = induced_measure(J)
    try:
        return chain_from_coefficients(engine_recurrence(m, n, engine, tol), m.g), None
    except PrecisionExhausted as exc:
        if exc.partial is None:
            raise
        return chain_from_coefficients(exc.partial, m.g), exc.partial.n_terms


def compare(J: SpectralDensity, n: int, engines: Sequence[str], tol: float = 1e-12) -> Comparison:
    """Max relative disagreement per site between two or more engines.

    Moment-based engines that break down contribute their partial output and
    sites beyond the breakdown count as ``inf``.
    """
    if len(engines) < 2:
        raise ConfigError("compare needs at least two engines")
    segs = split_gapped(J)
    if len(segs) > 1:
        raise ConfigError("compare works on one support segment; split the gapped density first")
    chains, broke = [], {}
    for e in engines:
        cp, stop = _chain_by(J, n, e, tol)
        chains.append(cp)
        if stop is not None:
            broke[e] = stop
    worst = np.zeros(n)
    for i in range(len(chains)):
        for j in range(i + 1, len(chains)):
            d = np.full(n, np.inf)
            k = min(chains[i].length, chains[j].length)
            d[:k] = disagreement(chains[i], chains[j])[:k]
            worst = np.maximum(worst, d)
    return Comparison(tuple(engines), worst, broke)


def star_model(J: SpectralDensity, n: Optional[int] = None, statistics: str = "boson",
               engine: str = "auto", tol: float = 1e-12) -> DiscretisedStarModel:
    """Discrete star model: exact modes for discrete baths, Gauss modes otherwise.

    For a continuous density the ``n`` star modes are the Gauss nodes of its
    measure, ``zeta_k = g x_k`` with ``gamma_k^2 = pi w_k``; their chain is
    the first ``n`` sites of the exact chain.
    """
    freqs, coups = [], []
    for seg in split_gapped(J):
        seg = unwrap(seg)
        if isinstance(seg, LogDiscretised):
            zeta, g2 = seg.modes(n)
        elif isinstance(seg, (LinearDiscretised, PointMasses)):
            zeta, g2 = seg.modes()
            if n is not None:
                zeta, g2 = zeta[:n], g2[:n]
        else:
            if n is None:
                raise ConfigError("a continuous density needs a mode count for its star model")
            m = induced_measure(seg)
            if engine == "closed-form" or (engine == "auto" and isinstance(seg, (PowerLawHardCutoff, PowerLawExpCutoff))):
                rc = _closed_recurrence(seg, n, m.mass)
            else:
                rc = engine_recurrence(m, n, "lanczos" if engine == "auto" else engine, tol)
            rule = gauss_rule(rc, n)
            zeta, g2 = m.g * rule.nodes, math.pi * rule.weights
        freqs.append(np.asarray(zeta, dtype=float))
        coups.append(np.sqrt(np.asarray(g2, dtype=float)))
    return DiscretisedStarModel(np.concatenate(coups), np.concatenate(freqs), statistics)


def _closed_recurrence(J, n: int, mass: float) -> RecurrenceCoefficients:
    if isinstance(J, PowerLawHardCutoff):
        return jacobi_recurrence(J.s, n, mass)
    if isinstance(J, PowerLawExpCutoff):
        return laguerre_recurrence(J.s, n, mass)
    raise ConfigError(f"no closed-form recurrence for {type(J).__name__}")


# ---------------------------------------------------------------------------
# invariant suite


def invariant_suite(J: SpectralDensity, n: int, engine: str = "auto", tol: float = 1e-12) -> list[tuple[str, bool, str]]:
    """Structural checks on one density; returns ``(name, passed, detail)`` rows."""
    rows = []
    segs = split_gapped(J)
    total = sum(eta0(s) for s in segs)
    rows.append(("segments partition eta0", math.isclose(total, eta0(J), rel_tol=1e-10),
                 f"{len(segs)} segment(s), sum {total:.6g} vs {eta0(J):.6g}"))
    for i, seg in enumerate(segs):
        tag = f"[seg{i}] " if len(segs) > 1 else ""
        m = induced_measure(seg)
        target = eta0(seg) / math.pi
        rows.append((tag + "mass equals eta0/pi", math.isclose(m.mass, target, rel_tol=1e-6), f"{m.mass:.12g} vs {target:.12g}"))
        k = n
        if m.discrete:
            k = min(n, len(m.nodes))
        cp = segment_chain(seg, k, engine, tol)
        rc_beta = (cp.t / m.g) ** 2
        rows.append((tag + "beta_k > 0", bool(np.all(rc_beta > 0)), f"min {rc_beta.min() if rc_beta.size else float('nan'):.3g}"))
        rows.append((tag + "c0^2 = eta0/pi", math.isclose(cp.c0**2, target, rel_tol=1e-10), f"{cp.c0**2:.12g}"))
        if m.bounded:
            a, b = m.lo * m.g, m.hi * m.g
            slack = 1e-12 * max(abs(a), abs(b))
            ok = bool(np.all(cp.omega >= a - slack) and np.all(cp.omega <= b + slack))
            rows.append((tag + "omega_n within support", ok, f"[{cp.omega.min():.6g}, {cp.omega.max():.6g}] in [{a:.6g}, {b:.6g}]"))
            bound = max(abs(a), abs(b))
            rows.append((tag + "t_n <= max|support|", bool(np.all(cp.t <= bound + slack)), f"max t {cp.t.max() if cp.t.size else 0:.6g}"))
        if not m.discrete and (m.moment_fn is not None):
            q = min(k, 20)
            rc = RecurrenceCoefficients(cp.omega[:q] / m.g, np.concatenate(([cp.c0**2], rc_beta[: q - 1])))
            rule = gauss_rule(rc, q)
            worst = 0.0
            for r in range(2 * q):
                exact = m.moment(r)
                worst = max(worst, abs(rule.integrate(lambda x, r=r: x**r) - exact) / abs(exact))
            rows.append((tag + f"Gauss rule reproduces moments 0..{2 * q - 1}", worst < 1e-10, f"max rel err {worst:.2e}"))
    return rows

"""Spectral densities and the orthogonality measures they induce.

With the linear dispersion ``omega = g * x`` a spectral density ``J(omega)``
induces the weight

    w(x) = g * J(g * x) / pi,

so that ``integral(w) = eta0 / pi`` with ``eta0 = integral(J)``.  Discrete
densities (sums of delta peaks) induce point-mass measures with masses
``weight_k / pi``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Optional, Union

import numpy as np
from numpy.typing import NDArray
from scipy import integrate, special
from scipy.interpolate import PchipInterpolator

from chainmap.errors import (
    ConfigError,
    DeltaOutOfRange,
    GappedSupportWarning,
    NegativeDensity,
    NonIntegrable,
)

#: Smallest relative weight kept when a geometric (log-discretised) bath is truncated.
UNDERFLOW_WEIGHT = 1e-300

#: Zero stretches narrower than ``GAP_EPS * omega_c`` are not treated as gaps.
GAP_EPS = 1e-12


def _require_power_law(alpha: float, s: float, omega_c: float) -> None:
    if not alpha > 0:
        raise ConfigError(f"coupling alpha must be > 0, got {alpha}")
    if not s >= 0:
        raise ConfigError(f"exponent s must be >= 0, got {s}")
    if not omega_c > 0:
        raise ConfigError(f"cutoff omega_c must be > 0, got {omega_c}")


@dataclass(frozen=True)
class PowerLawHardCutoff:
    """``J(omega) = 2 pi alpha omega_c^(1-s) omega^s`` for ``0 <= omega <= omega_c``."""

    alpha: float
    s: float
    omega_c: float

    def __post_init__(self):
        _require_power_law(self.alpha, self.s, self.omega_c)

    @property
    def domain(self) -> tuple[float, float]:
        return 0.0, self.omega_c

    def density(self, omega):
        omega = np.asarray(omega, dtype=float)
        inside = (omega >= 0) & (omega <= self.omega_c)
        val = 2 * np.pi * self.alpha * self.omega_c ** (1 - self.s) * np.power(np.where(inside, omega, 0.0), self.s)
        return np.where(inside, val, 0.0)

    def integral(self, lo: float, hi: float) -> float:
        lo, hi = max(lo, 0.0), min(hi, self.omega_c)
        if hi <= lo:
            return 0.0
        s1 = self.s + 1
        return 2 * math.pi * self.alpha * self.omega_c ** (1 - self.s) * (hi**s1 - lo**s1) / s1


@dataclass(frozen=True)
class PowerLawExpCutoff:
    """``J(omega) = 2 pi alpha omega_c^(1-s) omega^s exp(-omega/omega_c)`` on the half-line."""

    alpha: float
    s: float
    omega_c: float

    def __post_init__(self):
        _require_power_law(self.alpha, self.s, self.omega_c)

    @property
    def domain(self) -> tuple[float, float]:
        return 0.0, math.inf

    def density(self, omega):
        omega = np.asarray(omega, dtype=float)
        inside = omega >= 0
        om = np.where(inside, omega, 0.0)
        val = 2 * np.pi * self.alpha * self.omega_c ** (1 - self.s) * np.power(om, self.s) * np.exp(-om / self.omega_c)
        return np.where(inside, val, 0.0)

    def integral(self, lo: float, hi: float) -> float:
        lo = max(lo, 0.0)
        if hi <= lo:
            return 0.0
        s1 = self.s + 1
        # regularised incomplete gamma keeps the closed form for partial ranges
        frac = special.gammainc(s1, hi / self.omega_c) - special.gammainc(s1, lo / self.omega_c)
        return 2 * math.pi * self.alpha * self.omega_c**2 * math.gamma(s1) * frac


@dataclass(frozen=True)
class LogDiscretised:
    """Logarithmically discretised power-law bath: modes at ``zeta_s * delta^-n``.

    ``gamma_n^2 = gamma_s^2 delta^(-n(1+s))`` with
    ``gamma_s^2 = 2 pi alpha omega_c^2 (1 - delta^-(1+s)) / (1+s)``.
    """

    alpha: float
    s: float
    omega_c: float
    delta: float

    def __post_init__(self):
        _require_power_law(self.alpha, self.s, self.omega_c)
        if not (self.delta > 1 and math.isfinite(self.delta)):
            raise DeltaOutOfRange(f"discretisation parameter must be > 1, got {self.delta}")

    @property
    def domain(self) -> tuple[float, float]:
        return 0.0, self.omega_c

    @property
    def gamma_s_sq(self) -> float:
        s1 = 1 + self.s
        return 2 * math.pi * self.alpha / s1 * self.omega_c**2 * -math.expm1(-s1 * math.log(self.delta))

    @property
    def zeta_s(self) -> float:
        ld = math.log(self.delta)
        return (self.s + 1) / (self.s + 2) * math.expm1(-(self.s + 2) * ld) / math.expm1(-(self.s + 1) * ld) * self.omega_c

    def n_modes(self, floor: float = UNDERFLOW_WEIGHT) -> int:
        """Number of modes kept before ``delta^(-n(1+s))`` drops below ``floor``."""
        return int(math.floor(-math.log(floor) / ((1 + self.s) * math.log(self.delta)))) + 1

    def modes(self, n_modes: Optional[int] = None) -> tuple[NDArray, NDArray]:
        """Star frequencies ``zeta_n`` and squared couplings ``gamma_n^2``."""
        if n_modes is None:
            n_modes = self.n_modes()
        k = np.arange(n_modes, dtype=float)
        ld = math.log(self.delta)
        zeta = self.zeta_s * np.exp(-k * ld)
        gamma_sq = self.gamma_s_sq * np.exp(-k * (1 + self.s) * ld)
        return zeta, gamma_sq

    def integral(self, lo: float, hi: float) -> float:
        zeta, g2 = self.modes()
        sel = (zeta >= lo) & (zeta <= hi)
        return float(np.sum(g2[sel]))


@dataclass(frozen=True)
class LinearDiscretised:
    """``n_modes + 1`` equally spaced modes ``zeta_n = omega_c n / (N+1)``, ``n = 0..N``."""

    alpha: float
    s: float
    omega_c: float
    n_modes: int

    def __post_init__(self):
        _require_power_law(self.alpha, self.s, self.omega_c)
        if int(self.n_modes) != self.n_modes or self.n_modes < 1:
            raise ConfigError(f"n_modes must be a positive integer, got {self.n_modes}")

    @property
    def domain(self) -> tuple[float, float]:
        return 0.0, self.omega_c

    def modes(self) -> tuple[NDArray, NDArray]:
        big_n = int(self.n_modes)
        n = np.arange(big_n + 1, dtype=float)
        zeta = self.omega_c * n / (big_n + 1)
        log_binom = special.gammaln(self.s + n + 1) - special.gammaln(self.s + 1) - special.gammaln(n + 1)
        gamma_sq = 2 * np.pi * self.alpha * self.omega_c**2 * np.exp(log_binom - (self.s + 1) * math.log(big_n + 1))
        return zeta, gamma_sq

    def integral(self, lo: float, hi: float) -> float:
        zeta, g2 = self.modes()
        sel = (zeta >= lo) & (zeta <= hi)
        return float(np.sum(g2[sel]))


@dataclass(frozen=True)
class PointMasses:
    """``J(omega) = sum_k weight_k delta(omega - omega_k)``."""

    points: tuple[tuple[float, float], ...]

    def __post_init__(self):
        pts = tuple((float(o), float(w)) for o, w in self.points)
        object.__setattr__(self, "points", pts)
        for o, w in pts:
            if o < 0 or not math.isfinite(o):
                raise ConfigError(f"point-mass frequency must be finite and >= 0, got {o}")
            if w < 0:
                raise NegativeDensity(f"point-mass weight {w} at omega={o} is negative")
            if not w > 0 or not math.isfinite(w):
                raise NonIntegrable(f"point-mass weight must be positive and finite, got {w}")

    @property
    def domain(self) -> tuple[float, float]:
        if not self.points:
            return 0.0, 0.0
        om = [o for o, _ in self.points]
        return min(om), max(om)

    def modes(self) -> tuple[NDArray, NDArray]:
        arr = np.array(self.points, dtype=float).reshape(-1, 2)
        order = np.argsort(arr[:, 0], kind="stable")
        return arr[order, 0], arr[order, 1]

    def integral(self, lo: float, hi: float) -> float:
        return float(sum(w for o, w in self.points if lo <= o <= hi))


@dataclass(frozen=True)
class Tabulated:
    """Sampled density, interpolated without creating negative values.

    Between two positive samples the interpolant is a monotone cubic
    (PCHIP) in ``log J``; any interval touching a zero sample is linear.
    """

    omega: tuple[float, ...]
    values: tuple[float, ...]

    def __post_init__(self):
        om = tuple(float(v) for v in self.omega)
        jv = tuple(float(v) for v in self.values)
        object.__setattr__(self, "omega", om)
        object.__setattr__(self, "values", jv)
        if len(om) != len(jv) or len(om) < 2:
            raise ConfigError("tabulated density needs at least two (omega, J) samples")
        if any(not math.isfinite(v) for v in om + jv):
            raise NonIntegrable("tabulated density contains non-finite samples")
        if om[0] < 0:
            raise ConfigError("tabulated frequencies must be >= 0")
        if any(b <= a for a, b in zip(om, om[1:])):
            raise ConfigError("tabulated frequencies must be strictly increasing")
        if any(v < 0 for v in jv):
            raise NegativeDensity("tabulated density has negative samples")
        if not any(v > 0 for v in jv):
            raise NonIntegrable("tabulated density is identically zero")

    @classmethod
    def from_file(cls, path) -> "Tabulated":
        """Read two-column ``omega J`` text; ``#`` starts a comment line."""
        rows = []
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                parts = line.replace(",", " ").split()
                if len(parts) < 2:
                    raise ConfigError(f"{path}:{lineno}: expected two columns")
                try:
                    rows.append((float(parts[0]), float(parts[1])))
                except ValueError as exc:
                    raise ConfigError(f"{path}:{lineno}: {exc}") from None
        if not rows:
            raise ConfigError(f"{path}: no samples")
        om, jv = zip(*rows)
        return cls(om, jv)

    @property
    def domain(self) -> tuple[float, float]:
        om, jv = self.omega, self.values
        first = next(i for i, v in enumerate(jv) if v > 0)
        last = len(jv) - 1 - next(i for i, v in enumerate(reversed(jv)) if v > 0)
        # a leading/trailing zero sample still bounds the linear ramp
        return om[max(first - 1, 0)], om[min(last + 1, len(om) - 1)]

    def zero_stretches(self) -> list[tuple[float, float]]:
        """Interior intervals where consecutive samples are both zero."""
        om, jv = self.omega, self.values
        lo, hi = self.domain
        out = []
        for i in range(len(om) - 1):
            if jv[i] == 0 and jv[i + 1] == 0 and om[i] >= lo and om[i + 1] <= hi:
                if out and out[-1][1] == om[i]:
                    out[-1] = (out[-1][0], om[i + 1])
                else:
                    out.append((om[i], om[i + 1]))
        return out

    @cached_property
    def _runs(self) -> list[tuple[int, int, Optional[PchipInterpolator]]]:
        jv = self.values
        runs = []
        i = 0
        while i < len(jv):
            if jv[i] > 0:
                j = i
                while j + 1 < len(jv) and jv[j + 1] > 0:
                    j += 1
                if j > i:
                    x = np.array(self.omega[i : j + 1])
                    y = np.log(np.array(jv[i : j + 1]))
                    runs.append((i, j, PchipInterpolator(x, y, extrapolate=False)))
                i = j + 1
            else:
                i += 1
        return runs

    def density(self, omega):
        omega = np.asarray(omega, dtype=float)
        om = np.array(self.omega)
        jv = np.array(self.values)
        out = np.interp(omega, om, jv, left=0.0, right=0.0)
        for i, j, pchip in self._runs:
            sel = (omega >= om[i]) & (omega <= om[j])
            if np.any(sel):
                out[sel] = np.exp(pchip(omega[sel]))
        return out

    def integral(self, lo: float, hi: float) -> float:
        om = np.array(self.omega)
        lo, hi = max(lo, om[0]), min(hi, om[-1])
        if hi <= lo:
            return 0.0
        edges = np.concatenate(([lo], om[(om > lo) & (om < hi)], [hi]))
        # interpolant is smooth on every sample interval
        t, wt = np.polynomial.legendre.leggauss(24)
        a, b = edges[:-1, None], edges[1:, None]
        x = 0.5 * (b - a) * t[None, :] + 0.5 * (a + b)
        vals = self.density(x.ravel()).reshape(x.shape)
        return float(np.sum(0.5 * (b - a)[:, 0] * (vals @ wt)))


@dataclass(frozen=True)
class Gapped:
    """Density made of disjoint segments ``(density, omega_lo, omega_hi)`` with zeros between them."""

    segments: tuple[tuple[object, float, float], ...]

    def __post_init__(self):
        segs = tuple((d, float(lo), float(hi)) for d, lo, hi in self.segments)
        object.__setattr__(self, "segments", segs)
        if not segs:
            raise NonIntegrable("gapped density has no segments")
        prev_hi = -math.inf
        for d, lo, hi in segs:
            if isinstance(d, (Gapped, PointMasses, LogDiscretised, LinearDiscretised)):
                raise ConfigError("gapped segments must be continuous densities")
            if not (lo < hi) or lo < 0:
                raise ConfigError(f"segment [{lo}, {hi}] is empty or negative")
            if lo <= prev_hi:
                raise ConfigError("gapped segments must be ordered with disjoint supports")
            dlo, dhi = d.domain
            if lo < dlo or hi > dhi:
                raise ConfigError(f"segment [{lo}, {hi}] exceeds its density's domain [{dlo}, {dhi}]")
            prev_hi = hi
        if any(math.isinf(hi) for _, _, hi in segs[:-1]):
            raise ConfigError("only the last segment may extend to infinity")

    @property
    def domain(self) -> tuple[float, float]:
        return self.segments[0][1], self.segments[-1][2]

    @property
    def omega_c(self) -> float:
        return max(_scale(d) for d, _, _ in self.segments)

    def gaps(self) -> list[tuple[float, float]]:
        return [(a[2], b[1]) for a, b in zip(self.segments, self.segments[1:])]

    def density(self, omega):
        omega = np.asarray(omega, dtype=float)
        out = np.zeros_like(omega)
        for d, lo, hi in self.segments:
            sel = (omega >= lo) & (omega <= hi)
            if np.any(sel):
                out[sel] = d.density(omega[sel])
        return out

    def integral(self, lo: float, hi: float) -> float:
        return sum(d.integral(max(lo, a), min(hi, b)) for d, a, b in self.segments if min(hi, b) > max(lo, a))


SpectralDensity = Union[
    PowerLawHardCutoff, PowerLawExpCutoff, LogDiscretised, LinearDiscretised, Tabulated, Gapped, PointMasses
]

DISCRETE = (LogDiscretised, LinearDiscretised, PointMasses)


def _scale(J) -> float:
    """Energy scale used as the dispersion constant ``g``."""
    if isinstance(J, Gapped):
        return J.omega_c
    if hasattr(J, "omega_c"):
        return float(J.omega_c)
    hi = J.domain[1]
    return hi if hi > 0 else 1.0


@dataclass(frozen=True)
class Measure:
    """Weight ``w(x) dx`` on ``[lo, hi]`` (``hi`` may be ``inf``) or a set of point masses.

    ``breakpoints`` lists interior points where ``w`` is not smooth;
    quadrature panels are aligned with them.  ``gaps`` lists intervals on
    which ``w`` vanishes identically.
    """

    lo: float
    hi: float
    g: float
    mass: float
    weight: Optional[Callable] = None
    nodes: Optional[NDArray] = None
    masses: Optional[NDArray] = None
    moment_fn: Optional[Callable[[int], float]] = None
    breakpoints: tuple[float, ...] = ()
    gaps: tuple[tuple[float, float], ...] = ()
    source: object = field(default=None, compare=False)

    @property
    def discrete(self) -> bool:
        return self.nodes is not None

    @property
    def bounded(self) -> bool:
        return math.isfinite(self.hi)

    @property
    def x_max(self) -> float:
        return self.hi

    def w(self, x):
        if self.discrete:
            raise TypeError("point-mass measure has no density")
        return self.weight(np.asarray(x, dtype=float))

    def moment(self, r: int) -> float:
        """``integral x^r dmu`` by closed form when known, else numerically."""
        if self.moment_fn is not None:
            return self.moment_fn(r)
        if self.discrete:
            return float(np.sum(self.masses * self.nodes**r))
        pts = [self.lo, *self.breakpoints, self.hi]
        total = 0.0
        for a, b in zip(pts[:-1], pts[1:]):
            if any(ga <= a and b <= gb for ga, gb in self.gaps):
                continue
            val, _ = integrate.quad(lambda x: x**r * float(self.weight(np.array([x]))[0]), a, b, limit=400, epsabs=0, epsrel=1e-13)
            total += val
        return total

    @classmethod
    def from_points(cls, nodes, masses, g: float = 1.0, source=None) -> "Measure":
        nodes = np.asarray(nodes, dtype=float)
        masses = np.asarray(masses, dtype=float)
        if nodes.shape != masses.shape or nodes.ndim != 1:
            raise ConfigError("nodes and masses must be 1-d arrays of equal length")
        if np.any(masses < 0):
            raise NegativeDensity("negative point mass")
        keep = masses > 0
        nodes, masses = nodes[keep], masses[keep]
        if nodes.size == 0:
            raise NonIntegrable("measure has zero total mass")
        order = np.argsort(nodes, kind="stable")
        nodes, masses = nodes[order], masses[order]
        mass = float(np.sum(masses))
        if not math.isfinite(mass):
            raise NonIntegrable("point masses sum to a non-finite value")
        return cls(lo=float(nodes[0]), hi=float(nodes[-1]), g=g, mass=mass, nodes=nodes, masses=masses, source=source)

    @classmethod
    def from_weight(cls, weight: Callable, lo: float, hi: float, mass: Optional[float] = None, g: float = 1.0,
                    moment_fn=None, breakpoints=(), gaps=(), source=None) -> "Measure":
        """Continuous measure from a vectorised weight function."""
        if not lo < hi:
            raise ConfigError(f"empty support [{lo}, {hi}]")
        m = cls(lo=float(lo), hi=float(hi), g=g, mass=0.0, weight=weight, moment_fn=moment_fn,
                breakpoints=tuple(breakpoints), gaps=tuple(gaps), source=source)
        if mass is None:
            mass = m.moment(0)
        if not math.isfinite(mass):
            raise NonIntegrable("weight has infinite total mass")
        if not mass > 0:
            raise NonIntegrable("weight has zero total mass")
        object.__setattr__(m, "mass", float(mass))
        return m


def eta0(J: SpectralDensity) -> float:
    """Total coupling ``integral J(omega) d omega``."""
    if isinstance(J, PowerLawHardCutoff):
        return 2 * math.pi * J.alpha * J.omega_c**2 / (J.s + 1)
    if isinstance(J, PowerLawExpCutoff):
        return 2 * math.pi * J.alpha * J.omega_c**2 * math.gamma(J.s + 1)
    if isinstance(J, LogDiscretised):
        # geometric series sums to the continuum value exactly
        return 2 * math.pi * J.alpha * J.omega_c**2 / (J.s + 1)
    if isinstance(J, LinearDiscretised):
        big_n = J.n_modes
        log_b = special.gammaln(J.s + big_n + 2) - special.gammaln(big_n + 1) - special.gammaln(J.s + 2)
        return 2 * math.pi * J.alpha * J.omega_c**2 * math.exp(log_b - (J.s + 1) * math.log(big_n + 1))
    if isinstance(J, PointMasses):
        if not J.points:
            raise NonIntegrable("empty point-mass density has zero weight")
        return math.fsum(w for _, w in J.points)
    if isinstance(J, (Tabulated, Gapped)):
        lo, hi = J.domain
        val = J.integral(lo, hi)
        if not math.isfinite(val):
            raise NonIntegrable("spectral density is not integrable")
        return val
    raise TypeError(f"unsupported spectral density {type(J).__name__}")


def split_gapped(J: SpectralDensity) -> list:
    """One density per contiguous support segment, ordered by frequency."""
    if isinstance(J, Gapped) and len(J.segments) > 1:
        return [Gapped((seg,)) for seg in J.segments]
    return [J]


def _warn_zero_stretches(J: Tabulated, g: float) -> tuple[tuple[float, float], ...]:
    gaps = tuple((a, b) for a, b in J.zero_stretches() if b - a > GAP_EPS * g)
    if gaps:
        warnings.warn(
            f"tabulated density vanishes on {len(gaps)} interval(s), e.g. [{gaps[0][0]}, {gaps[0][1]}]; "
            "consider declaring it as gapped and mapping each segment with split_gapped",
            GappedSupportWarning,
            stacklevel=3,
        )
    return gaps


def induced_measure(J: SpectralDensity, g: Optional[float] = None) -> Measure:
    """Measure ``w(x) = g J(g x) / pi`` induced by ``J`` under linear dispersion.

    ``g`` defaults to the density's cutoff ``omega_c``.
    """
    if g is None:
        g = _scale(J)
    g = float(g)
    if not g > 0:
        raise ConfigError(f"dispersion constant must be > 0, got {g}")
    total = eta0(J) / math.pi

    if isinstance(J, (LogDiscretised, LinearDiscretised, PointMasses)):
        zeta, g2 = J.modes()
        if zeta.size == 0 or not np.any(g2 > 0):
            raise NonIntegrable("discrete density has zero total weight")
        return Measure.from_points(zeta / g, g2 / math.pi, g=g, source=J)

    if isinstance(J, PowerLawHardCutoff):
        coef = 2 * J.alpha * J.omega_c ** (1 - J.s) * g ** (1 + J.s)
        s, x_max = J.s, J.omega_c / g

        def weight(x):
            x = np.asarray(x, dtype=float)
            inside = (x >= 0) & (x <= x_max)
            return np.where(inside, coef * np.power(np.where(inside, x, 0.0), s), 0.0)

        return Measure.from_weight(weight, 0.0, x_max, mass=total, g=g,
                                   moment_fn=lambda r: coef * x_max ** (s + r + 1) / (s + r + 1), source=J)

    if isinstance(J, PowerLawExpCutoff):
        coef = 2 * J.alpha * J.omega_c ** (1 - J.s) * g ** (1 + J.s)
        s, k = J.s, g / J.omega_c

        def weight(x):
            x = np.asarray(x, dtype=float)
            inside = x >= 0
            xx = np.where(inside, x, 0.0)
            return np.where(inside, coef * np.power(xx, s) * np.exp(-k * xx), 0.0)

        def moment(r):
            return coef * math.exp(math.lgamma(s + r + 1) - (s + r + 1) * math.log(k))

        return Measure.from_weight(weight, 0.0, math.inf, mass=total, g=g, moment_fn=moment, source=J)

    if isinstance(J, Tabulated):
        gaps = _warn_zero_stretches(J, g)
        lo, hi = J.domain
        om = np.array(J.omega)
        inner = tuple(float(v) / g for v in om[(om > lo) & (om < hi)])

        def weight(x):
            return g * J.density(g * np.asarray(x, dtype=float)) / math.pi

        return Measure.from_weight(weight, lo / g, hi / g, mass=total, g=g, breakpoints=inner,
                                   gaps=tuple((a / g, b / g) for a, b in gaps), source=J)

    if isinstance(J, Gapped):
        lo, hi = J.domain
        inner = []
        for d, a, b in J.segments:
            inner.extend([a / g, b / g])
            if isinstance(d, Tabulated):
                om = np.array(d.omega)
                inner.extend(float(v) / g for v in om[(om > a) & (om < b)])
        inner = tuple(sorted(v for v in set(inner) if lo / g < v < hi / g))

        def weight(x):
            return g * J.density(g * np.asarray(x, dtype=float)) / math.pi

        moment_fn = None
        if len(J.segments) == 1 and isinstance(J.segments[0][0], PowerLawHardCutoff):
            d, a, b = J.segments[0]
            coef = 2 * d.alpha * d.omega_c ** (1 - d.s) * g ** (1 + d.s)
            xa, xb = a / g, b / g
            moment_fn = lambda r, c=coef, s=d.s: c * (xb ** (s + r + 1) - xa ** (s + r + 1)) / (s + r + 1)  # noqa: E731
        return Measure.from_weight(weight, lo / g, hi / g, mass=total, g=g, moment_fn=moment_fn, breakpoints=inner,
                                   gaps=tuple((a / g, b / g) for a, b in J.gaps()), source=J)

    raise TypeError(f"unsupported spectral density {type(J).__name__}")

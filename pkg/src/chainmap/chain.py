"""Chain Hamiltonian parameters from recurrence coefficients.

A bath with measure ``mu`` and linear dispersion ``omega = g x`` maps onto

    H = H_loc + c0 A (b_0 + b_0^+) + sum_n omega_n b_n^+ b_n + t_n (b_{n+1}^+ b_n + h.c.)

with ``c0 = ||pi_0|| = sqrt(beta_0)``, ``omega_n = g alpha_n`` and
``t_n = g sqrt(beta_{n+1})``.  Closed forms are provided for power-law
densities with hard cutoff (shifted Jacobi) and exponential cutoff
(associated Laguerre), and for their logarithmic (little q-Jacobi) and
linear (Hahn) discretisations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import mpmath
import numpy as np
from numpy.typing import NDArray
from scipy import special

from chainmap.errors import DeltaOutOfRange, DimensionMismatch, IndexBeyondModes
from chainmap.measures import UNDERFLOW_WEIGHT, LinearDiscretised, LogDiscretised, eta0
from chainmap.orthopoly import Engine, RecurrenceCoefficients


@dataclass(frozen=True)
class ChainParameters:
    """Site energies ``omega`` (one per site) and hoppings ``t`` (one per bond).

    ``t[n]`` couples sites ``n`` and ``n + 1`` so ``len(t) == len(omega) - 1``.
    Hoppings are reported non-negative; ``meta['gauge']`` records any sign
    flips ``b_n -> -b_n`` applied to reach that convention.
    """

    c0: float
    omega: NDArray
    t: NDArray
    source: str
    g: float
    asymptote: Optional[tuple[float, float]] = None
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        om = np.array(self.omega, dtype=float)
        t = np.array(self.t, dtype=float)
        if om.ndim != 1 or t.shape != (max(len(om) - 1, 0),):
            raise DimensionMismatch(f"{len(om)} sites need {max(len(om) - 1, 0)} hoppings, got {t.shape}")
        om.flags.writeable = False
        t.flags.writeable = False
        object.__setattr__(self, "omega", om)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "c0", float(self.c0))

    @property
    def length(self) -> int:
        return len(self.omega)

    def matrix(self) -> NDArray:
        """Tridiagonal single-particle matrix of the chain."""
        return np.diag(self.omega) + np.diag(self.t, 1) + np.diag(self.t, -1)


@dataclass(frozen=True)
class DiscretisedStarModel:
    """Star geometry: the system couples to every mode ``k`` with ``couplings[k]``."""

    couplings: NDArray
    frequencies: NDArray
    statistics: str = "boson"

    def __post_init__(self):
        if self.statistics not in ("boson", "fermion"):
            raise ValueError(f"statistics must be 'boson' or 'fermion', got {self.statistics!r}")
        if np.shape(self.couplings) != np.shape(self.frequencies):
            raise DimensionMismatch("couplings and frequencies differ in length")


def chain_from_coefficients(rc: RecurrenceCoefficients, g: float, source: Optional[str] = None,
                            asymptote=None) -> ChainParameters:
    if not g > 0:
        raise ValueError(f"dispersion constant must be positive, got {g}")
    return ChainParameters(
        c0=math.sqrt(rc.beta[0]),
        omega=g * rc.alpha,
        t=g * np.sqrt(rc.beta[1:]),
        source=source or rc.engine.value,
        g=g,
        asymptote=asymptote,
        meta={"engine": rc.engine.value, "est_error": rc.est_error, **rc.meta},
    )


def _need_sites(n: int) -> None:
    if n < 1:
        raise ValueError(f"a chain needs at least one site, got {n}")


# ---------------------------------------------------------------------------
# continuous power laws


def jacobi_energies(s: float, omega_c: float, n: int) -> tuple[NDArray, NDArray]:
    """``omega_k`` for ``k < n`` and ``t_k`` for ``k < n`` of the hard-cutoff chain."""
    k = np.arange(n, dtype=float)
    den = (s + 2 * k) * (2 + s + 2 * k)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(den > 0, s * s / np.where(den > 0, den, 1.0), 0.0)
    # s = 0, k = 0 is 0/0; the limit s -> 0 of s / (2 + s) is 0
    omega = 0.5 * omega_c * (1 + ratio)
    t = omega_c * (1 + k) * (1 + s + k) / ((s + 2 + 2 * k) * (3 + s + 2 * k)) * np.sqrt((3 + s + 2 * k) / (1 + s + 2 * k))
    return omega, t


def jacobi_chain(alpha: float, s: float, omega_c: float, n: int) -> ChainParameters:
    """Chain of ``n`` sites for ``J = 2 pi alpha omega_c^(1-s) omega^s`` on ``[0, omega_c]``."""
    _need_sites(n)
    omega, t = jacobi_energies(s, omega_c, n)
    return ChainParameters(
        c0=omega_c * math.sqrt(2 * alpha / (s + 1)),
        omega=omega,
        t=t[: n - 1],
        source="jacobi",
        g=omega_c,
        asymptote=(omega_c / 2, omega_c / 4),
    )


def jacobi_recurrence(s: float, n: int, mass: float = None) -> RecurrenceCoefficients:
    """Monic coefficients of ``x^s`` on ``[0, 1]`` (mass ``1/(s+1)`` unless given)."""
    omega, t = jacobi_energies(s, 1.0, n)
    beta = np.empty(n)
    beta[0] = 1.0 / (s + 1) if mass is None else mass
    beta[1:] = t[: n - 1] ** 2
    return RecurrenceCoefficients(omega, beta, Engine.CLOSED_FORM)


def laguerre_chain(alpha: float, s: float, omega_c: float, n: int) -> ChainParameters:
    """Chain of ``n`` sites for the exponential-cutoff power law."""
    _need_sites(n)
    k = np.arange(n, dtype=float)
    return ChainParameters(
        c0=omega_c * math.sqrt(2 * alpha * math.gamma(s + 1)),
        omega=omega_c * (2 * k + 1 + s),
        t=omega_c * np.sqrt((k[:-1] + 1) * (k[:-1] + s + 1)),
        source="laguerre",
        g=omega_c,
    )


def laguerre_recurrence(s: float, n: int, mass: float = None) -> RecurrenceCoefficients:
    k = np.arange(n, dtype=float)
    beta = k * (k + s)
    beta[0] = math.gamma(s + 1) if mass is None else mass
    return RecurrenceCoefficients(2 * k + 1 + s, beta, Engine.CLOSED_FORM)


# ---------------------------------------------------------------------------
# logarithmic discretisation: little q-Jacobi polynomials p_n(x; delta^-s, 1 | 1/delta)


def _one_minus_pow(k, log_delta):
    """``1 - delta^(-k)`` without cancellation for ``delta`` close to 1."""
    return -np.expm1(-np.asarray(k, dtype=float) * log_delta)


def littleq_coefficients(s: float, delta: float, n: int) -> tuple[NDArray, NDArray, NDArray]:
    """``A_j``, ``C_j`` and ``N_j^2`` for ``j < n``.

    The polynomials obey ``x p_j = (A_j + C_j) p_j - A_j p_{j+1} - C_j p_{j-1}``
    and ``sum_k delta^(-k(1+s)) p_j p_l = N_j^2 delta_jl`` on ``x = delta^-k``.
    """
    if not delta > 1:
        raise DeltaOutOfRange(f"discretisation parameter must be > 1, got {delta}")
    ld = math.log(delta)
    j = np.arange(n, dtype=float)
    A = np.exp(-j * ld) * _one_minus_pow(j + 1 + s, ld) ** 2 / (_one_minus_pow(2 * j + 1 + s, ld) * _one_minus_pow(2 * j + 2 + s, ld))
    C = np.zeros(n)
    jj = j[1:]
    C[1:] = np.exp(-(jj + s) * ld) * _one_minus_pow(jj, ld) ** 2 / (_one_minus_pow(2 * jj + s, ld) * _one_minus_pow(2 * jj + 1 + s, ld))
    # (q;q)_j and (delta^-(s+1); q)_j as running sums of logs
    log_qq = np.concatenate(([0.0], np.cumsum(np.log(_one_minus_pow(j[1:], ld)))))
    log_aq = np.concatenate(([0.0], np.cumsum(np.log(_one_minus_pow(s + 1 + j[:-1], ld)))))
    log_norm = -j * (1 + s) * ld + 2 * log_qq - 2 * log_aq - np.log(_one_minus_pow(2 * j + 1 + s, ld))
    return A, C, np.exp(log_norm)


def littleq_max_sites(s: float, delta: float) -> int:
    """Sites representable before ``delta^(-n(1+s))`` underflows past ``1e-300``."""
    return LogDiscretised(1.0, s, 1.0, delta).n_modes(UNDERFLOW_WEIGHT)


def littleq_chain(alpha: float, s: float, omega_c: float, delta: float, n: int) -> ChainParameters:
    """Chain for the logarithmically discretised power law.

    ``omega_n = zeta_s (A_n + C_n)`` and ``|t_n| = zeta_s A_n N_{n+1} / N_n``.
    The analytic hoppings are negative; they are reported with the gauge
    ``b_n -> (-1)^n b_n`` applied, the signed values are in ``meta['t_signed']``.
    At most ``littleq_max_sites`` sites are produced; ``meta['requested']``
    keeps the requested length.
    """
    _need_sites(n)
    J = LogDiscretised(alpha, s, omega_c, delta)
    cap = littleq_max_sites(s, delta)
    size = min(n, cap)
    A, C, norm_sq = littleq_coefficients(s, delta, size + 1)
    zeta_s = J.zeta_s
    ratio = np.sqrt(norm_sq[1:] / norm_sq[:-1])
    t_signed = -zeta_s * ratio[: size - 1] * A[: size - 1]
    return ChainParameters(
        c0=math.sqrt(eta0(J) / math.pi),
        omega=zeta_s * (A[:size] + C[:size]),
        t=-t_signed,
        source="littleq",
        g=omega_c,
        meta={"gauge": "b_n -> (-1)^n b_n", "t_signed": t_signed, "requested": n, "zeta_s": zeta_s},
    )


def _series_dps(delta: float, n_poly: int) -> int:
    # terms of the series reach about delta^(j^2/2) before cancelling
    return 30 + int(math.ceil(n_poly**2 * math.log10(delta) / 2))


def littleq_polynomials(s: float, delta: float, n_poly: int, n_points: int, dps: Optional[int] = None) -> list:
    """Values ``p_j(delta^-k)`` as mpmath numbers, ``j < n_poly``, ``k < n_points``.

    Evaluated from the terminating basic hypergeometric series
    ``2phi1(q^-j, a q^(j+1); a q; q; q x)`` with ``a = delta^-s``, ``b = 1``.
    The working precision defaults to enough digits to absorb the
    cancellation in the series.
    """
    if dps is None:
        dps = _series_dps(delta, n_poly)
    with mpmath.workdps(dps):
        q = 1 / mpmath.mpf(delta)
        a = q ** mpmath.mpf(s)
        rows = []
        for j in range(n_poly):
            row = []
            for k in range(n_points):
                x = q**k
                term = mpmath.mpf(1)
                total = mpmath.mpf(1)
                for i in range(j):
                    # ratio of consecutive terms of the terminating series
                    term *= (1 - q ** (i - j)) * (1 - a * q ** (j + 1 + i)) / ((1 - a * q ** (i + 1)) * (1 - q ** (i + 1))) * q * x
                    total += term
                row.append(total)
            rows.append(row)
        return rows


def littleq_transform(s: float, delta: float, n_chain: int, n_star: int, dps: Optional[int] = None) -> NDArray:
    """Star-to-chain matrix ``U[m, k] = delta^(-k(1+s)/2) p_m(delta^-k) / N_m``."""
    if dps is None:
        dps = _series_dps(delta, n_chain)
    p = littleq_polynomials(s, delta, n_chain, n_star, dps)
    with mpmath.workdps(dps):
        q = 1 / mpmath.mpf(delta)
        s_mp = mpmath.mpf(s)
        U = np.empty((n_chain, n_star))
        for m in range(n_chain):
            # N_m^2 from the closed form, evaluated at working precision
            qq = mpmath.fprod(1 - q ** (i + 1) for i in range(m)) if m else mpmath.mpf(1)
            aq = mpmath.fprod(1 - q ** (s_mp + 1 + i) for i in range(m)) if m else mpmath.mpf(1)
            nsq = q ** (m * (1 + s_mp)) * qq**2 / (aq**2 * (1 - q ** (2 * m + 1 + s_mp)))
            inv = 1 / mpmath.sqrt(nsq)
            for k in range(n_star):
                U[m, k] = float(q ** (k * (1 + s_mp) / 2) * p[m][k] * inv)
        return U


def bulla_recursion_check(U: NDArray, zeta: NDArray, omega: NDArray, t: NDArray) -> float:
    """Max residual of ``zeta_n U_mn = omega_m U_mn + t_m U_(m+1)n + t_(m-1) U_(m-1)n``.

    Rows ``m`` run over all rows of ``U`` but the last, which only supplies
    ``U_(m+1)n``; a single-row ``U`` is checked on its own with
    ``U_1n = 0``.
    """
    U = np.asarray(U, dtype=float)
    zeta, omega, t = (np.asarray(v, dtype=float) for v in (zeta, omega, t))
    if U.ndim != 2:
        raise DimensionMismatch("U must be a matrix")
    rows, cols = U.shape
    if len(zeta) != cols:
        raise DimensionMismatch(f"U has {cols} star columns but {len(zeta)} frequencies were given")
    n_eval = max(rows - 1, 1)
    if len(omega) < n_eval or len(t) < min(n_eval, rows - 1):
        raise DimensionMismatch("omega/t too short for the block of U")
    worst = 0.0
    for m in range(n_eval):
        r = zeta * U[m] - omega[m] * U[m]
        if m + 1 < rows:
            r -= t[m] * U[m + 1]
        if m > 0:
            r -= t[m - 1] * U[m - 1]
        worst = max(worst, float(np.max(np.abs(r))))
    return worst


# ---------------------------------------------------------------------------
# linear discretisation: Hahn polynomials Q_n(x; s, 0, N)


def hahn_coefficients(a: float, b: float, big_n: int, n: int) -> tuple[NDArray, NDArray]:
    """``A_k``, ``C_k`` (``k < n``) with ``-x Q_k = A_k Q_(k+1) - (A_k + C_k) Q_k + C_k Q_(k-1)``."""
    k = np.arange(n, dtype=float)
    A = (k + a + b + 1) * (k + a + 1) * (big_n - k) / ((2 * k + a + b + 1) * (2 * k + a + b + 2))
    C = np.zeros(n)
    kk = k[1:]
    C[1:] = kk * (kk + a + b + big_n + 1) * (kk + b) / ((2 * kk + a + b) * (2 * kk + a + b + 1))
    return A, C


def hahn_norm_sq(a: float, b: float, big_n: int, n: int) -> NDArray:
    """``rho_k^2 = sum_x w(x) Q_k(x)^2`` for ``w(x) = binom(a+x, x) binom(b+N-x, N-x)``."""
    k = np.arange(n, dtype=float)
    gl = special.gammaln
    # (k+a+b+1)_{N+1} (b+1)_k k! (N-k)! / ((2k+a+b+1) (a+1)_k N!^2)
    log_h = (gl(k + a + b + 2 + big_n) - gl(k + a + b + 1)
             + gl(b + 1 + k) - gl(b + 1)
             + gl(k + 1) + gl(big_n - k + 1)
             - np.log(2 * k + a + b + 1)
             - (gl(a + 1 + k) - gl(a + 1))
             - 2 * gl(big_n + 1))
    return np.exp(log_h)


def hahn_chain(alpha: float, s: float, omega_c: float, big_n: int, n: int) -> ChainParameters:
    """Chain of ``n <= N + 1`` sites for the linearly discretised power law with ``N + 1`` modes."""
    _need_sites(n)
    if n > big_n + 1:
        raise IndexBeyondModes(f"{big_n + 1} modes support at most {big_n + 1} chain sites, {n} requested")
    A, C = hahn_coefficients(s, 0.0, big_n, n + 1)
    scale = omega_c / (big_n + 1)
    omega = scale * (A[:n] + C[:n])
    # rho_(k+1)/rho_k A_k = sqrt(A_k C_(k+1)); the product form avoids huge norms
    t = scale * np.sqrt(A[: n - 1] * C[1:n])
    J = LinearDiscretised(alpha, s, omega_c, big_n)
    return ChainParameters(c0=math.sqrt(eta0(J) / math.pi), omega=omega, t=t, source="hahn", g=omega_c,
                           meta={"n_modes": big_n + 1})


def hahn_recurrence(s: float, big_n: int, n: int, mass: float) -> RecurrenceCoefficients:
    """Monic coefficients of the Hahn weight on ``x = k / (N+1)``."""
    A, C = hahn_coefficients(s, 0.0, big_n, n + 1)
    scale = 1.0 / (big_n + 1)
    beta = np.empty(n)
    beta[0] = mass
    beta[1:] = scale**2 * A[: n - 1] * C[1:n]
    return RecurrenceCoefficients(scale * (A[:n] + C[:n]), beta, Engine.CLOSED_FORM)


def littleq_recurrence(s: float, delta: float, n: int, zeta_scale: float, mass: float) -> RecurrenceCoefficients:
    """Monic coefficients of the little q-Jacobi weight on ``x = zeta_scale delta^-k``."""
    A, C, _ = littleq_coefficients(s, delta, n + 1)
    beta = np.empty(n)
    beta[0] = mass
    beta[1:] = zeta_scale**2 * A[: n - 1] * C[1:n]
    return RecurrenceCoefficients(zeta_scale * (A[:n] + C[:n]), beta, Engine.CLOSED_FORM)

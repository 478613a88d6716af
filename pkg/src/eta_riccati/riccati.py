"""Riccati layer: logarithmic derivative of eta_a and everything built on it.

With ``phi = eta'/eta`` and ``q = eta''/eta`` the identity
``phi' + phi^2 = q`` holds for every ``t > 0``. This module evaluates the
fields from the direct series, the reference curve ``phi_e = -q/2``, the
asymptotic manifold ``L (a+1)^(-t)`` with ``L = log(a+1)``, the crossing
threshold of ``eta'' + 2 eta'``, the curvature in two independent forms,
higher-order quotients and the linearized contraction factor.
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError, NoCrossingError, SingularDenominatorError
from .series import (
    EtaPoint,
    SeriesAccuracy,
    SeriesResult,
    alternating_log_series,
    eta_deriv_direct,
)

THREADS_ENV = "ETA_RICCATI_THREADS"
CRITICAL_A = math.e ** 2 - 1.0
THRESHOLD_WINDOW = (0.01, 8.0)
THRESHOLD_SCAN_STEP = 1e-2
THRESHOLD_RESIDUAL = 1e-10
DENOMINATOR_GUARD = 1e-12


@dataclass(frozen=True)
class RiccatiSample:
    t: float
    eta: float
    eta1: float
    eta2: float
    phi: float
    q: float
    phi_e: float
    phi_as: float
    ratio: float
    converged: bool = True


@dataclass(frozen=True)
class ThresholdResult:
    """Smallest zero ``t_star`` of ``eta'' + 2 eta'`` in the search window.

    ``bracket`` is the final sign-change interval from the bisection;
    ``converged`` tells whether the series behind ``residual`` met their
    truncation tolerance past the monotone regime.
    """

    a: float
    t_star: float
    residual: float
    iterations: int
    bracket: tuple = (math.nan, math.nan)
    converged: bool = True


@dataclass(frozen=True)
class QuotientSample:
    k: int
    phi_k: float
    phi_ek: float
    ratio_k: float


def _checked(res, what, strict):
    if strict and not res.converged:
        raise ConvergenceError(
            f"{what}: series did not converge (error estimate {res.error_estimate:.3g}, "
            f"{res.terms_used} terms)", res)
    return res


def derivatives(p, kmax=2, acc=None, strict=True):
    """Direct-series results for ``eta^(0..kmax)`` at ``p``."""
    return [_checked(eta_deriv_direct(p, k, acc), f"eta^({k})(a={p.a}, t={p.t})", strict)
            for k in range(kmax + 1)]


def riccati_fields(p, acc=None, *, strict=True):
    """All Riccati-layer quantities at one point.

    With ``strict=False`` non-converged series are used as they are and the
    sample is flagged through ``converged``.
    """
    return fields_from_results(p, *derivatives(p, 2, acc, strict))


def fields_from_results(p, d0, d1, d2):
    """:class:`RiccatiSample` from already evaluated ``eta, eta', eta''``."""
    eta, eta1, eta2 = d0.value, d1.value, d2.value
    phi = eta1 / eta
    q = eta2 / eta
    phi_e = -q / 2.0
    L = math.log1p(p.a)
    phi_as = L * math.exp(-p.t * L)
    ratio = phi / phi_e if phi_e != 0.0 else math.nan
    ok = d0.converged and d1.converged and d2.converged
    return RiccatiSample(p.t, eta, eta1, eta2, phi, q, phi_e, phi_as, ratio, ok)


def _workers():
    raw = os.environ.get(THREADS_ENV)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return os.cpu_count() or 1


def parallel_map(fn, items):
    """Ordered map over ``items`` on up to ``ETA_RICCATI_THREADS`` threads."""
    items = list(items)
    workers = min(_workers(), len(items))
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def riccati_sweep(points, acc=None, *, strict=True):
    return parallel_map(lambda p: riccati_fields(p, acc, strict=strict), points)


def phi_value(p, acc=None, strict=True):
    d0, d1 = derivatives(p, 1, acc, strict)
    return d1.value / d0.value


def phi_central_derivative(p, h, acc=None, strict=True):
    """Symmetric difference ``(phi(t+h) - phi(t-h)) / 2h``."""
    if not (0.0 < h < p.t):
        raise DomainError(f"step h must satisfy 0 < h < t, got h={h!r}, t={p.t}")
    hi = phi_value(EtaPoint(p.a, p.t + h), acc, strict)
    lo = phi_value(EtaPoint(p.a, p.t - h), acc, strict)
    return (hi - lo) / (2.0 * h)


def riccati_residual(p, h=1e-4, acc=None):
    """``|phi'(t) + phi(t)^2 - q(t)|`` with ``phi'`` from a central difference."""
    s = riccati_fields(p, acc)
    dphi = phi_central_derivative(p, h, acc)
    return abs(dphi + s.phi * s.phi - s.q)


def asymptotic_ratio_limit(a):
    """Limit of ``phi / phi_e`` as ``t -> inf``: ``2 / log(a+1)``."""
    if not a > 0:
        raise DomainError(f"a must be positive, got {a!r}")
    return 2.0 / math.log1p(a)


def _curvature_parts(p, acc, strict):
    d1, d2 = (_checked(eta_deriv_direct(p, k, acc), f"eta^({k})(a={p.a}, t={p.t})", strict)
              for k in (1, 2))
    return d2.value + 2.0 * d1.value, d1.converged and d2.converged


def curvature(p, acc=None, *, strict=True):
    """``eta''(t) + 2 eta'(t)`` from the two derivative series."""
    return _curvature_parts(p, acc, strict)[0]


def curvature_series(p, acc=None):
    """``sum_{m>=1} (-1)^m h(m) (am+1)^(-t)`` with ``h(m) = L_m (L_m - 2)``.

    ``L_m = log(am+1)``; a single series whose weight vanishes at ``m = 0``.
    """
    if not isinstance(p, EtaPoint):
        raise DomainError("p must be an EtaPoint")
    return alternating_log_series(p.a, p.t, np.array([0.0, -2.0, 1.0]), acc)


def curvature_leading_term(a, t):
    """The ``m = 1`` term ``L (2 - L) (a+1)^(-t)``, ``L = log(a+1)``."""
    L = math.log1p(a)
    return L * (2.0 - L) * (1.0 + a) ** -t


def trapping_threshold(a, *, acc=None, window=THRESHOLD_WINDOW,
                       scan_step=THRESHOLD_SCAN_STEP, strict=False):
    """First zero of ``g = eta'' + 2 eta'`` in ``window``.

    ``g`` is scanned on a uniform grid of ``scan_step`` for its first sign
    change, then bisected until ``|g| <= 1e-10``. A zero of ``g`` is the same
    as ``phi = phi_e`` because ``eta > 0``. Raises :class:`NoCrossingError`
    when ``g`` keeps one sign over the whole window, and for the degenerate
    ``a = e^2 - 1`` whose limiting ratio is exactly 1.

    Near the left end of the default window the derivative terms are still
    growing (their peak sits near ``m = e^(k/t)/a``), so the series are
    flagged unconverged there although the tail-corrected values stay
    accurate to about 1e-12, far below the bisection target. Only the sign of
    ``g`` is read during the scan; pass ``strict=True`` to refuse such points.
    """
    if not a > 0:
        raise DomainError(f"a must be positive, got {a!r}")
    if abs(math.log1p(a) - 2.0) < 1e-12:
        raise NoCrossingError("a = e^2 - 1 is degenerate (limiting ratio 1); no threshold reported")
    lo_t, hi_t = window
    if not 0.0 < lo_t < hi_t:
        raise DomainError(f"invalid window {window!r}")

    def g(t):
        return _curvature_parts(EtaPoint(a, t), acc, strict)

    n = int(math.floor((hi_t - lo_t) / scan_step + 1e-9))
    grid = [lo_t + i * scan_step for i in range(n + 1)]
    if grid[-1] < hi_t:
        grid.append(hi_t)
    prev_t = grid[0]
    prev_g, ok = g(prev_t)
    if prev_g == 0.0:
        return ThresholdResult(a, prev_t, 0.0, 1, (prev_t, prev_t), ok)
    for t in grid[1:]:
        cur, ok = g(t)
        if cur == 0.0:
            return ThresholdResult(a, t, 0.0, 1, (t, t), ok)
        if (cur > 0) != (prev_g > 0):
            return _bisect(g, a, prev_t, prev_g, t)
        prev_t, prev_g = t, cur
    sign = "positive" if prev_g > 0 else "negative"
    raise NoCrossingError(
        f"eta'' + 2 eta' stays {sign} on [{lo_t}, {hi_t}] for a={a}; no threshold in the window")


def _bisect(g, a, lo, g_lo, hi):
    it = 0
    while True:
        it += 1
        mid = 0.5 * (lo + hi)
        g_mid, ok = g(mid)
        if abs(g_mid) <= THRESHOLD_RESIDUAL or mid in (lo, hi) or it >= 200:
            return ThresholdResult(a, mid, g_mid, it, (lo, hi), ok)
        if (g_mid > 0) == (g_lo > 0):
            lo, g_lo = mid, g_mid
        else:
            hi = mid


def higher_quotient(p, k, acc=None):
    """``phi_k = eta^(k)/eta^(k-1)`` and ``phi_ek = -eta^(k+1)/(2 eta^(k-1))``.

    The denominator must be distinguishable from zero relative to the size of
    its own series: ``|eta^(k-1)| > 1e-12 * sum |terms|``.
    """
    if int(k) != k or k < 1:
        raise DomainError(f"k must be a positive integer, got {k!r}")
    k = int(k)
    den, num, nxt = (_checked(eta_deriv_direct(p, j, acc), f"eta^({j})", True)
                     for j in (k - 1, k, k + 1))
    if not abs(den.value) > DENOMINATOR_GUARD * max(den.abs_sum, den.error_estimate):
        raise SingularDenominatorError(
            f"eta^({k - 1})(t={p.t}) = {den.value:.3g} is indistinguishable from zero")
    phi_k = num.value / den.value
    phi_ek = -nxt.value / (2.0 * den.value)
    return QuotientSample(k, phi_k, phi_ek, phi_k / phi_ek)


def forcing(a, t, acc=None):
    """``q_a(t) = eta''/eta``."""
    d0, _, d2 = derivatives(EtaPoint(a, t), 2, acc)
    return d2.value / d0.value


def adaptive_simpson(f, lo, hi, tol=1e-10, max_depth=40):
    """Adaptive Simpson quadrature with absolute tolerance ``tol``.

    Raises :class:`ConvergenceError` if some panel still misses its share of
    the tolerance at ``max_depth``.
    """
    f_lo, f_mid, f_hi = f(lo), f(0.5 * (lo + hi)), f(hi)
    whole = (hi - lo) / 6.0 * (f_lo + 4.0 * f_mid + f_hi)
    failed = []

    def recurse(a, b, fa, fm, fb, whole, tol, depth):
        m = 0.5 * (a + b)
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = f(lm), f(rm)
        left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
        right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
        delta = left + right - whole
        if abs(delta) <= 15.0 * tol:
            return left + right + delta / 15.0
        if depth >= max_depth:
            failed.append((a, b))
            return left + right + delta / 15.0
        return (recurse(a, m, fa, flm, fm, left, tol / 2.0, depth + 1)
                + recurse(m, b, fm, frm, fb, right, tol / 2.0, depth + 1))

    out = recurse(lo, hi, f_lo, f_mid, f_hi, whole, tol, 0)
    if failed:
        raise ConvergenceError(f"adaptive Simpson hit depth {max_depth} on {len(failed)} panel(s)")
    return out


def perturbation_factor(a, t0, t1, *, tol=1e-10, acc=None):
    """Contraction ``exp(int_{t0}^{t1} q_a(s) ds)`` of a perturbation of phi."""
    if not (a > 0 and 0 < t0 <= t1):
        raise DomainError(f"need a > 0 and 0 < t0 <= t1, got a={a}, t0={t0}, t1={t1}")
    if t0 == t1:
        return 1.0
    return math.exp(adaptive_simpson(lambda s: forcing(a, s, acc), t0, t1, tol=tol))


__all__ = [
    "CRITICAL_A",
    "QuotientSample",
    "RiccatiSample",
    "SeriesAccuracy",
    "SeriesResult",
    "ThresholdResult",
    "adaptive_simpson",
    "asymptotic_ratio_limit",
    "curvature",
    "curvature_leading_term",
    "curvature_series",
    "derivatives",
    "fields_from_results",
    "forcing",
    "higher_quotient",
    "parallel_map",
    "perturbation_factor",
    "phi_central_derivative",
    "riccati_fields",
    "riccati_residual",
    "riccati_sweep",
    "trapping_threshold",
]

"""Geometric-rate evaluation of eta_a^(k)(t) from forward finite differences.

The derivative is expanded as::

    eta_a^(k)(t) = (2/3) * sum_{n>=0} c(n) / 3^n,
    c(n) = (-1)^(n+k) * sum_{l=0}^{n} C(n,l) * (Delta^(n-l) phi)(l),

with ``phi(l) = log^k(al+1) / (al+1)^t`` and the coefficients bounded by
``|c(n)| <= 2 C(n+k,k) log^k(a min(n,k) + 1)``, so truncating after ``N``
terms costs at most ``(4/3) sum_{n>=N} 3^-n C(n+k,k) log^k(a min(n,k)+1)``.

``Delta^m`` amplifies rounding by up to ``2^m`` and a coefficient sums
``3^n`` worth of such magnitudes, so individual coefficients lose relative
accuracy quickly with ``n`` even though the weighted sum does not. Binary64
runs are capped at ``N = 40``; the double-double backend allows ``N = 80``.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .ddouble import DD, EPS_DD, dd_exp, dd_log, quick_two_sum, two_prod
from .errors import DomainError, PrecisionError
from .series import EPS, EtaPoint, basic_discrete

N_MAX = 40
N_MAX_EXTENDED = 80
K_MAX = 16
_TAIL_RTOL = 1e-3
_TAIL_INFLATE = 1.002


@lru_cache(maxsize=None)
def pascal(n_max):
    """Exact integer Pascal triangle, rows ``0..n_max``."""
    rows = [[1]]
    for n in range(1, n_max + 1):
        prev = rows[-1]
        rows.append([1] + [prev[j - 1] + prev[j] for j in range(1, n)] + [1])
    return tuple(tuple(r) for r in rows)


def binom(n, j):
    if n <= N_MAX_EXTENDED + K_MAX:
        return pascal(N_MAX_EXTENDED + K_MAX)[n][j] if 0 <= j <= n else 0
    return math.comb(n, j)


@lru_cache(maxsize=None)
def _binom_float(n_pts):
    tri = pascal(max(n_pts - 1, 0))
    out = np.zeros((n_pts, n_pts))
    for n, row in enumerate(tri):
        out[n, :n + 1] = row
    out.setflags(write=False)
    return out


def _check_nonneg_int(name, value):
    if int(value) != value or value < 0:
        raise DomainError(f"{name} must be a nonnegative integer, got {value!r}")
    return int(value)


def forward_difference(seq, m, l):
    """``Delta^m seq(l) = sum_j C(m,j) (-1)^(m-j) seq(l+j)``.

    ``seq`` may be a callable on integers or any indexable sequence. Integer
    binomials keep the weights exact; the sum itself is ``math.fsum``-rounded.
    """
    m = _check_nonneg_int("m", m)
    l = _check_nonneg_int("l", l)
    get = seq if callable(seq) else seq.__getitem__
    return math.fsum((-1) ** (m - j) * binom(m, j) * get(l + j) for j in range(m + 1))


def forward_difference_recursive(seq, m, l):
    """``Delta^m`` by literal nesting ``Delta^1(Delta^(m-1))``; exponential cost."""
    m = _check_nonneg_int("m", m)
    l = _check_nonneg_int("l", l)
    get = seq if callable(seq) else seq.__getitem__
    if m == 0:
        return get(l)
    return forward_difference_recursive(seq, m - 1, l + 1) - forward_difference_recursive(seq, m - 1, l)


def coeff_bound(a, k, n):
    """``2 C(n+k,k) log^k(a min(n,k) + 1)``."""
    if not a > 0:
        raise DomainError(f"a must be positive, got {a!r}")
    k = _check_nonneg_int("k", k)
    n = _check_nonneg_int("n", n)
    return 2.0 * binom(n + k, k) * math.log1p(a * min(n, k)) ** k


def _phi_dd(a, t, k, l):
    if l == 0:
        return DD(1.0) if k == 0 else DD(0.0)
    x = DD(*two_prod(a, float(l))) + 1.0
    lg = dd_log(x)
    out = dd_exp(lg * -t)
    for _ in range(k):
        out = out * lg
    return out


def coeff(a, t, k, n, *, rtol=1e-10, atol=1e-12, extended=False):
    """Coefficient ``c(n)`` straight from the binomial-sum definition.

    Each ``Delta^(n-l) phi(l)`` is evaluated as its own binomial sum, which
    keeps this path independent of the difference-table used by
    :func:`coeff_table`. A running condition estimate
    ``eps * sum_l C(n,l) sum_j C(n-l,j) |phi(l+j)|`` is compared with
    ``rtol * |c(n)| + atol`` and :class:`PrecisionError` is raised when
    exceeded; ``atol`` keeps coefficients that vanish exactly (such as
    ``c(1)`` at ``a = t = 1``) from tripping it. Pass ``rtol=None`` to skip
    the check.
    """
    p = EtaPoint(a, t)
    k = _check_nonneg_int("k", k)
    n = _check_nonneg_int("n", n)
    if extended:
        phi = [_phi_dd(p.a, p.t, k, l) for l in range(n + 1)]
        total = DD(0.0)
        for l in range(n + 1):
            m = n - l
            diff = DD(0.0)
            for j in range(m + 1):
                term = phi[l + j] * DD.from_int(binom(m, j))
                diff = diff + term if (m - j) % 2 == 0 else diff - term
            total = total + diff * DD.from_int(binom(n, l))
        value = float(total) if (n + k) % 2 == 0 else -float(total)
        eps = EPS_DD
        mags = [abs(float(v)) for v in phi]
    else:
        phi = [basic_discrete(p.a, p.t, k, l) for l in range(n + 1)]
        total = math.fsum(binom(n, l) * forward_difference(phi, n - l, l) for l in range(n + 1))
        value = (-1) ** (n + k) * total
        eps = EPS
        mags = [abs(v) for v in phi]
    cond = eps * sum(binom(n, l) * sum(binom(n - l, j) * mags[l + j] for j in range(n - l + 1))
                     for l in range(n + 1))
    if rtol is not None and cond > rtol * abs(value) + atol:
        raise PrecisionError(
            f"c({n}) for a={a}, t={t}, k={k}: cancellation estimate {cond:.3g} exceeds "
            f"{rtol:g} * |c| + {atol:g}; use extended=True or a smaller n"
        )
    return value


@dataclass(frozen=True)
class CoeffTable:
    """Coefficients ``c(0..N-1)`` with their analytic bounds.

    ``condition`` holds the rounding-error estimate of each coefficient.
    In extended mode ``coeffs_lo`` carries the low parts of the double-double
    coefficients (zeros otherwise).
    """

    a: float
    t: float
    k: int
    coeffs: np.ndarray
    bounds: np.ndarray
    condition: np.ndarray
    coeffs_lo: np.ndarray


def _triangle_dd(phi):
    n_pts = len(phi)
    diag = [DD(0.0)] * n_pts
    d = list(phi)
    for m in range(n_pts):
        for l in range(n_pts - m):
            diag[m + l] = diag[m + l] + d[l] * DD.from_int(binom(m + l, l))
        d = [d[i + 1] - d[i] for i in range(len(d) - 1)]
    return diag


def coeff_table(a, t, k, N, *, extended=False):
    """All coefficients ``c(0..N-1)`` from one forward-difference triangle.

    ``O(N^2)`` work and ``N`` evaluations of ``phi``.
    """
    p = EtaPoint(a, t)
    k = _check_nonneg_int("k", k)
    N = _check_nonneg_int("N", N)
    if N < 1:
        raise DomainError("N must be at least 1")
    signs = np.array([(-1.0) ** (n + k) for n in range(N)])
    bounds = np.array([coeff_bound(p.a, k, n) for n in range(N)])
    phi = np.array([basic_discrete(p.a, p.t, k, l) for l in range(N)])
    diag, cond = kernels.difference_triangle(phi, _binom_float(N))
    lo = np.zeros(N)
    if extended:
        diag_dd = _triangle_dd([_phi_dd(p.a, p.t, k, l) for l in range(N)])
        diag = np.array([d.hi for d in diag_dd])
        lo = signs * np.array([d.lo for d in diag_dd])
        cond = cond * (EPS_DD / EPS)
    return CoeffTable(p.a, p.t, k, signs * diag, bounds, EPS * cond, lo)


def truncation_bound(a, k, N):
    """Right side of the truncation inequality for ``N`` retained terms.

    The tail ``(4/3) sum_{n>=N} 3^-n C(n+k,k) log^k(a min(n,k)+1)`` is summed
    until an increment drops below 1e-3 of the running total (and ``n >= k``,
    after which the term ratio ``(n+1+k)/(3(n+1))`` only shrinks). The rest is
    bounded by the geometric series at that ratio, and the result is inflated
    by 0.2%.
    """
    if not a > 0:
        raise DomainError(f"a must be positive, got {a!r}")
    k = _check_nonneg_int("k", k)
    N = _check_nonneg_int("N", N)
    logk = [math.log1p(a * j) ** k for j in range(k + 1)]

    def term(n):
        return binom(n + k, k) * logk[min(n, k)] / 3.0 ** n

    total = 0.0
    n = N
    while True:
        inc = term(n)
        total += inc
        if n >= k and inc < _TAIL_RTOL * total:
            break
        if n >= k and inc == 0.0:
            break
        n += 1
    ratio = (n + 1 + k) / (3.0 * (n + 1))
    total += inc * ratio / (1.0 - ratio)
    return (4.0 / 3.0) * total * _TAIL_INFLATE


@dataclass(frozen=True)
class TruncationReport:
    """Truncated geometric estimate and its error budget.

    ``|value - eta^(k)(t)| <= truncation_bound + rounding_estimate``. In
    extended mode ``value + value_lo`` is the double-double result.
    """

    value: float
    truncation_bound: float
    N: int
    rounding_estimate: float = 0.0
    value_lo: float = 0.0


def eta_deriv_fast(p, k, N=30, *, extended=False):
    """``eta_a^(k)(t)`` from the first ``N`` terms of the geometric series."""
    if not isinstance(p, EtaPoint):
        raise DomainError("p must be an EtaPoint")
    k = _check_nonneg_int("k", k)
    n_max = N_MAX_EXTENDED if extended else N_MAX
    if int(N) != N or not 1 <= N <= n_max:
        raise DomainError(
            f"N must be an integer in [1, {n_max}] with {'double-double' if extended else 'binary64'} "
            f"arithmetic, got {N!r}"
        )
    N = int(N)
    table = coeff_table(p.a, p.t, k, N, extended=extended)
    weights = 3.0 ** -np.arange(N)
    rounding = (2.0 / 3.0) * float(np.sum(table.condition * weights))
    bound = truncation_bound(p.a, k, N)
    if not extended:
        value = (2.0 / 3.0) * math.fsum(table.coeffs * weights)
        return TruncationReport(value, bound, N, rounding + 2 * EPS * abs(value))
    acc = DD(0.0)
    for n in range(N - 1, -1, -1):
        acc = acc / 3.0 + DD(*quick_two_sum(float(table.coeffs[n]), float(table.coeffs_lo[n])))
    acc = acc * 2.0 / 3.0
    return TruncationReport(acc.hi, bound, N, rounding + 2 * EPS_DD * abs(acc.hi), acc.lo)

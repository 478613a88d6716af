"""Direct evaluation of the generalized Dirichlet eta family.

For ``a, t > 0``::

    eta_a(t) = sum_{m>=0} (-1)^m (am+1)^(-t)

and its t-derivatives are obtained term by term. Every series here has the
form ``sum (-1)^m P(log(am+1)) (am+1)^(-t)`` for a small polynomial ``P``, and
is summed in increasing ``m`` with compensated accumulation.

Two remainder policies are available through :class:`SeriesAccuracy`:

* ``tail=False``: the plain partial sum. The error estimate is the magnitude
  of the first omitted term, which bounds the remainder once the term
  magnitudes decrease monotonically.
* ``tail=True`` (default): the same partial sum plus the Euler transform of
  the alternating tail, built from a few terms past the cut. For ``k = 0`` the
  terms ``(am+1)^(-t)`` are a Hausdorff moment sequence and the transformed
  tail converges at rate 1/2 with remainder at most twice the next term; the
  same estimate is used for the log-weighted derivative series, whose cut is
  always placed past the peak of the term magnitudes.

In both modes ``error_estimate`` covers truncation only and decides
convergence. Floating-point rounding is reported separately as
``rounding_estimate``: each term carries a first-order relative error of
about ``(deg P + 2 + t log(am+1)) eps``, and these are combined as
independent errors (root of the sum of squares, doubled) together with the
rounding of the Euler difference table.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DomainError

EPS = float(np.finfo(np.float64).eps)
_EULER_TERMS = 20
_TAIL_START = 128


@dataclass(frozen=True)
class EtaPoint:
    """A validated parameter pair ``(a, t)`` with ``a > 0`` and ``t > 0``."""

    a: float
    t: float

    def __post_init__(self):
        for name in ("a", "t"):
            raw = getattr(self, name)
            try:
                val = float(raw)
            except (TypeError, ValueError):
                raise DomainError(f"{name} must be a real number, got {raw!r}") from None
            if not (math.isfinite(val) and val > 0.0):
                raise DomainError(f"{name} must be positive and finite, got {raw!r}")
            object.__setattr__(self, name, val)


@dataclass(frozen=True)
class SeriesAccuracy:
    max_terms: int = 100_000
    tol: float = 1e-15
    tail: bool = True

    def __post_init__(self):
        if int(self.max_terms) != self.max_terms or self.max_terms < 1:
            raise DomainError(f"max_terms must be a positive integer, got {self.max_terms!r}")
        if not (self.tol > 0.0):
            raise DomainError(f"tol must be positive, got {self.tol!r}")
        object.__setattr__(self, "max_terms", int(self.max_terms))


@dataclass(frozen=True)
class SeriesResult:
    """Value of a direct series with its remainder estimate.

    ``error_estimate`` bounds the truncation error; ``rounding_estimate`` is
    the expected size of the accumulated floating-point error. ``abs_sum`` is
    the sum of the absolute values of the summed terms; it sets the scale
    against which the value can be told apart from zero.
    """

    value: float
    error_estimate: float
    terms_used: int
    converged: bool
    abs_sum: float = 0.0
    rounding_estimate: float = 0.0

    @property
    def total_error(self):
        return self.error_estimate + self.rounding_estimate


def logistic(a, x, order=0):
    """Scaled logistic ``f_a(x) = 1/(1+exp(-ax))`` or its first two derivatives.

    Uses ``f' = a f (1-f)`` and ``f'' = a^2 f (1-f)(1-2f)``. Accepts scalars or
    arrays for ``x``; scalars come back as ``float``.
    """
    if not (a > 0):
        raise DomainError(f"a must be positive, got {a!r}")
    if order not in (0, 1, 2):
        raise DomainError(f"order must be 0, 1 or 2, got {order!r}")
    xs = np.asarray(x, dtype=np.float64)
    if np.any(xs < 0) or np.any(np.isnan(xs)):
        raise DomainError("x must be nonnegative")
    e = np.exp(-a * xs)
    f = 1.0 / (1.0 + e)
    if order == 0:
        out = f
    else:
        # 1 - f computed as e/(1+e) avoids cancellation for large x
        g = e / (1.0 + e)
        out = a * f * g if order == 1 else a * a * f * g * (g - f)
    return float(out) if np.ndim(out) == 0 else out


def basic_discrete(a, t, k, l):
    """``log^k(al+1) / (al+1)^t``; equals 1 at ``l = 0`` when ``k = 0``, else 0."""
    if not (a > 0 and t > 0):
        raise DomainError("a and t must be positive")
    if k < 0 or l < 0:
        raise DomainError("k and l must be nonnegative")
    lg = math.log1p(a * l)
    return lg ** k * math.exp(-t * lg)


def derivative_poly(k):
    """Coefficients (lowest first) of ``(-L)^k``, the k-th derivative weight."""
    if k < 0:
        raise DomainError(f"derivative order must be nonnegative, got {k!r}")
    return np.array([0.0] * k + [(-1.0) ** k])


def _eval_poly(poly, lg):
    p = np.zeros_like(lg)
    for c in poly[::-1]:
        p = p * lg + c
    return p


def _unsigned_terms(a, t, poly, m0, count):
    """``P(log(am+1)) (am+1)^(-t)`` for ``m = m0 .. m0+count-1`` (no alternation)."""
    lg = np.log1p(a * np.arange(m0, m0 + count, dtype=np.float64))
    return _eval_poly(poly, lg) * np.exp(-t * lg)


def peak_index(a, t, poly):
    """Index past which ``|P(log(am+1))| (am+1)^(-t)`` decreases monotonically.

    With ``L = log(am+1)`` the magnitude is ``|P(L)| e^(-tL)``; its derivative
    in ``L`` vanishes at roots of ``P' - tP``. Past the largest real root of
    that polynomial and of ``P`` itself the magnitude can only decrease.
    For ``P = (-L)^k`` this is ``ceil((e^(k/t) - 1)/a)``.
    """
    poly = np.trim_zeros(np.asarray(poly, dtype=np.float64), "b")
    if poly.size <= 1:
        return 0
    deriv = np.polynomial.polynomial.polyder(poly)
    crit = np.polynomial.polynomial.polysub(deriv, t * poly)
    roots = np.concatenate([np.polynomial.polynomial.polyroots(crit),
                            np.polynomial.polynomial.polyroots(poly)])
    real = roots[np.abs(roots.imag) <= 1e-9 * np.maximum(1.0, np.abs(roots.real))].real
    l_star = max(0.0, float(real.max())) if real.size else 0.0
    if l_star > 700.0:
        return math.inf
    return math.ceil(math.expm1(l_star) / a)


def _euler_tail(a, t, poly, first):
    """Euler-transformed tail ``sum_{m>=first} (-1)^m u(m)``.

    Returns ``(tail, truncation, scale)`` where ``truncation`` bounds the
    neglected part of the transformed series and ``scale`` is the largest
    sampled term (rounding in the differences acts on it).
    """
    u = _unsigned_terms(a, t, poly, first, _EULER_TERMS + 1)
    acc = 0.0
    diff = u
    last = 0.0
    for j in range(_EULER_TERMS + 1):
        term = (-1.0) ** j * diff[0] / 2.0 ** (j + 1)
        if j == _EULER_TERMS:
            last = term
            break
        acc += term
        diff = np.diff(diff)
    sign = -1.0 if first & 1 else 1.0
    return sign * acc, 2.0 * abs(last), float(np.abs(u).max())


def alternating_log_series(a, t, poly, acc=None):
    """Sum ``sum_m (-1)^m P(log(am+1)) (am+1)^(-t)`` under ``acc``'s policy."""
    acc = acc or SeriesAccuracy()
    poly = np.asarray(poly, dtype=np.float64)
    if acc.tail:
        return _sum_with_tail(a, t, poly, acc)
    return _sum_plain(a, t, poly, acc)


def _sum_plain(a, t, poly, acc):
    m_star = peak_index(a, t, poly)

    def omitted(idx):
        return abs(float(_unsigned_terms(a, t, poly, idx, 1)[0]))

    cap = acc.max_terms
    # first omitted index j = M + 1 must sit past the peak, with |term_j| <= tol
    lo = int(min(max(m_star + 1, 1), cap)) if m_star != math.inf else cap
    if m_star != math.inf and m_star < cap and omitted(lo) <= acc.tol:
        j = lo
    elif m_star == math.inf or m_star >= cap or omitted(cap) > acc.tol:
        j = cap
    else:
        hi = cap
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if omitted(mid) <= acc.tol:
                hi = mid
            else:
                lo = mid
        j = hi
    s, comp, abs_sum, sq_sum = kernels.alt_sum(a, t, poly, 0, j)
    value = s + comp
    err = omitted(j)
    converged = err <= acc.tol and j > m_star
    rounding = 2.0 * EPS * math.sqrt(sq_sum) + EPS * abs(value)
    return SeriesResult(float(value), err, j, bool(converged), abs_sum, float(rounding))


def _sum_with_tail(a, t, poly, acc):
    cap = acc.max_terms
    m_star = peak_index(a, t, poly)
    stop = cap if m_star >= cap else min(max(_TAIL_START, m_star + 1), cap)
    s = comp = abs_sum = sq_sum = 0.0
    done = 0
    while True:
        s, comp, abs_sum, sq_sum = kernels.alt_sum(a, t, poly, done, stop, s, comp, abs_sum, sq_sum)
        done = stop
        partial = s + comp
        tail, trunc, scale = _euler_tail(a, t, poly, done)
        value = partial + tail
        if trunc <= acc.tol or done >= cap:
            break
        stop = min(4 * done, cap)
    rounding = (2.0 * EPS * math.sqrt(sq_sum) + EPS * abs(value)
                + EPS * scale * math.sqrt(_EULER_TERMS))
    converged = trunc <= acc.tol and done > m_star
    return SeriesResult(float(value), float(trunc), done + _EULER_TERMS + 1, bool(converged),
                        float(abs_sum + abs(tail)), float(rounding))


def eta_direct(p, acc=None):
    """``eta_a(t)`` by the direct alternating series."""
    return eta_deriv_direct(p, 0, acc)


def eta_deriv_direct(p, k, acc=None):
    """k-th t-derivative ``sum (-1)^m (-log(am+1))^k (am+1)^(-t)``."""
    if not isinstance(p, EtaPoint):
        raise DomainError("p must be an EtaPoint")
    if int(k) != k or k < 0:
        raise DomainError(f"k must be a nonnegative integer, got {k!r}")
    return alternating_log_series(p.a, p.t, derivative_poly(int(k)), acc)

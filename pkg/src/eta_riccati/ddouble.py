"""Double-double arithmetic: unevaluated sums ``hi + lo`` of two binary64 values.

Gives roughly 32 significant digits using only float operations (Dekker,
Knuth, and the QD library's algorithms). Only what the finite-difference
backend needs is provided: the four operations, ``exp`` and ``log``.
"""

import math
from typing import NamedTuple

_SPLITTER = 134217729.0  # 2^27 + 1
EPS_DD = 2.0 ** -104


def two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def quick_two_sum(a, b):
    """``two_sum`` assuming ``|a| >= |b|``."""
    s = a + b
    return s, b - (s - a)


def _split(a):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def two_prod(a, b):
    p = a * b
    ahi, alo = _split(a)
    bhi, blo = _split(b)
    return p, ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo


class DD(NamedTuple):
    hi: float
    lo: float = 0.0

    @classmethod
    def from_int(cls, n):
        """Round an arbitrary-size integer to double-double."""
        hi = float(n)
        return cls(*quick_two_sum(hi, float(n - int(hi))))

    def __float__(self):
        return self.hi + self.lo

    def __neg__(self):
        return DD(-self.hi, -self.lo)

    def __abs__(self):
        return -self if self.hi < 0 else self

    def __add__(self, other):
        if not isinstance(other, DD):
            s, e = two_sum(self.hi, float(other))
            return DD(*quick_two_sum(s, e + self.lo))
        s, e = two_sum(self.hi, other.hi)
        t, f = two_sum(self.lo, other.lo)
        e += t
        s, e = quick_two_sum(s, e)
        e += f
        return DD(*quick_two_sum(s, e))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, DD):
            p, e = two_prod(self.hi, float(other))
            return DD(*quick_two_sum(p, e + self.lo * float(other)))
        p, e = two_prod(self.hi, other.hi)
        e += self.hi * other.lo + self.lo * other.hi
        return DD(*quick_two_sum(p, e))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, DD):
            other = DD(float(other))
        q1 = self.hi / other.hi
        r = self - other * q1
        q2 = r.hi / other.hi
        r = r - other * q2
        q3 = r.hi / other.hi
        return DD(*quick_two_sum(q1, q2)) + q3

    def ldexp(self, e):
        return DD(math.ldexp(self.hi, e), math.ldexp(self.lo, e))


LN2 = DD(0.6931471805599453, 2.3190468138462996e-17)
ONE = DD(1.0)
ZERO = DD(0.0)

_EXP_SQUARINGS = 10


def dd_exp(x):
    if x.hi > 709.0:
        raise OverflowError("dd_exp overflow")
    if x.hi < -745.0:
        return ZERO
    k = round(x.hi / LN2.hi)
    r = (x - LN2 * float(k)).ldexp(-_EXP_SQUARINGS)
    # expm1 of the reduced argument, |r| < 3.4e-4, by Taylor series
    s = r
    p = r
    i = 2
    while True:
        p = p * r / float(i)
        s = s + p
        if abs(p.hi) < 1e-36:
            break
        i += 1
    for _ in range(_EXP_SQUARINGS):
        s = s * 2.0 + s * s
    return (s + 1.0).ldexp(k)


def dd_log(x):
    """Natural log of a positive double-double (one Newton step on ``exp``)."""
    if x.hi <= 0.0:
        raise ValueError("dd_log of a nonpositive number")
    # strip the binary exponent so exp(-y) stays far from the subnormal range
    _, e = math.frexp(x.hi)
    m = x.ldexp(-e)
    y = DD(math.log(m.hi))
    return y + m * dd_exp(-y) - 1.0 + LN2 * float(e)

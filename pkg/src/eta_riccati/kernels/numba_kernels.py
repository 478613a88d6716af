"""numba-compiled versions of the hot kernels.

Signatures and semantics match :mod:`.numpy_kernels`; the summation kernel
uses Neumaier compensation instead of ``math.fsum``.
"""

import math

import numba
import numpy as np


@numba.njit(cache=True, nogil=True)
def _alt_sum(a, t, poly, m0, m1, s, comp, abs_sum, sq_sum):
    n_poly = poly.shape[0]
    for m in range(m0, m1):
        lg = math.log1p(a * m)
        p = 0.0
        for i in range(n_poly - 1, -1, -1):
            p = p * lg + poly[i]
        term = p * math.exp(-t * lg)
        if m & 1:
            term = -term
        abs_sum += abs(term)
        w = (n_poly + 1.0 + t * lg) * term
        sq_sum += w * w
        tot = s + term
        if abs(s) >= abs(term):
            comp += (s - tot) + term
        else:
            comp += (term - tot) + s
        s = tot
    return s, comp, abs_sum, sq_sum


def alt_sum(a, t, poly, m0, m1, s=0.0, comp=0.0, abs_sum=0.0, sq_sum=0.0):
    return _alt_sum(float(a), float(t), np.asarray(poly, dtype=np.float64),
                    int(m0), int(m1), float(s), float(comp), float(abs_sum), float(sq_sum))


@numba.njit(cache=True, nogil=True)
def difference_triangle(phi, binom):
    n_pts = phi.shape[0]
    diag = np.zeros(n_pts)
    cond = np.zeros(n_pts)
    d = phi.copy()
    mag = np.abs(phi)
    for m in range(n_pts):
        for l in range(n_pts - m):
            w = binom[m + l, l]
            diag[m + l] += w * d[l]
            cond[m + l] += w * mag[l]
        # in-place forward difference; the last slot falls off the triangle
        for l in range(n_pts - m - 1):
            d[l] = d[l + 1] - d[l]
            mag[l] = mag[l + 1] + mag[l]
    return diag, cond


@numba.njit(cache=True, nogil=True)
def _marsaglia_tsang(d, c, rng):
    while True:
        x = rng.standard_normal()
        base = 1.0 + c * x
        if base <= 0.0:
            continue
        v = base * base * base
        u = rng.random()
        if u < 1.0 - 0.0331 * x ** 4:
            return d * v
        if math.log(u) < 0.5 * x * x + d * (1.0 - v + math.log(v)):
            return d * v


@numba.njit(cache=True, nogil=True)
def gamma_draws(shape, n, rng):
    boost = shape < 1.0
    alpha = shape + 1.0 if boost else shape
    d = alpha - 1.0 / 3.0
    c = 1.0 / math.sqrt(9.0 * d)
    out = np.empty(n)
    for i in range(n):
        out[i] = _marsaglia_tsang(d, c, rng)
    if boost:
        inv = 1.0 / shape
        for i in range(n):
            out[i] *= (1.0 - rng.random()) ** inv
    return out

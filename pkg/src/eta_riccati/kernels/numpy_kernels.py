"""Pure-numpy reference versions of the hot kernels."""

import math

import numpy as np

_CHUNK = 1 << 16


def alt_sum(a, t, poly, m0, m1, s=0.0, comp=0.0, abs_sum=0.0, sq_sum=0.0):
    """Sum ``(-1)^m P(log(am+1)) (am+1)^(-t)`` for ``m0 <= m < m1``.

    ``poly`` holds the coefficients of ``P`` lowest order first. The running
    state ``(s, comp, abs_sum, sq_sum)`` is threaded through so a long range
    can be summed in pieces; the returned sum is ``s + comp``. ``sq_sum``
    accumulates ``((deg P + 2 + t L) * term)^2``, the squared first-order
    rounding bound of each term in units of eps. The numpy path uses
    ``math.fsum`` per chunk, so ``comp`` always comes back as zero.
    """
    poly = np.asarray(poly, dtype=np.float64)
    parts = [s, comp]
    for lo in range(m0, m1, _CHUNK):
        m = np.arange(lo, min(lo + _CHUNK, m1), dtype=np.float64)
        lg = np.log1p(a * m)
        p = np.zeros_like(lg)
        for c in poly[::-1]:
            p = p * lg + c
        terms = p * np.exp(-t * lg)
        terms[(np.arange(lo, lo + m.size) & 1) == 1] *= -1.0
        abs_sum += float(np.abs(terms).sum())
        w = (poly.size + 1.0 + t * lg) * terms
        sq_sum += float(np.dot(w, w))
        parts.append(math.fsum(terms))
    return math.fsum(parts), 0.0, abs_sum, sq_sum


def difference_triangle(phi, binom):
    """Diagonal sums ``sum_l C(n,l) Delta^(n-l) phi(l)`` for ``n < len(phi)``.

    Returns ``(diag, cond)`` where ``cond[n]`` is the same weighted sum taken
    over absolute values, i.e. the magnitude that rounding acts on.
    """
    phi = np.asarray(phi, dtype=np.float64)
    n_pts = phi.size
    diag = np.zeros(n_pts)
    cond = np.zeros(n_pts)
    d = phi.copy()
    mag = np.abs(phi)
    for m in range(n_pts):
        l_idx = np.arange(n_pts - m)
        n_idx = m + l_idx
        w = binom[n_idx, l_idx]
        diag[n_idx] += w * d
        cond[n_idx] += w * mag
        d = d[1:] - d[:-1]
        mag = mag[1:] + mag[:-1]
    return diag, cond


def gamma_draws(shape, n, rng):
    """Draw ``n`` Gamma(shape, 1) variates (Marsaglia-Tsang, vectorized)."""
    boost = shape < 1.0
    alpha = shape + 1.0 if boost else shape
    d = alpha - 1.0 / 3.0
    c = 1.0 / math.sqrt(9.0 * d)
    out = np.empty(n)
    filled = 0
    while filled < n:
        need = n - filled
        batch = need + need // 16 + 16
        x = rng.standard_normal(batch)
        u = rng.random(batch)
        base = 1.0 + c * x
        v = base ** 3
        with np.errstate(divide="ignore", invalid="ignore"):
            squeeze = u < 1.0 - 0.0331 * x ** 4
            full = np.log(u) < 0.5 * x * x + d * (1.0 - v + np.log(v))
        accept = (base > 0.0) & (squeeze | full)
        take = (d * v[accept])[:need]
        out[filled:filled + take.size] = take
        filled += take.size
    if boost:
        # 1 - U lies in (0, 1], so a boosted draw is never exactly zero
        out *= (1.0 - rng.random(n)) ** (1.0 / shape)
    return out

"""Hot numeric kernels with a numba backend and a pure-numpy fallback.

The backend is chosen once at import time. Set ``ETA_RICCATI_DISABLE_NUMBA=1``
to force the numpy path (useful when numba is unavailable or for debugging);
both backends are always importable directly as
:mod:`eta_riccati.kernels.numpy_kernels` and, when numba is installed,
:mod:`eta_riccati.kernels.numba_kernels`.

Kernels
-------
alt_sum(a, t, poly, m0, m1, s, comp, abs_sum, sq_sum)
    Compensated sum of ``(-1)^m P(log(am+1)) (am+1)^(-t)`` over ``m0 <= m < m1``,
    with the absolute sum and a squared per-term rounding bound.
difference_triangle(phi, binom)
    Binomially weighted diagonal sums of the forward-difference triangle.
gamma_draws(shape, n, rng)
    Gamma(shape, 1) variates by Marsaglia-Tsang with the shape-boost trick.
"""

import importlib
import os

import numpy as np

from . import numpy_kernels

DISABLE_ENV = "ETA_RICCATI_DISABLE_NUMBA"


def _disabled_by_env():
    return os.environ.get(DISABLE_ENV, "").strip().lower() in {"1", "true", "yes", "on"}


def _load_numba():
    if _disabled_by_env():
        return None
    try:
        return importlib.import_module(f"{__name__}.numba_kernels")
    except ImportError:  # numba missing or broken
        return None


numba_kernels = _load_numba()

_active = numba_kernels if numba_kernels is not None else numpy_kernels
BACKEND = "numba" if _active is numba_kernels else "numpy"

alt_sum = _active.alt_sum
difference_triangle = _active.difference_triangle
gamma_draws = _active.gamma_draws


def warmup():
    """Run every kernel once on tiny inputs so JIT compilation happens now."""
    alt_sum(1.0, 1.0, np.array([1.0]), 0, 2)
    difference_triangle(np.ones(2), np.ones((2, 2)))
    gamma_draws(0.5, 2, np.random.default_rng(0))
    gamma_draws(2.0, 2, np.random.default_rng(0))

__all__ = [
    "BACKEND",
    "DISABLE_ENV",
    "alt_sum",
    "difference_triangle",
    "gamma_draws",
    "numba_kernels",
    "numpy_kernels",
    "warmup",
]

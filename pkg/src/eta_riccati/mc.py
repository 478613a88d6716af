"""Monte Carlo checks of the probabilistic representation of eta_a.

With ``X_t ~ Gamma(t, 1)`` and ``S_k = U_1 T_1 + ... + U_k T_k`` (independent
uniforms ``U_j`` and unit exponentials ``T_j``)::

    eta_a(t)      = E[f_a(X_t)]
    eta_a^(k)(t)  = E[f_a^(k)(X_t + S_k)]
    E[exp(-lam S_k)] = (log(1 + lam) / lam)^k

where ``f_a`` is the scaled logistic. Every estimate is built from fixed-size
chunks, each with its own generator spawned from the seed, so the result does
not depend on how many threads did the work.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DomainError, UnsupportedOrderError
from .riccati import parallel_map
from .series import EtaPoint, eta_deriv_direct, logistic

CHUNK = 1 << 17
MAX_ORDER = 2
Z_BAND = 4.0


@dataclass(frozen=True)
class McConfig:
    samples: int = 10 ** 6
    seed: int = 0

    def __post_init__(self):
        if int(self.samples) != self.samples or self.samples < 100:
            raise DomainError(f"samples must be an integer >= 100, got {self.samples!r}")
        if int(self.seed) != self.seed or not 0 <= self.seed < 2 ** 64:
            raise DomainError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        object.__setattr__(self, "samples", int(self.samples))
        object.__setattr__(self, "seed", int(self.seed))


@dataclass(frozen=True)
class McEstimate:
    """Sample mean with ``stderr = sd / sqrt(samples)`` (``sd`` with ddof=1)."""

    mean: float
    stderr: float
    samples: int

    @property
    def variance(self):
        return self.stderr ** 2 * self.samples

    @classmethod
    def from_draws(cls, x):
        x = np.asarray(x, dtype=np.float64)
        n = x.size
        if n < 2:
            raise DomainError("need at least two draws")
        return cls(float(x.mean()), float(x.std(ddof=1) / math.sqrt(n)), n)

    def merge(self, other):
        """Pooled estimate of two disjoint samples (Chan et al. update)."""
        n1, n2 = self.samples, other.samples
        n = n1 + n2
        delta = other.mean - self.mean
        mean = self.mean + delta * n2 / n
        m2 = (self.variance * (n1 - 1) + other.variance * (n2 - 1)
              + delta * delta * n1 * n2 / n)
        return McEstimate(mean, math.sqrt(m2 / (n - 1) / n), n)

    def zscore(self, target):
        if self.stderr == 0.0:
            return 0.0 if self.mean == target else math.inf
        return abs(self.mean - target) / self.stderr


def pooled(estimates):
    estimates = list(estimates)
    out = estimates[0]
    for e in estimates[1:]:
        out = out.merge(e)
    return out


def chunk_generators(cfg):
    """One independent generator per chunk of ``CHUNK`` samples, with sizes."""
    sizes = [CHUNK] * (cfg.samples // CHUNK)
    if cfg.samples % CHUNK:
        sizes.append(cfg.samples % CHUNK)
    if len(sizes) > 1 and sizes[-1] < 2:
        tail = sizes.pop()
        sizes[-1] += tail
    seeds = np.random.SeedSequence(cfg.seed).spawn(len(sizes))
    return [(np.random.Generator(np.random.PCG64(s)), n) for s, n in zip(seeds, sizes)]


def estimate(draw, cfg):
    """Pooled mean of ``draw(rng, n)`` over the chunk streams of ``cfg``."""
    parts = parallel_map(lambda job: McEstimate.from_draws(draw(*job)), chunk_generators(cfg))
    return pooled(parts)


def _check_shape(t):
    if not (t > 0 and math.isfinite(t)):
        raise DomainError(f"shape t must be positive and finite, got {t!r}")
    return float(t)


def _check_order(k):
    if int(k) != k or k < 0:
        raise DomainError(f"k must be a nonnegative integer, got {k!r}")
    return int(k)


def draw_gamma(t, n, rng):
    """``n`` draws from Gamma(shape t, rate 1)."""
    return kernels.gamma_draws(_check_shape(t), int(n), rng)


def draw_Sk(k, n, rng):
    """``n`` draws of ``S_k``; exactly zero for ``k = 0``."""
    k = _check_order(k)
    if k == 0:
        return np.zeros(n)
    return (rng.random((k, n)) * rng.standard_exponential((k, n))).sum(axis=0)


def sample_gamma(t, rng):
    return float(draw_gamma(t, 1, rng)[0])


def sample_Sk(k, rng):
    return float(draw_Sk(k, 1, rng)[0])


def mc_eta(p, cfg=None):
    """Estimate ``eta_a(t) = E[f_a(X_t)]``."""
    return mc_eta_deriv(p, 0, cfg)


def mc_eta_deriv(p, k, cfg=None):
    """Estimate ``eta_a^(k)(t) = E[f_a^(k)(X_t + S_k)]`` for ``k <= 2``."""
    if not isinstance(p, EtaPoint):
        raise DomainError("p must be an EtaPoint")
    k = _check_order(k)
    if k > MAX_ORDER:
        raise UnsupportedOrderError(
            f"logistic derivatives are implemented up to order {MAX_ORDER}, got k={k}")
    cfg = cfg or McConfig()

    def draw(rng, n):
        x = draw_gamma(p.t, n, rng) + draw_Sk(k, n, rng)
        return logistic(p.a, x, k)

    return estimate(draw, cfg)


def laplace_Sk_target(k, lam):
    k = _check_order(k)
    if not lam > 0:
        raise DomainError(f"lambda must be positive, got {lam!r}")
    return (math.log1p(lam) / lam) ** k


def mc_laplace_Sk(k, lam, cfg=None):
    """Estimate ``E[exp(-lam S_k)]``."""
    laplace_Sk_target(k, lam)
    cfg = cfg or McConfig()
    return estimate(lambda rng, n: np.exp(-lam * draw_Sk(k, n, rng)), cfg)


@dataclass(frozen=True)
class McCheck:
    name: str
    estimate: McEstimate
    target: float

    @property
    def zscore(self):
        return self.estimate.zscore(self.target)

    @property
    def passed(self):
        return self.zscore <= Z_BAND


LAPLACE_GRID = tuple((k, lam) for k in (1, 2, 3) for lam in (0.5, 1.0, 2.0))


def validate_suite(cfg=None):
    """Every Monte Carlo identity against its analytic or series target."""
    cfg = cfg or McConfig()
    checks = []
    for a, t, k in ((1.0, 1.0, 0), (2.0, 2.0, 0), (1.0, 0.5, 0), (1.0, 1.0, 1), (2.0, 2.0, 2)):
        p = EtaPoint(a, t)
        target = eta_deriv_direct(p, k).value
        name = f"eta(a={a:g}, t={t:g})" if k == 0 else f"eta^({k})(a={a:g}, t={t:g})"
        checks.append(McCheck(name, mc_eta_deriv(p, k, cfg), target))
    for k, lam in LAPLACE_GRID:
        checks.append(McCheck(f"E[exp(-{lam:g} S_{k})]", mc_laplace_Sk(k, lam, cfg),
                              laplace_Sk_target(k, lam)))
    return checks


__all__ = [
    "CHUNK",
    "McCheck",
    "McConfig",
    "McEstimate",
    "draw_Sk",
    "draw_gamma",
    "estimate",
    "laplace_Sk_target",
    "mc_eta",
    "mc_eta_deriv",
    "mc_laplace_Sk",
    "pooled",
    "sample_Sk",
    "sample_gamma",
    "validate_suite",
]

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eta_riccati import mc
from eta_riccati.errors import DomainError, UnsupportedOrderError
from eta_riccati.mc import (
    McConfig,
    McEstimate,
    draw_gamma,
    draw_Sk,
    laplace_Sk_target,
    mc_eta,
    mc_eta_deriv,
    mc_laplace_Sk,
    pooled,
    sample_gamma,
    sample_Sk,
    validate_suite,
)
from eta_riccati.series import EtaPoint

from _oracle import CATALAN, ETA_DERIV

SMALL = McConfig(samples=200_000, seed=7)


@pytest.mark.parametrize("kw", [{"samples": 99}, {"samples": 1e3 + 0.5}, {"seed": -1}, {"seed": 2 ** 64}])
def test_config_rejects(kw):
    with pytest.raises(DomainError):
        McConfig(**kw)


def test_config_defaults():
    cfg = McConfig()
    assert cfg.samples == 10 ** 6 and cfg.seed == 0


# --- samplers ---

@pytest.mark.parametrize("t", [1.0, 2.5, 0.3, 7.0])
def test_gamma_moments(t):
    n = 400_000
    x = draw_gamma(t, n, np.random.default_rng(1))
    assert x.min() >= 0.0
    # mean and variance are both t; the central fourth moment 3t^2 + 6t
    # sets the spread of the sample variance
    assert abs(x.mean() - t) <= 4.0 * math.sqrt(t / n)
    se_var = math.sqrt((2 * t * t + 6 * t) / n)
    assert abs(x.var(ddof=1) - t) <= 4.0 * se_var


def test_gamma_rejects_bad_shape():
    rng = np.random.default_rng(0)
    for t in (0.0, -1.0, math.inf, math.nan):
        with pytest.raises(DomainError):
            draw_gamma(t, 10, rng)


def test_scalar_samplers():
    rng = np.random.default_rng(3)
    assert sample_gamma(2.0, rng) > 0.0
    assert sample_Sk(0, rng) == 0.0
    assert sample_Sk(3, rng) >= 0.0


def test_S0_is_zero():
    assert not draw_Sk(0, 50, np.random.default_rng(0)).any()


def test_Sk_mean():
    # E[U T] = 1/2 per summand
    x = draw_Sk(3, 400_000, np.random.default_rng(5))
    assert abs(x.mean() - 1.5) <= 4.0 * x.std() / math.sqrt(x.size)


@pytest.mark.parametrize("k,lam", [(1, 1.0), (2, 0.5), (3, 2.0)])
def test_laplace_transform_of_Sk(k, lam):
    est = mc_laplace_Sk(k, lam, SMALL)
    assert est.zscore(laplace_Sk_target(k, lam)) <= 4.0


def test_laplace_target_values():
    assert laplace_Sk_target(0, 3.0) == 1.0
    assert laplace_Sk_target(1, 1.0) == pytest.approx(math.log(2))
    with pytest.raises(DomainError):
        laplace_Sk_target(1, 0.0)


# --- estimators ---

def test_mc_eta_examples():
    assert mc_eta(EtaPoint(1, 1), SMALL).zscore(math.log(2)) <= 4.0
    assert mc_eta(EtaPoint(2, 2), SMALL).zscore(CATALAN) <= 4.0


@pytest.mark.parametrize("a,t,k", [(1, 1, 1), (2, 2, 2), (10, 0.5, 1), (0.5, 4, 2)])
def test_mc_derivatives(a, t, k):
    est = mc_eta_deriv(EtaPoint(a, t), k, SMALL)
    assert est.zscore(ETA_DERIV[a, t, k]) <= 4.0


def test_unsupported_order():
    with pytest.raises(UnsupportedOrderError):
        mc_eta_deriv(EtaPoint(1, 1), 3, SMALL)
    with pytest.raises(DomainError):
        mc_eta_deriv((1, 1), 0, SMALL)


def test_reproducible_for_fixed_seed():
    cfg = McConfig(samples=50_000, seed=123)
    assert mc_eta(EtaPoint(1, 1), cfg) == mc_eta(EtaPoint(1, 1), cfg)
    assert mc_eta(EtaPoint(1, 1), cfg) != mc_eta(EtaPoint(1, 1), McConfig(50_000, 124))


def test_independent_of_thread_count(threads):
    cfg = McConfig(samples=3 * mc.CHUNK + 17, seed=9)
    threads(1)
    one = mc_eta_deriv(EtaPoint(2, 1), 1, cfg)
    threads(3)
    assert mc_eta_deriv(EtaPoint(2, 1), 1, cfg) == one
    assert one.samples == cfg.samples


def test_chunking_keeps_every_sample():
    for n in (100, mc.CHUNK, mc.CHUNK + 1, 5 * mc.CHUNK - 3):
        sizes = [m for _, m in mc.chunk_generators(McConfig(n))]
        assert sum(sizes) == n and min(sizes) >= 2


def test_coverage_over_seeds():
    # a 2-stderr interval should cover the truth about 95% of the time
    hits = sum(mc_eta(EtaPoint(1, 1), McConfig(4000, seed)).zscore(math.log(2)) <= 2.0
               for seed in range(200))
    assert 0.88 <= hits / 200 <= 0.995


# --- pooled estimates ---

@settings(max_examples=30, deadline=None)
@given(st.lists(st.floats(-1e3, 1e3), min_size=2, max_size=40),
       st.lists(st.floats(-1e3, 1e3), min_size=2, max_size=40))
def test_merge_equals_concatenation(x, y):
    merged = McEstimate.from_draws(x).merge(McEstimate.from_draws(y))
    whole = McEstimate.from_draws(x + y)
    assert merged.samples == whole.samples
    assert merged.mean == pytest.approx(whole.mean, rel=1e-9, abs=1e-9)
    assert merged.stderr == pytest.approx(whole.stderr, rel=1e-7, abs=1e-9)


def test_pooled_and_zscore():
    parts = [McEstimate.from_draws([1.0, 2.0, 3.0]), McEstimate.from_draws([4.0, 5.0])]
    p = pooled(parts)
    assert p.mean == 3.0 and p.samples == 5
    assert p.stderr == pytest.approx(np.std([1, 2, 3, 4, 5], ddof=1) / math.sqrt(5))
    assert McEstimate(1.0, 0.0, 10).zscore(1.0) == 0.0
    assert McEstimate(1.0, 0.0, 10).zscore(2.0) == math.inf
    with pytest.raises(DomainError):
        McEstimate.from_draws([1.0])


def test_validate_suite_small():
    checks = validate_suite(McConfig(samples=100_000, seed=2))
    assert len(checks) == 14
    assert all(c.passed for c in checks), [(c.name, c.zscore) for c in checks if not c.passed]


@pytest.mark.parametrize("a,t", [(1.0, 0.3), (2.0, 2.0), (11.0, 0.05)])
def test_every_draw_within_logistic_bounds(a, t):
    from eta_riccati.series import logistic
    x = draw_gamma(t, 100_000, np.random.default_rng(5))
    x = x[x > 0.0]
    f = logistic(a, x, 0)
    assert np.all((f >= 0.5) & (f <= 1.0))
    # strict wherever binary64 can tell f apart from its limits
    ax = a * x
    assert np.all(f[ax > 2.0 ** -50] > 0.5)
    assert np.all(f[ax < 36.0] < 1.0)
    assert (ax < 36.0).sum() > 1000

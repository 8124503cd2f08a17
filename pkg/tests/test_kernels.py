import math

import numpy as np
import pytest

from npimcmc import (
    EntropyPair,
    EntropyVector,
    PreconditionViolation,
    RejectionBudgetExceeded,
    RngBundle,
    entropy_partitioned_kernels,
    entropy_rw_kernel,
    extended_kernel_log_pdf,
    gaussian_iid_kernel,
    gaussian_log_density,
    gaussian_rw_kernel,
    partitioned_persistent_kernels,
)

LOG_HALF = math.log(0.5)


def test_iid_kernel_log_pdf_independent_of_x():
    k = gaussian_iid_kernel()
    v = np.array([0.5, -1.0])
    assert k.log_pdf(np.zeros(2), v) == k.log_pdf(np.ones(2), v)
    assert k.log_pdf(np.zeros(2), v) == pytest.approx(gaussian_log_density(v))


def test_rw_kernel_centred_at_x():
    k = gaussian_rw_kernel()
    x = np.array([1.0, 2.0])
    assert k.log_pdf(x, x) == pytest.approx(gaussian_log_density(np.zeros(2)))
    rng = RngBundle(0)
    draws = np.array([k.sample(rng, x) for _ in range(4000)])
    assert np.allclose(draws.mean(axis=0), x, atol=0.1)
    assert np.allclose(draws.std(axis=0), 1.0, atol=0.1)


def test_partitioned_kernels_default_eta():
    kp, km = partitioned_persistent_kernels()
    x = np.array([0.5, -0.5])
    up = np.array([1.0, 1.0])     # sum above sum(x) = 0
    down = np.array([-1.0, -1.0])
    # in-halfspace density is N(x, I) renormalized by exactly 1/2
    assert kp.log_pdf(x, up) == pytest.approx(gaussian_log_density(up - x) - LOG_HALF)
    assert kp.log_pdf(x, down) == float("-inf")
    assert km.log_pdf(x, down) == pytest.approx(gaussian_log_density(down - x) - LOG_HALF)
    assert km.log_pdf(x, up) == float("-inf")


def test_partitioned_sampling_respects_halfspace():
    kp, km = partitioned_persistent_kernels()
    rng = RngBundle(1)
    x = np.array([0.2, 0.7, -1.0])
    for _ in range(200):
        assert np.sum(kp.sample(rng, x)) >= np.sum(x)
        assert np.sum(km.sample(rng, x)) < np.sum(x)


def test_partitioned_mc_normalizer_close_to_analytic():
    # eta = first coordinate also has an exactly-half normalizer; the MC
    # estimate used for non-default eta must land near it
    kp, _ = partitioned_persistent_kernels(eta=lambda v: float(v[0]))
    x = np.array([0.3, 2.0])
    v = np.array([0.8, 2.0])
    got = kp.log_pdf(x, v)
    expect = gaussian_log_density(v - x) - LOG_HALF
    assert got == pytest.approx(expect, abs=0.05)
    # deterministic across calls
    assert kp.log_pdf(x, v) == got


def test_rejection_budget_exceeded():
    # sign=-1 requires eta(v) < eta(x); a constant eta makes that impossible
    _, km = partitioned_persistent_kernels(eta=lambda v: 0.0, rejection_budget=50)
    with pytest.raises(RejectionBudgetExceeded):
        km.sample(RngBundle(2), np.array([0.0]))


def test_extended_kernel_log_pdf_bounds():
    fam = gaussian_iid_kernel()
    x = np.array([0.1, 0.2, 0.3])
    v = np.array([1.0, -1.0, 0.5])
    # k = dim -> plain kernel density
    assert extended_kernel_log_pdf(fam, x, v, 3) == pytest.approx(fam.log_pdf(x, v))
    # k = 0 -> pure stock density of v
    assert extended_kernel_log_pdf(fam, x, v, 0) == pytest.approx(gaussian_log_density(v))
    # mid split: kernel head + gaussian tail
    expect = fam.log_pdf(x[:2], v[:2]) + gaussian_log_density(v[2:])
    assert extended_kernel_log_pdf(fam, x, v, 2) == pytest.approx(expect)
    with pytest.raises(PreconditionViolation):
        extended_kernel_log_pdf(fam, x, v, 4)


def test_entropy_rw_kernel():
    k = entropy_rw_kernel()
    x = EntropyVector([EntropyPair(1.0, True), EntropyPair(-2.0, False)])
    rng = RngBundle(3)
    v = k.sample(rng, x)
    assert isinstance(v, EntropyVector) and len(v) == 2
    expect = gaussian_log_density(v.reals() - x.reals()) + 2 * LOG_HALF
    assert k.log_pdf(x, v) == pytest.approx(expect)


def test_entropy_partitioned_kernels():
    kp, km = entropy_partitioned_kernels()
    x = EntropyVector([EntropyPair(0.0, True)])
    rng = RngBundle(4)
    for _ in range(50):
        vp = kp.sample(rng, x)
        assert vp.reals().sum() >= 0.0
    v = EntropyVector([EntropyPair(0.8, False)])
    assert kp.log_pdf(x, v) == pytest.approx(
        gaussian_log_density(np.array([0.8])) - LOG_HALF + LOG_HALF
    )
    assert km.log_pdf(x, v) == float("-inf")

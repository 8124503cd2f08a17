"""Auxiliary-kernel families: sampling plus log-pdf per dimension.

log_pdf values are taken w.r.t. Lebesgue measure on the real coordinates
(and counting measure on booleans for the entropy-space families); the
acceptance assembly in the sampler converts to stock-measure densities
where the algorithm requires it.

Sampling draws from the named streams of an RngBundle ("aux" for reals,
"pairing" for fresh coins), so families with the same real marginal
consume real draws identically -- needed by the paired-stream tests.
"""

from __future__ import annotations

import logging
import math
from typing import Callable, Optional

import numpy as np

from .errors import PreconditionViolation, RejectionBudgetExceeded
from .rng import RngBundle, _splitmix64
from .trace_core import (
    EntropyPair,
    EntropyVector,
    component_log_density,
    gaussian_log_density,
)

logger = logging.getLogger(__name__)

NEG_INF = float("-inf")
_LOG_HALF = math.log(0.5)

DEFAULT_REJECTION_BUDGET = 100_000
_MC_NORMALIZER_DRAWS = 10_000


def _reals(x) -> np.ndarray:
    if isinstance(x, EntropyVector):
        return x.reals()
    return np.asarray(x, dtype=float)


class AuxKernelFamily:
    """sample(rng, x) -> vector of dim(x); log_pdf(x, v) -> float."""

    def sample(self, rng: RngBundle, x):  # pragma: no cover - abstract
        raise NotImplementedError

    def log_pdf(self, x, v) -> float:  # pragma: no cover - abstract
        raise NotImplementedError


class GaussianIIDKernel(AuxKernelFamily):
    """K(x, .) = N(0, I); independent of x."""

    def sample(self, rng: RngBundle, x) -> np.ndarray:
        return np.atleast_1d(rng.normal("aux", len(x)))

    def log_pdf(self, x, v) -> float:
        return gaussian_log_density(_reals(v))


class GaussianRWKernel(AuxKernelFamily):
    """K(x, .) = N(x, I)."""

    def sample(self, rng: RngBundle, x) -> np.ndarray:
        return _reals(x) + np.atleast_1d(rng.normal("aux", len(x)))

    def log_pdf(self, x, v) -> float:
        return gaussian_log_density(_reals(v) - _reals(x))


def gaussian_iid_kernel() -> GaussianIIDKernel:
    return GaussianIIDKernel()


def gaussian_rw_kernel() -> GaussianRWKernel:
    return GaussianRWKernel()


def _default_eta(v: np.ndarray) -> float:
    return float(np.sum(v))


class PartitionedKernel(AuxKernelFamily):
    """N(x, I) restricted to the half-space {v : eta(v) >= eta(x)} (sign=+1)
    or its complement (sign=-1), renormalized.

    For the default eta (sum of coordinates) the normalizer is exactly 1/2;
    for general eta it is estimated by Monte Carlo with the estimate and
    its standard error logged.
    """

    def __init__(self, sign: int, eta: Optional[Callable] = None,
                 rejection_budget: int = DEFAULT_REJECTION_BUDGET):
        self.sign = sign
        self._eta_is_default = eta is None
        self.eta = _default_eta if eta is None else eta
        self.rejection_budget = rejection_budget

    def _in_support(self, x: np.ndarray, v: np.ndarray) -> bool:
        if self.sign > 0:
            return self.eta(v) >= self.eta(x)
        return self.eta(v) < self.eta(x)

    def _log_normalizer(self, x: np.ndarray) -> float:
        if self._eta_is_default:
            # sum(v) ~ N(sum(x), n) under N(x, I); threshold is sum(x) itself
            return _LOG_HALF
        key = _splitmix64(hash(tuple(np.round(x, 12))) & ((1 << 64) - 1))
        gen = np.random.Generator(np.random.Philox(key=key))
        draws = x + gen.standard_normal((_MC_NORMALIZER_DRAWS, len(x)))
        hits = np.fromiter((self._in_support(x, d) for d in draws), dtype=float)
        p = float(hits.mean())
        se = float(hits.std(ddof=1) / math.sqrt(len(hits))) if len(hits) > 1 else float("nan")
        logger.info("MC half-space normalizer: %.6f (SE %.6f)", p, se)
        if p <= 0.0:
            raise PreconditionViolation("degenerate eta: empty half-space")
        return math.log(p)

    def sample(self, rng: RngBundle, x) -> np.ndarray:
        xr = _reals(x)
        for _ in range(self.rejection_budget):
            v = xr + np.atleast_1d(rng.normal("aux", len(xr)))
            if self._in_support(xr, v):
                return v
        raise RejectionBudgetExceeded(f"no draw satisfied eta constraint in {self.rejection_budget} attempts")

    def log_pdf(self, x, v) -> float:
        xr, vr = _reals(x), _reals(v)
        if not self._in_support(xr, vr):
            return NEG_INF
        return gaussian_log_density(vr - xr) - self._log_normalizer(xr)


def partitioned_persistent_kernels(eta: Optional[Callable] = None,
                                   rejection_budget: int = DEFAULT_REJECTION_BUDGET):
    """(K+, K-) pair partitioning N(x, I) by the level of eta at x."""
    return (PartitionedKernel(+1, eta, rejection_budget),
            PartitionedKernel(-1, eta, rejection_budget))


def extended_kernel_log_pdf(family: AuxKernelFamily, x, v, k: int) -> float:
    """Kernel density on the first k coordinates, stock density on the rest."""
    n = len(v)
    if k > n or k > len(x):
        raise PreconditionViolation(f"k={k} exceeds dimension")
    head = family.log_pdf(x[:k] if not isinstance(x, EntropyVector) else EntropyVector(x[:k]),
                          v[:k] if not isinstance(v, EntropyVector) else EntropyVector(v[:k]))
    tail = v[k:] if not isinstance(v, EntropyVector) else EntropyVector(v[k:])
    return head + component_log_density(tail if isinstance(tail, EntropyVector) else np.asarray(tail, dtype=float))


# ---------------------------------------------------------------------------
# Entropy-space families (for the swap-based samplers)
# ---------------------------------------------------------------------------


class EntropyRWKernel(AuxKernelFamily):
    """Random walk on entropy vectors: reals ~ N(x.reals, I), coins ~ fair."""

    def sample(self, rng: RngBundle, x: EntropyVector) -> EntropyVector:
        reals = x.reals() + np.atleast_1d(rng.normal("aux", len(x)))
        return EntropyVector(EntropyPair(float(r), rng.coin("pairing")) for r in reals)

    def log_pdf(self, x: EntropyVector, v: EntropyVector) -> float:
        return gaussian_log_density(v.reals() - x.reals()) + _LOG_HALF * len(v)


class EntropyPartitionedKernel(AuxKernelFamily):
    """Entropy RW kernel restricted by eta on the real coordinates."""

    def __init__(self, sign: int, eta: Optional[Callable] = None,
                 rejection_budget: int = DEFAULT_REJECTION_BUDGET):
        self._inner = PartitionedKernel(sign, eta, rejection_budget)

    def sample(self, rng: RngBundle, x: EntropyVector) -> EntropyVector:
        reals = self._inner.sample(rng, x.reals())
        return EntropyVector(EntropyPair(float(r), rng.coin("pairing")) for r in reals)

    def log_pdf(self, x: EntropyVector, v: EntropyVector) -> float:
        head = self._inner.log_pdf(x.reals(), v.reals())
        return head + _LOG_HALF * len(v)


def entropy_rw_kernel() -> EntropyRWKernel:
    return EntropyRWKernel()


def entropy_partitioned_kernels(eta: Optional[Callable] = None,
                                rejection_budget: int = DEFAULT_REJECTION_BUDGET):
    return (EntropyPartitionedKernel(+1, eta, rejection_budget),
            EntropyPartitionedKernel(-1, eta, rejection_budget))

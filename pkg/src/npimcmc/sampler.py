"""Trans-dimensional involutive MCMC stepping algorithms and samplers.

All acceptance ratios are assembled in log space from one formula:

    log_ratio =   [log w(t)  + log Khat(x, v, k)   + log stock(x)]
                - [log w(t0) + log Khat(x0, v0, k0) + log stock(x0)]
                + sum of per-update log |det Jacobian|

where Khat is the auxiliary-kernel density on the first k coordinates
extended by the stock density on the rest, and stock is the base-measure
density of the parameter component (standard normal per real, fair coin
per boolean).  The comparison against log(uniform) is the only place a
probability is exponentiated.

Randomness is drawn from named streams of an RngBundle so that paired
samplers consume draws identically stream-by-stream:
  aux      - auxiliary kernel / momentum draws
  extend_x - parameter-side extension draws
  extend_v - auxiliary-side extension draws
  pairing  - fresh partners (coins/reals) for the hybrid state space
  uniform  - the accept/reject uniform
  mix      - direction coins and mixture-index draws
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import (
    DimensionCapExceeded,
    InitialTraceOutOfSupport,
    PreconditionViolation,
)
from .involution import (
    BijectionFamily,
    LeapfrogStepSpec,
    leapfrog_updates,
    swap_involution,
)
from .kernels import (
    AuxKernelFamily,
    entropy_partitioned_kernels,
    entropy_rw_kernel,
    extended_kernel_log_pdf,
    gaussian_iid_kernel,
)
from .model import (
    Model,
    density,
    find_supported_instance_status,
)
from .rng import RngBundle
from .trace_core import (
    EntropyPair,
    EntropyVector,
    State,
    Trace,
    component_log_density,
    gaussian_log_density,
)

NEG_INF = float("-inf")


@dataclass(frozen=True)
class SamplerConfig:
    dim_cap: int = 10_000
    leapfrog_L: int = 5
    epsilon: float = 0.1
    alpha: float = 0.5
    lookahead_K: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.dim_cap < 1:
            raise PreconditionViolation("dim_cap must be >= 1")
        if self.leapfrog_L < 1:
            raise PreconditionViolation("leapfrog_L must be >= 1")
        if not (self.epsilon > 0.0):
            raise PreconditionViolation("epsilon must be positive")
        if not (0.0 <= self.alpha <= 1.0):
            raise PreconditionViolation("alpha must lie in [0, 1]")
        if self.lookahead_K < 0:
            raise PreconditionViolation("lookahead_K must be >= 0")
        if self.seed < 0:
            raise PreconditionViolation("seed must be a non-negative integer")


@dataclass(frozen=True)
class StepStats:
    accepted: bool
    proposal_dim: int
    extensions: int
    log_ratio: float


@dataclass(frozen=True)
class ChainState:
    trace: Trace
    log_weight: float
    direction: Optional[bool] = None
    momentum: Optional[np.ndarray] = None
    stats: Optional[StepStats] = None


@dataclass(frozen=True)
class Proposal:
    trace: Trace
    log_weight: float
    log_ratio: float
    extensions: int
    final_state: State  # last (possibly extended) state of the proposal path
    initial_state: State  # initial (possibly extended) state


def _checked_log_weight(model: Model, t0: Trace) -> float:
    lw = density(model, t0)
    if lw == NEG_INF:
        raise InitialTraceOutOfSupport(f"trace {t0!r} is outside supp(w) of {model.name}")
    return lw


def _require_real_trace(t0: Trace) -> np.ndarray:
    if any(isinstance(v, bool) for v in t0):
        raise PreconditionViolation("this sampler requires real-only traces")
    return np.array(t0, dtype=float)


def _accept(log_ratio: float, rng: RngBundle) -> bool:
    u = rng.uniform("uniform")
    return math.log(u) < log_ratio


class _HopelessProposal(Exception):
    """The proposal path hit a state the model actively rejects; since
    extension only appends values, no extension can reach the support and
    the proposal is rejected outright (its weight is zero)."""


# ---------------------------------------------------------------------------
# Core step (real-only state space, single involution)
# ---------------------------------------------------------------------------


def _core_propose(model: Model, aux: AuxKernelFamily, inv: BijectionFamily,
                  t0: Trace, logw0: float, rng: RngBundle,
                  cfg: SamplerConfig, num_kernel: Optional[AuxKernelFamily] = None) -> Proposal:
    k0 = len(t0)
    x0 = _require_real_trace(t0)
    v0 = np.atleast_1d(aux.sample(rng, x0))
    extensions = 0
    while True:
        s = inv.apply(State(x0, v0))
        inst, kind = model.real_instance_status(s.x)
        if inst is not None:
            break
        if kind == "rejected":
            return Proposal(t0, logw0, NEG_INF, extensions, s, State(x0, v0))
        if len(x0) + 1 > cfg.dim_cap:
            raise DimensionCapExceeded(f"extension loop passed dim_cap={cfg.dim_cap}")
        x0 = np.append(x0, rng.normal("extend_x"))
        v0 = np.append(v0, rng.normal("extend_v"))
        extensions += 1
    t, logw_p, k = inst
    s0 = State(x0, v0)
    knum = num_kernel if num_kernel is not None else aux
    log_ratio = (
        (logw_p + extended_kernel_log_pdf(knum, s.x, s.v, k) + gaussian_log_density(s.x))
        - (logw0 + extended_kernel_log_pdf(aux, x0, v0, k0) + gaussian_log_density(x0))
        + inv.log_abs_det_jac(s0)
    )
    return Proposal(t, logw_p, log_ratio, extensions, s, s0)


def npimcmc_step(model: Model, aux: AuxKernelFamily, inv: BijectionFamily,
                 t0: Trace, rng: RngBundle, cfg: SamplerConfig) -> Trace:
    """One accept/reject step on real-only traces with a single involution."""
    if not inv.is_involutive:
        raise PreconditionViolation("npimcmc_step requires an involutive family")
    logw0 = _checked_log_weight(model, t0)
    prop = _core_propose(model, aux, inv, t0, logw0, rng, cfg)
    return prop.trace if _accept(prop.log_ratio, rng) else t0


# ---------------------------------------------------------------------------
# Hybrid step (entropy-vector state space; mixed-type traces)
# ---------------------------------------------------------------------------


def _pair_trace(t0: Trace, rng: RngBundle) -> EntropyVector:
    """Pair every trace value with a fresh partner of the other type."""
    pairs = []
    for v in t0:
        if isinstance(v, bool):
            pairs.append(EntropyPair(float(rng.normal("pairing")), v))
        else:
            pairs.append(EntropyPair(float(v), rng.coin("pairing")))
    return EntropyVector(pairs)


def _fresh_pair(rng: RngBundle, real_purpose: str) -> EntropyVector:
    return EntropyVector([EntropyPair(float(rng.normal(real_purpose)), rng.coin("pairing"))])


def _hybrid_propose(model: Model, aux: AuxKernelFamily, inv: BijectionFamily,
                    t0: Trace, logw0: float, rng: RngBundle,
                    cfg: SamplerConfig, num_kernel: Optional[AuxKernelFamily] = None) -> Proposal:
    k0 = len(t0)
    x0 = _pair_trace(t0, rng)
    v0 = aux.sample(rng, x0)
    extensions = 0
    while True:
        s = inv.apply(State(x0, v0))
        inst, kind = find_supported_instance_status(model, s.x)
        if inst is not None:
            break
        if kind == "rejected":
            return Proposal(t0, logw0, NEG_INF, extensions, s, State(x0, v0))
        if len(x0) + 1 > cfg.dim_cap:
            raise DimensionCapExceeded(f"extension loop passed dim_cap={cfg.dim_cap}")
        x0 = x0.concat(_fresh_pair(rng, "extend_x"))
        v0 = v0.concat(_fresh_pair(rng, "extend_v"))
        extensions += 1
    t, logw_p, k = inst
    s0 = State(x0, v0)
    knum = num_kernel if num_kernel is not None else aux
    log_ratio = (
        (logw_p + extended_kernel_log_pdf(knum, s.x, s.v, k) + component_log_density(s.x))
        - (logw0 + extended_kernel_log_pdf(aux, x0, v0, k0) + component_log_density(x0))
        + inv.log_abs_det_jac(s0)
    )
    return Proposal(t, logw_p, log_ratio, extensions, s, s0)


def hybrid_npimcmc_step(model: Model, aux: AuxKernelFamily, inv: BijectionFamily,
                        t0: Trace, rng: RngBundle, cfg: SamplerConfig) -> Trace:
    """One accept/reject step on the paired (real, bool) state space."""
    if not inv.is_involutive:
        raise PreconditionViolation("hybrid_npimcmc_step requires an involutive family")
    logw0 = _checked_log_weight(model, t0)
    prop = _hybrid_propose(model, aux, inv, t0, logw0, rng, cfg)
    return prop.trace if _accept(prop.log_ratio, rng) else t0


# ---------------------------------------------------------------------------
# Multiple-step engine (sequence of update families with slice functions)
# ---------------------------------------------------------------------------


class MultistepRun:
    """Applies update families one at a time, keeping every intermediate
    state.  When an intermediate leaves the support, the initial state is
    extended with fresh stock draws and every later state is extended via
    its update's slice function, avoiding a full recompute."""

    def __init__(self, model: Model, initial: State, rng: RngBundle, cfg: SamplerConfig):
        self.model = model
        self.states = [initial]
        self.applied: list = []
        self.rng = rng
        self.cfg = cfg
        self.extensions = 0
        self.instance = None  # instance of the latest state

    def _extend(self) -> None:
        s0 = self.states[0]
        if s0.dim + 1 > self.cfg.dim_cap:
            raise DimensionCapExceeded(f"extension loop passed dim_cap={self.cfg.dim_cap}")
        self.states[0] = State(
            np.append(s0.x, self.rng.normal("extend_x")),
            np.append(s0.v, self.rng.normal("extend_v")),
        )
        for i in range(1, len(self.states)):
            y, u = self.applied[i - 1].slice(self.states[i - 1])
            si = self.states[i]
            self.states[i] = State(np.append(si.x, y), np.append(si.v, u))
        self.extensions += 1

    def advance(self, updates: Sequence[BijectionFamily]) -> None:
        for fam in updates:
            self.applied.append(fam)
            self.states.append(fam.apply(self.states[-1]))
            inst, kind = self.model.real_instance_status(self.states[-1].x)
            while inst is None:
                if kind == "rejected":
                    raise _HopelessProposal()
                self._extend()
                inst, kind = self.model.real_instance_status(self.states[-1].x)
            self.instance = inst

    def log_jac_total(self) -> float:
        return sum(f.log_abs_det_jac(self.states[i]) for i, f in enumerate(self.applied))


def _multistep_propose(model: Model, aux: AuxKernelFamily,
                       updates: Sequence[BijectionFamily], t0: Trace, logw0: float,
                       rng: RngBundle, cfg: SamplerConfig) -> Proposal:
    k0 = len(t0)
    q0 = _require_real_trace(t0)
    v0 = np.atleast_1d(aux.sample(rng, q0))
    run = MultistepRun(model, State(q0, v0), rng, cfg)
    try:
        run.advance(updates)
    except _HopelessProposal:
        return Proposal(t0, logw0, NEG_INF, run.extensions, run.states[-1], run.states[0])
    t, logw_p, k = run.instance
    s, s0 = run.states[-1], run.states[0]
    log_ratio = (
        (logw_p + extended_kernel_log_pdf(aux, s.x, s.v, k) + gaussian_log_density(s.x))
        - (logw0 + extended_kernel_log_pdf(aux, s0.x, s0.v, k0) + gaussian_log_density(s0.x))
        + run.log_jac_total()
    )
    return Proposal(t, logw_p, log_ratio, run.extensions, s, s0)


def multistep_npimcmc_step(model: Model, aux: AuxKernelFamily,
                           updates: Sequence[BijectionFamily], t0: Trace,
                           rng: RngBundle, cfg: SamplerConfig) -> Trace:
    """One accept/reject step driven by a sequence of update families whose
    composition is involutive (or direction-wrapped by the caller)."""
    logw0 = _checked_log_weight(model, t0)
    prop = _multistep_propose(model, aux, updates, t0, logw0, rng, cfg)
    return prop.trace if _accept(prop.log_ratio, rng) else t0


# ---------------------------------------------------------------------------
# Concrete samplers
# ---------------------------------------------------------------------------


class SamplerBase:
    name = "sampler"

    def __init__(self, model: Model, cfg: SamplerConfig):
        self.model = model
        self.cfg = cfg

    def init_state(self, init: Trace, rng: RngBundle) -> ChainState:
        return ChainState(Trace(init), _checked_log_weight(self.model, Trace(init)))

    def step(self, state: ChainState, rng: RngBundle) -> ChainState:  # pragma: no cover
        raise NotImplementedError


class NPMHSampler(SamplerBase):
    """Random-walk swap sampler on the paired state space; handles mixed
    real/bool traces."""

    name = "np_mh"

    def __init__(self, model: Model, cfg: SamplerConfig):
        super().__init__(model, cfg)
        self.kernel = entropy_rw_kernel()
        self.inv = swap_involution()

    def propose(self, trace: Trace, log_weight: float, rng: RngBundle) -> Proposal:
        return _hybrid_propose(self.model, self.kernel, self.inv, trace, log_weight, rng, self.cfg)

    def step(self, state: ChainState, rng: RngBundle) -> ChainState:
        prop = self.propose(state.trace, state.log_weight, rng)
        accepted = _accept(prop.log_ratio, rng)
        stats = StepStats(accepted, len(prop.trace), prop.extensions, prop.log_ratio)
        if accepted:
            return ChainState(prop.trace, prop.log_weight, stats=stats)
        return ChainState(state.trace, state.log_weight, stats=stats)


class NPMHPersistentSampler(SamplerBase):
    """Swap sampler with direction-indexed half-space kernels; the
    direction persists on acceptance and flips on rejection."""

    name = "np_mh_persistent"

    def __init__(self, model: Model, cfg: SamplerConfig, eta: Optional[Callable] = None):
        super().__init__(model, cfg)
        kplus, kminus = entropy_partitioned_kernels(eta)
        self.kernels = {True: kplus, False: kminus}
        self.inv = swap_involution()

    def init_state(self, init: Trace, rng: RngBundle) -> ChainState:
        base = super().init_state(init, rng)
        return ChainState(base.trace, base.log_weight, direction=rng.coin("mix"))

    def step(self, state: ChainState, rng: RngBundle) -> ChainState:
        d0 = state.direction
        prop = _hybrid_propose(
            self.model, self.kernels[d0], self.inv, state.trace, state.log_weight,
            rng, self.cfg, num_kernel=self.kernels[not d0],
        )
        accepted = _accept(prop.log_ratio, rng)
        stats = StepStats(accepted, len(prop.trace), prop.extensions, prop.log_ratio)
        if accepted:
            return ChainState(prop.trace, prop.log_weight, direction=d0, stats=stats)
        return ChainState(state.trace, state.log_weight, direction=not d0, stats=stats)


class NPHMCSampler(SamplerBase):
    """Leapfrog sampler with fully resampled momentum and a fresh direction
    coin every step; real-only traces, gradient-capable models."""

    name = "np_hmc"

    def __init__(self, model: Model, cfg: SamplerConfig):
        if not model.supports_gradient:
            raise PreconditionViolation(f"model {model.name} does not support gradients")
        super().__init__(model, cfg)
        self.kernel = gaussian_iid_kernel()
        self.spec = LeapfrogStepSpec(cfg.leapfrog_L, cfg.epsilon, model)

    def propose_with_direction(self, trace: Trace, log_weight: float,
                               direction: bool, rng: RngBundle) -> Proposal:
        updates = leapfrog_updates(self.spec, direction)
        return _multistep_propose(self.model, self.kernel, updates, trace, log_weight, rng, self.cfg)

    def propose(self, trace: Trace, log_weight: float, rng: RngBundle) -> Proposal:
        return self.propose_with_direction(trace, log_weight, rng.coin("mix"), rng)

    def step(self, state: ChainState, rng: RngBundle) -> ChainState:
        prop = self.propose(state.trace, state.log_weight, rng)
        accepted = _accept(prop.log_ratio, rng)
        stats = StepStats(accepted, len(prop.trace), prop.extensions, prop.log_ratio)
        if accepted:
            return ChainState(prop.trace, prop.log_weight, stats=stats)
        return ChainState(state.trace, state.log_weight, stats=stats)


def _corrupt_momentum(momentum: np.ndarray, alpha: float, rng: RngBundle) -> np.ndarray:
    """Autoregressive momentum refresh; a valid step with acceptance 1."""
    fresh = np.atleast_1d(rng.normal("aux", len(momentum)))
    return math.sqrt(1.0 - alpha * alpha) * momentum + alpha * fresh


class _PersistentHMCBase(SamplerBase):
    def __init__(self, model: Model, cfg: SamplerConfig):
        if not model.supports_gradient:
            raise PreconditionViolation(f"model {model.name} does not support gradients")
        super().__init__(model, cfg)
        self.spec = LeapfrogStepSpec(cfg.leapfrog_L, cfg.epsilon, model)

    def init_state(self, init: Trace, rng: RngBundle) -> ChainState:
        t0 = Trace(init)
        lw = _checked_log_weight(self.model, t0)
        _require_real_trace(t0)
        momentum = np.atleast_1d(rng.normal("aux", len(t0)))
        return ChainState(t0, lw, direction=rng.coin("mix"), momentum=momentum)

    @staticmethod
    def _chance_log_ratio(logw_p: float, logw0: float, s: State, s0: State) -> float:
        # Gaussian kernel and leapfrog Jacobians make the general assembly
        # collapse to the w ratio times the stock-density ratio of the
        # endpoint states.
        return (logw_p + gaussian_log_density(s.x) + gaussian_log_density(s.v)) - (
            logw0 + gaussian_log_density(s0.x) + gaussian_log_density(s0.v)
        )


class NPHMCPersistentSampler(_PersistentHMCBase):
    """Leapfrog sampler with partially persistent momentum and persistent
    direction (flipped on rejection)."""

    name = "np_hmc_persistent"

    def step(self, state: ChainState, rng: RngBundle) -> ChainState:
        d0 = state.direction
        q0 = np.asarray(state.trace, dtype=float)
        v0 = _corrupt_momentum(state.momentum, self.cfg.alpha, rng)
        run = MultistepRun(self.model, State(q0, v0), rng, self.cfg)
        try:
            run.advance(leapfrog_updates(self.spec, d0))
            t, logw_p, k = run.instance
            log_ratio = self._chance_log_ratio(logw_p, state.log_weight,
                                               run.states[-1], run.states[0])
        except _HopelessProposal:
            t, logw_p, k = state.trace, state.log_weight, len(state.trace)
            log_ratio = NEG_INF
        accepted = _accept(log_ratio, rng)
        stats = StepStats(accepted, len(t), run.extensions, log_ratio)
        if accepted:
            momentum = np.asarray(run.states[-1].v[:k], dtype=float)
            return ChainState(t, logw_p, direction=d0, momentum=momentum, stats=stats)
        k0 = len(state.trace)
        momentum = np.asarray(run.states[0].v[:k0], dtype=float)
        return ChainState(state.trace, state.log_weight, direction=not d0,
                          momentum=momentum, stats=stats)


class NPLookaheadHMCSampler(_PersistentHMCBase):
    """Persistent-momentum leapfrog sampler that, on rejection, grants up
    to K extra leapfrog batches sharing a single uniform draw."""

    name = "np_lookahead_hmc"

    def step(self, state: ChainState, rng: RngBundle) -> ChainState:
        d0 = state.direction
        q0 = np.asarray(state.trace, dtype=float)
        v0 = _corrupt_momentum(state.momentum, self.cfg.alpha, rng)
        u = rng.uniform("uniform")
        log_u = math.log(u)
        run = MultistepRun(self.model, State(q0, v0), rng, self.cfg)
        updates = leapfrog_updates(self.spec, d0)
        last_ratio = NEG_INF
        for _chance in range(self.cfg.lookahead_K + 1):
            try:
                run.advance(updates)
            except _HopelessProposal:
                last_ratio = NEG_INF
                break
            t, logw_p, k = run.instance
            last_ratio = self._chance_log_ratio(logw_p, state.log_weight,
                                                run.states[-1], run.states[0])
            if log_u < last_ratio:
                stats = StepStats(True, len(t), run.extensions, last_ratio)
                momentum = np.asarray(run.states[-1].v[:k], dtype=float)
                return ChainState(t, logw_p, direction=d0, momentum=momentum, stats=stats)
        k0 = len(state.trace)
        stats = StepStats(False, k0, run.extensions, last_ratio)
        momentum = np.asarray(run.states[0].v[:k0], dtype=float)
        return ChainState(state.trace, state.log_weight, direction=not d0,
                          momentum=momentum, stats=stats)


def np_mh(model: Model, cfg: SamplerConfig) -> NPMHSampler:
    return NPMHSampler(model, cfg)


def np_mh_persistent(model: Model, cfg: SamplerConfig, eta: Optional[Callable] = None) -> NPMHPersistentSampler:
    return NPMHPersistentSampler(model, cfg, eta)


def np_hmc(model: Model, cfg: SamplerConfig) -> NPHMCSampler:
    return NPHMCSampler(model, cfg)


def np_hmc_persistent(model: Model, cfg: SamplerConfig) -> NPHMCPersistentSampler:
    return NPHMCPersistentSampler(model, cfg)


def np_lookahead_hmc(model: Model, cfg: SamplerConfig) -> NPLookaheadHMCSampler:
    return NPLookaheadHMCSampler(model, cfg)


class MixtureSampler(SamplerBase):
    """State-dependent mixture of proposal mechanisms.  The drawn index m
    contributes its density ratio at the proposed vs current trace."""

    name = "mixture"

    def __init__(self, samplers: Sequence[SamplerBase],
                 mix_kernel: Callable, mix_log_pdf: Callable):
        if not samplers:
            raise PreconditionViolation("mixture needs at least one member")
        model = samplers[0].model
        for s in samplers[1:]:
            if s.model is not model:
                raise PreconditionViolation("mixture members must share the model")
        for s in samplers:
            if not hasattr(s, "propose"):
                raise PreconditionViolation(f"{s.name} cannot be used inside a mixture")
        super().__init__(model, samplers[0].cfg)
        self.samplers = list(samplers)
        self.mix_kernel = mix_kernel
        self.mix_log_pdf = mix_log_pdf

    def step(self, state: ChainState, rng: RngBundle) -> ChainState:
        m = self.mix_kernel(rng, state.trace)
        if not (0 <= m < len(self.samplers)):
            raise PreconditionViolation(f"mixture index {m} out of range")
        prop = self.samplers[m].propose(state.trace, state.log_weight, rng)
        log_ratio = prop.log_ratio + self.mix_log_pdf(prop.trace, m) - self.mix_log_pdf(state.trace, m)
        accepted = _accept(log_ratio, rng)
        stats = StepStats(accepted, len(prop.trace), prop.extensions, log_ratio)
        if accepted:
            return ChainState(prop.trace, prop.log_weight, stats=stats)
        return ChainState(state.trace, state.log_weight, stats=stats)


def mixture_wrap(samplers: Sequence[SamplerBase], mix_kernel: Callable,
                 mix_log_pdf: Callable) -> MixtureSampler:
    return MixtureSampler(samplers, mix_kernel, mix_log_pdf)


def uniform_mixture(samplers: Sequence[SamplerBase]) -> MixtureSampler:
    """State-independent equal-weight mixture (density ratio 1)."""
    n = len(samplers)
    return mixture_wrap(samplers,
                        lambda rng, trace: rng.index("mix", n),
                        lambda trace, m: 0.0)


# ---------------------------------------------------------------------------
# Chain runner
# ---------------------------------------------------------------------------


def run_chain(sampler: SamplerBase, init: Trace, n: int, seed: int, chain: int = 0):
    """Run n steps; deterministic given (seed, chain).  Returns the sample
    list and a stats dict."""
    if n < 0:
        raise PreconditionViolation("n must be >= 0")
    rng = RngBundle(seed, chain)
    state = sampler.init_state(Trace(init), rng)
    samples: list[Trace] = []
    accepted: list[bool] = []
    dims: list[int] = []
    extension_counts: list[int] = []
    directions: list[Optional[bool]] = []
    t_start = time.perf_counter()
    for _ in range(n):
        state = sampler.step(state, rng)
        assert state.log_weight > NEG_INF  # every kept trace stays in supp(w)
        samples.append(state.trace)
        accepted.append(state.stats.accepted)
        dims.append(len(state.trace))
        extension_counts.append(state.stats.extensions)
        directions.append(state.direction)
    wall_time = time.perf_counter() - t_start
    stats = {
        "n": n,
        "acceptance_rate": (sum(accepted) / n) if n else 0.0,
        "accepted": accepted,
        "dimensions": dims,
        "extension_counts": extension_counts,
        "directions": directions,
        "wall_time": wall_time,
    }
    return samples, stats

"""Trace-consuming probabilistic models and their execution engine.

A model is a host-embedded program written against a sample/score handle.
Executing it on a trace answers each sample request with the next trace
value; the run outcome is terminated-with-weight, needs-more-samples, or
rejected.  The density of a trace is the terminal log weight when the
program consumes the trace exactly, else -inf -- which makes the prefix
property hold by construction for engine-driven models.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import PreconditionViolation
from .grad import Dual, dabs, dlog, normal_log_pdf, normal_pdf, primal
from .trace_core import EntropyVector, Trace

NEG_INF = float("-inf")


@dataclass(frozen=True)
class SampleRequest:
    need: str  # "real" | "bool"


NeedReal = SampleRequest("real")
NeedBool = SampleRequest("bool")


@dataclass(frozen=True)
class Terminated:
    log_weight: object  # float, or Dual during gradient runs
    consumed: int
    return_value: object
    kind: str = field(default="terminated", init=False)


@dataclass(frozen=True)
class NeedsMore:
    next: SampleRequest
    kind: str = field(default="needs_more", init=False)


@dataclass(frozen=True)
class Rejected:
    kind: str = field(default="rejected", init=False)


RunResult = object  # Terminated | NeedsMore | Rejected


class _NeedsMoreSignal(Exception):
    def __init__(self, request: SampleRequest):
        self.request = request


class _RejectSignal(Exception):
    pass


class _ListCtx:
    """Feeds raw values; rejects on type mismatch between value and request."""

    def __init__(self, values: Sequence):
        self.values = values
        self.i = 0

    def _next(self, request: SampleRequest):
        if self.i >= len(self.values):
            raise _NeedsMoreSignal(request)
        v = self.values[self.i]
        is_bool = isinstance(v, (bool, np.bool_))
        if (request.need == "bool") != is_bool:
            raise _RejectSignal()
        self.i += 1
        return bool(v) if is_bool else v

    def sample_real(self):
        return self._next(NeedReal)

    def sample_bool(self) -> bool:
        return self._next(NeedBool)


class _EntropyCtx:
    """Feeds one component per entropy pair, chosen by the request type."""

    def __init__(self, x: EntropyVector):
        self.x = x
        self.i = 0
        self.chosen: list = []

    def _next(self, request: SampleRequest):
        if self.i >= len(self.x):
            raise _NeedsMoreSignal(request)
        p = self.x[self.i]
        self.i += 1
        v = p.a if request.need == "bool" else p.r
        self.chosen.append(v)
        return v

    def sample_real(self):
        return self._next(NeedReal)

    def sample_bool(self) -> bool:
        return self._next(NeedBool)


class _RealOnlyCtx:
    """Feeds reals only; a boolean request is a caller error."""

    def __init__(self, values: Sequence):
        self.values = values
        self.i = 0

    def sample_real(self):
        if self.i >= len(self.values):
            raise _NeedsMoreSignal(NeedReal)
        v = self.values[self.i]
        self.i += 1
        return v

    def sample_bool(self) -> bool:
        raise PreconditionViolation("model requested a boolean in real-only mode")


class _Scorer:
    def __init__(self, ctx):
        self._ctx = ctx
        self.log_weight = 0.0

    def sample_real(self):
        return self._ctx.sample_real()

    def sample_bool(self):
        return self._ctx.sample_bool()

    def score(self, p):
        """Multiply the weight by density value p; p <= 0 rejects the run."""
        pv = primal(p)
        if not math.isfinite(pv) or pv <= 0.0:
            raise _RejectSignal()
        self.log_weight = self.log_weight + dlog(p)

    def score_log(self, lp):
        lv = primal(lp)
        if math.isnan(lv) or lv == float("inf"):
            raise _RejectSignal()
        if lv == NEG_INF:
            raise _RejectSignal()
        self.log_weight = self.log_weight + lp

    def reject(self):
        raise _RejectSignal()


class Model:
    """Deterministic, type-deterministic trace-consuming program."""

    name: str = "model"
    supports_gradient: bool = False

    def program(self, ctx) -> object:  # pragma: no cover - abstract
        raise NotImplementedError

    def _execute(self, ctx) -> RunResult:
        scorer = _Scorer(ctx)
        try:
            value = self.program(scorer)
        except _NeedsMoreSignal as s:
            return NeedsMore(s.request)
        except _RejectSignal:
            return Rejected()
        return Terminated(scorer.log_weight, ctx.i, value)

    def run(self, trace: Trace) -> RunResult:
        return self.run_values(list(trace))

    def run_values(self, values: Sequence) -> RunResult:
        """Run on raw values (floats/bools; duals allowed for gradients)."""
        return self._execute(_ListCtx(values))

    def real_instance_status(self, q: Sequence) -> tuple:
        """(instance or None, run kind) for a real vector.

        kind "needs_more" means appending values could still reach the
        support; "rejected" means no extension ever will (the program
        rejected on a prefix it has already consumed).
        """
        ctx = _RealOnlyCtx(q)
        res = self._execute(ctx)
        if res.kind != "terminated":
            return None, res.kind
        k = res.consumed
        return (Trace(float(primal(v)) for v in q[:k]), float(primal(res.log_weight)), k), res.kind

    def real_instance(self, q: Sequence) -> Optional[tuple]:
        """Supported instance of a real vector: (trace, log_weight, k) or None."""
        return self.real_instance_status(q)[0]

    def predictive_log_density(self, trace: Trace, datum: float) -> float:
        raise PreconditionViolation(f"model {self.name} has no per-datum predictive density")


def density(model: Model, t: Trace) -> float:
    """log w(t); -inf outside the support."""
    res = model.run(t)
    if res.kind == "terminated" and res.consumed == len(t):
        return float(primal(res.log_weight))
    return NEG_INF


def find_supported_instance_status(model: Model, x: EntropyVector) -> tuple:
    """(instance or None, run kind) for an entropy vector.

    Drives the model, answering each real request with the real component
    and each bool request with the bool component of the next pair.
    """
    ctx = _EntropyCtx(x)
    res = model._execute(ctx)
    if res.kind != "terminated":
        return None, res.kind
    k = res.consumed
    return (Trace(ctx.chosen[:k]), float(primal(res.log_weight)), k), res.kind


def find_supported_instance(model: Model, x: EntropyVector) -> Optional[tuple]:
    """The unique supported instance of an entropy vector, or None."""
    return find_supported_instance_status(model, x)[0]


@dataclass
class PrefixReport:
    probes: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_prefix_property(model: Model, probe_traces: Sequence[Trace]) -> PrefixReport:
    """Assert that at most one prefix of each probe lies in the support."""
    report = PrefixReport()
    for t in probe_traces:
        report.probes += 1
        supported = [k for k in range(1, len(t) + 1) if density(model, t.prefix(k)) > NEG_INF]
        if len(supported) > 1:
            report.violations.append((t, supported))
    return report


# ---------------------------------------------------------------------------
# Built-in models
# ---------------------------------------------------------------------------


class IGMM(Model):
    """Gaussian mixture with an unbounded number of components.

    The first draw fixes the component count K = floor(|t1|); K more draws
    give the means; each datum is scored under the equal-weight mixture of
    unit-variance Gaussians.  K = 0 leaves an empty mixture and the trace
    out of support.
    """

    supports_gradient = True

    def __init__(self, data: Sequence[float]):
        self.name = "igmm"
        self.data = [float(d) for d in data]

    def program(self, ctx):
        t1 = ctx.sample_real()
        K = int(math.floor(abs(primal(t1))))
        if K == 0:
            ctx.reject()
        means = [ctx.sample_real() for _ in range(K)]
        for d in self.data:
            p = 0.0
            for m in means:
                p = p + normal_pdf(d, m, 1.0)
            ctx.score(p / K)
        return K

    def predictive_log_density(self, trace: Trace, datum: float) -> float:
        K = int(math.floor(abs(float(trace[0]))))
        means = [float(m) for m in trace[1 : 1 + K]]
        if K == 0 or len(means) != K:
            raise PreconditionViolation("trace is not a supported mixture trace")
        lps = [normal_log_pdf(datum, m, 1.0) for m in means]
        mx = max(lps)
        return mx + math.log(sum(math.exp(lp - mx) for lp in lps) / K)


def igmm(data: Sequence[float]) -> IGMM:
    return IGMM(data)


def igmm_synthetic_data(seed: int, n_per_component: int = 10,
                        means=(-3.0, 0.0, 3.0), std: float = 0.5) -> list:
    """Seeded 3-component ground truth used by the mixture benchmark."""
    gen = np.random.default_rng(seed)
    data = []
    for m in means:
        data.extend((m + std * gen.standard_normal(n_per_component)).tolist())
    return data


class Geometric(Model):
    """Repeatedly flip a fair coin, accumulating a normal step while it is
    true; returns the number of true flips.  Weight is identically 1."""

    supports_gradient = False  # consumes booleans; no real-only gradient path

    def __init__(self):
        self.name = "geometric"

    def program(self, ctx):
        k = 0
        x = 0.0
        while ctx.sample_bool():
            x = x + ctx.sample_real()
            k += 1
        return k


def geometric() -> Geometric:
    return Geometric()


class GeometricReal(Model):
    """The geometric program with the coin encoded as the sign of a
    standard-normal draw (negative = stop), keeping traces real-only."""

    supports_gradient = True

    def __init__(self):
        self.name = "geometric_real"

    def program(self, ctx):
        k = 0
        x = 0.0
        while ctx.sample_real() >= 0.0:
            x = x + ctx.sample_real()
            k += 1
        return k


def geometric_real() -> GeometricReal:
    return GeometricReal()


class RandomWalk(Model):
    """Accumulate normal steps while |position| < bound; observe the total
    distance travelled with Gaussian noise."""

    supports_gradient = True

    def __init__(self, observed_distance: float, obs_std: float = 0.1, bound: float = 10.0):
        self.name = "random_walk"
        self.observed_distance = float(observed_distance)
        self.obs_std = float(obs_std)
        self.bound = float(bound)

    def program(self, ctx):
        pos = 0.0
        dist = 0.0
        while dabs(pos) < self.bound:
            step = ctx.sample_real()
            pos = pos + step
            dist = dist + dabs(step)
        # score in log space: far-from-data walks underflow normal_pdf
        ctx.score_log(normal_log_pdf(self.observed_distance, dist, self.obs_std))
        return primal(dist)


def random_walk(observed_distance: float, obs_std: float = 0.1, bound: float = 10.0) -> RandomWalk:
    return RandomWalk(observed_distance, obs_std, bound)


class ConjugateNormal(Model):
    """x ~ N(0,1) scored against N(x; obs, 1); exact posterior N(obs/2, 1/2)."""

    supports_gradient = True

    def __init__(self, obs: float):
        self.name = "conjugate_normal"
        self.obs = float(obs)

    def program(self, ctx):
        x = ctx.sample_real()
        ctx.score(normal_pdf(x, self.obs, 1.0))
        return primal(x)


def conjugate_normal(obs: float) -> ConjugateNormal:
    return ConjugateNormal(obs)


class BrokenPrefixFixture(Model):
    """Deliberately violates the prefix property: terminates on real traces
    of length 1 and of length 2.  Test/demo fixture only."""

    supports_gradient = False

    def __init__(self):
        self.name = "broken-fixture"

    def program(self, ctx):
        # request-driven runs stop after one real; run_values below also
        # accepts length-2 traces, which is the deliberate violation
        ctx.sample_real()
        return None

    def run_values(self, values: Sequence) -> RunResult:
        n = len(values)
        if n == 0:
            return NeedsMore(NeedReal)
        if any(isinstance(v, (bool, np.bool_)) for v in values):
            return Rejected()
        if n in (1, 2):
            return Terminated(0.0, n, None)
        return Rejected()

    def real_instance_status(self, q: Sequence) -> tuple:
        res = self.run_values(q)
        if res.kind != "terminated":
            return None, res.kind
        return (Trace(float(v) for v in q[: res.consumed]), 0.0, res.consumed), res.kind


def broken_fixture() -> BrokenPrefixFixture:
    return BrokenPrefixFixture()


MODEL_REGISTRY: dict[str, Callable[..., Model]] = {
    "igmm": igmm,
    "geometric": geometric,
    "geometric_real": geometric_real,
    "random_walk": random_walk,
    "conjugate_normal": conjugate_normal,
    "broken-fixture": broken_fixture,
}


def make_model(name: str, **params) -> Model:
    if name not in MODEL_REGISTRY:
        raise PreconditionViolation(f"unknown model {name!r}")
    return MODEL_REGISTRY[name](**params)

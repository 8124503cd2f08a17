"""Dimension-indexed bijection families over (parameter, auxiliary) states.

A family supplies one endofunction per dimension, its inverse, the log of
the absolute Jacobian determinant, and a slice function that produces the
new top coordinate pair when a state is extended by one dimension while
the supported instance lies strictly below the top.  Families must commute
with projection above the instance dimension; check_projection_commutation
probes exactly that.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InverseUnavailable, PreconditionViolation, SliceInvalid
from .grad import grad_U
from .trace_core import EntropyVector, State, project


class BijectionFamily:
    """apply/inverse map states to states of the same dimension."""

    is_involutive: bool = False

    def apply(self, state: State) -> State:  # pragma: no cover - abstract
        raise NotImplementedError

    def inverse(self, state: State) -> State:
        if self.is_involutive:
            return self.apply(state)
        raise InverseUnavailable(type(self).__name__)

    def log_abs_det_jac(self, state: State) -> float:
        return 0.0

    def slice(self, state: State) -> tuple:
        """Top coordinate pair of apply(state); requires commutation with
        projection at the top dimension."""
        out = self.apply(state)
        return out.x[-1], out.v[-1]


class SwapInvolution(BijectionFamily):
    """(x, v) -> (v, x); volume preserving and self-inverse."""

    is_involutive = True

    def apply(self, state: State) -> State:
        return State(state.v, state.x)


def swap_involution() -> SwapInvolution:
    return SwapInvolution()


@dataclass(frozen=True)
class LeapfrogStepSpec:
    """Shared parameters of one leapfrog composition: L full steps of size
    epsilon against the potential of `model`."""

    L: int
    epsilon: float
    model: object

    def __post_init__(self):
        if self.L < 1:
            raise PreconditionViolation("leapfrog step count must be >= 1")
        if not (self.epsilon > 0.0):
            raise PreconditionViolation("leapfrog step size must be positive")


def _update_kind(m: int, spec: LeapfrogStepSpec) -> str:
    if not (1 <= m <= 3 * spec.L):
        raise PreconditionViolation(f"update index {m} outside 1..{3 * spec.L}")
    return "position" if m % 3 == 2 else "momentum"


def leapfrog_update(m: int, spec: LeapfrogStepSpec, direction: bool, state: State) -> State:
    """The m-th endofunction of the leapfrog composition.

    Updates cycle half-momentum, position, half-momentum; with
    direction=False each update is the inverse of its forward counterpart
    (the palindromic block keeps the cycle pattern unchanged).
    """
    q = np.asarray(state.x, dtype=float)
    p = np.asarray(state.v, dtype=float)
    sign = 1.0 if direction else -1.0
    if _update_kind(m, spec) == "position":
        return State(q + sign * spec.epsilon * p, p)
    g = grad_U(spec.model, q)
    return State(q, p - sign * (spec.epsilon / 2.0) * g)


def leapfrog_slice(m: int, spec: LeapfrogStepSpec, direction: bool, state: State) -> tuple:
    """Top coordinate pair after extending to this state's dimension.

    Valid only when the supported instance sits strictly below the top
    coordinate; then the potential does not read the top coordinate and a
    momentum update leaves it untouched.
    """
    q = np.asarray(state.x, dtype=float)
    p = np.asarray(state.v, dtype=float)
    inst = spec.model.real_instance(q)
    if inst is None:
        raise SliceInvalid("state has no supported instance")
    if inst[2] >= len(q):
        raise SliceInvalid("instance dimension is not strictly below the state dimension")
    sign = 1.0 if direction else -1.0
    if _update_kind(m, spec) == "position":
        return float(q[-1] + sign * spec.epsilon * p[-1]), float(p[-1])
    return float(q[-1]), float(p[-1])


@dataclass(frozen=True)
class LeapfrogUpdateFamily(BijectionFamily):
    """One leapfrog update as a bijection family member."""

    m: int
    spec: LeapfrogStepSpec
    direction: bool = True

    is_involutive = False

    def apply(self, state: State) -> State:
        return leapfrog_update(self.m, self.spec, self.direction, state)

    def inverse(self, state: State) -> State:
        return leapfrog_update(self.m, self.spec, not self.direction, state)

    def slice(self, state: State) -> tuple:
        return leapfrog_slice(self.m, self.spec, self.direction, state)


def leapfrog_updates(spec: LeapfrogStepSpec, direction: bool = True) -> list:
    """The 3L updates of a leapfrog composition, in application order."""
    return [LeapfrogUpdateFamily(m, spec, direction) for m in range(1, 3 * spec.L + 1)]


class _InverseFamily(BijectionFamily):
    def __init__(self, inner: BijectionFamily):
        self._inner = inner

    def apply(self, state: State) -> State:
        return self._inner.inverse(state)

    def inverse(self, state: State) -> State:
        return self._inner.apply(state)

    def log_abs_det_jac(self, state: State) -> float:
        # |det D(f^-1)|(s) = 1/|det Df|(f^-1(s))
        return -self._inner.log_abs_det_jac(self._inner.inverse(state))


class DirectionWrapped:
    """Direction-indexed pair (f, f^-1) of a bijection family."""

    def __init__(self, family: BijectionFamily):
        self._forward = family
        self._backward = _InverseFamily(family)

    def family(self, direction: bool) -> BijectionFamily:
        return self._forward if direction else self._backward


def direction_wrap(family: BijectionFamily) -> DirectionWrapped:
    return DirectionWrapped(family)


class ReversalFixture(BijectionFamily):
    """Coordinate reversal: a valid involution that does NOT commute with
    projection.  Exists to make the structural checker fail; never use in
    a sampler."""

    is_involutive = True

    def apply(self, state: State) -> State:
        if isinstance(state.x, EntropyVector):
            return State(EntropyVector(state.x[::-1]), EntropyVector(state.v[::-1]))
        return State(np.asarray(state.x)[::-1].copy(), np.asarray(state.v)[::-1].copy())


def reversal_fixture() -> ReversalFixture:
    return ReversalFixture()


def _components_close(a, b, atol: float) -> bool:
    if isinstance(a, EntropyVector) != isinstance(b, EntropyVector):
        return False
    if len(a) != len(b):
        return False
    if isinstance(a, EntropyVector):
        if a.bools() != b.bools():
            return False
        return bool(np.allclose(a.reals(), b.reals(), rtol=0.0, atol=atol))
    return bool(np.allclose(np.asarray(a, float), np.asarray(b, float), rtol=0.0, atol=atol))


def states_close(s1: State, s2: State, atol: float = 1e-9) -> bool:
    return _components_close(s1.x, s2.x, atol) and _components_close(s1.v, s2.v, atol)


def check_projection_commutation(family: BijectionFamily, model, state: State,
                                 k: int, atol: float = 1e-9) -> bool:
    """project_k(f(state)) == f(project_k(state)) for k at or above the
    instance dimension of state.x."""
    if isinstance(state.x, EntropyVector):
        from .model import find_supported_instance

        inst = find_supported_instance(model, state.x)
    else:
        inst = model.real_instance(np.asarray(state.x, float))
    if inst is None:
        raise PreconditionViolation("state has no supported instance")
    n = inst[2]
    if not (n <= k <= state.dim):
        raise PreconditionViolation(f"k={k} must lie in [{n}, {state.dim}]")
    lhs = project(family.apply(state), k)
    rhs = family.apply(project(state, k))
    return states_close(lhs, rhs, atol)

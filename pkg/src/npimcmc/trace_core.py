"""Traces, entropy vectors, states, and their base-measure densities.

The sample space is the reals plus the booleans.  A trace is a finite
sequence of values from one program run.  The hybrid parameter space pairs
every value with a fresh partner of the other type so that dimension jumps
stay well-typed; its base measure is standard-normal x fair-coin per pair.
All densities live in log space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import InvalidValue, PreconditionViolation

Value = Union[float, bool]

_LOG_2PI = math.log(2.0 * math.pi)
_LOG_HALF = math.log(0.5)


def _check_real(r: float) -> float:
    r = float(r)
    if not math.isfinite(r):
        raise InvalidValue(f"non-finite real {r!r} in trace/entropy value")
    return r


class Trace(tuple):
    """A finite sequence of real/bool values; immutable."""

    def __new__(cls, values: Iterable[Value] = ()):
        vals = []
        for v in values:
            if isinstance(v, (bool, np.bool_)):
                vals.append(bool(v))
            else:
                vals.append(_check_real(v))
        return super().__new__(cls, vals)

    def prefix(self, k: int) -> "Trace":
        if k > len(self):
            raise PreconditionViolation(f"prefix length {k} > trace length {len(self)}")
        return Trace(self[:k])

    def reals(self) -> np.ndarray:
        """Real-valued coordinates only (in order)."""
        return np.array([v for v in self if not isinstance(v, bool)], dtype=float)

    def __repr__(self) -> str:
        return "Trace(" + ", ".join("T" if v is True else "F" if v is False else repr(v) for v in self) + ")"


@dataclass(frozen=True)
class EntropyPair:
    r: float
    a: bool

    def __post_init__(self):
        object.__setattr__(self, "r", _check_real(self.r))
        object.__setattr__(self, "a", bool(self.a))


class EntropyVector(tuple):
    """A sequence of (real, bool) pairs; the hybrid parameter variable."""

    def __new__(cls, pairs: Iterable[EntropyPair] = ()):
        items = []
        for p in pairs:
            if not isinstance(p, EntropyPair):
                p = EntropyPair(p[0], p[1])
            items.append(p)
        return super().__new__(cls, items)

    def reals(self) -> np.ndarray:
        return np.array([p.r for p in self], dtype=float)

    def bools(self) -> tuple:
        return tuple(p.a for p in self)

    def concat(self, other: "EntropyVector") -> "EntropyVector":
        return EntropyVector(tuple.__add__(self, other))

    def replace_reals(self, reals: Sequence[float]) -> "EntropyVector":
        if len(reals) != len(self):
            raise PreconditionViolation("replace_reals length mismatch")
        return EntropyVector(EntropyPair(float(r), p.a) for r, p in zip(reals, self))


Component = Union[EntropyVector, np.ndarray]


@dataclass(frozen=True)
class State:
    """Equal-dimension (parameter, auxiliary) pair traversed by involutions.

    Index maps between the component lengths and the dimension are the
    identity in v1; the dim field keeps the notion abstract.
    """

    x: Component
    v: Component

    def __post_init__(self):
        if isinstance(self.x, np.ndarray):
            object.__setattr__(self, "x", np.asarray(self.x, dtype=float))
        if isinstance(self.v, np.ndarray):
            object.__setattr__(self, "v", np.asarray(self.v, dtype=float))
        if len(self.x) != len(self.v):
            raise PreconditionViolation(
                f"state components must have equal dimension: {len(self.x)} != {len(self.v)}"
            )

    @property
    def dim(self) -> int:
        return len(self.x)


def _take(c: Component, k: int) -> Component:
    return EntropyVector(c[:k]) if isinstance(c, EntropyVector) else np.asarray(c[:k], dtype=float)


def project(s: State, k: int) -> State:
    """First k coordinates of each component."""
    if k > s.dim:
        raise PreconditionViolation(f"project to {k} > dim {s.dim}")
    return State(_take(s.x, k), _take(s.v, k))


def drop_prefix(s: State, k: int) -> State:
    """Coordinates beyond index k of each component."""
    if k > s.dim:
        raise PreconditionViolation(f"drop_prefix at {k} > dim {s.dim}")
    xs = EntropyVector(s.x[k:]) if isinstance(s.x, EntropyVector) else np.asarray(s.x[k:], dtype=float)
    vs = EntropyVector(s.v[k:]) if isinstance(s.v, EntropyVector) else np.asarray(s.v[k:], dtype=float)
    return State(xs, vs)


def gaussian_log_density(v: Sequence[float]) -> float:
    """log of the standard-normal product density; empty vector -> 0."""
    arr = np.asarray(v, dtype=float)
    if arr.size == 0:
        return 0.0
    return float(-0.5 * arr.size * _LOG_2PI - 0.5 * np.dot(arr, arr))


def entropy_log_density(x: EntropyVector) -> float:
    """log base-measure density of an entropy vector: sum of log phi(r) + log 1/2."""
    return gaussian_log_density(x.reals()) + _LOG_HALF * len(x)


def component_log_density(c: Component) -> float:
    """Stock log-density of either component flavor."""
    if isinstance(c, EntropyVector):
        return entropy_log_density(c)
    return gaussian_log_density(c)

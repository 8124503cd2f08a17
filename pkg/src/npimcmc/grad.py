"""Forward-mode dual numbers and the potential-energy gradient.

U(q) = -log of the target density at the supported instance of q.  The
gradient is taken one coordinate at a time by re-running the model with
that coordinate lifted to a dual number.  Coordinates beyond the instance
dimension have exactly zero gradient (the density does not read them).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import (
    GradientUnsupported,
    NoSupportedInstance,
    PreconditionViolation,
    StepCrossesSupportBoundary,
)

Scalar = Union[float, "Dual"]

_LOG_2PI = math.log(2.0 * math.pi)


@dataclass(frozen=True)
class Dual:
    """a + b*eps with eps^2 = 0."""

    primal: float
    tangent: float = 0.0

    def __add__(self, other):
        o = _lift(other)
        return Dual(self.primal + o.primal, self.tangent + o.tangent)

    __radd__ = __add__

    def __neg__(self):
        return Dual(-self.primal, -self.tangent)

    def __sub__(self, other):
        o = _lift(other)
        return Dual(self.primal - o.primal, self.tangent - o.tangent)

    def __rsub__(self, other):
        return _lift(other).__sub__(self)

    def __mul__(self, other):
        o = _lift(other)
        return Dual(self.primal * o.primal, self.primal * o.tangent + self.tangent * o.primal)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _lift(other)
        return Dual(
            self.primal / o.primal,
            (self.tangent * o.primal - self.primal * o.tangent) / (o.primal * o.primal),
        )

    def __rtruediv__(self, other):
        return _lift(other).__truediv__(self)

    def __pow__(self, k):
        if not isinstance(k, (int, float)):
            return NotImplemented
        return Dual(self.primal**k, k * self.primal ** (k - 1) * self.tangent)

    # branch conditions compare primal values only
    def __lt__(self, other):
        return self.primal < primal(other)

    def __le__(self, other):
        return self.primal <= primal(other)

    def __gt__(self, other):
        return self.primal > primal(other)

    def __ge__(self, other):
        return self.primal >= primal(other)


def _lift(x) -> Dual:
    return x if isinstance(x, Dual) else Dual(float(x))


def primal(x: Scalar) -> float:
    return x.primal if isinstance(x, Dual) else float(x)


def dexp(x: Scalar) -> Scalar:
    if isinstance(x, Dual):
        e = math.exp(x.primal)
        return Dual(e, e * x.tangent)
    return math.exp(x)


def dlog(x: Scalar) -> Scalar:
    if isinstance(x, Dual):
        return Dual(math.log(x.primal), x.tangent / x.primal)
    return math.log(x)


def dsqrt(x: Scalar) -> Scalar:
    if isinstance(x, Dual):
        s = math.sqrt(x.primal)
        return Dual(s, 0.5 * x.tangent / s)
    return math.sqrt(x)


def dabs(x: Scalar) -> Scalar:
    if isinstance(x, Dual):
        return x if x.primal >= 0.0 else -x
    return abs(x)


def normal_pdf(x: Scalar, mean: Scalar = 0.0, std: Scalar = 1.0) -> Scalar:
    z = (x - mean) / std
    return dexp(-0.5 * z * z) / (std * math.sqrt(2.0 * math.pi))


def normal_log_pdf(x: Scalar, mean: Scalar = 0.0, std: Scalar = 1.0) -> Scalar:
    z = (x - mean) / std
    return -0.5 * z * z - dlog(std) - 0.5 * _LOG_2PI


def _instance_dim(model, q) -> int:
    inst = model.real_instance(list(map(float, q)))
    if inst is None:
        raise NoSupportedInstance("q has no supported instance")
    return inst[2]


def grad_U(model, q) -> np.ndarray:
    """d/dq of U(q) = -log density at the supported instance of q.

    Components past the instance dimension are exactly 0.
    """
    if not model.supports_gradient:
        raise GradientUnsupported(model.name)
    q = np.asarray(q, dtype=float)
    k = _instance_dim(model, q)
    g = np.zeros(len(q))
    for i in range(k):
        values = [Dual(qi, 1.0) if j == i else qi for j, qi in enumerate(map(float, q))]
        res = model.run_values(values)
        if res.kind != "terminated":
            raise NoSupportedInstance("dual re-run left the support")
        lw = res.log_weight
        g[i] = -(lw.tangent if isinstance(lw, Dual) else 0.0)
    return g


def grad_U_fd(model, q, h: float = 1e-5) -> np.ndarray:
    """Central-difference oracle for grad_U (tests only)."""
    if h == 0:
        raise PreconditionViolation("h must be nonzero")
    if not model.supports_gradient:
        raise GradientUnsupported(model.name)
    q = np.asarray(q, dtype=float)
    k = _instance_dim(model, q)

    def U(qq) -> float:
        inst = model.real_instance(list(map(float, qq)))
        if inst is None:
            raise StepCrossesSupportBoundary("perturbed point left the support")
        return -inst[1]

    g = np.zeros(len(q))
    for i in range(k):
        e = np.zeros(len(q))
        e[i] = h
        g[i] = (U(q + e) - U(q - e)) / (2.0 * h)
    return g

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from npimcmc import (
    Dual,
    GradientUnsupported,
    NoSupportedInstance,
    PreconditionViolation,
    StepCrossesSupportBoundary,
    conjugate_normal,
    geometric,
    geometric_real,
    grad_U,
    grad_U_fd,
    normal_log_pdf,
    normal_pdf,
    random_walk,
)
from npimcmc.grad import dabs, dexp, dlog, dsqrt, primal

mod = st.floats(min_value=-5.0, max_value=5.0, allow_nan=False)


@given(mod, mod)
def test_dual_mul_product_rule(a, b):
    x = Dual(a, 1.0) * Dual(b, 0.0)
    assert x.primal == pytest.approx(a * b)
    assert x.tangent == pytest.approx(b)


@given(mod.filter(lambda v: abs(v) > 1e-3), mod)
def test_dual_div_quotient_rule(a, b):
    x = Dual(b, 1.0) / a
    assert x.tangent == pytest.approx(1.0 / a)
    y = b / Dual(a, 1.0)
    assert y.tangent == pytest.approx(-b / (a * a), rel=1e-9, abs=1e-9)


def _fd(f, x, h=1e-6):
    return (f(x + h) - f(x - h)) / (2 * h)


@pytest.mark.parametrize("fn,ref,x", [
    (dexp, math.exp, 0.7),
    (dlog, math.log, 2.3),
    (dsqrt, math.sqrt, 1.9),
    (dabs, abs, -1.1),
    (lambda d: normal_pdf(d, 0.5, 2.0), lambda x: normal_pdf(x, 0.5, 2.0), 0.9),
    (lambda d: normal_log_pdf(d, 0.5, 2.0), lambda x: normal_log_pdf(x, 0.5, 2.0), 0.9),
])
def test_primitives_match_finite_differences(fn, ref, x):
    out = fn(Dual(x, 1.0))
    assert out.primal == pytest.approx(ref(x), rel=1e-12)
    assert out.tangent == pytest.approx(_fd(ref, x), rel=1e-6)


def test_primal_passthrough():
    assert primal(1.5) == 1.5
    assert primal(Dual(2.0, 3.0)) == 2.0


def test_grad_zero_past_instance_dim():
    m = conjugate_normal(2.0)
    g = grad_U(m, [0.5, 9.9, -3.0])  # instance consumes only the first value
    assert g[0] != 0.0
    assert g[1] == 0.0 and g[2] == 0.0


def test_grad_conjugate_closed_form():
    # U(q) = -log phi(q; obs, 1) => dU/dq = q - obs
    m = conjugate_normal(2.0)
    for q in (-1.0, 0.3, 4.2):
        assert grad_U(m, [q])[0] == pytest.approx(q - 2.0, rel=1e-12)


def test_grad_matches_fd_on_random_walk():
    m = random_walk(3.0, bound=2.0)
    q = [1.2, -0.4, 2.1]  # exits the box at the third step
    ad = grad_U(m, q)
    fd = grad_U_fd(m, q)
    assert np.allclose(ad, fd, rtol=1e-5, atol=1e-7)


def test_grad_errors():
    with pytest.raises(GradientUnsupported):
        grad_U(geometric(), [0.0])
    with pytest.raises(NoSupportedInstance):
        grad_U(geometric_real(), [0.5])  # keeps asking for more values
    with pytest.raises(PreconditionViolation):
        grad_U_fd(conjugate_normal(0.0), [0.0], h=0.0)


def test_fd_detects_support_boundary():
    m = random_walk(3.0, bound=2.0)
    # second coordinate sits exactly at the termination boundary
    with pytest.raises(StepCrossesSupportBoundary):
        grad_U_fd(m, [2.0 + 1e-7, 0.0])

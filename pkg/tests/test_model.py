import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from npimcmc import (
    EntropyPair,
    EntropyVector,
    PreconditionViolation,
    Trace,
    broken_fixture,
    check_prefix_property,
    conjugate_normal,
    density,
    find_supported_instance,
    geometric,
    geometric_real,
    igmm,
    igmm_synthetic_data,
    make_model,
    random_walk,
)
from npimcmc.model import MODEL_REGISTRY

NEG_INF = float("-inf")


# --- density / support -----------------------------------------------------


def test_geometric_density_is_flat_on_support():
    m = geometric()
    assert density(m, Trace([False])) == 0.0
    assert density(m, Trace([True, 0.3, False])) == 0.0
    # wrong type at a request point -> out of support
    assert density(m, Trace([0.5])) == NEG_INF
    # unconsumed tail -> out of support
    assert density(m, Trace([False, False])) == NEG_INF


def test_igmm_density_oracle():
    # w(t) = prod_d (1/K) sum_i phi(d | t[1+i], 1) when len-1 == floor(|t1|)
    data = [0.4, -1.0]
    m = igmm(data)
    t = Trace([2.3, 0.0, 1.0])
    K, means = 2, [0.0, 1.0]
    expect = 0.0
    for d in data:
        expect += math.log(
            sum(math.exp(-0.5 * (d - mu) ** 2) / math.sqrt(2 * math.pi) for mu in means) / K
        )
    assert density(m, t) == pytest.approx(expect, rel=1e-12)
    # length mismatch and K = 0 are out of support
    assert density(m, Trace([2.3, 0.0])) == NEG_INF
    assert density(m, Trace([0.4])) == NEG_INF


def test_igmm_floor_boundary_applies_literally():
    data = [0.0]
    m = igmm(data)
    assert density(m, Trace([2.0, 0.0, 0.0])) > NEG_INF  # floor(2.0) = 2
    assert density(m, Trace([2.0, 0.0])) == NEG_INF


def test_random_walk_density():
    m = random_walk(3.0, obs_std=0.1, bound=2.0)
    t = Trace([1.5, 1.0])  # |1.5| < 2, |2.5| >= 2; distance 2.5
    z = (3.0 - 2.5) / 0.1
    expect = -0.5 * z * z - math.log(0.1) - 0.5 * math.log(2 * math.pi)
    assert density(m, t) == pytest.approx(expect, rel=1e-12)
    assert density(m, Trace([0.1])) == NEG_INF  # still inside the box


def test_conjugate_normal_density():
    m = conjugate_normal(2.0)
    expect = -0.5 * (0.7 - 2.0) ** 2 - 0.5 * math.log(2 * math.pi)
    assert density(m, Trace([0.7])) == pytest.approx(expect, rel=1e-12)


# --- instances ---------------------------------------------------------------


def test_real_instance_consumes_prefix():
    m = conjugate_normal(2.0)
    inst = m.real_instance([0.7, 9.0, 9.0])
    assert inst is not None
    t, lw, k = inst
    assert t == Trace([0.7]) and k == 1
    assert lw == pytest.approx(density(m, Trace([0.7])))


def test_real_instance_status_distinguishes_rejection():
    m = igmm([0.0])
    inst, kind = m.real_instance_status([0.4, 1.0])  # floor(0.4) = 0: rejected
    assert inst is None and kind == "rejected"
    inst, kind = m.real_instance_status([2.3, 1.0])  # needs a second mean
    assert inst is None and kind == "needs_more"


def test_find_supported_instance_igmm_walkthrough():
    m = igmm([0.0])
    x = EntropyVector(
        EntropyPair(r, False) for r in [3.4, -1.2, 1.0, 0.5]
    )
    inst = find_supported_instance(m, x)
    assert inst is not None
    t, lw, k = inst
    assert t == Trace([3.4, -1.2, 1.0, 0.5]) and k == 4


def test_find_supported_instance_geometric():
    m = geometric()
    x = EntropyVector([EntropyPair(0.7, False)])
    t, lw, k = find_supported_instance(m, x)
    assert t == Trace([False]) and k == 1
    # mixed instance: coin True then a real step then coin False
    x = EntropyVector([EntropyPair(0.7, True), EntropyPair(-0.2, True), EntropyPair(0.1, False)])
    t, lw, k = find_supported_instance(m, x)
    assert t == Trace([True, -0.2, False]) and k == 3


# --- prefix property ---------------------------------------------------------


@settings(max_examples=30, deadline=None)
@given(st.lists(st.one_of(st.booleans(), st.floats(min_value=-4, max_value=4)),
                min_size=1, max_size=8))
def test_prefix_property_holds_for_engine_models(values):
    t = Trace(values)
    for name in ("geometric", "geometric_real"):
        m = make_model(name)
        supported = [k for k in range(1, len(t) + 1) if density(m, t.prefix(k)) > NEG_INF]
        assert len(supported) <= 1


def test_check_prefix_property_flags_fixture():
    fx = broken_fixture()
    report = check_prefix_property(fx, [Trace([0.1, 0.2, 0.3]), Trace([1.0])])
    assert not report.ok
    assert report.probes == 2 and len(report.violations) == 1
    ok_report = check_prefix_property(geometric(), [Trace([False, False])])
    assert ok_report.ok


# --- predictive density / data generator -------------------------------------


def test_igmm_predictive_closed_form():
    m = igmm([0.0])
    # K = 1, mean 0 -> predictive at 0.0 is log phi(0)
    lp = m.predictive_log_density(Trace([1.2, 0.0]), 0.0)
    assert lp == pytest.approx(-0.5 * math.log(2 * math.pi), rel=1e-12)
    with pytest.raises(PreconditionViolation):
        conjugate_normal(0.0).predictive_log_density(Trace([0.0]), 0.0)


def test_igmm_synthetic_data_deterministic():
    a = igmm_synthetic_data(5)
    b = igmm_synthetic_data(5)
    assert a == b and len(a) == 30


def test_registry():
    assert set(MODEL_REGISTRY) == {
        "igmm", "geometric", "geometric_real", "random_walk",
        "conjugate_normal", "broken-fixture",
    }
    with pytest.raises(PreconditionViolation):
        make_model("nope")


def test_geometric_real_mirrors_geometric_pmf_support():
    m = geometric_real()
    assert density(m, Trace([-0.5])) == 0.0  # k = 0
    assert density(m, Trace([0.5, 1.0, -2.0])) == 0.0  # k = 1
    assert density(m, Trace([0.5, 1.0])) == NEG_INF  # dangling continue

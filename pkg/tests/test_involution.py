import numpy as np
import pytest

from npimcmc import (
    EntropyPair,
    EntropyVector,
    InverseUnavailable,
    LeapfrogStepSpec,
    PreconditionViolation,
    SliceInvalid,
    State,
    Trace,
    check_projection_commutation,
    conjugate_normal,
    direction_wrap,
    geometric,
    grad_U,
    leapfrog_slice,
    leapfrog_update,
    leapfrog_updates,
    project,
    reversal_fixture,
    swap_involution,
)
from npimcmc.involution import states_close


def _random_state(gen, n):
    return State(gen.standard_normal(n), gen.standard_normal(n))


def test_swap_is_involutive():
    gen = np.random.default_rng(0)
    swap = swap_involution()
    for _ in range(100):
        s = _random_state(gen, int(gen.integers(1, 6)))
        assert states_close(swap.apply(swap.apply(s)), s, atol=0.0)
    assert swap.log_abs_det_jac(s) == 0.0


def test_swap_slice_is_last_pair_swapped():
    s = State(np.array([1.0, 2.0]), np.array([3.0, 4.0]))
    y, u = swap_involution().slice(s)
    assert (y, u) == (4.0, 2.0)


def test_leapfrog_spec_validation():
    m = conjugate_normal(0.0)
    with pytest.raises(PreconditionViolation):
        LeapfrogStepSpec(0, 0.1, m)
    with pytest.raises(PreconditionViolation):
        LeapfrogStepSpec(1, 0.0, m)


def test_leapfrog_update_pattern():
    m = conjugate_normal(2.0)
    spec = LeapfrogStepSpec(2, 0.1, m)
    q = np.array([0.5])
    p = np.array([1.0])
    s = State(q, p)
    # m % 3 == 1 or 0 -> half momentum kick; m % 3 == 2 -> full position drift
    g = grad_U(m, q)
    s1 = leapfrog_update(1, spec, True, s)
    assert np.allclose(s1.x, q) and np.allclose(s1.v, p - 0.05 * g)
    s2 = leapfrog_update(2, spec, True, s1)
    assert np.allclose(s2.x, q + 0.1 * s1.v) and np.allclose(s2.v, s1.v)
    with pytest.raises(PreconditionViolation):
        leapfrog_update(7, spec, True, s)  # only 3L = 6 updates exist


def test_leapfrog_forward_backward_roundtrip():
    m = conjugate_normal(2.0)
    spec = LeapfrogStepSpec(3, 0.2, m)
    gen = np.random.default_rng(1)
    for _ in range(50):
        s = State(gen.standard_normal(1), gen.standard_normal(1))
        for idx in range(1, 10):
            fwd = leapfrog_update(idx, spec, True, s)
            back = leapfrog_update(idx, spec, False, fwd)
            assert states_close(back, s, atol=1e-12)
            s = fwd


def test_leapfrog_energy_is_approximately_conserved():
    m = conjugate_normal(2.0)
    spec = LeapfrogStepSpec(10, 0.05, m)

    def H(s):
        q = float(s.x[0])
        return 0.5 * (q - 2.0) ** 2 + 0.5 * float(s.v @ s.v)

    s = State(np.array([0.0]), np.array([1.0]))
    s_end = s
    for fam in leapfrog_updates(spec, True):
        s_end = fam.apply(s_end)
    assert abs(H(s_end) - H(s)) < 0.01


def test_leapfrog_slice_matches_full_update():
    # potential never reads coordinates past the instance, so the slice of
    # an extended state equals the last coordinate of the full update
    m = conjugate_normal(2.0)
    spec = LeapfrogStepSpec(2, 0.1, m)
    gen = np.random.default_rng(2)
    for idx in range(1, 7):
        s = State(gen.standard_normal(3), gen.standard_normal(3))  # instance dim 1
        y, u = leapfrog_slice(idx, spec, True, s)
        full = leapfrog_update(idx, spec, True, s)
        assert y == pytest.approx(full.x[-1], abs=1e-12)
        assert u == pytest.approx(full.v[-1], abs=1e-12)


def test_leapfrog_slice_invalid_when_instance_at_top():
    m = conjugate_normal(2.0)
    spec = LeapfrogStepSpec(1, 0.1, m)
    with pytest.raises(SliceInvalid):
        leapfrog_slice(1, spec, True, State(np.array([0.3]), np.array([0.1])))


def test_direction_wrap():
    m = conjugate_normal(2.0)
    spec = LeapfrogStepSpec(1, 0.3, m)
    fam = leapfrog_updates(spec, True)[0]
    wrapped = direction_wrap(fam)
    s = State(np.array([0.4]), np.array([-0.2]))
    fwd = wrapped.family(True).apply(s)
    assert states_close(wrapped.family(False).apply(fwd), s, atol=1e-12)
    assert wrapped.family(False).log_abs_det_jac(fwd) == 0.0


def test_inverse_unavailable_for_non_involutive_without_wrap():
    from npimcmc.involution import BijectionFamily

    class ShearFam(BijectionFamily):
        def apply(self, s):
            return s

    with pytest.raises(InverseUnavailable):
        ShearFam().inverse(State(np.zeros(1), np.zeros(1)))


def test_projection_commutation_swap_passes_reversal_fails():
    m = geometric()
    gen = np.random.default_rng(3)
    swap = swap_involution()
    rev = reversal_fixture()
    # trace [F] padded by one extra pair: instance dim 1, state dim 2
    x = EntropyVector([EntropyPair(0.7, False), EntropyPair(1.3, True)])
    v = EntropyVector([EntropyPair(-0.2, True), EntropyPair(0.5, False)])
    s = State(x, v)
    assert check_projection_commutation(swap, m, s, 1)
    assert check_projection_commutation(swap, m, s, 2)
    assert not check_projection_commutation(rev, m, s, 1)
    with pytest.raises(PreconditionViolation):
        check_projection_commutation(swap, m, s, 0)  # below instance dim


def test_projection_commutation_leapfrog():
    m = conjugate_normal(2.0)
    spec = LeapfrogStepSpec(2, 0.1, m)
    gen = np.random.default_rng(4)
    for _ in range(20):
        s = State(gen.standard_normal(3), gen.standard_normal(3))
        for fam in leapfrog_updates(spec, True):
            assert check_projection_commutation(fam, m, s, 2)

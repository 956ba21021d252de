import cmath
import math

import numpy as np
import pytest

import oracle
from pathent.linalg import StateVector, max_abs_diff
from pathent.source import (
    TwoQuantonState,
    concurrence_from_alpha,
    concurrence_of_pure_state,
    correlated_pair_state,
    state_from_concurrence,
)

S = 1 / math.sqrt(2)


def test_pair_state_product_at_zero():
    st = correlated_pair_state(0.0)
    assert max_abs_diff(st.amps, np.full(4, 0.5)) < 1e-15


def test_pair_state_bell_at_quarter_pi():
    st = correlated_pair_state(math.pi / 4)
    assert max_abs_diff(st.amps, np.array([0, S, S, 0])) < 1e-15


def test_pair_state_eighth_pi_matches_tensor_oracle():
    st = correlated_pair_state(math.pi / 8)
    # frozen from oracle.angle_state(pi/8): (1/sqrt6, 1/sqrt3, 1/sqrt3, 1/sqrt6)
    frozen = [0.4082482904638631, 0.5773502691896258, 0.5773502691896258, 0.4082482904638631]
    assert max_abs_diff(st.amps, np.array(frozen)) < 1e-15
    assert max_abs_diff(st.amps, np.array(oracle.angle_state(math.pi / 8))) < 1e-15


def test_pair_state_closed_form_with_sign():
    for a in np.linspace(0, math.pi / 2, 33):
        c2 = math.cos(2 * a)
        n = math.sqrt(2 * (1 + c2 * c2))
        want = np.array([c2, 1, 1, c2]) / n
        assert max_abs_diff(correlated_pair_state(a).amps, want) < 1e-12


@pytest.mark.parametrize("alpha, c", [(0.0, 0.0), (math.pi / 4, 1.0), (math.pi / 8, 1 / 3)])
def test_concurrence_from_alpha(alpha, c):
    assert concurrence_from_alpha(alpha) == pytest.approx(c, abs=1e-12)
    assert oracle.concurrence(oracle.angle_state(alpha)) == pytest.approx(c, abs=1e-12)


def test_concurrence_of_pure_state_examples():
    assert concurrence_of_pure_state(StateVector([1, 0, 0, 0])) == 0
    assert concurrence_of_pure_state(StateVector([S, 0, 0, S])) == pytest.approx(1, abs=1e-15)
    assert concurrence_of_pure_state(StateVector([0.6, 0, 0, 0.8j])) == pytest.approx(0.96, abs=1e-15)


@pytest.mark.parametrize("lam", [1j, cmath.exp(0.7j)])
def test_concurrence_global_phase_invariant(lam):
    base = correlated_pair_state(0.3)
    rotated = TwoQuantonState(StateVector(lam * base.amps.amps))
    assert concurrence_of_pure_state(rotated) == pytest.approx(concurrence_of_pure_state(base), abs=1e-15)


def test_state_from_concurrence_examples():
    assert max_abs_diff(state_from_concurrence(0).amps, np.full(4, 0.5)) < 1e-15
    assert max_abs_diff(state_from_concurrence(1).amps, np.array([0, S, S, 0])) < 1e-15
    assert max_abs_diff(state_from_concurrence(1 / 3).amps, correlated_pair_state(math.pi / 8).amps) < 1e-12


@pytest.mark.parametrize("bad", [-0.01, 1.2])
def test_state_from_concurrence_range(bad):
    with pytest.raises(ValueError, match="out of range"):
        state_from_concurrence(bad)


def test_round_trip_first_octant():
    for a in np.linspace(0, math.pi / 4, 129):
        lhs = state_from_concurrence(concurrence_from_alpha(a))
        assert max_abs_diff(lhs.amps, correlated_pair_state(a).amps) <= 1e-10


def test_second_octant_differs_but_shares_concurrence():
    a = 3 * math.pi / 8
    by_alpha = correlated_pair_state(a)
    by_c = state_from_concurrence(concurrence_from_alpha(a))
    assert by_alpha.amps[0].real < 0 < by_c.amps[0].real
    assert concurrence_of_pure_state(by_alpha) == pytest.approx(concurrence_of_pure_state(by_c), abs=1e-12)


def test_symmetry_periodicity_range():
    for a in np.linspace(-math.pi, math.pi, 101):
        c = concurrence_from_alpha(a)
        assert 0 <= c <= 1
        assert concurrence_from_alpha(math.pi / 2 - a) == pytest.approx(c, abs=1e-12)
        assert concurrence_from_alpha(a + math.pi / 2) == pytest.approx(c, abs=1e-12)


def test_two_quanton_state_rejects_bad_input():
    with pytest.raises(ValueError):
        TwoQuantonState(StateVector([1, 1, 0, 0]))
    with pytest.raises(ValueError):
        TwoQuantonState(StateVector([1, 0]))
    with pytest.raises(ValueError, match="cached concurrence"):
        TwoQuantonState(StateVector([1, 0, 0, 0]), c=0.5)


def test_origin_labels():
    assert correlated_pair_state(0.2).origin == "alpha"
    assert state_from_concurrence(0.2).origin == "concurrence"

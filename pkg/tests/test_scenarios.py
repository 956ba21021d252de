import math

import numpy as np
import pytest

import oracle
from pathent.linalg import StateVector, equal_up_to_global_phase
from pathent.scenarios import (
    SLOT_NAMES,
    TARGET_SLOT,
    VARIANTS,
    JointAmplitudes,
    JointProbabilities,
    PhasePair,
    ScenarioKind,
    bspbs_amplitudes_closed,
    bspbs_probabilities_closed,
    fix_phase_for_half,
    marginals,
    pbs_amplitudes_closed,
    pbs_probabilities_closed,
    phase_convention_map,
    scenario_numeric,
)
from pathent.source import correlated_pair_state, state_from_concurrence
from pathent.verify import expected_fixed_phase

S = 1 / math.sqrt(2)
P, B = ScenarioKind.P_BS, ScenarioKind.BS_P_BS
GRID_C = np.linspace(0, 1, 101)
GRID_T = np.linspace(0, 2 * math.pi, 101)


def quad(x):
    return tuple(x)


# -- scenario_numeric ------------------------------------------------------

def test_numeric_bspbs_bell_no_phase():
    _, jp = scenario_numeric(B, state_from_concurrence(1), PhasePair(0, 0))
    assert quad(jp) == pytest.approx((0, 0, 0.5, 0.5), abs=1e-12)


def test_numeric_pbs_bell_no_phase():
    _, jp = scenario_numeric(P, state_from_concurrence(1), PhasePair(0, 0))
    assert quad(jp) == pytest.approx((0.5, 0.5, 0, 0), abs=1e-12)


def test_numeric_bspbs_product_quarter_turn():
    # frozen from oracle.joint("bs_p_bs", angle_state(0), pi/2, 0): the product
    # source stays a product, so right D0 fires with certainty and left is 50:50
    _, jp = scenario_numeric(B, correlated_pair_state(0), PhasePair(math.pi / 2, 0))
    assert quad(jp) == pytest.approx((0.5, 0, 0.5, 0), abs=1e-12)
    assert quad(jp) == pytest.approx(oracle.joint("bs_p_bs", oracle.angle_state(0), math.pi / 2, 0), abs=1e-15)


def test_product_source_gives_factorized_statistics():
    for kind in ScenarioKind:
        for th in np.linspace(0, 2 * math.pi, 9):
            _, jp = scenario_numeric(kind, state_from_concurrence(0), PhasePair(th, 0.4))
            r, l = marginals(jp)
            assert jp.p00 == pytest.approx(r.p_d0 * l.p_d0, abs=1e-12)
            assert jp.p01 == pytest.approx(r.p_d0 * l.p_d1, abs=1e-12)


def test_numeric_matches_list_oracle():
    rng = np.random.default_rng(7)
    for _ in range(40):
        c, tr, tl = rng.random(), rng.uniform(-7, 7), rng.uniform(-7, 7)
        for kind in ScenarioKind:
            _, jp = scenario_numeric(kind, state_from_concurrence(c), PhasePair(tr, tl))
            ref = oracle.joint(kind.value, oracle.concurrence_state(c), tr, tl)
            assert quad(jp) == pytest.approx(ref, abs=1e-14)


def test_numeric_metadata():
    amps, jp = scenario_numeric("pbs", state_from_concurrence(0.3), PhasePair(0.2, 0.1))
    assert jp.kind is P and jp.c == pytest.approx(0.3) and jp.phases == PhasePair(0.2, 0.1)
    assert amps.probabilities() == pytest.approx(quad(jp), abs=1e-15)


def test_retarder_side_exchange_symmetry():
    src = state_from_concurrence(0.45)
    for kind in ScenarioKind:
        for th in (0.3, 1.7, 4.0):
            _, left = scenario_numeric(kind, src, PhasePair(0, th))
            _, right = scenario_numeric(kind, src, PhasePair(th, 0))
            assert quad(left) == pytest.approx(quad(right.exchange_sides()), abs=1e-12)


# -- P-BS closed forms -----------------------------------------------------

def test_pbs_amplitudes_bell():
    a = pbs_amplitudes_closed(1, PhasePair(0, 0))
    assert quad(a) == pytest.approx((S, S, 0, 0), abs=1e-15)


def test_pbs_amplitudes_product():
    a = pbs_amplitudes_closed(0, PhasePair(0, 0))
    assert quad(a) == pytest.approx((0.5, 0.5, 0.5, 0.5), abs=1e-15)


def test_pbs_amplitudes_match_numeric_under_map():
    # frozen from oracle.joint("p_bs", concurrence_state(0.6), 0.8, 0.3)
    frozen = (0.605411965818968, 0.20026144679462313, 0.1815304705408409, 0.012796116845567675)
    closed = pbs_amplitudes_closed(0.6, PhasePair(0.4, 0.15))
    _, num = scenario_numeric(P, state_from_concurrence(0.6), phase_convention_map(P, 0.4, 0.15))
    assert closed.probabilities() == pytest.approx(frozen, abs=1e-12)
    assert quad(num) == pytest.approx(frozen, abs=1e-12)


def test_pbs_amplitudes_do_not_match_without_map():
    closed = pbs_amplitudes_closed(0.6, PhasePair(0.4, 0.15))
    _, num = scenario_numeric(P, state_from_concurrence(0.6), PhasePair(0.4, 0.15))
    assert max(abs(a - b) for a, b in zip(closed.probabilities(), num)) > 1e-2


@pytest.mark.parametrize(
    "c, theta, expected",
    [(1, 0, (0.5, 0.5, 0, 0)), (1, math.pi / 4, (0.25, 0.25, 0.25, 0.25))],
)
def test_pbs_probability_points(c, theta, expected):
    assert quad(pbs_probabilities_closed(c, theta)) == pytest.approx(expected, abs=1e-12)


def test_pbs_product_state_detector_asymmetry():
    th = 0.37
    jp = pbs_probabilities_closed(0, th)
    up, down = (1 + math.sin(2 * th)) / 4, (1 - math.sin(2 * th)) / 4
    assert quad(jp) == pytest.approx((up, down, up, down), abs=1e-12)


def test_pbs_bell_reduces_to_cos_sin():
    for th in np.linspace(0, math.pi, 13):
        jp = pbs_probabilities_closed(1, th)
        c2, s2 = math.cos(th) ** 2 / 2, math.sin(th) ** 2 / 2
        assert quad(jp) == pytest.approx((c2, c2, s2, s2), abs=1e-12)


# -- BS-P-BS closed forms --------------------------------------------------

def test_bspbs_amplitudes_points():
    assert quad(bspbs_amplitudes_closed(1, PhasePair(0, 0))) == pytest.approx((0, 0, S, S), abs=1e-15)
    assert quad(bspbs_amplitudes_closed(0, PhasePair(0, 0))) == pytest.approx((0.5,) * 4, abs=1e-15)


def test_bspbs_amplitudes_equal_numeric_up_to_phase():
    num, _ = scenario_numeric(B, state_from_concurrence(0.6), PhasePair(0.4, 0.15))
    closed = bspbs_amplitudes_closed(0.6, PhasePair(0.4, 0.15))
    assert equal_up_to_global_phase(StateVector(quad(num)), StateVector(quad(closed)), 1e-10)
    ref = oracle.joint_amplitudes("bs_p_bs", oracle.concurrence_state(0.6), 0.4, 0.15)
    assert equal_up_to_global_phase(StateVector(ref), StateVector(quad(closed)), 1e-10)


@pytest.mark.parametrize(
    "c, theta, expected",
    [
        (1, 0, (0, 0, 0.5, 0.5)),
        (0, 0, (0.25,) * 4),
        # product source: values computed from the formula and the list oracle
        (0, math.pi / 2, (0.5, 0, 0.5, 0)),
        (0, 3 * math.pi / 2, (0, 0.5, 0, 0.5)),
    ],
)
def test_bspbs_probability_points(c, theta, expected):
    assert quad(bspbs_probabilities_closed(c, theta)) == pytest.approx(expected, abs=1e-12)


def test_bspbs_bell_curves():
    for th in np.linspace(0, 2 * math.pi, 64):
        s, c = math.sin(th / 2) ** 2 / 2, math.cos(th / 2) ** 2 / 2
        assert quad(bspbs_probabilities_closed(1, th)) == pytest.approx((s, s, c, c), abs=1e-12)


def test_bspbs_is_pair_swapped_pbs_at_half_angle():
    for th in np.linspace(0, 2 * math.pi, 41):
        lhs = bspbs_probabilities_closed(1, th)
        rhs = pbs_probabilities_closed(1, th / 2).swap_pairs()
        assert quad(lhs) == pytest.approx(quad(rhs), abs=1e-12)


@pytest.mark.parametrize("fn", [pbs_probabilities_closed, bspbs_probabilities_closed])
def test_closed_forms_reject_bad_c(fn):
    with pytest.raises(ValueError, match="out of range"):
        fn(1.5, 0.0)


# -- convention map --------------------------------------------------------

def test_phase_convention_map():
    assert phase_convention_map("bs_p_bs", 0.8) == PhasePair(0.8, 0.0)
    assert phase_convention_map("pbs", 0.8) == PhasePair(1.6, 0.0)
    assert phase_convention_map(P, 0.0) == PhasePair(0.0, 0.0)


# -- grids -----------------------------------------------------------------

def test_oracle_equivalence_and_normalization_grid():
    worst = 0.0
    for c in GRID_C:
        src = state_from_concurrence(c)
        for th in GRID_T:
            for kind, closed in ((B, bspbs_probabilities_closed), (P, pbs_probabilities_closed)):
                amps_cf = closed(c, th)
                _, num = scenario_numeric(kind, src, phase_convention_map(kind, th))
                worst = max(worst, max(abs(a - b) for a, b in zip(amps_cf, num)))
                assert abs(sum(num) - 1) <= 1e-12 and abs(sum(amps_cf) - 1) <= 1e-12
    assert worst <= 1e-10


def test_amplitude_probability_consistency():
    for c in np.linspace(0, 1, 21):
        for th in np.linspace(0, 2 * math.pi, 21):
            pp = PhasePair(th, 0)
            assert pbs_amplitudes_closed(c, pp).probabilities() == pytest.approx(
                quad(pbs_probabilities_closed(c, th)), abs=1e-12)
            assert bspbs_amplitudes_closed(c, pp).probabilities() == pytest.approx(
                quad(bspbs_probabilities_closed(c, th)), abs=1e-12)


# -- fixed phases ----------------------------------------------------------

def test_fix_phase_examples():
    assert fix_phase_for_half(1, "pp") == 0.0
    assert fix_phase_for_half(0, "pp") == pytest.approx(math.pi / 4)
    th = fix_phase_for_half(0.6, "pp")
    assert th == pytest.approx(0.5 * math.atan2(0.8, 0.6), abs=1e-15)
    assert th == pytest.approx(0.46364760900080615, abs=1e-15)
    assert pbs_probabilities_closed(0.6, th).p00 == pytest.approx(0.5, abs=1e-12)


def test_fix_phase_pp_companions_from_oracle():
    # independent evolution (list oracle) decides the slot assignment:
    # crossed slot D0D1' carries (1 - C^2)/2, D1D0' is empty
    for c in np.linspace(0, 1, 21):
        th = fix_phase_for_half(c, "pp")
        got = oracle.joint("p_bs", oracle.concurrence_state(c), 2 * th, 0)
        assert got == pytest.approx((0.5, c * c / 2, (1 - c * c) / 2, 0.0), abs=1e-12)


@pytest.mark.parametrize("kind", list(ScenarioKind))
@pytest.mark.parametrize("variant", VARIANTS)
def test_fixed_phase_family(kind, variant):
    target = TARGET_SLOT[kind][variant]
    closed = pbs_probabilities_closed if kind is P else bspbs_probabilities_closed
    for c in np.linspace(0, 1, 21):
        th = fix_phase_for_half(c, variant, kind)
        _, num = scenario_numeric(kind, state_from_concurrence(c), phase_convention_map(kind, th))
        got = dict(zip(SLOT_NAMES, num))
        want = expected_fixed_phase(c, target)
        assert got[target] == pytest.approx(0.5, abs=1e-12)
        for k in SLOT_NAMES:
            assert got[k] == pytest.approx(want[k], abs=1e-12)
        assert dict(zip(SLOT_NAMES, closed(c, th)))[target] == pytest.approx(0.5, abs=1e-12)


def test_fix_phase_rejects_bad_input():
    with pytest.raises(ValueError):
        fix_phase_for_half(1.1, "pp")
    with pytest.raises(ValueError):
        fix_phase_for_half(0.5, "xx")


# -- marginals -------------------------------------------------------------

def test_marginals():
    r, l = marginals(pbs_probabilities_closed(1, 0))
    assert tuple(r) == pytest.approx((0.5, 0.5)) and tuple(l) == pytest.approx((0.5, 0.5))
    th = 0.6
    r, _ = marginals(pbs_probabilities_closed(0, th))
    assert r.p_d0 == pytest.approx((1 + math.sin(2 * th)) / 2, abs=1e-12)
    r, l = marginals(JointProbabilities(0.25, 0.25, 0.25, 0.25))
    assert tuple(r) == tuple(l) == (0.5, 0.5)


def test_joint_types_validate():
    with pytest.raises(ValueError):
        JointProbabilities(0.5, 0.5, 0.5, 0.0)
    with pytest.raises(ValueError):
        JointAmplitudes(1, 1, 0, 0)
    with pytest.raises(ValueError):
        ScenarioKind.parse("mz")

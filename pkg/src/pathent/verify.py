"""Grid checks of closed forms against the tensor-evolution oracle.

Each suite records the largest deviation it saw and the grid cell where it
happened. A suite passes when that deviation is within its tolerance. The
tolerance is the suite's own default unless a tighter ceiling is passed in.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import scenarios as sc
from .elements import bs_5050, compose, make_retarder
from .linalg import DEFAULT_TOL, ORACLE_TOL, StateVector, max_abs_diff
from .single import Port, bs_output, input_state, mz_probabilities, mz_probabilities_closed, mz_transfer, mz_transfer_closed
from .source import concurrence_from_alpha, concurrence_of_pure_state, correlated_pair_state, state_from_concurrence


@dataclass
class SuiteResult:
    name: str
    max_dev: float
    tol: float
    worst: str

    @property
    def passed(self) -> bool:
        return self.max_dev <= self.tol

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        out = f"{status}  {self.name:<24} max deviation {self.max_dev:.3e}  (tol {self.tol:.0e})"
        if not self.passed:
            out += f"  worst at {self.worst}"
        return out


class _Tracker:
    def __init__(self):
        self.max_dev = 0.0
        self.worst = "-"

    def update(self, dev: float, where: str):
        # NaN must count as a failure
        if dev > self.max_dev or math.isnan(dev):
            self.max_dev = dev if not math.isnan(dev) else math.inf
            self.worst = where


def _quad_dev(a, b) -> float:
    return float(np.max(np.abs(np.subtract(tuple(a), tuple(b)))))


def _oracle_bspbs(grid: int) -> _Tracker:
    t = _Tracker()
    for c in np.linspace(0, 1, grid):
        src = state_from_concurrence(c)
        for th in np.linspace(0, 2 * math.pi, grid):
            _, num = sc.scenario_numeric(sc.ScenarioKind.BS_P_BS, src, sc.phase_convention_map("bs_p_bs", th))
            t.update(_quad_dev(sc.bspbs_probabilities_closed(c, th), num), f"c={c:.6g}, theta={th:.6g}")
    return t


def _oracle_pbs(grid: int) -> _Tracker:
    t = _Tracker()
    for c in np.linspace(0, 1, grid):
        src = state_from_concurrence(c)
        for th in np.linspace(0, 2 * math.pi, grid):
            _, num = sc.scenario_numeric(sc.ScenarioKind.P_BS, src, sc.phase_convention_map("p_bs", th))
            t.update(_quad_dev(sc.pbs_probabilities_closed(c, th), num), f"c={c:.6g}, theta={th:.6g}")
    return t


def _oracle_amplitudes(grid: int) -> _Tracker:
    """Both retarders nonzero: BS-P-BS up to global phase, P-BS in probability."""
    t = _Tracker()
    n = max(3, int(round(math.sqrt(grid))) + 2)
    phases = np.linspace(-math.pi, math.pi, n)
    for c in np.linspace(0, 1, n):
        src = state_from_concurrence(c)
        for tr in phases:
            for tl in phases:
                pp = sc.PhasePair(tr, tl)
                where = f"c={c:.6g}, theta_r={tr:.6g}, theta_l={tl:.6g}"
                num, _ = sc.scenario_numeric("bs_p_bs", src, pp)
                closed = sc.bspbs_amplitudes_closed(c, pp)
                u, v = StateVector(tuple(num)), StateVector(tuple(closed))
                k = int(np.argmax(np.abs(v.amps)))
                lam = u.amps[k] / v.amps[k]
                t.update(float(np.max(np.abs(u.amps - lam / abs(lam) * v.amps))), "bs_p_bs " + where)
                _, nump = sc.scenario_numeric("p_bs", src, sc.phase_convention_map("p_bs", tr, tl))
                t.update(_quad_dev(sc.pbs_amplitudes_closed(c, pp).probabilities(), nump), "p_bs " + where)
    return t


def _normalization(grid: int) -> _Tracker:
    t = _Tracker()
    for c in np.linspace(0, 1, grid):
        src = state_from_concurrence(c)
        for th in np.linspace(0, 2 * math.pi, grid):
            for kind in sc.ScenarioKind:
                _, num = sc.scenario_numeric(kind, src, sc.PhasePair(th))
                t.update(abs(sum(num) - 1.0), f"{kind.value} numeric c={c:.6g}, theta={th:.6g}")
            t.update(abs(sum(sc.pbs_probabilities_closed(c, th)) - 1.0), f"p_bs closed c={c:.6g}, theta={th:.6g}")
            t.update(abs(sum(sc.bspbs_probabilities_closed(c, th)) - 1.0), f"bs_p_bs closed c={c:.6g}, theta={th:.6g}")
    return t


def _concurrence(grid: int) -> _Tracker:
    t = _Tracker()
    for a in np.linspace(0, math.pi / 4, grid):
        st = correlated_pair_state(a)
        c = concurrence_from_alpha(a)
        t.update(abs(c - concurrence_of_pure_state(st)), f"alpha={a:.6g} (formula vs 2|ad-bc|)")
        t.update(max_abs_diff(state_from_concurrence(c).amps, st.amps), f"alpha={a:.6g} (round trip)")
    return t


_COMPANIONS = {
    "p00": {"p11": "sq", "p01": "rest", "p10": "zero"},
    "p11": {"p00": "sq", "p10": "rest", "p01": "zero"},
    "p01": {"p10": "sq", "p00": "rest", "p11": "zero"},
    "p10": {"p01": "sq", "p11": "rest", "p00": "zero"},
}


def expected_fixed_phase(c: float, target: str) -> dict[str, float]:
    """Quadruple at a fixed-phase point: target 1/2, others C^2/2, (1-C^2)/2, 0."""
    vals = {"sq": c * c / 2, "rest": (1 - c * c) / 2, "zero": 0.0}
    out = {target: 0.5}
    out.update({slot: vals[k] for slot, k in _COMPANIONS[target].items()})
    return out


def _fixed_phase(grid: int) -> _Tracker:
    t = _Tracker()
    for c in np.linspace(0, 1, grid):
        for kind in sc.ScenarioKind:
            src = state_from_concurrence(c)
            for variant in sc.VARIANTS:
                th = sc.fix_phase_for_half(c, variant, kind)
                _, num = sc.scenario_numeric(kind, src, sc.phase_convention_map(kind, th))
                want = expected_fixed_phase(c, sc.TARGET_SLOT[kind][variant])
                got = dict(zip(sc.SLOT_NAMES, num))
                dev = max(abs(got[k] - want[k]) for k in sc.SLOT_NAMES)
                t.update(dev, f"{kind.value} {variant} c={c:.6g}")
    return t


def _single_quanton(grid: int) -> _Tracker:
    t = _Tracker()
    alphas = np.linspace(0, math.pi / 2, grid)
    thetas = np.linspace(0, 2 * math.pi, grid)
    for a in alphas:
        for port in Port:
            _, pair = bs_output(input_state(port, a))
            t.update(max(abs(pair.p_d0 - 0.5), abs(pair.p_d1 - 0.5)), f"bare BS alpha={a:.6g} {port.value}")
            for th in thetas:
                d = _quad_dev(mz_probabilities(a, th, port), mz_probabilities_closed(a, th, port))
                t.update(d, f"MZ alpha={a:.6g}, theta={th:.6g}, {port.value}")
    for th in thetas:
        t.update(max_abs_diff(mz_transfer(th), mz_transfer_closed(th)), f"MZ matrix theta={th:.6g}")
    return t


def _unitarity(grid: int) -> _Tracker:
    t = _Tracker()
    bs = bs_5050()
    for th in np.linspace(-2 * math.pi, 2 * math.pi, grid):
        for m, label in (
            (make_retarder(th).matrix, "retarder"),
            (make_retarder(th, "lower").matrix, "lower retarder"),
            (compose([bs, make_retarder(th), bs]), "MZ chain"),
            (compose([make_retarder(th), bs]), "P-BS chain"),
        ):
            dev = float(np.max(np.abs(m.data.conj().T @ m.data - np.eye(2))))
            t.update(dev, f"{label} theta={th:.6g}")
    dev = float(np.max(np.abs(bs.matrix.data.conj().T @ bs.matrix.data - np.eye(2))))
    t.update(dev, "50:50 splitter")
    return t


SUITES: dict[str, tuple[Callable[[int], _Tracker], float]] = {
    "oracle_bs_p_bs": (_oracle_bspbs, ORACLE_TOL),
    "oracle_p_bs": (_oracle_pbs, ORACLE_TOL),
    "oracle_amplitudes": (_oracle_amplitudes, ORACLE_TOL),
    "normalization": (_normalization, DEFAULT_TOL),
    "concurrence_round_trip": (_concurrence, ORACLE_TOL),
    "fixed_phase_family": (_fixed_phase, DEFAULT_TOL),
    "single_quanton": (_single_quanton, DEFAULT_TOL),
    "unitarity": (_unitarity, DEFAULT_TOL),
}


def run_suites(grid: int = 101, tol: Optional[float] = None, names=None) -> list[SuiteResult]:
    if grid < 2:
        raise ValueError("grid must be >= 2")
    results = []
    for name, (fn, native) in SUITES.items():
        if names and name not in names:
            continue
        tr = fn(grid)
        limit = native if tol is None else min(native, tol)
        results.append(SuiteResult(name, tr.max_dev, limit, tr.worst))
    return results

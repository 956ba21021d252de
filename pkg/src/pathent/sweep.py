"""Parameter grids over (alpha or C) x theta, written as CSV or JSON.

Every cell comes from :func:`pathent.scenarios.scenario_numeric`. The theta
axis uses the closed-form phase convention, so a P-BS grid lines up
cell-for-cell with the published P-BS formulas.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .linalg import DEFAULT_TOL
from .scenarios import SLOT_NAMES, ScenarioKind, phase_convention_map, scenario_numeric
from .source import concurrence_from_alpha, correlated_pair_state, state_from_concurrence

AXIS_NAMES = ("alpha", "c")


@dataclass(frozen=True)
class AxisRange:
    lo: float
    hi: float
    steps: int

    def __post_init__(self):
        if self.steps < 1:
            raise ValueError("steps must be >= 1")
        if self.steps >= 2 and not self.lo < self.hi:
            raise ValueError(f"range needs lo < hi, got {self.lo!r}..{self.hi!r}")
        if self.steps == 1 and self.lo != self.hi:
            raise ValueError("a single-point axis needs lo == hi")

    @classmethod
    def point(cls, value: float) -> "AxisRange":
        return cls(value, value, 1)

    def values(self) -> list[float]:
        if self.steps == 1:
            return [float(self.lo)]
        return [float(x) for x in np.linspace(self.lo, self.hi, self.steps)]


@dataclass(frozen=True)
class SweepRequest:
    scenario: ScenarioKind
    axis_name: str
    axis: AxisRange
    theta: AxisRange

    def __post_init__(self):
        if self.axis_name not in AXIS_NAMES:
            raise ValueError(f"axis must be one of {AXIS_NAMES}")
        if self.axis_name == "c" and not (0.0 <= self.axis.lo and self.axis.hi <= 1.0):
            raise ValueError("concurrence axis must lie in [0, 1]")


@dataclass
class SweepGrid:
    scenario: ScenarioKind
    axis1_name: str
    axis1: list[float]
    axis2: list[float]
    probs: np.ndarray  # shape (len(axis1), len(axis2), 4), slots in SLOT_NAMES order
    source_origin: str
    axis2_name: str = "theta"

    def quadruple(self, i: int, j: int) -> tuple[float, ...]:
        return tuple(float(x) for x in self.probs[i, j])

    def max_normalization_error(self) -> float:
        return float(np.max(np.abs(self.probs.sum(axis=2) - 1.0)))

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(f"{self.axis1_name},{self.axis2_name}," + ",".join(SLOT_NAMES) + "\n")
        for i, a in enumerate(self.axis1):
            for j, t in enumerate(self.axis2):
                cells = [a, t, *self.probs[i, j]]
                buf.write(",".join(repr(float(x)) for x in cells) + "\n")
        return buf.getvalue()

    def to_json(self) -> str:
        obj = {
            "scenario": self.scenario.value,
            "source": self.source_origin,
            "axis1": {"name": self.axis1_name, "values": self.axis1},
            "axis2": {"name": self.axis2_name, "values": self.axis2},
        }
        for k, name in enumerate(SLOT_NAMES):
            obj[name] = self.probs[:, :, k].tolist()
        return json.dumps(obj, indent=1) + "\n"


def sweep_grid(request: SweepRequest) -> SweepGrid:
    """Evaluate joint probabilities on the request's grid, row = axis value."""
    axis1, thetas = request.axis.values(), request.theta.values()
    phases = [phase_convention_map(request.scenario, t) for t in thetas]
    probs = np.empty((len(axis1), len(thetas), 4))
    for i, a in enumerate(axis1):
        src = correlated_pair_state(a) if request.axis_name == "alpha" else state_from_concurrence(a)
        for j, ph in enumerate(phases):
            _, jp = scenario_numeric(request.scenario, src, ph)
            probs[i, j] = jp.as_tuple()
    grid = SweepGrid(
        request.scenario, request.axis_name, axis1, thetas, probs,
        source_origin="alpha" if request.axis_name == "alpha" else "concurrence",
    )
    err = grid.max_normalization_error()
    if err > DEFAULT_TOL:
        raise ArithmeticError(f"sweep normalization error {err!r}")
    return grid


def concurrence_curve(alphas: Sequence[float]) -> list[tuple[float, float]]:
    return [(float(a), concurrence_from_alpha(a)) for a in alphas]


def concurrence_csv(alphas: Sequence[float]) -> str:
    lines = ["alpha,C"]
    lines += [f"{a!r},{c!r}" for a, c in concurrence_curve(alphas)]
    return "\n".join(lines) + "\n"


def concurrence_json(alphas: Sequence[float]) -> str:
    pts = concurrence_curve(alphas)
    obj = {"quantity": "concurrence", "alpha": [a for a, _ in pts], "C": [c for _, c in pts]}
    return json.dumps(obj, indent=1) + "\n"


DEFAULT_ALPHA = AxisRange(0.0, math.pi / 2, 101)
DEFAULT_C = AxisRange(0.0, 1.0, 101)
DEFAULT_THETA = AxisRange(0.0, 2 * math.pi, 101)

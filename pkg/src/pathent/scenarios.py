"""Joint-detection statistics for the two two-quanton experiments.

``p_bs``: each side has a retarder followed by a 50:50 splitter.
``bs_p_bs``: each side is a full Mach-Zehnder (splitter, retarder, splitter).

:func:`scenario_numeric` evolves the source through the tensored element chains
and is the reference for everything else. The ``*_closed`` functions are the
published closed forms, kept as written. The P-BS closed forms use a phase
equal to half the physical retarder phase. :func:`phase_convention_map`
converts between the two.

Detector labels: ``D`` (first index) sits on the right side, ``D'`` on the
left. Quadruples are always ordered (D0D0', D1D1', D0D1', D1D0').
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .elements import Element, bs_5050, compose, make_retarder
from .linalg import DEFAULT_TOL, apply, kron
from .single import DetectionPair
from .source import TwoQuantonState

# flat |xy> index for each detector pair, in quadruple order
_SLOTS = (0, 3, 1, 2)
SLOT_NAMES = ("p00", "p11", "p01", "p10")


class ScenarioKind(enum.Enum):
    P_BS = "p_bs"
    BS_P_BS = "bs_p_bs"

    @classmethod
    def parse(cls, text: "str | ScenarioKind") -> "ScenarioKind":
        if isinstance(text, ScenarioKind):
            return text
        key = text.strip().lower().replace("-", "_")
        aliases = {"pbs": cls.P_BS, "p_bs": cls.P_BS, "bspbs": cls.BS_P_BS, "bs_p_bs": cls.BS_P_BS}
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown scenario {text!r} (expected pbs or bspbs)") from None


@dataclass(frozen=True)
class PhasePair:
    theta_r: float
    theta_l: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.theta_r) and math.isfinite(self.theta_l)):
            raise ValueError("phases must be finite")

    @property
    def theta_plus(self) -> float:
        return self.theta_r + self.theta_l

    @property
    def theta_minus(self) -> float:
        return self.theta_r - self.theta_l


@dataclass(frozen=True)
class JointAmplitudes:
    a00: complex
    a11: complex
    a01: complex
    a10: complex

    def __post_init__(self):
        total = sum(abs(a) ** 2 for a in self)
        if abs(total - 1.0) > DEFAULT_TOL:
            raise ValueError(f"joint amplitudes have total weight {total!r}")

    def __iter__(self):
        return iter((self.a00, self.a11, self.a01, self.a10))

    def probabilities(self) -> tuple[float, float, float, float]:
        return tuple(abs(a) ** 2 for a in self)


@dataclass(frozen=True)
class JointProbabilities:
    p00: float
    p11: float
    p01: float
    p10: float
    kind: Optional[ScenarioKind] = field(default=None, compare=False)
    c: Optional[float] = field(default=None, compare=False)
    phases: Optional[PhasePair] = field(default=None, compare=False)

    def __post_init__(self):
        for p in self.as_tuple():
            if not -DEFAULT_TOL <= p <= 1.0 + DEFAULT_TOL:
                raise ValueError(f"probability {p!r} outside [0, 1]")
        total = sum(self.as_tuple())
        if abs(total - 1.0) > DEFAULT_TOL:
            raise ValueError(f"joint probabilities sum to {total!r}")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.p00, self.p11, self.p01, self.p10)

    def __iter__(self):
        return iter(self.as_tuple())

    def swap_pairs(self) -> "JointProbabilities":
        """Exchange the coincident pair (p00, p11) with the crossed pair (p01, p10)."""
        return JointProbabilities(self.p01, self.p10, self.p00, self.p11, self.kind, self.c, self.phases)

    def exchange_sides(self) -> "JointProbabilities":
        """Relabel right <-> left detectors, i.e. swap p01 and p10."""
        return JointProbabilities(self.p00, self.p11, self.p10, self.p01, self.kind, self.c, self.phases)


def _chain(kind: ScenarioKind, theta: float) -> list[Element]:
    if kind is ScenarioKind.P_BS:
        return [make_retarder(theta), bs_5050()]
    return [bs_5050(), make_retarder(theta), bs_5050()]


def evolve(
    right: Sequence[Element],
    left: Sequence[Element],
    source: TwoQuantonState,
    kind: Optional[ScenarioKind] = None,
    phases: Optional[PhasePair] = None,
) -> tuple[JointAmplitudes, JointProbabilities]:
    """Run ``source`` through arbitrary right/left element chains.

    Both chains are listed in application order. Returns the amplitudes and
    probabilities in the detector basis.
    """
    u = kron(compose(right), compose(left))
    out = apply(u, source.amps).amps
    amps = JointAmplitudes(*(complex(out[i]) for i in _SLOTS))
    probs = JointProbabilities(*(float(abs(out[i]) ** 2) for i in _SLOTS), kind=kind, c=source.c, phases=phases)
    return amps, probs


def scenario_numeric(
    kind: ScenarioKind | str, source: TwoQuantonState, phases: PhasePair
) -> tuple[JointAmplitudes, JointProbabilities]:
    """Brute-force tensor evolution. ``phases`` are physical retarder phases."""
    kind = ScenarioKind.parse(kind)
    return evolve(_chain(kind, phases.theta_r), _chain(kind, phases.theta_l), source, kind, phases)


def phase_convention_map(kind: ScenarioKind | str, theta_closed: float, theta_l_closed: float = 0.0) -> PhasePair:
    """Physical retarder phases matching the closed forms' phase argument.

    BS-P-BS closed forms use the physical phase directly. The P-BS ones reproduce
    the evolution only when their phase is half the physical one.
    """
    kind = ScenarioKind.parse(kind)
    if kind is ScenarioKind.P_BS:
        return PhasePair(2.0 * theta_closed, 2.0 * theta_l_closed)
    return PhasePair(theta_closed, theta_l_closed)


def _weights(c: float) -> tuple[float, float]:
    c = float(c)
    if not 0.0 <= c <= 1.0:
        raise ValueError(f"concurrence {c!r} out of range [0, 1]")
    return math.sqrt(1.0 - c) / 2, math.sqrt(1.0 + c) / 2


def pbs_amplitudes_closed(c: float, phases: PhasePair) -> JointAmplitudes:
    lo, hi = _weights(c)
    sp, cp = math.sin(phases.theta_plus), math.cos(phases.theta_plus)
    sm, cm = math.sin(phases.theta_minus), math.cos(phases.theta_minus)
    return JointAmplitudes(
        lo * sp + hi * cm,
        -lo * sp + hi * cm,
        lo * cp + hi * sm,
        lo * cp - hi * sm,
    )


def pbs_probabilities_closed(c: float, theta: float) -> JointProbabilities:
    """P-BS quadruple with the left retarder at zero: 1/4 [1 +- C cos 2t +- sqrt(1-C^2) sin 2t]."""
    _weights(c)
    a = c * math.cos(2 * theta)
    b = math.sqrt(1.0 - c * c) * math.sin(2 * theta)
    return JointProbabilities(
        (1 + a + b) / 4, (1 + a - b) / 4, (1 - a + b) / 4, (1 - a - b) / 4,
        kind=ScenarioKind.P_BS, c=c, phases=PhasePair(theta),
    )


def bspbs_amplitudes_closed(c: float, phases: PhasePair) -> JointAmplitudes:
    lo, hi = _weights(c)
    sm, cm = math.sin(phases.theta_minus / 2), math.cos(phases.theta_minus / 2)
    sp, cp = math.sin(phases.theta_plus / 2), math.cos(phases.theta_plus / 2)
    return JointAmplitudes(
        lo * cm + hi * sp,
        lo * cm - hi * sp,
        lo * sm + hi * cp,
        -lo * sm + hi * cp,
    )


def bspbs_probabilities_closed(c: float, theta: float) -> JointProbabilities:
    """BS-P-BS quadruple with the left retarder at zero: 1/4 [1 -+ C cos t +- sqrt(1-C^2) sin t]."""
    _weights(c)
    a = c * math.cos(theta)
    b = math.sqrt(1.0 - c * c) * math.sin(theta)
    return JointProbabilities(
        (1 - a + b) / 4, (1 - a - b) / 4, (1 + a + b) / 4, (1 + a - b) / 4,
        kind=ScenarioKind.BS_P_BS, c=c, phases=PhasePair(theta),
    )


VARIANTS = ("pp", "pm", "mp", "mm")

# variant -> quadruple slot pinned at 1/2
TARGET_SLOT = {
    ScenarioKind.P_BS: {"pp": "p00", "pm": "p01", "mp": "p11", "mm": "p10"},
    ScenarioKind.BS_P_BS: {"pp": "p01", "pm": "p00", "mp": "p10", "mm": "p11"},
}


def fix_phase_for_half(c: float, variant: str = "pp", kind: ScenarioKind | str = ScenarioKind.P_BS) -> float:
    """Phase that pins one joint probability at exactly 1/2.

    ``variant`` gives the signs (numerator, denominator) of the arctangent
    arguments sqrt(1 - C^2) and C: ``pp``, ``pm``, ``mp``, ``mm``. For ``p_bs``
    the result is in the closed-form convention, ``atan2(...) / 2``. For
    ``bs_p_bs`` it is the plain ``atan2(...)``. :data:`TARGET_SLOT` says which
    slot ends up at 1/2.
    """
    kind = ScenarioKind.parse(kind)
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
    _weights(c)
    s1 = 1.0 if variant[0] == "p" else -1.0
    s2 = 1.0 if variant[1] == "p" else -1.0
    angle = math.atan2(s1 * math.sqrt(1.0 - c * c), s2 * c)
    return angle / 2 if kind is ScenarioKind.P_BS else angle


def marginals(jp: JointProbabilities) -> tuple[DetectionPair, DetectionPair]:
    """Single-side detection probabilities (right, left)."""
    right = DetectionPair(jp.p00 + jp.p01, jp.p11 + jp.p10)
    left = DetectionPair(jp.p00 + jp.p10, jp.p11 + jp.p01)
    return right, left

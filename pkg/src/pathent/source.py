"""Momentum-correlated two-quanton source and its concurrence.

Amplitudes are ordered |00>, |01>, |10>, |11> with the right-side quanton as
the first label (see :mod:`pathent.linalg`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .linalg import ORACLE_TOL, StateVector, kron_vec, normalize
from .single import Port, input_state


@dataclass(frozen=True)
class TwoQuantonState:
    """Normalized pure state of the pair.

    ``origin`` records which constructor built it (``"alpha"``,
    ``"concurrence"`` or ``"custom"``); ``alpha``/``c`` cache the parameters.
    """

    amps: StateVector
    alpha: Optional[float] = None
    c: Optional[float] = None
    origin: str = "custom"

    def __post_init__(self):
        amps = self.amps
        if not isinstance(amps, StateVector):
            amps = StateVector(amps)
        if amps.dim != 4:
            raise ValueError(f"two-quanton state needs 4 amplitudes, got {amps.dim}")
        if not amps.normalized:
            amps = StateVector(amps.amps, normalized=True)
        object.__setattr__(self, "amps", amps)
        if self.c is not None and abs(self.c - concurrence_of_pure_state(self)) > ORACLE_TOL:
            raise ValueError("cached concurrence disagrees with the amplitudes")

    def __iter__(self):
        return iter(self.amps)


def _check_c(c: float) -> float:
    c = float(c)
    if not 0.0 <= c <= 1.0:
        raise ValueError(f"concurrence {c!r} out of range [0, 1]")
    return c


def correlated_pair_state(alpha: float) -> TwoQuantonState:
    """|u_a>_R |d_a>_L + |d_a>_R |u_a>_L, normalized.

    Physically meaningful for 0 <= alpha <= pi/2; other angles are evaluated
    by the same formula. For alpha in (pi/4, pi/2] the |00>, |11> amplitudes
    are negative.
    """
    if not math.isfinite(alpha):
        raise ValueError("alpha must be finite")
    up = input_state(Port.UP, alpha).amps
    down = input_state(Port.DOWN, alpha).amps
    raw = StateVector(kron_vec(up, down).amps + kron_vec(down, up).amps)
    amps = normalize(raw)
    return TwoQuantonState(amps, alpha=float(alpha), c=concurrence_from_alpha(alpha), origin="alpha")


def concurrence_from_alpha(alpha: float) -> float:
    """sin^2(2a) / (1 + cos^2(2a))."""
    c2 = math.cos(2 * alpha) ** 2
    return math.sin(2 * alpha) ** 2 / (1.0 + c2)


def concurrence_of_pure_state(s: TwoQuantonState | StateVector) -> float:
    """2 |a d - b c| for amplitudes (a, b, c, d)."""
    amps = s.amps.amps if isinstance(s, TwoQuantonState) else s.amps
    a, b, c, d = amps
    return float(2.0 * abs(a * d - b * c))


def state_from_concurrence(c: float) -> TwoQuantonState:
    """Non-negative representative (sqrt(1-C), sqrt(1+C), sqrt(1+C), sqrt(1-C)) / 2."""
    c = _check_c(c)
    lo, hi = math.sqrt(1.0 - c) / 2, math.sqrt(1.0 + c) / 2
    return TwoQuantonState(StateVector(np.array([lo, hi, hi, lo])), c=c, origin="concurrence")

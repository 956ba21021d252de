"""Single-quanton statistics: angled input states, bare splitter, Mach-Zehnder."""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from .elements import bs_5050, compose, make_retarder
from .linalg import DEFAULT_TOL, SquareMatrix, StateVector, apply


class Port(enum.Enum):
    UP = "up"
    DOWN = "down"

    @classmethod
    def parse(cls, text: str) -> "Port":
        key = text.strip().lower()
        if key in ("u", "up", "upper"):
            return cls.UP
        if key in ("d", "down", "lower"):
            return cls.DOWN
        raise ValueError(f"unknown port {text!r} (expected up/u or down/d)")


@dataclass(frozen=True)
class DetectionPair:
    p_d0: float
    p_d1: float

    def __post_init__(self):
        for p in (self.p_d0, self.p_d1):
            if not -DEFAULT_TOL <= p <= 1.0 + DEFAULT_TOL:
                raise ValueError(f"probability {p!r} outside [0, 1]")
        if abs(self.p_d0 + self.p_d1 - 1.0) > DEFAULT_TOL:
            raise ValueError(f"detection probabilities sum to {self.p_d0 + self.p_d1!r}")

    def __iter__(self):
        return iter((self.p_d0, self.p_d1))


@dataclass(frozen=True)
class PortAngleState:
    """A quanton entering from ``port`` at emission angle ``alpha``.

    With alpha' = pi/4 - alpha the amplitudes are (cos a', sin a') for the
    upper port and (sin a', cos a') for the lower one.
    """

    port: Port
    alpha: float
    amps: StateVector

    @property
    def alpha_prime(self) -> float:
        return math.pi / 4 - self.alpha


def input_state(port: Port | str, alpha: float) -> PortAngleState:
    if isinstance(port, str):
        port = Port.parse(port)
    if not math.isfinite(alpha):
        raise ValueError("alpha must be finite")
    ap = math.pi / 4 - alpha
    c, s = math.cos(ap), math.sin(ap)
    amps = (c, s) if port is Port.UP else (s, c)
    return PortAngleState(port, float(alpha), StateVector(amps, normalized=True))


def _pair(v: StateVector) -> DetectionPair:
    p = v.probabilities()
    return DetectionPair(float(p[0]), float(p[1]))


def bs_output(state: PortAngleState) -> tuple[StateVector, DetectionPair]:
    """Pass ``state`` through one 50:50 splitter; returns output and (P(D0), P(D1))."""
    out = apply(bs_5050().matrix, state.amps)
    return out, _pair(out)


def mz_transfer(theta: float) -> SquareMatrix:
    """Splitter, retarder on the upper arm, splitter."""
    if not math.isfinite(theta):
        raise ValueError("theta must be finite")
    return compose([bs_5050(), make_retarder(theta), bs_5050()])


def mz_transfer_closed(theta: float) -> SquareMatrix:
    """Closed form ``i e^{i theta/2} [[sin h, cos h], [cos h, -sin h]]``, h = theta/2."""
    h = theta / 2
    pref = 1j * cmath.exp(1j * h)
    return SquareMatrix(pref * np.array([[math.sin(h), math.cos(h)], [math.cos(h), -math.sin(h)]]))


def mz_probabilities(alpha: float, theta: float, port: Port | str = Port.UP) -> DetectionPair:
    state = input_state(port, alpha)
    return _pair(apply(mz_transfer(theta), state.amps))


def mz_probabilities_closed(alpha: float, theta: float, port: Port | str = Port.UP) -> DetectionPair:
    if isinstance(port, str):
        port = Port.parse(port)
    ap = math.pi / 4 - alpha
    if port is Port.UP:
        x = theta / 2 + ap
        return DetectionPair(math.sin(x) ** 2, math.cos(x) ** 2)
    x = theta / 2 - ap
    return DetectionPair(math.cos(x) ** 2, math.sin(x) ** 2)

"""Beam splitters, phase retarders and their sequential composition."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence, Union

import numpy as np

from .linalg import DEFAULT_TOL, SquareMatrix

SQRT1_2 = 1.0 / math.sqrt(2.0)


class ConstraintViolation(ValueError):
    """A beam splitter's amplitudes break a losslessness condition.

    ``condition`` is one of ``"magnitude"``, ``"normalization"``, ``"cross-term"``.
    """

    def __init__(self, condition: str, detail: str):
        super().__init__(f"{condition} condition violated: {detail}")
        self.condition = condition


@dataclass(frozen=True)
class BeamSplitter:
    """Lossless two-port splitter laid out as ``[[r0, t1], [t0, r1]]``.

    Port 0 quantons reflect with ``r0`` and transmit with ``t0``; port 1 with
    ``r1`` and ``t1``. Construction validates, in order:

    * |r0| = |r1| and |t0| = |t1|
    * |r_i|^2 + |t_i|^2 = 1
    * conj(r0) t1 + conj(t0) r1 = 0
    """

    r0: complex
    t0: complex
    r1: complex
    t1: complex

    def __post_init__(self):
        r0, t0, r1, t1 = (complex(x) for x in (self.r0, self.t0, self.r1, self.t1))
        for name, val in (("r0", r0), ("t0", t0), ("r1", r1), ("t1", t1)):
            if not cmath.isfinite(val):
                raise ValueError(f"{name} is not finite")
            object.__setattr__(self, name, val)
        if abs(abs(r0) - abs(r1)) > DEFAULT_TOL or abs(abs(t0) - abs(t1)) > DEFAULT_TOL:
            raise ConstraintViolation(
                "magnitude", f"|r0|={abs(r0):.6g}, |r1|={abs(r1):.6g}, |t0|={abs(t0):.6g}, |t1|={abs(t1):.6g}"
            )
        for i, (r, t) in enumerate(((r0, t0), (r1, t1))):
            total = abs(r) ** 2 + abs(t) ** 2
            if abs(total - 1.0) > DEFAULT_TOL:
                raise ConstraintViolation("normalization", f"|r{i}|^2 + |t{i}|^2 = {total:.12g}")
        cross = r0.conjugate() * t1 + t0.conjugate() * r1
        if abs(cross) > DEFAULT_TOL:
            raise ConstraintViolation("cross-term", f"conj(r0) t1 + conj(t0) r1 = {cross:.6g}")

    @cached_property
    def matrix(self) -> SquareMatrix:
        return SquareMatrix([[self.r0, self.t1], [self.t0, self.r1]])

    @property
    def is_balanced(self) -> bool:
        """All four amplitude magnitudes equal, i.e. a 50:50 splitter."""
        return abs(abs(self.r0) - abs(self.t0)) <= DEFAULT_TOL


@dataclass(frozen=True)
class PhaseRetarder:
    """Adds ``exp(i theta)`` to one path; ``arm`` is ``"upper"`` (slot 0) or ``"lower"``."""

    theta: float
    arm: str = "upper"

    def __post_init__(self):
        theta = float(self.theta)
        if not math.isfinite(theta):
            raise ValueError(f"retarder phase must be finite, got {self.theta!r}")
        if self.arm not in ("upper", "lower"):
            raise ValueError(f"arm must be 'upper' or 'lower', got {self.arm!r}")
        object.__setattr__(self, "theta", theta)

    @cached_property
    def matrix(self) -> SquareMatrix:
        phase = cmath.exp(1j * self.theta)
        diag = (phase, 1.0) if self.arm == "upper" else (1.0, phase)
        return SquareMatrix(np.diag(diag))

    @property
    def display_theta(self) -> float:
        # display only; matrix uses the raw value
        return self.theta % (2.0 * math.pi)


Element = Union[BeamSplitter, PhaseRetarder]


def make_beam_splitter(r0: complex, t0: complex, r1: complex, t1: complex) -> BeamSplitter:
    return BeamSplitter(r0=r0, t0=t0, r1=r1, t1=t1)


_BS_5050 = BeamSplitter(SQRT1_2, 1j * SQRT1_2, SQRT1_2, 1j * SQRT1_2)


def bs_5050() -> BeamSplitter:
    """Symmetric 50:50 splitter: real reflection, imaginary transmission."""
    return _BS_5050


def make_retarder(theta: float, arm: str = "upper") -> PhaseRetarder:
    return PhaseRetarder(theta, arm)


def compose(seq: Sequence[Element]) -> SquareMatrix:
    """Transfer matrix of elements listed in application order.

    For ``[e1, e2, e3]`` (e1 hit first) this returns ``M(e3) @ M(e2) @ M(e1)``.
    """
    if len(seq) == 0:
        raise ValueError("cannot compose an empty element sequence")
    out = seq[0].matrix.data
    for el in seq[1:]:
        out = el.matrix.data @ out
    return SquareMatrix(out)

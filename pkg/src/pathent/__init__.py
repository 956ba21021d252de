"""Simulator for phase-retarder interferometry with path-entangled quanton pairs."""

__version__ = "0.1.0"

from .linalg import SquareMatrix, StateVector, apply, dagger, equal_up_to_global_phase, is_unitary, kron
from .elements import BeamSplitter, ConstraintViolation, PhaseRetarder, bs_5050, compose, make_beam_splitter, make_retarder
from .single import DetectionPair, Port, bs_output, input_state, mz_probabilities, mz_transfer
from .source import (
    TwoQuantonState,
    concurrence_from_alpha,
    concurrence_of_pure_state,
    correlated_pair_state,
    state_from_concurrence,
)
from .scenarios import (
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
from .dsl import CircuitSpec, ParseFailure, ValidationError, compile_and_run, parse, parse_text, render, tokenize

__all__ = [
    "SquareMatrix",
    "StateVector",
    "apply",
    "dagger",
    "equal_up_to_global_phase",
    "is_unitary",
    "kron",
    "BeamSplitter",
    "ConstraintViolation",
    "PhaseRetarder",
    "bs_5050",
    "compose",
    "make_beam_splitter",
    "make_retarder",
    "DetectionPair",
    "Port",
    "bs_output",
    "input_state",
    "mz_probabilities",
    "mz_transfer",
    "TwoQuantonState",
    "concurrence_from_alpha",
    "concurrence_of_pure_state",
    "correlated_pair_state",
    "state_from_concurrence",
    "JointAmplitudes",
    "JointProbabilities",
    "PhasePair",
    "ScenarioKind",
    "bspbs_amplitudes_closed",
    "bspbs_probabilities_closed",
    "fix_phase_for_half",
    "marginals",
    "pbs_amplitudes_closed",
    "pbs_probabilities_closed",
    "phase_convention_map",
    "scenario_numeric",
    "CircuitSpec",
    "ParseFailure",
    "ValidationError",
    "compile_and_run",
    "parse",
    "parse_text",
    "render",
    "tokenize",
]

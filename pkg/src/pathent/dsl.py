"""A tiny text format (``.mzc``) for two-arm interferometer experiments.

Example::

    # bs-p-bs, maximally entangled source
    source { alpha = pi/4 }
    right = [bs, phase(pi/3), bs]
    left  = [bs, phase(0), bs]

Grammar::

    file   := source arm arm
    source := "source" "{" assign+ "}"          (exactly one assign, checked later)
    assign := ("alpha" | "concurrence") "=" num [","]
    arm    := ("right" | "left") "=" "[" [element ("," element)*] "]"
    element:= "bs" | "phase" "(" num ")"
    num    := ["-"] ( decimal | "pi" | decimal "*" "pi" | "pi" "/" decimal
                    | decimal "*" "pi" "/" decimal )

Elements are listed in the order the quanton meets them. ``#`` starts a line
comment; a comment before the first token becomes the spec title.

Parsing is split from validation: the parser accepts some structurally
sound but meaningless inputs (empty arms, two source assignments, a second
phase on one arm) and :func:`validate` rejects them with a location.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

from .elements import bs_5050, make_retarder
from .scenarios import JointAmplitudes, JointProbabilities, PhasePair, ScenarioKind, evolve
from .source import correlated_pair_state, state_from_concurrence

KEYWORDS = {"source", "pi"}


class CircuitError(Exception):
    """Error pointing at a location in circuit text (1-based line and column)."""

    def __init__(self, message: str, line: int = 1, column: int = 1, snippet: str = ""):
        self.message = message
        self.line = line
        self.column = column
        self.snippet = snippet
        super().__init__(f"{line}:{column}: {message}")

    def render(self, path: Optional[str] = None) -> str:
        where = f"{path}:" if path else ""
        out = f"{where}{self.line}:{self.column}: {type(self).__name__}: {self.message}"
        if self.snippet:
            out += f"\n    {self.snippet}\n    {' ' * (self.column - 1)}^"
        return out


class ParseFailure(CircuitError):
    pass


class ValidationError(CircuitError):
    pass


@dataclass(frozen=True)
class Token:
    kind: str  # identifier | number | punctuation | keyword
    text: str
    line: int
    column: int


@dataclass(frozen=True)
class BS:
    pass


@dataclass(frozen=True)
class Phase:
    theta: float


ElementSpec = Union[BS, Phase]


@dataclass(frozen=True)
class CircuitSpec:
    right_arm: tuple[ElementSpec, ...]
    left_arm: tuple[ElementSpec, ...]
    alpha: Optional[float] = None
    concurrence: Optional[float] = None
    title: Optional[str] = None

    @property
    def kind(self) -> Optional[ScenarioKind]:
        """The named scenario this spec matches, or None for a custom layout."""
        shapes = {(Phase, BS): ScenarioKind.P_BS, (BS, Phase, BS): ScenarioKind.BS_P_BS}
        r = tuple(type(e) for e in self.right_arm)
        l = tuple(type(e) for e in self.left_arm)
        return shapes.get(r) if r == l else None


# ---------------------------------------------------------------- lexer

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>\#[^\n]*)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)
  | (?P<word>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[=\[\](){},*/\-])
    """,
    re.VERBOSE,
)


def _line_text(text: str, line: int) -> str:
    lines = text.splitlines()
    return lines[line - 1] if 0 < line <= len(lines) else ""


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise ParseFailure(f"illegal character {text[pos]!r}", line, col, _line_text(text, line))
        group, value = m.lastgroup, m.group()
        if group == "word":
            tokens.append(Token("keyword" if value in KEYWORDS else "identifier", value, line, col))
        elif group == "number":
            tokens.append(Token("number", value, line, col))
        elif group == "punct":
            tokens.append(Token("punctuation", value, line, col))
        newlines = value.count("\n")
        if newlines:
            line += newlines
            line_start = pos + value.rfind("\n") + 1
        pos = m.end()
    return tokens


def _leading_title(text: str) -> Optional[str]:
    for raw in text.splitlines():
        s = raw.strip()
        if not s:
            continue
        if s.startswith("#"):
            return s[1:].strip() or None
        return None
    return None


# --------------------------------------------------------------- parser

class _Parser:
    def __init__(self, tokens: list[Token], text: str = ""):
        self.tokens = tokens
        self.text = text
        self.i = 0

    def _fail(self, message: str, tok: Optional[Token] = None) -> ParseFailure:
        if tok is None:
            tok = self.peek() or (self.tokens[-1] if self.tokens else None)
        if tok is None:
            return ParseFailure(message, 1, 1, "")
        return ParseFailure(message, tok.line, tok.column, _line_text(self.text, tok.line) or tok.text)

    def peek(self) -> Optional[Token]:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self) -> Token:
        tok = self.peek()
        if tok is None:
            last = self.tokens[-1] if self.tokens else None
            if last is None:
                raise ParseFailure("unexpected end of input, file is empty", 1, 1, "")
            raise ParseFailure(
                f"unexpected end of input after {last.text!r}",
                last.line, last.column + len(last.text), _line_text(self.text, last.line),
            )
        self.i += 1
        return tok

    def expect(self, text: str) -> Token:
        tok = self.next()
        if tok.text != text:
            raise self._fail(f"expected {text!r}, got {tok.text!r}", tok)
        return tok

    def at(self, text: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.text == text

    def parse_file(self) -> dict:
        out = {"source": [], "arms": []}
        self.parse_source(out)
        self.parse_arm(out)
        self.parse_arm(out)
        tok = self.peek()
        if tok is not None:
            raise self._fail(f"expected end of input, got {tok.text!r}", tok)
        return out

    def parse_source(self, out: dict):
        self.expect("source")
        self.expect("{")
        while True:
            tok = self.next()
            if tok.text not in ("alpha", "concurrence"):
                raise self._fail(f"expected 'alpha' or 'concurrence', got {tok.text!r}", tok)
            self.expect("=")
            out["source"].append((tok, self.parse_num()))
            if self.at(","):
                self.next()
            if self.at("}"):
                self.next()
                return

    def parse_arm(self, out: dict):
        side = self.next()
        if side.text not in ("right", "left"):
            raise self._fail(f"expected 'right' or 'left', got {side.text!r}", side)
        self.expect("=")
        self.expect("[")
        elements = []
        if self.at("]"):
            self.next()
            out["arms"].append((side, elements))
            return
        while True:
            elements.append(self.parse_element())
            tok = self.next()
            if tok.text == "]":
                break
            if tok.text != ",":
                raise self._fail(f"expected ',' or ']', got {tok.text!r}", tok)
        out["arms"].append((side, elements))

    def parse_element(self) -> tuple[Token, ElementSpec]:
        tok = self.next()
        if tok.text == "bs":
            return tok, BS()
        if tok.text == "phase":
            self.expect("(")
            theta = self.parse_num()
            self.expect(")")
            return tok, Phase(theta)
        raise self._fail(f"expected element 'bs' or 'phase', got {tok.text!r}", tok)

    def parse_num(self) -> float:
        sign = 1.0
        if self.at("-"):
            self.next()
            sign = -1.0
        tok = self.next()
        if tok.text == "pi":
            value = math.pi
            if self.at("/"):
                self.next()
                value = math.pi / self._decimal()
            return sign * value
        if tok.kind != "number":
            raise self._fail(f"expected a number or 'pi', got {tok.text!r}", tok)
        value = float(tok.text)
        if self.at("*"):
            self.next()
            self.expect("pi")
            value = value * math.pi
            if self.at("/"):
                self.next()
                value = value / self._decimal()
        return sign * value

    def _decimal(self) -> float:
        tok = self.next()
        if tok.kind != "number":
            raise self._fail(f"expected a number, got {tok.text!r}", tok)
        value = float(tok.text)
        if value == 0.0:
            raise self._fail("division by zero", tok)
        return value


def _located(message: str, tok: Token, text: str) -> ValidationError:
    return ValidationError(message, tok.line, tok.column, _line_text(text, tok.line) or tok.text)


def _build(raw: dict, text: str, title: Optional[str]) -> CircuitSpec:
    fields: dict = {"title": title}
    source = raw["source"]
    if len(source) > 1:
        raise _located("source must set exactly one of alpha or concurrence", source[1][0], text)
    key_tok, value = source[0]
    if key_tok.text == "concurrence":
        if not 0.0 <= value <= 1.0:
            raise _located(f"concurrence out of range [0, 1]: {value!r}", key_tok, text)
        fields["concurrence"] = value
    else:
        fields["alpha"] = value

    arms: dict[str, tuple] = {}
    for side_tok, elements in raw["arms"]:
        if side_tok.text in arms:
            raise _located(f"arm {side_tok.text!r} defined twice", side_tok, text)
        if not elements:
            raise _located(f"arm {side_tok.text!r} is empty", side_tok, text)
        phase_toks = [t for t, e in elements if isinstance(e, Phase)]
        if len(phase_toks) > 1:
            raise _located(f"arm {side_tok.text!r} has more than one phase element", phase_toks[1], text)
        for t, e in elements:
            if isinstance(e, Phase) and not math.isfinite(e.theta):
                raise _located("phase must be finite", t, text)
        arms[side_tok.text] = tuple(e for _, e in elements)
    return CircuitSpec(right_arm=arms["right"], left_arm=arms["left"], **fields)


def validate(spec: CircuitSpec) -> CircuitSpec:
    """Check a programmatically built spec; parsed specs are already validated."""
    if (spec.alpha is None) == (spec.concurrence is None):
        raise ValidationError("source must set exactly one of alpha or concurrence")
    if spec.concurrence is not None and not 0.0 <= spec.concurrence <= 1.0:
        raise ValidationError(f"concurrence out of range [0, 1]: {spec.concurrence!r}")
    for side, arm in (("right", spec.right_arm), ("left", spec.left_arm)):
        if not arm:
            raise ValidationError(f"arm {side!r} is empty")
        if sum(isinstance(e, Phase) for e in arm) > 1:
            raise ValidationError(f"arm {side!r} has more than one phase element")
    return spec


def parse(tokens: list[Token], text: str = "") -> CircuitSpec:
    """Parse and validate a token list. ``text`` (optional) improves error snippets."""
    raw = _Parser(tokens, text).parse_file()
    return _build(raw, text, _leading_title(text) if text else None)


def parse_text(text: str) -> CircuitSpec:
    return parse(tokenize(text), text)


def load(path: str | Path) -> CircuitSpec:
    return parse_text(Path(path).read_text(encoding="utf-8"))


def _fmt(x: float) -> str:
    return repr(float(x))


def render(spec: CircuitSpec) -> str:
    def element(e: ElementSpec) -> str:
        return "bs" if isinstance(e, BS) else f"phase({_fmt(e.theta)})"

    lines = []
    if spec.title:
        lines.append(f"# {spec.title}")
    if spec.alpha is not None:
        lines.append(f"source {{ alpha = {_fmt(spec.alpha)} }}")
    else:
        lines.append(f"source {{ concurrence = {_fmt(spec.concurrence)} }}")
    lines.append("right = [" + ", ".join(element(e) for e in spec.right_arm) + "]")
    lines.append("left = [" + ", ".join(element(e) for e in spec.left_arm) + "]")
    return "\n".join(lines) + "\n"


# ------------------------------------------------------------- compiler

def _elements(arm: tuple[ElementSpec, ...]) -> list:
    return [bs_5050() if isinstance(e, BS) else make_retarder(e.theta) for e in arm]


def _arm_phase(arm: tuple[ElementSpec, ...]) -> float:
    return next((e.theta for e in arm if isinstance(e, Phase)), 0.0)


def compile_and_run(spec: CircuitSpec) -> tuple[JointAmplitudes, JointProbabilities]:
    validate(spec)
    if spec.alpha is not None:
        source = correlated_pair_state(spec.alpha)
    else:
        source = state_from_concurrence(spec.concurrence)
    phases = PhasePair(_arm_phase(spec.right_arm), _arm_phase(spec.left_arm))
    return evolve(_elements(spec.right_arm), _elements(spec.left_arm), source, spec.kind, phases)


def parse_number(text: str) -> float:
    """Evaluate a standalone numeric literal such as ``0.3``, ``pi/4`` or ``-3*pi/2``."""
    p = _Parser(tokenize(text), text)
    value = p.parse_num()
    tok = p.peek()
    if tok is not None:
        raise p._fail(f"unexpected {tok.text!r} after number", tok)
    return value

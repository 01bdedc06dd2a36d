"""Halstead software science measures over the raw token stream.

The operator/operand split lives in ``data/halstead_classification.json`` so
the rule set is inspectable without reading code. Reference point kept by the
tests: ``a = b + c`` gives n1=2 {=, +}, N1=2, n2=3 {a, b, c}, N2=3.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources

from .lexer import tokenize
from .tokens import Token, TokenType


@dataclass(frozen=True)
class HalsteadReport:
    n1: int  # distinct operators
    n2: int  # distinct operands
    N1: int  # total operators
    N2: int  # total operands

    @property
    def vocabulary(self) -> int:
        return self.n1 + self.n2

    @property
    def length(self) -> int:
        return self.N1 + self.N2

    @property
    def volume(self) -> float:
        n = self.vocabulary
        if n <= 1:
            return 0.0
        return self.length * math.log2(n)

    @property
    def difficulty(self) -> float:
        if self.n2 == 0:
            return 0.0
        return (self.n1 / 2.0) * (self.N2 / self.n2)

    @property
    def effort(self) -> float:
        return self.difficulty * self.volume

    @property
    def delivered_bugs(self) -> float:
        return self.volume / 3000.0


class _Classification:
    def __init__(self, raw: dict):
        self.operand_types = frozenset(raw["operand_token_types"])
        self.operand_keywords = frozenset(raw["operand_keywords"])
        self.ignored_types = frozenset(raw["ignored_token_types"])
        self.ignored_operators = frozenset(raw["ignored_operators"])

    def classify(self, tok: Token) -> str | None:
        """Return "operator", "operand", or None for ignored tokens."""
        name = tok.type.name
        if name in self.ignored_types:
            return None
        if name in self.operand_types:
            return "operand"
        if tok.type is TokenType.KEYWORD:
            return "operand" if tok.value in self.operand_keywords else "operator"
        if tok.type is TokenType.OP:
            return None if tok.value in self.ignored_operators else "operator"
        return None


_classification: _Classification | None = None


def classification() -> _Classification:
    global _classification
    if _classification is None:
        raw = json.loads(
            resources.files("pelli.data").joinpath("halstead_classification.json").read_text()
        )
        _classification = _Classification(raw)
    return _classification


def halstead(source: str | None = None, tokens: list[Token] | None = None) -> HalsteadReport:
    if tokens is None:
        if source is None:
            raise ValueError("need source or tokens")
        tokens = tokenize(source)
    rules = classification()
    operators: dict[str, int] = {}
    operands: dict[str, int] = {}
    for tok in tokens:
        kind = rules.classify(tok)
        if kind == "operator":
            operators[tok.value] = operators.get(tok.value, 0) + 1
        elif kind == "operand":
            operands[tok.value] = operands.get(tok.value, 0) + 1
    return HalsteadReport(
        n1=len(operators),
        n2=len(operands),
        N1=sum(operators.values()),
        N2=sum(operands.values()),
    )

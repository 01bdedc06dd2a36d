"""Token definitions shared by the lexer and parser."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field


class TokenType(enum.Enum):
    NAME = "NAME"
    KEYWORD = "KEYWORD"
    NUMBER = "NUMBER"
    STRING = "STRING"
    FSTRING = "FSTRING"
    OP = "OP"
    NEWLINE = "NEWLINE"
    INDENT = "INDENT"
    DEDENT = "DEDENT"
    COMMENT = "COMMENT"
    ENDMARKER = "ENDMARKER"


# 3.10 hard keywords. match/case are soft keywords and lex as plain names.
KEYWORDS = frozenset(
    {
        "False", "None", "True", "and", "as", "assert", "async", "await",
        "break", "class", "continue", "def", "del", "elif", "else", "except",
        "finally", "for", "from", "global", "if", "import", "in", "is",
        "lambda", "nonlocal", "not", "or", "pass", "raise", "return", "try",
        "while", "with", "yield",
    }
)

# Longest-match first.
OPERATORS = (
    "**=", "//=", ">>=", "<<=", "...", "!=",
    ">=", "<=", "==", "->", ":=", "+=", "-=", "*=", "/=", "%=", "@=",
    "&=", "|=", "^=", "**", "//", "<<", ">>",
    "+", "-", "*", "/", "%", "@", "&", "|", "^", "~", "<", ">",
    "(", ")", "[", "]", "{", "}", ",", ":", ".", ";", "=",
)

OPEN_BRACKETS = {"(": ")", "[": "]", "{": "}"}
CLOSE_BRACKETS = {")": "(", "]": "[", "}": "{"}

AUGMENTED_ASSIGN_OPS = frozenset(
    {"+=", "-=", "*=", "/=", "//=", "%=", "@=", "&=", "|=", "^=", ">>=", "<<=", "**="}
)

COMPARISON_OPS = frozenset({"<", ">", "==", ">=", "<=", "!="})


@dataclass(frozen=True)
class FStringField:
    """One interpolated expression inside an f-string.

    ``source`` is the expression text without conversion or format spec;
    ``line``/``col`` point at its opening position in the original file.
    """

    source: str
    line: int
    col: int


@dataclass
class Token:
    type: TokenType
    value: str
    line: int
    col: int
    end_line: int
    end_col: int
    # FSTRING only: interpolations in document order, format-spec nesting flattened.
    fields: tuple[FStringField, ...] = field(default=())

    def __repr__(self) -> str:  # compact; tokens show up in parser errors
        return f"Token({self.type.name}, {self.value!r}, {self.line}:{self.col})"


class SourceSyntaxError(Exception):
    """Raised by the lexer or parser on malformed input."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} (line {line}, column {col})")
        self.message = message
        self.line = line
        self.col = col

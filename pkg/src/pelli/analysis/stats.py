"""Physical line statistics.

Definitions used by the maintainability index and the comment-density metric:

* loc: physical lines in the file; a trailing newline does not add a line;
  empty file = 0.
* comment_lines: lines carrying a ``#`` comment token plus every line spanned
  by a docstring. A line holding both code and a comment counts as both a
  comment line and an sloc line, so loc = sloc + comments + blank need not
  hold.
* sloc: lines touched by at least one code token, where docstrings are
  documentation rather than code; a multi-line non-docstring string counts
  every spanned line as code.
* method_count: function and method definitions (lambdas excluded).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import ast_nodes as ast
from .lexer import tokenize
from .parser import Parser
from .tokens import Token, TokenType

_STRUCTURAL = (
    TokenType.NEWLINE,
    TokenType.INDENT,
    TokenType.DEDENT,
    TokenType.ENDMARKER,
)


@dataclass(frozen=True)
class SourceStats:
    loc: int
    sloc: int
    comment_lines: int
    blank_lines: int
    method_count: int

    @property
    def comments_to_loc(self) -> float:
        if self.loc == 0:
            return 0.0
        return self.comment_lines / self.loc

    @property
    def comment_percent(self) -> float:
        return self.comments_to_loc * 100.0


def _docstring_ranges(module: ast.Module) -> list[tuple[int, int]]:
    ranges: list[tuple[int, int]] = []
    for node in ast.walk(module):
        body = getattr(node, "body", None)
        if not isinstance(node, (ast.Module, ast.FunctionDef, ast.ClassDef)) or not body:
            continue
        first = body[0]
        if (
            isinstance(first, ast.ExprStmt)
            and isinstance(first.value, ast.String)
            and not first.value.is_fstring
        ):
            ranges.append((first.value.line, first.value.end_line))
    return ranges


def source_stats(
    source: str,
    tokens: list[Token] | None = None,
    module: ast.Module | None = None,
) -> SourceStats:
    if tokens is None:
        tokens = tokenize(source)
    if module is None:
        module = Parser(tokens).parse_module()

    text = source.replace("\r\n", "\n").replace("\r", "\n")
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    loc = len(lines)
    blank = sum(1 for line in lines if not line.strip())

    doc_ranges = _docstring_ranges(module)

    def in_docstring(tok: Token) -> bool:
        if tok.type not in (TokenType.STRING, TokenType.FSTRING):
            return False
        return any(lo <= tok.line and tok.end_line <= hi for lo, hi in doc_ranges)

    code_lines: set[int] = set()
    comment_lines: set[int] = set()
    for tok in tokens:
        if tok.type is TokenType.COMMENT:
            comment_lines.add(tok.line)
        elif tok.type not in _STRUCTURAL and not in_docstring(tok):
            code_lines.update(range(tok.line, tok.end_line + 1))
    for lo, hi in doc_ranges:
        comment_lines.update(range(lo, hi + 1))

    methods = sum(1 for node in ast.walk(module) if isinstance(node, ast.FunctionDef))

    return SourceStats(
        loc=loc,
        sloc=len(code_lines),
        comment_lines=len(comment_lines),
        blank_lines=blank,
        method_count=methods,
    )

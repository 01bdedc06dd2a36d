"""From-scratch Python lexer.

Produces a token stream close to the shape of the stdlib ``tokenize`` module:
logical NEWLINE tokens, INDENT/DEDENT pairs, comments as first-class tokens.
Blank and comment-only lines never affect indentation. F-string interpolations
are extracted into ``Token.fields`` so the parser can analyze them without the
lexer growing a full expression grammar.

Covered subset: 3.10 syntax minus match/case (soft keywords lex as names).
"""

from __future__ import annotations

import re

from .tokens import (
    CLOSE_BRACKETS,
    KEYWORDS,
    OPEN_BRACKETS,
    OPERATORS,
    FStringField,
    SourceSyntaxError,
    Token,
    TokenType,
)

_NUMBER_RE = re.compile(
    r"""
    0[xX](?:_?[0-9a-fA-F])+[lL]?
  | 0[oO](?:_?[0-7])+
  | 0[bB](?:_?[01])+
  | (?:
        (?:\d(?:_?\d)*)?\.\d(?:_?\d)*
      | \d(?:_?\d)*\.?
    )(?:[eE][+-]?\d(?:_?\d)*)?[jJ]?
    """,
    re.VERBOSE,
)

_STRING_PREFIXES = frozenset(
    {"r", "b", "u", "f", "br", "rb", "fr", "rf"}
)

_TABSIZE = 8


def _is_name_start(ch: str) -> bool:
    return ch.isalpha() or ch == "_" or ord(ch) > 127


def _is_name_char(ch: str) -> bool:
    return ch.isalnum() or ch == "_" or ord(ch) > 127


class Lexer:
    """Single-use tokenizer over one source string."""

    def __init__(self, source: str):
        # Normalize line endings up front; positions are reported against the
        # normalized text.
        self.src = source.replace("\r\n", "\n").replace("\r", "\n")
        self.i = 0
        self.line = 1
        self.col = 0
        self.tokens: list[Token] = []
        self.indents = [0]
        self.brackets: list[tuple[str, int, int]] = []
        self.at_line_start = True

    def tokenize(self) -> list[Token]:
        src, n = self.src, len(self.src)
        while self.i < n:
            if self.at_line_start and not self.brackets:
                if self._handle_line_start():
                    continue
            ch = src[self.i]
            if ch == "\n":
                self._newline()
            elif ch in " \t\f":
                self.i += 1
                self.col += 1
            elif ch == "\\":
                self._continuation()
            elif ch == "#":
                self._comment()
            elif _is_name_start(ch):
                self._name_or_prefixed_string()
            elif ch.isdigit() or (ch == "." and self.i + 1 < n and src[self.i + 1].isdigit()):
                self._number()
            elif ch in "\"'":
                self._string("")
            else:
                self._operator()

        if self.brackets:
            opener, oline, ocol = self.brackets[-1]
            raise SourceSyntaxError(f"{opener!r} was never closed", oline, ocol)
        last = self.tokens[-1] if self.tokens else None
        if last is not None and last.type not in (TokenType.NEWLINE, TokenType.COMMENT):
            self._emit(TokenType.NEWLINE, "", self.line, self.col, self.line, self.col)
        elif last is not None and last.type is TokenType.COMMENT:
            self._emit(TokenType.NEWLINE, "", self.line, self.col, self.line, self.col)
        while self.indents[-1] > 0:
            self.indents.pop()
            self._emit(TokenType.DEDENT, "", self.line, 0, self.line, 0)
        self._emit(TokenType.ENDMARKER, "", self.line, 0, self.line, 0)
        return self.tokens

    # -- line structure -------------------------------------------------

    def _handle_line_start(self) -> bool:
        """Consume indentation; return True when the whole line was consumed."""
        src, n = self.src, len(self.src)
        width = 0
        while self.i < n and src[self.i] in " \t\f":
            c = src[self.i]
            if c == " ":
                width += 1
            elif c == "\t":
                width = (width // _TABSIZE + 1) * _TABSIZE
            else:
                width = 0
            self.i += 1
            self.col += 1
        if self.i >= n:
            return True
        c = src[self.i]
        if c == "\n":
            self.i += 1
            self.line += 1
            self.col = 0
            return True
        if c == "#":
            self._comment()
            if self.i < n:  # swallow the newline: comment lines are invisible
                self.i += 1
                self.line += 1
                self.col = 0
            return True
        if width > self.indents[-1]:
            self.indents.append(width)
            self._emit(TokenType.INDENT, src[self.i - self.col : self.i], self.line, 0, self.line, self.col)
        else:
            while width < self.indents[-1]:
                self.indents.pop()
                self._emit(TokenType.DEDENT, "", self.line, self.col, self.line, self.col)
            if width != self.indents[-1]:
                raise SourceSyntaxError(
                    "unindent does not match any outer indentation level", self.line, self.col
                )
        self.at_line_start = False
        return False

    def _newline(self) -> None:
        if self.brackets:
            self.i += 1
            self.line += 1
            self.col = 0
            return
        self._emit(TokenType.NEWLINE, "\n", self.line, self.col, self.line, self.col + 1)
        self.i += 1
        self.line += 1
        self.col = 0
        self.at_line_start = True

    def _continuation(self) -> None:
        if self.i + 1 < len(self.src) and self.src[self.i + 1] == "\n":
            self.i += 2
            self.line += 1
            self.col = 0
            return
        raise SourceSyntaxError(
            "unexpected character after line continuation character", self.line, self.col
        )

    def _comment(self) -> None:
        src = self.src
        start = self.i
        end = src.find("\n", start)
        if end == -1:
            end = len(src)
        self._emit(TokenType.COMMENT, src[start:end], self.line, self.col, self.line, self.col + end - start)
        self.col += end - start
        self.i = end

    # -- atoms ------------------------------------------------------------

    def _name_or_prefixed_string(self) -> None:
        src, n = self.src, len(self.src)
        start = self.i
        j = start
        while j < n and _is_name_char(src[j]):
            j += 1
        word = src[start:j]
        if j < n and src[j] in "\"'" and word.lower() in _STRING_PREFIXES:
            # _string expects i/col on the quote; the token spans the prefix too
            self.i = j
            self.col += len(word)
            self._string(word)
            return
        self.i = j
        kind = TokenType.KEYWORD if word in KEYWORDS else TokenType.NAME
        self._emit(kind, word, self.line, self.col, self.line, self.col + len(word))
        self.col += len(word)

    def _number(self) -> None:
        m = _NUMBER_RE.match(self.src, self.i)
        if m is None:  # digit guaranteed by caller, so this is unreachable
            raise SourceSyntaxError("invalid number literal", self.line, self.col)
        text = m.group(0)
        self._emit(TokenType.NUMBER, text, self.line, self.col, self.line, self.col + len(text))
        self.i = m.end()
        self.col += len(text)

    def _string(self, prefix: str) -> None:
        src, n = self.src, len(self.src)
        start_i = self.i - len(prefix)
        start_line, start_col = self.line, self.col - len(prefix)
        quote = src[self.i]
        triple = src[self.i : self.i + 3] == quote * 3
        qlen = 3 if triple else 1
        body_start = self.i + qlen
        body_line = self.line
        body_col = self.col + qlen

        i = body_start
        line, col = body_line, body_col
        while True:
            if i >= n:
                kind = "triple-quoted " if triple else ""
                raise SourceSyntaxError(
                    f"unterminated {kind}string literal", start_line, start_col
                )
            c = src[i]
            if c == "\\":
                if i + 1 < n and src[i + 1] == "\n":
                    i += 2
                    line += 1
                    col = 0
                else:
                    i += 2
                    col += 2
                continue
            if c == "\n":
                if not triple:
                    raise SourceSyntaxError(
                        "unterminated string literal", start_line, start_col
                    )
                i += 1
                line += 1
                col = 0
                continue
            if c == quote and (not triple or src[i : i + 3] == quote * 3):
                break
            i += 1
            col += 1

        body = src[body_start:i]
        end_i = i + qlen
        end_col = col + qlen
        value = src[start_i:end_i]
        is_fstring = "f" in prefix.lower()
        fields: tuple[FStringField, ...] = ()
        if is_fstring:
            fields = _extract_fstring_fields(body, body_line, body_col)
        tok = Token(
            TokenType.FSTRING if is_fstring else TokenType.STRING,
            value,
            start_line,
            start_col,
            line,
            end_col,
            fields,
        )
        self.tokens.append(tok)
        self.i = end_i
        self.line = line
        self.col = end_col

    def _operator(self) -> None:
        src = self.src
        for op in OPERATORS:
            if src.startswith(op, self.i):
                if op in OPEN_BRACKETS:
                    self.brackets.append((op, self.line, self.col))
                elif op in CLOSE_BRACKETS:
                    if not self.brackets:
                        raise SourceSyntaxError(f"unmatched {op!r}", self.line, self.col)
                    opener = self.brackets.pop()[0]
                    if OPEN_BRACKETS[opener] != op:
                        raise SourceSyntaxError(
                            f"closing parenthesis {op!r} does not match opening parenthesis {opener!r}",
                            self.line,
                            self.col,
                        )
                self._emit(TokenType.OP, op, self.line, self.col, self.line, self.col + len(op))
                self.i += len(op)
                self.col += len(op)
                return
        raise SourceSyntaxError(f"invalid character {src[self.i]!r}", self.line, self.col)

    def _emit(self, type_: TokenType, value: str, line: int, col: int, end_line: int, end_col: int) -> None:
        self.tokens.append(Token(type_, value, line, col, end_line, end_col))


def _extract_fstring_fields(body: str, line: int, col: int) -> tuple[FStringField, ...]:
    """Pull interpolated expressions out of an f-string body.

    Handles escaped braces, nested brackets, strings inside expressions,
    conversions (``!r``), format specs (with one level of nested fields, which
    are extracted too), and the ``=`` debug form.
    """
    fields: list[FStringField] = []
    i, n = 0, len(body)
    cur_line, cur_col = line, col

    def advance_over(text: str) -> None:
        nonlocal cur_line, cur_col
        nl = text.count("\n")
        if nl:
            cur_line += nl
            cur_col = len(text) - text.rfind("\n") - 1
        else:
            cur_col += len(text)

    while i < n:
        c = body[i]
        if c == "{":
            if body[i + 1 : i + 2] == "{":
                advance_over("{{")
                i += 2
                continue
            expr_line, expr_col = cur_line, cur_col + 1
            j = i + 1
            depth = 0
            quote = ""
            expr_end = -1
            while j < n:
                cj = body[j]
                if quote:
                    if cj == "\\":
                        j += 2
                        continue
                    if body.startswith(quote, j):
                        j += len(quote)
                        quote = ""
                        continue
                    j += 1
                    continue
                if cj in "\"'":
                    quote = cj * 3 if body.startswith(cj * 3, j) else cj
                    j += len(quote)
                    continue
                if cj in "([{":
                    depth += 1
                elif cj in ")]":
                    depth -= 1
                elif cj == "}":
                    if depth == 0:
                        expr_end = j
                        break
                    depth -= 1
                elif depth == 0 and cj == "!" and body[j + 1 : j + 2] in ("s", "r", "a") and body[j + 2 : j + 3] in ("}", ":"):
                    expr_end = j
                    j += 2
                    if body[j : j + 1] == ":":
                        j = _skip_format_spec(body, j + 1, fields, cur_line, cur_col, i, line, col)
                    break
                elif depth == 0 and cj == ":" and body[j + 1 : j + 2] != "=":
                    expr_end = j
                    j = _skip_format_spec(body, j + 1, fields, cur_line, cur_col, i, line, col)
                    break
                elif (
                    depth == 0
                    and cj == "="
                    and body[j + 1 : j + 2] in ("}", "!", ":")
                    and body[j - 1 : j] not in ("=", "!", "<", ">")
                ):
                    expr_end = j
                    j += 1
                    if body[j : j + 1] == "!":
                        j += 2
                    if body[j : j + 1] == ":":
                        j = _skip_format_spec(body, j + 1, fields, cur_line, cur_col, i, line, col)
                    break
                j += 1
            if expr_end == -1:
                raise SourceSyntaxError("f-string: expecting '}'", expr_line, expr_col)
            source = body[i + 1 : expr_end]
            if not source.strip():
                raise SourceSyntaxError("f-string: empty expression not allowed", expr_line, expr_col)
            fields.append(FStringField(source, expr_line, expr_col))
            while j < n and body[j] != "}":
                j += 1
            consumed = body[i : j + 1]
            advance_over(consumed)
            i = j + 1
        elif c == "}":
            if body[i + 1 : i + 2] == "}":
                advance_over("}}")
                i += 2
            else:
                advance_over("}")
                i += 1
        else:
            advance_over(c)
            i += 1
    return tuple(fields)


def _skip_format_spec(
    body: str,
    start: int,
    fields: list[FStringField],
    f_line: int,
    f_col: int,
    field_start: int,
    base_line: int,
    base_col: int,
) -> int:
    """Advance past a format spec, extracting nested replacement fields."""
    j = start
    n = len(body)
    while j < n:
        c = body[j]
        if c == "}":
            return j
        if c == "{":
            k = j + 1
            depth = 0
            while k < n:
                ck = body[k]
                if ck == "{":
                    depth += 1
                elif ck == "}":
                    if depth == 0:
                        break
                    depth -= 1
                k += 1
            inner = body[j + 1 : k]
            expr = inner.split("!")[0].split(":")[0] if inner else inner
            if expr.strip():
                fields.append(FStringField(expr, f_line, f_col))
            j = k + 1
            continue
        j += 1
    return j


def tokenize(source: str) -> list[Token]:
    return Lexer(source).tokenize()

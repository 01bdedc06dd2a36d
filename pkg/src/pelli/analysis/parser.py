"""Recursive-descent parser over the lexer's token stream.

Grammar coverage matches the lexer's documented subset: 3.10 statements and
expressions without match/case. Comments are dropped before parsing; f-string
interpolations (already extracted by the lexer) are parsed into expression
nodes and attached to their String node.
"""

from __future__ import annotations

from . import ast_nodes as ast
from .lexer import tokenize
from .tokens import AUGMENTED_ASSIGN_OPS, SourceSyntaxError, Token, TokenType

_COMPARE_OPS = {"<", ">", "==", ">=", "<=", "!="}


class Parser:
    def __init__(self, tokens: list[Token]):
        self.toks = [t for t in tokens if t.type is not TokenType.COMMENT]
        self.pos = 0

    # -- token plumbing ---------------------------------------------------

    def peek(self, offset: int = 0) -> Token:
        i = min(self.pos + offset, len(self.toks) - 1)
        return self.toks[i]

    def next(self) -> Token:
        tok = self.toks[self.pos]
        if tok.type is not TokenType.ENDMARKER:
            self.pos += 1
        return tok

    def at(self, type_: TokenType, value: str | None = None) -> bool:
        tok = self.peek()
        return tok.type is type_ and (value is None or tok.value == value)

    def at_kw(self, *words: str) -> bool:
        tok = self.peek()
        return tok.type is TokenType.KEYWORD and tok.value in words

    def at_op(self, *ops: str) -> bool:
        tok = self.peek()
        return tok.type is TokenType.OP and tok.value in ops

    def match_op(self, *ops: str) -> Token | None:
        if self.at_op(*ops):
            return self.next()
        return None

    def match_kw(self, *words: str) -> Token | None:
        if self.at_kw(*words):
            return self.next()
        return None

    def expect_op(self, op: str) -> Token:
        if not self.at_op(op):
            self._fail(f"expected {op!r}")
        return self.next()

    def expect_kw(self, word: str) -> Token:
        if not self.at_kw(word):
            self._fail(f"expected {word!r}")
        return self.next()

    def expect_name(self) -> Token:
        if not self.at(TokenType.NAME):
            self._fail("expected a name")
        return self.next()

    def expect_newline(self) -> None:
        if self.at(TokenType.ENDMARKER):
            return
        if not self.at(TokenType.NEWLINE):
            self._fail("invalid syntax")
        self.next()

    def _fail(self, message: str) -> None:
        tok = self.peek()
        found = tok.value or tok.type.name
        raise SourceSyntaxError(f"{message}, found {found!r}", tok.line, tok.col)

    # -- module / statements ----------------------------------------------

    def parse_module(self) -> ast.Module:
        body: list[ast.Stmt] = []
        while not self.at(TokenType.ENDMARKER):
            if self.at(TokenType.NEWLINE):
                self.next()
                continue
            body.extend(self.parse_statement())
        return ast.Module(body=body)

    def parse_statement(self) -> list[ast.Stmt]:
        if self.at_kw("if"):
            return [self.parse_if()]
        if self.at_kw("while"):
            return [self.parse_while()]
        if self.at_kw("for"):
            return [self.parse_for(is_async=False)]
        if self.at_kw("try"):
            return [self.parse_try()]
        if self.at_kw("with"):
            return [self.parse_with(is_async=False)]
        if self.at_kw("def"):
            return [self.parse_funcdef(is_async=False)]
        if self.at_kw("class"):
            return [self.parse_classdef()]
        if self.at_op("@"):
            return [self.parse_decorated()]
        if self.at_kw("async"):
            return [self.parse_async()]
        return self.parse_simple_line()

    def parse_simple_line(self) -> list[ast.Stmt]:
        stmts = [self.parse_small_stmt()]
        while self.match_op(";"):
            if self.at(TokenType.NEWLINE) or self.at(TokenType.ENDMARKER):
                break
            stmts.append(self.parse_small_stmt())
        self.expect_newline()
        return stmts

    def parse_small_stmt(self) -> ast.Stmt:
        tok = self.peek()
        if tok.type is TokenType.KEYWORD:
            word = tok.value
            if word == "pass":
                self.next()
                return ast.Pass(tok.line, tok.col)
            if word == "break":
                self.next()
                return ast.Break(tok.line, tok.col)
            if word == "continue":
                self.next()
                return ast.Continue(tok.line, tok.col)
            if word == "return":
                self.next()
                value = None
                if not self.at(TokenType.NEWLINE) and not self.at_op(";") and not self.at(TokenType.ENDMARKER):
                    value = self.parse_testlist_star()
                return ast.Return(tok.line, tok.col, value)
            if word == "raise":
                return self.parse_raise()
            if word == "import":
                return self.parse_import()
            if word == "from":
                return self.parse_import_from()
            if word == "global":
                self.next()
                return ast.Global(tok.line, tok.col, self.parse_name_list())
            if word == "nonlocal":
                self.next()
                return ast.Nonlocal(tok.line, tok.col, self.parse_name_list())
            if word == "del":
                self.next()
                targets = self.parse_target_list()
                items = targets.elts if isinstance(targets, ast.TupleExpr) else [targets]
                return ast.Delete(tok.line, tok.col, items)
            if word == "assert":
                self.next()
                test = self.parse_test()
                msg = self.parse_test() if self.match_op(",") else None
                return ast.Assert(tok.line, tok.col, test, msg)
            if word == "yield":
                value = self.parse_yield_expr()
                return ast.ExprStmt(tok.line, tok.col, value)
        return self.parse_expr_stmt()

    def parse_name_list(self) -> list[str]:
        names = [self.expect_name().value]
        while self.match_op(","):
            names.append(self.expect_name().value)
        return names

    def parse_raise(self) -> ast.Raise:
        tok = self.expect_kw("raise")
        exc = cause = None
        if not self.at(TokenType.NEWLINE) and not self.at_op(";") and not self.at(TokenType.ENDMARKER):
            exc = self.parse_test()
            if self.match_kw("from"):
                cause = self.parse_test()
        return ast.Raise(tok.line, tok.col, exc, cause)

    def parse_import(self) -> ast.Import:
        tok = self.expect_kw("import")
        names = [self.parse_dotted_alias()]
        while self.match_op(","):
            names.append(self.parse_dotted_alias())
        return ast.Import(tok.line, tok.col, names)

    def parse_dotted_alias(self) -> ast.Alias:
        first = self.expect_name()
        parts = [first.value]
        while self.at_op(".") and self.peek(1).type is TokenType.NAME:
            self.next()
            parts.append(self.expect_name().value)
        asname = self.expect_name().value if self.match_kw("as") else None
        return ast.Alias(first.line, first.col, ".".join(parts), asname)

    def parse_import_from(self) -> ast.ImportFrom:
        tok = self.expect_kw("from")
        level = 0
        while self.at_op(".", "..."):
            level += len(self.next().value)
        module = None
        if self.at(TokenType.NAME):
            parts = [self.expect_name().value]
            while self.at_op(".") and self.peek(1).type is TokenType.NAME:
                self.next()
                parts.append(self.expect_name().value)
            module = ".".join(parts)
        self.expect_kw("import")
        names: list[ast.Alias] = []
        if self.at_op("*"):
            star = self.next()
            names.append(ast.Alias(star.line, star.col, "*"))
        elif self.match_op("("):
            names.append(self.parse_import_name())
            while self.match_op(","):
                if self.at_op(")"):
                    break
                names.append(self.parse_import_name())
            self.expect_op(")")
        else:
            names.append(self.parse_import_name())
            while self.match_op(","):
                names.append(self.parse_import_name())
        return ast.ImportFrom(tok.line, tok.col, module, names, level)

    def parse_import_name(self) -> ast.Alias:
        name = self.expect_name()
        asname = self.expect_name().value if self.match_kw("as") else None
        return ast.Alias(name.line, name.col, name.value, asname)

    def parse_expr_stmt(self) -> ast.Stmt:
        start = self.peek()
        first = self.parse_testlist_star()
        if self.at_op(":") and not isinstance(first, ast.TupleExpr):
            self.next()
            annotation = self.parse_test()
            value = None
            if self.match_op("="):
                value = self.parse_yield_or_testlist()
            return ast.AnnAssign(start.line, start.col, first, annotation, value)
        if self.peek().type is TokenType.OP and self.peek().value in AUGMENTED_ASSIGN_OPS:
            op = self.next().value
            value = self.parse_yield_or_testlist()
            return ast.AugAssign(start.line, start.col, first, op[:-1], value)
        if self.at_op("="):
            exprs = [first]
            while self.match_op("="):
                exprs.append(self.parse_yield_or_testlist())
            return ast.Assign(start.line, start.col, exprs[:-1], exprs[-1])
        return ast.ExprStmt(start.line, start.col, first)

    def parse_yield_or_testlist(self) -> ast.Expr:
        if self.at_kw("yield"):
            return self.parse_yield_expr()
        return self.parse_testlist_star()

    def parse_yield_expr(self) -> ast.Expr:
        tok = self.expect_kw("yield")
        if self.match_kw("from"):
            return ast.YieldFrom(tok.line, tok.col, self.parse_test())
        if (
            self.at(TokenType.NEWLINE)
            or self.at(TokenType.ENDMARKER)
            or self.at_op(")", "]", "}", ",", ";", ":", "=")
        ):
            return ast.Yield(tok.line, tok.col)
        return ast.Yield(tok.line, tok.col, self.parse_testlist_star())

    # -- compound statements ------------------------------------------------

    def parse_block(self) -> list[ast.Stmt]:
        self.expect_op(":")
        if self.at(TokenType.NEWLINE):
            self.next()
            if not self.at(TokenType.INDENT):
                self._fail("expected an indented block")
            self.next()
            body: list[ast.Stmt] = []
            while not self.at(TokenType.DEDENT) and not self.at(TokenType.ENDMARKER):
                if self.at(TokenType.NEWLINE):
                    self.next()
                    continue
                body.extend(self.parse_statement())
            if self.at(TokenType.DEDENT):
                self.next()
            return body
        return self.parse_simple_line()

    def parse_if(self) -> ast.If:
        tok = self.next()  # if / elif
        test = self.parse_namedexpr()
        body = self.parse_block()
        orelse: list[ast.Stmt] = []
        if self.at_kw("elif"):
            orelse = [self.parse_if()]
        elif self.match_kw("else"):
            orelse = self.parse_block()
        return ast.If(tok.line, tok.col, test, body, orelse)

    def parse_while(self) -> ast.While:
        tok = self.expect_kw("while")
        test = self.parse_namedexpr()
        body = self.parse_block()
        orelse = self.parse_block() if self.match_kw("else") else []
        return ast.While(tok.line, tok.col, test, body, orelse)

    def parse_for(self, is_async: bool) -> ast.For:
        tok = self.expect_kw("for")
        target = self.parse_target_list()
        self.expect_kw("in")
        iterable = self.parse_testlist_star()
        body = self.parse_block()
        orelse = self.parse_block() if self.match_kw("else") else []
        return ast.For(tok.line, tok.col, target, iterable, body, orelse, is_async)

    def parse_try(self) -> ast.Try:
        tok = self.expect_kw("try")
        body = self.parse_block()
        handlers: list[ast.ExceptHandler] = []
        orelse: list[ast.Stmt] = []
        finalbody: list[ast.Stmt] = []
        while self.at_kw("except"):
            etok = self.next()
            etype = None
            ename = None
            if not self.at_op(":"):
                etype = self.parse_test()
                if self.match_kw("as"):
                    ename = self.expect_name().value
            handlers.append(ast.ExceptHandler(etok.line, etok.col, etype, ename, self.parse_block()))
        if self.match_kw("else"):
            orelse = self.parse_block()
        if self.match_kw("finally"):
            finalbody = self.parse_block()
        if not handlers and not finalbody:
            self._fail("expected 'except' or 'finally' block")
        return ast.Try(tok.line, tok.col, body, handlers, orelse, finalbody)

    def parse_with(self, is_async: bool) -> ast.With:
        tok = self.expect_kw("with")
        items = self._try_parenthesized_with_items()
        if items is None:
            items = [self.parse_with_item()]
            while self.match_op(","):
                items.append(self.parse_with_item())
        body = self.parse_block()
        return ast.With(tok.line, tok.col, items, body, is_async)

    def _try_parenthesized_with_items(self) -> list[ast.WithItem] | None:
        # `with (a as b, c as d):` needs lookahead to tell it apart from a
        # parenthesized expression. Backtrack on failure.
        if not self.at_op("("):
            return None
        saved = self.pos
        try:
            self.next()
            items = [self.parse_with_item()]
            saw_as = items[0].optional_vars is not None
            while self.match_op(","):
                if self.at_op(")"):
                    break
                item = self.parse_with_item()
                saw_as = saw_as or item.optional_vars is not None
                items.append(item)
            self.expect_op(")")
            if self.at_op(":") and saw_as:
                return items
        except SourceSyntaxError:
            pass
        self.pos = saved
        return None

    def parse_with_item(self) -> ast.WithItem:
        tok = self.peek()
        context = self.parse_test()
        optional = self.parse_target() if self.match_kw("as") else None
        return ast.WithItem(tok.line, tok.col, context, optional)

    def parse_funcdef(self, is_async: bool, decorators: list[ast.Expr] | None = None) -> ast.FunctionDef:
        tok = self.expect_kw("def")
        name = self.expect_name().value
        self.expect_op("(")
        params = self.parse_parameters(allow_annotations=True, closing=")")
        self.expect_op(")")
        returns = self.parse_test() if self.match_op("->") else None
        body = self.parse_block()
        return ast.FunctionDef(tok.line, tok.col, name, params, body, decorators or [], returns, is_async)

    def parse_classdef(self, decorators: list[ast.Expr] | None = None) -> ast.ClassDef:
        tok = self.expect_kw("class")
        name = self.expect_name().value
        bases: list[ast.Expr] = []
        keywords: list[ast.Keyword] = []
        if self.match_op("("):
            if not self.at_op(")"):
                bases, keywords = self.parse_call_args()
            self.expect_op(")")
        body = self.parse_block()
        return ast.ClassDef(tok.line, tok.col, name, bases, keywords, body, decorators or [])

    def parse_decorated(self) -> ast.Stmt:
        decorators: list[ast.Expr] = []
        while self.at_op("@"):
            self.next()
            decorators.append(self.parse_namedexpr())
            self.expect_newline()
        if self.at_kw("async"):
            self.next()
            return self.parse_funcdef(is_async=True, decorators=decorators)
        if self.at_kw("def"):
            return self.parse_funcdef(is_async=False, decorators=decorators)
        if self.at_kw("class"):
            return self.parse_classdef(decorators=decorators)
        self._fail("expected 'def' or 'class' after decorators")
        raise AssertionError  # unreachable

    def parse_async(self) -> ast.Stmt:
        self.expect_kw("async")
        if self.at_kw("def"):
            return self.parse_funcdef(is_async=True)
        if self.at_kw("for"):
            return self.parse_for(is_async=True)
        if self.at_kw("with"):
            return self.parse_with(is_async=True)
        self._fail("expected 'def', 'for' or 'with' after 'async'")
        raise AssertionError  # unreachable

    def parse_parameters(self, allow_annotations: bool, closing: str) -> ast.Parameters:
        params: list[ast.Param] = []
        kind = "positional"
        while not self.at_op(closing):
            tok = self.peek()
            if self.at_op("/"):
                self.next()
                for p in params:
                    if p.kind == "positional":
                        p.kind = "positional_only"
            elif self.at_op("*"):
                self.next()
                if self.at(TokenType.NAME):
                    name = self.expect_name().value
                    ann = self.parse_test() if allow_annotations and self.match_op(":") else None
                    params.append(ast.Param(tok.line, tok.col, name, ann, None, "vararg"))
                kind = "keyword_only"
            elif self.at_op("**"):
                self.next()
                name = self.expect_name().value
                ann = self.parse_test() if allow_annotations and self.match_op(":") else None
                params.append(ast.Param(tok.line, tok.col, name, ann, None, "kwarg"))
            else:
                name = self.expect_name().value
                ann = self.parse_test() if allow_annotations and self.match_op(":") else None
                default = self.parse_test() if self.match_op("=") else None
                params.append(ast.Param(tok.line, tok.col, name, ann, default, kind))
            if not self.match_op(","):
                break
        return ast.Parameters(params)

    # -- expressions -------------------------------------------------------

    def parse_namedexpr(self) -> ast.Expr:
        expr = self.parse_test()
        if self.at_op(":="):
            tok = self.next()
            value = self.parse_test()
            return ast.NamedExpr(tok.line, tok.col, expr, value)
        return expr

    def parse_test(self) -> ast.Expr:
        if self.at_kw("lambda"):
            return self.parse_lambda()
        expr = self.parse_or()
        if self.at_kw("if"):
            tok = self.next()
            cond = self.parse_or()
            self.expect_kw("else")
            orelse = self.parse_test()
            return ast.IfExp(tok.line, tok.col, cond, expr, orelse)
        return expr

    def parse_lambda(self) -> ast.Lambda:
        tok = self.expect_kw("lambda")
        params = self.parse_parameters(allow_annotations=False, closing=":")
        self.expect_op(":")
        body = self.parse_test()
        return ast.Lambda(tok.line, tok.col, params, body)

    def parse_or(self) -> ast.Expr:
        expr = self.parse_and()
        if not self.at_kw("or"):
            return expr
        values = [expr]
        tok = self.peek()
        while self.match_kw("or"):
            values.append(self.parse_and())
        return ast.BoolOp(tok.line, tok.col, "or", values)

    def parse_and(self) -> ast.Expr:
        expr = self.parse_not()
        if not self.at_kw("and"):
            return expr
        values = [expr]
        tok = self.peek()
        while self.match_kw("and"):
            values.append(self.parse_not())
        return ast.BoolOp(tok.line, tok.col, "and", values)

    def parse_not(self) -> ast.Expr:
        if self.at_kw("not"):
            tok = self.next()
            return ast.UnaryOp(tok.line, tok.col, "not", self.parse_not())
        return self.parse_comparison()

    def parse_comparison(self) -> ast.Expr:
        left = self.parse_bitor()
        ops: list[str] = []
        comparators: list[ast.Expr] = []
        while True:
            if self.peek().type is TokenType.OP and self.peek().value in _COMPARE_OPS:
                ops.append(self.next().value)
            elif self.at_kw("in"):
                self.next()
                ops.append("in")
            elif self.at_kw("not") and self.peek(1).type is TokenType.KEYWORD and self.peek(1).value == "in":
                self.next()
                self.next()
                ops.append("not in")
            elif self.at_kw("is"):
                self.next()
                if self.match_kw("not"):
                    ops.append("is not")
                else:
                    ops.append("is")
            else:
                break
            comparators.append(self.parse_bitor())
        if not ops:
            return left
        return ast.Compare(left.line, left.col, left, ops, comparators)

    def _binop_chain(self, sub, ops: tuple[str, ...]) -> ast.Expr:
        expr = sub()
        while self.peek().type is TokenType.OP and self.peek().value in ops:
            op = self.next().value
            right = sub()
            expr = ast.BinOp(expr.line, expr.col, expr, op, right)
        return expr

    def parse_bitor(self) -> ast.Expr:
        return self._binop_chain(self.parse_bitxor, ("|",))

    def parse_bitxor(self) -> ast.Expr:
        return self._binop_chain(self.parse_bitand, ("^",))

    def parse_bitand(self) -> ast.Expr:
        return self._binop_chain(self.parse_shift, ("&",))

    def parse_shift(self) -> ast.Expr:
        return self._binop_chain(self.parse_arith, ("<<", ">>"))

    def parse_arith(self) -> ast.Expr:
        return self._binop_chain(self.parse_term, ("+", "-"))

    def parse_term(self) -> ast.Expr:
        return self._binop_chain(self.parse_factor, ("*", "/", "//", "%", "@"))

    def parse_factor(self) -> ast.Expr:
        if self.at_op("+", "-", "~"):
            tok = self.next()
            return ast.UnaryOp(tok.line, tok.col, tok.value, self.parse_factor())
        return self.parse_power()

    def parse_power(self) -> ast.Expr:
        base = self.parse_await()
        if self.at_op("**"):
            self.next()
            exponent = self.parse_factor()
            return ast.BinOp(base.line, base.col, base, "**", exponent)
        return base

    def parse_await(self) -> ast.Expr:
        if self.at_kw("await"):
            tok = self.next()
            return ast.Await(tok.line, tok.col, self.parse_await())
        return self.parse_postfix()

    def parse_postfix(self) -> ast.Expr:
        expr = self.parse_atom()
        while True:
            if self.at_op("("):
                self.next()
                args: list[ast.Expr] = []
                keywords: list[ast.Keyword] = []
                if not self.at_op(")"):
                    args, keywords = self.parse_call_args()
                self.expect_op(")")
                expr = ast.Call(expr.line, expr.col, expr, args, keywords)
            elif self.at_op("["):
                self.next()
                index = self.parse_subscript_list()
                self.expect_op("]")
                expr = ast.Subscript(expr.line, expr.col, expr, index)
            elif self.at_op("."):
                self.next()
                attr = self.expect_name()
                expr = ast.Attribute(expr.line, expr.col, expr, attr.value)
            else:
                return expr

    def parse_call_args(self) -> tuple[list[ast.Expr], list[ast.Keyword]]:
        args: list[ast.Expr] = []
        keywords: list[ast.Keyword] = []
        while True:
            if self.at_op(")"):
                break
            tok = self.peek()
            if self.at_op("*"):
                self.next()
                args.append(ast.Starred(tok.line, tok.col, self.parse_test()))
            elif self.at_op("**"):
                self.next()
                keywords.append(ast.Keyword(tok.line, tok.col, None, self.parse_test()))
            elif (
                tok.type is TokenType.NAME
                and self.peek(1).type is TokenType.OP
                and self.peek(1).value == "="
            ):
                self.next()
                self.next()
                keywords.append(ast.Keyword(tok.line, tok.col, tok.value, self.parse_test()))
            else:
                value = self.parse_namedexpr()
                if self.at_kw("for") or (self.at_kw("async") and self.peek(1).value == "for"):
                    generators = self.parse_comprehension_clauses()
                    value = ast.GeneratorExp(value.line, value.col, value, generators)
                args.append(value)
            if not self.match_op(","):
                break
        return args, keywords

    def parse_subscript_list(self) -> ast.Expr:
        first_tok = self.peek()
        items = [self.parse_subscript_item()]
        trailing = False
        while self.match_op(","):
            if self.at_op("]"):
                trailing = True
                break
            items.append(self.parse_subscript_item())
        if len(items) == 1 and not trailing:
            return items[0]
        return ast.TupleExpr(first_tok.line, first_tok.col, items)

    def parse_subscript_item(self) -> ast.Expr:
        tok = self.peek()
        lower = None
        if not self.at_op(":"):
            lower = self.parse_namedexpr()
            if not self.at_op(":"):
                return lower
        self.expect_op(":")
        upper = None
        if not self.at_op(":", ",", "]"):
            upper = self.parse_test()
        step = None
        if self.match_op(":"):
            if not self.at_op(",", "]"):
                step = self.parse_test()
        return ast.Slice(tok.line, tok.col, lower, upper, step)

    def parse_testlist_star(self) -> ast.Expr:
        first_tok = self.peek()
        items = [self.parse_star_or_test()]
        is_tuple = False
        while self.at_op(","):
            self.next()
            is_tuple = True
            if self._at_expression_end():
                break
            items.append(self.parse_star_or_test())
        if not is_tuple:
            return items[0]
        return ast.TupleExpr(first_tok.line, first_tok.col, items)

    def parse_star_or_test(self) -> ast.Expr:
        if self.at_op("*"):
            tok = self.next()
            return ast.Starred(tok.line, tok.col, self.parse_bitor())
        return self.parse_namedexpr()

    def _at_expression_end(self) -> bool:
        tok = self.peek()
        if tok.type in (TokenType.NEWLINE, TokenType.ENDMARKER):
            return True
        if tok.type is TokenType.OP and tok.value in (")", "]", "}", "=", ";", ":"):
            return True
        if tok.type is TokenType.KEYWORD and tok.value in ("in",):
            return True
        if tok.type is TokenType.OP and tok.value in AUGMENTED_ASSIGN_OPS:
            return True
        return False

    # Assignment / for / with targets reuse the expression grammar; validity
    # of the target shape is the lint layer's concern, not the parser's.

    def parse_target(self) -> ast.Expr:
        if self.at_op("*"):
            tok = self.next()
            return ast.Starred(tok.line, tok.col, self.parse_target())
        if self.at_op("("):
            tok = self.next()
            inner = self.parse_target_list()
            self.expect_op(")")
            return inner
        if self.at_op("["):
            tok = self.next()
            items: list[ast.Expr] = []
            while not self.at_op("]"):
                items.append(self.parse_target())
                if not self.match_op(","):
                    break
            self.expect_op("]")
            return ast.ListExpr(tok.line, tok.col, items)
        expr = self.parse_postfix()
        return expr

    def parse_target_list(self) -> ast.Expr:
        first_tok = self.peek()
        items = [self.parse_target()]
        is_tuple = False
        while self.at_op(","):
            self.next()
            is_tuple = True
            if self.at_kw("in") or self.at_op("=", ":") or self.at(TokenType.NEWLINE):
                break
            items.append(self.parse_target())
        if not is_tuple:
            return items[0]
        return ast.TupleExpr(first_tok.line, first_tok.col, items)

    # -- atoms ----------------------------------------------------------------

    def parse_atom(self) -> ast.Expr:
        tok = self.peek()
        if tok.type is TokenType.NAME:
            self.next()
            return ast.Name(tok.line, tok.col, tok.value)
        if tok.type is TokenType.NUMBER:
            self.next()
            return ast.Number(tok.line, tok.col, tok.value)
        if tok.type in (TokenType.STRING, TokenType.FSTRING):
            return self.parse_string_group()
        if tok.type is TokenType.KEYWORD:
            if tok.value in ("True", "False"):
                self.next()
                return ast.NameConstant(tok.line, tok.col, tok.value == "True")
            if tok.value == "None":
                self.next()
                return ast.NameConstant(tok.line, tok.col, None)
            if tok.value == "yield":
                return self.parse_yield_expr()
            if tok.value == "lambda":
                return self.parse_lambda()
            if tok.value == "not":
                return self.parse_not()
            if tok.value == "await":
                return self.parse_await()
        if tok.type is TokenType.OP:
            if tok.value == "...":
                self.next()
                return ast.EllipsisLiteral(tok.line, tok.col)
            if tok.value == "(":
                return self.parse_paren_atom()
            if tok.value == "[":
                return self.parse_list_atom()
            if tok.value == "{":
                return self.parse_brace_atom()
        self._fail("invalid syntax")
        raise AssertionError  # unreachable

    def parse_string_group(self) -> ast.String:
        first = self.peek()
        parts: list[str] = []
        is_fstring = False
        interpolations: list[ast.Expr] = []
        end_line = first.line
        while self.peek().type in (TokenType.STRING, TokenType.FSTRING):
            tok = self.next()
            parts.append(tok.value)
            end_line = tok.end_line
            if tok.type is TokenType.FSTRING:
                is_fstring = True
                for f in tok.fields:
                    interpolations.append(parse_embedded_expression(f.source, f.line, f.col))
        return ast.String(first.line, first.col, parts, is_fstring, interpolations, end_line)

    def parse_paren_atom(self) -> ast.Expr:
        tok = self.expect_op("(")
        if self.at_op(")"):
            self.next()
            return ast.TupleExpr(tok.line, tok.col, [])
        if self.at_kw("yield"):
            inner = self.parse_yield_expr()
            self.expect_op(")")
            return inner
        first = self.parse_star_or_test()
        if self.at_kw("for") or (self.at_kw("async") and self.peek(1).value == "for"):
            generators = self.parse_comprehension_clauses()
            self.expect_op(")")
            return ast.GeneratorExp(tok.line, tok.col, first, generators)
        if self.at_op(","):
            items = [first]
            while self.match_op(","):
                if self.at_op(")"):
                    break
                items.append(self.parse_star_or_test())
            self.expect_op(")")
            return ast.TupleExpr(tok.line, tok.col, items)
        self.expect_op(")")
        return first

    def parse_list_atom(self) -> ast.Expr:
        tok = self.expect_op("[")
        if self.at_op("]"):
            self.next()
            return ast.ListExpr(tok.line, tok.col, [])
        first = self.parse_star_or_test()
        if self.at_kw("for") or (self.at_kw("async") and self.peek(1).value == "for"):
            generators = self.parse_comprehension_clauses()
            self.expect_op("]")
            return ast.ListComp(tok.line, tok.col, first, generators)
        items = [first]
        while self.match_op(","):
            if self.at_op("]"):
                break
            items.append(self.parse_star_or_test())
        self.expect_op("]")
        return ast.ListExpr(tok.line, tok.col, items)

    def parse_brace_atom(self) -> ast.Expr:
        tok = self.expect_op("{")
        if self.at_op("}"):
            self.next()
            return ast.Dict(tok.line, tok.col)
        if self.at_op("**"):
            keys: list[ast.Expr | None] = []
            values: list[ast.Expr] = []
            while not self.at_op("}"):
                if self.match_op("**"):
                    keys.append(None)
                    values.append(self.parse_or())
                else:
                    keys.append(self.parse_test())
                    self.expect_op(":")
                    values.append(self.parse_test())
                if not self.match_op(","):
                    break
            self.expect_op("}")
            return ast.Dict(tok.line, tok.col, keys, values)
        first = self.parse_star_or_test()
        if self.at_op(":") and not isinstance(first, ast.Starred):
            self.next()
            first_value = self.parse_test()
            if self.at_kw("for") or (self.at_kw("async") and self.peek(1).value == "for"):
                generators = self.parse_comprehension_clauses()
                self.expect_op("}")
                return ast.DictComp(tok.line, tok.col, first, first_value, generators)
            keys = [first]
            values = [first_value]
            while self.match_op(","):
                if self.at_op("}"):
                    break
                if self.match_op("**"):
                    keys.append(None)
                    values.append(self.parse_or())
                else:
                    keys.append(self.parse_test())
                    self.expect_op(":")
                    values.append(self.parse_test())
            self.expect_op("}")
            return ast.Dict(tok.line, tok.col, keys, values)
        if self.at_kw("for") or (self.at_kw("async") and self.peek(1).value == "for"):
            generators = self.parse_comprehension_clauses()
            self.expect_op("}")
            return ast.SetComp(tok.line, tok.col, first, generators)
        elts = [first]
        while self.match_op(","):
            if self.at_op("}"):
                break
            elts.append(self.parse_star_or_test())
        self.expect_op("}")
        return ast.Set(tok.line, tok.col, elts)

    def parse_comprehension_clauses(self) -> list[ast.Comprehension]:
        generators: list[ast.Comprehension] = []
        while True:
            is_async = False
            if self.at_kw("async") and self.peek(1).value == "for":
                self.next()
                is_async = True
            if not self.at_kw("for"):
                break
            tok = self.next()
            target = self.parse_target_list()
            self.expect_kw("in")
            iterable = self.parse_or()
            ifs: list[ast.Expr] = []
            while self.at_kw("if"):
                self.next()
                # `or_test` here, so a trailing ternary can't swallow the
                # next comprehension clause
                cond = self.parse_or_namedexpr()
                ifs.append(cond)
            generators.append(ast.Comprehension(tok.line, tok.col, target, iterable, ifs, is_async))
            if not (self.at_kw("for") or (self.at_kw("async") and self.peek(1).value == "for")):
                break
        return generators

    def parse_or_namedexpr(self) -> ast.Expr:
        expr = self.parse_or()
        if self.at_op(":="):
            tok = self.next()
            return ast.NamedExpr(tok.line, tok.col, expr, self.parse_test())
        return expr


def _shift_positions(node: ast.AnyNode, line_delta: int, col_delta: int, base_line: int) -> None:
    for n in ast.walk(node):
        if isinstance(n, (ast.Node, ast.Module)):
            if n.line == base_line:
                n.col += col_delta
            n.line += line_delta


def parse_embedded_expression(source: str, line: int, col: int) -> ast.Expr:
    """Parse an f-string interpolation and rebase its positions."""
    try:
        tokens = tokenize(source)
        parser = Parser(tokens)
        expr = parser.parse_testlist_star()
        if not parser.at(TokenType.NEWLINE) and not parser.at(TokenType.ENDMARKER):
            parser._fail("invalid syntax in f-string expression")
    except SourceSyntaxError as exc:
        raise SourceSyntaxError(f"f-string: {exc.message}", line, col) from exc
    _shift_positions(expr, line - 1, col, base_line=1)
    return expr


def parse_module(source: str) -> ast.Module:
    return Parser(tokenize(source)).parse_module()

"""Static finding engine.

Rules live in ``data/lint_rules.json`` (codes, categories, default thresholds,
the builtins table); this module implements their checks against the token
stream, the tree, and the resolved scopes. A file that fails to parse yields a
single fatal syntax-error finding and nothing else.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from importlib import resources

from . import ast_nodes as ast
from .lexer import tokenize
from .parser import Parser
from .scopes import Scope, build_scopes, resolve_names
from .tokens import SourceSyntaxError, TokenType

CATEGORY_ORDER = ("convention", "refactor", "warning", "error", "fatal")


@dataclass(frozen=True)
class Finding:
    code: str
    symbol: str
    category: str
    message: str
    line: int
    col: int


@dataclass
class LintConfig:
    """Per-run overrides over the shipped registry."""

    enable: list[str] = field(default_factory=list)
    disable: list[str] = field(default_factory=list)
    params: dict[str, dict] = field(default_factory=dict)


@dataclass
class LintResult:
    findings: list[Finding]
    fatal: bool = False

    def count(self, category: str) -> int:
        return sum(1 for f in self.findings if f.category == category)

    def counts(self) -> dict[str, int]:
        return {cat: self.count(cat) for cat in CATEGORY_ORDER}


class Registry:
    def __init__(self, raw: dict):
        self.specs = {rule["symbol"]: rule for rule in raw["rules"]}
        self.by_code = {rule["code"]: rule for rule in raw["rules"]}
        self.builtins = frozenset(raw["builtins"])

    def resolve_key(self, key: str) -> str:
        if key in self.specs:
            return key
        if key in self.by_code:
            return self.by_code[key]["symbol"]
        raise KeyError(f"unknown rule {key!r}")


_registry: Registry | None = None


def registry() -> Registry:
    global _registry
    if _registry is None:
        raw = json.loads(
            resources.files("pelli.data").joinpath("lint_rules.json").read_text()
        )
        _registry = Registry(raw)
    return _registry


class _Run:
    def __init__(self, source: str, config: LintConfig | None):
        self.source = source.replace("\r\n", "\n").replace("\r", "\n")
        self.config = config or LintConfig()
        self.reg = registry()
        self.findings: list[Finding] = []

        self.enabled: dict[str, bool] = {
            symbol: spec["enabled"] for symbol, spec in self.reg.specs.items()
        }
        for key in self.config.enable:
            self.enabled[self.reg.resolve_key(key)] = True
        for key in self.config.disable:
            self.enabled[self.reg.resolve_key(key)] = False

    def params(self, symbol: str) -> dict:
        merged = dict(self.reg.specs[symbol]["params"])
        for key, overrides in self.config.params.items():
            if self.reg.resolve_key(key) == symbol:
                merged.update(overrides)
        return merged

    def emit(self, symbol: str, message: str, line: int, col: int) -> None:
        spec = self.reg.specs[symbol]
        self.findings.append(
            Finding(spec["code"], symbol, spec["category"], message, line, col)
        )

    # -- driver -------------------------------------------------------------

    def run(self) -> LintResult:
        try:
            tokens = tokenize(self.source)
            module = Parser(tokens).parse_module()
        except SourceSyntaxError as exc:
            finding = Finding(
                "F0001", "syntax-error", "fatal", exc.message, exc.line, exc.col
            )
            return LintResult([finding], fatal=True)

        scopes = build_scopes(module)
        undefined = resolve_names(scopes, self.reg.builtins)

        lines = self.source.split("\n")
        if lines and lines[-1] == "":
            lines.pop()

        if self.enabled["line-too-long"]:
            self._line_too_long(lines)
        if self.enabled["trailing-whitespace"]:
            self._trailing_whitespace(lines)
        if self.enabled["missing-module-docstring"]:
            self._module_docstring(module)
        if self.enabled["missing-function-docstring"]:
            self._function_docstrings(module)
        if self.enabled["invalid-name"]:
            self._invalid_names(module, scopes)
        if self.enabled["too-many-arguments"]:
            self._too_many_arguments(module)
        if self.enabled["too-many-branches"]:
            self._too_many_branches(module)
        if self.enabled["too-many-locals"]:
            self._too_many_locals(scopes)
        if self.enabled["too-many-statements"]:
            self._too_many_statements(module)
        if self.enabled["too-many-return-statements"]:
            self._too_many_returns(module)
        if self.enabled["unused-import"]:
            self._unused_imports(scopes)
        if self.enabled["unused-variable"]:
            self._unused_variables(scopes)
        if self.enabled["bare-except"]:
            self._bare_except(module)
        if self.enabled["redefined-builtin"]:
            self._redefined_builtins(scopes)
        if self.enabled["undefined-name"]:
            for load in undefined:
                self.emit("undefined-name", f"undefined name {load.name!r}", load.line, load.col)
        if self.enabled["duplicate-argument"]:
            self._duplicate_arguments(module)
        if self.enabled["return-outside-function"]:
            self._return_outside_function(module)

        self.findings.sort(key=lambda f: (f.line, f.col, f.code))
        return LintResult(self.findings)

    # -- raw line rules --------------------------------------------------------

    def _line_too_long(self, lines: list[str]) -> None:
        limit = self.params("line-too-long")["max_line_length"]
        for idx, text in enumerate(lines, start=1):
            if len(text) > limit:
                self.emit("line-too-long", f"line too long ({len(text)}/{limit})", idx, 0)

    def _trailing_whitespace(self, lines: list[str]) -> None:
        for idx, text in enumerate(lines, start=1):
            if text != text.rstrip():
                self.emit("trailing-whitespace", "trailing whitespace", idx, len(text.rstrip()))

    # -- docstrings ---------------------------------------------------------------

    @staticmethod
    def _has_docstring(body: list[ast.Stmt]) -> bool:
        if not body:
            return False
        first = body[0]
        return (
            isinstance(first, ast.ExprStmt)
            and isinstance(first.value, ast.String)
            and not first.value.is_fstring
        )

    def _module_docstring(self, module: ast.Module) -> None:
        if not self._has_docstring(module.body):
            self.emit("missing-module-docstring", "missing module docstring", 1, 0)

    def _function_docstrings(self, module: ast.Module) -> None:
        exempt = re.compile(self.params("missing-function-docstring")["exempt_rgx"])
        for node in ast.walk(module):
            if isinstance(node, ast.FunctionDef) and not exempt.search(node.name):
                if not self._has_docstring(node.body):
                    self.emit(
                        "missing-function-docstring",
                        f"missing docstring on function {node.name!r}",
                        node.line,
                        node.col,
                    )

    # -- naming ------------------------------------------------------------------

    def _invalid_names(self, module: ast.Module, scopes: Scope) -> None:
        p = self.params("invalid-name")
        snake = re.compile(p["snake_rgx"])
        classy = re.compile(p["class_rgx"])
        const = re.compile(p["const_rgx"])
        class_attr = re.compile(p["class_attr_rgx"])
        good = set(p["good_names"])

        def check(name: str, rgx: re.Pattern, style: str, line: int, col: int) -> None:
            if name in good or rgx.match(name):
                return
            self.emit("invalid-name", f"name {name!r} does not match {style} style", line, col)

        for node in ast.walk(module):
            if isinstance(node, ast.FunctionDef):
                check(node.name, snake, "snake_case", node.line, node.col)
            elif isinstance(node, ast.ClassDef):
                check(node.name, classy, "PascalCase", node.line, node.col)

        for scope in scopes.iter_tree():
            for binding in scope.bindings.values():
                if binding.kind in ("def", "class", "import"):
                    continue
                if binding.kind == "param":
                    check(binding.name, snake, "snake_case", binding.line, binding.col)
                elif binding.kind == "assign" and scope.kind == "module":
                    check(binding.name, const, "UPPER_CASE", binding.line, binding.col)
                elif binding.kind == "assign" and scope.kind == "class":
                    check(binding.name, class_attr, "attribute", binding.line, binding.col)
                else:
                    check(binding.name, snake, "snake_case", binding.line, binding.col)

    # -- size and shape -------------------------------------------------------

    @staticmethod
    def _own_statements(body: list[ast.Stmt]):
        """Statements of a block, recursing into control flow but not into
        nested function or class bodies."""
        for stmt in body:
            yield stmt
            if isinstance(stmt, (ast.FunctionDef, ast.ClassDef)):
                continue
            for attr in ("body", "orelse", "finalbody"):
                inner = getattr(stmt, attr, None)
                if inner:
                    yield from _Run._own_statements(inner)
            for handler in getattr(stmt, "handlers", []) or []:
                yield from _Run._own_statements(handler.body)

    @staticmethod
    def _functions(module: ast.Module):
        for node in ast.walk(module):
            if isinstance(node, ast.FunctionDef):
                yield node

    def _too_many_arguments(self, module: ast.Module) -> None:
        limit = self.params("too-many-arguments")["max_args"]
        for fn in self._functions(module):
            count = sum(
                1
                for p in fn.params.named()
                if p.kind in ("positional_only", "positional", "keyword_only")
            )
            if count > limit:
                self.emit(
                    "too-many-arguments",
                    f"function {fn.name!r} takes {count} arguments ({limit} allowed)",
                    fn.line,
                    fn.col,
                )

    def _too_many_branches(self, module: ast.Module) -> None:
        limit = self.params("too-many-branches")["max_branches"]
        for fn in self._functions(module):
            branches = 0
            for stmt in self._own_statements(fn.body):
                if isinstance(stmt, (ast.If, ast.For, ast.While)):
                    branches += 1
                elif isinstance(stmt, ast.Try):
                    branches += len(stmt.handlers)
            if branches > limit:
                self.emit(
                    "too-many-branches",
                    f"function {fn.name!r} has {branches} branches ({limit} allowed)",
                    fn.line,
                    fn.col,
                )

    def _too_many_locals(self, scopes: Scope) -> None:
        limit = self.params("too-many-locals")["max_locals"]
        for scope in scopes.iter_tree():
            if scope.kind != "function" or scope.node is None:
                continue
            count = len(scope.bindings)
            if count > limit:
                fn = scope.node
                self.emit(
                    "too-many-locals",
                    f"function {scope.name!r} has {count} local names ({limit} allowed)",
                    fn.line,
                    fn.col,
                )

    def _too_many_statements(self, module: ast.Module) -> None:
        limit = self.params("too-many-statements")["max_statements"]
        for fn in self._functions(module):
            count = sum(1 for _ in self._own_statements(fn.body))
            if count > limit:
                self.emit(
                    "too-many-statements",
                    f"function {fn.name!r} has {count} statements ({limit} allowed)",
                    fn.line,
                    fn.col,
                )

    def _too_many_returns(self, module: ast.Module) -> None:
        limit = self.params("too-many-return-statements")["max_returns"]
        for fn in self._functions(module):
            count = sum(
                1 for stmt in self._own_statements(fn.body) if isinstance(stmt, ast.Return)
            )
            if count > limit:
                self.emit(
                    "too-many-return-statements",
                    f"function {fn.name!r} has {count} return statements ({limit} allowed)",
                    fn.line,
                    fn.col,
                )

    # -- scope-derived rules ------------------------------------------------------

    def _unused_imports(self, scopes: Scope) -> None:
        dummy = re.compile(self.params("unused-import")["dummy_rgx"])
        for scope in scopes.iter_tree():
            for binding in scope.bindings.values():
                if binding.kind == "import" and not binding.used and not dummy.search(binding.name):
                    self.emit(
                        "unused-import",
                        f"unused import {binding.name!r}",
                        binding.line,
                        binding.col,
                    )

    def _unused_variables(self, scopes: Scope) -> None:
        dummy = re.compile(self.params("unused-variable")["dummy_rgx"])
        flagged_kinds = ("assign", "for", "with", "except", "namedexpr")
        for scope in scopes.iter_tree():
            if scope.kind not in ("function", "lambda"):
                continue
            for binding in scope.bindings.values():
                if (
                    binding.kind in flagged_kinds
                    and not binding.used
                    and not dummy.search(binding.name)
                ):
                    self.emit(
                        "unused-variable",
                        f"unused variable {binding.name!r}",
                        binding.line,
                        binding.col,
                    )

    def _bare_except(self, module: ast.Module) -> None:
        for node in ast.walk(module):
            if isinstance(node, ast.ExceptHandler) and node.type is None:
                self.emit("bare-except", "bare except clause", node.line, node.col)

    def _redefined_builtins(self, scopes: Scope) -> None:
        for scope in scopes.iter_tree():
            for binding in scope.bindings.values():
                if binding.name in self.reg.builtins:
                    self.emit(
                        "redefined-builtin",
                        f"binding {binding.name!r} shadows a builtin",
                        binding.line,
                        binding.col,
                    )

    def _duplicate_arguments(self, module: ast.Module) -> None:
        for node in ast.walk(module):
            if isinstance(node, (ast.FunctionDef, ast.Lambda)):
                seen: set[str] = set()
                for param in node.params.named():
                    if param.name in seen:
                        self.emit(
                            "duplicate-argument",
                            f"duplicate argument {param.name!r}",
                            param.line,
                            param.col,
                        )
                    seen.add(param.name)

    def _return_outside_function(self, module: ast.Module) -> None:
        def visit(body: list[ast.Stmt]) -> None:
            for stmt in body:
                if isinstance(stmt, ast.Return):
                    self.emit("return-outside-function", "return outside function", stmt.line, stmt.col)
                if isinstance(stmt, ast.FunctionDef):
                    continue
                if isinstance(stmt, ast.ClassDef):
                    visit(stmt.body)
                    continue
                for attr in ("body", "orelse", "finalbody"):
                    inner = getattr(stmt, attr, None)
                    if inner:
                        visit(inner)
                for handler in getattr(stmt, "handlers", []) or []:
                    visit(handler.body)

        visit(module.body)


def lint(source: str, config: LintConfig | None = None) -> LintResult:
    return _Run(source, config).run()

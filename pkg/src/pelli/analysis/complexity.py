"""Cyclomatic complexity.

A fixed decision list keeps the number reproducible across runs and
implementations: each ``if``/``elif``, conditional expression, ``for``,
``while``, ``except`` clause, ``assert``, boolean ``and``/``or`` occurrence,
comprehension ``for`` clause and comprehension ``if`` condition adds one.
``else``, ``finally``, ``with`` and bare ``try`` add nothing.

Blocks: every function and method is a block with complexity 1 + its own
points. Nested defs are separate blocks; lambdas and comprehensions attach to
the enclosing block. Decision points in decorators, parameter defaults,
annotations, and class-level statements execute in the enclosing scope and
count there. Module-level points form a synthetic ``<module>`` block that is
reported only when it has at least one point, so a definitions-only module
totals exactly the sum of its functions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import ast_nodes as ast


@dataclass
class BlockComplexity:
    name: str
    kind: str  # "function" | "method" | "module"
    line: int
    complexity: int


@dataclass
class CyclomaticReport:
    blocks: list[BlockComplexity] = field(default_factory=list)
    total: int = 0

    @property
    def function_count(self) -> int:
        return sum(1 for b in self.blocks if b.kind != "module")


def _expression_points(expr: ast.AnyNode) -> int:
    points = 0
    for node in ast.walk(expr):
        if isinstance(node, ast.BoolOp):
            points += len(node.values) - 1
        elif isinstance(node, ast.IfExp):
            points += 1
        elif isinstance(node, ast.Comprehension):
            points += 1 + len(node.ifs)
    return points


class _Collector:
    def __init__(self) -> None:
        self.functions: list[BlockComplexity] = []
        self.module_points = 0

    def run(self, module: ast.Module) -> CyclomaticReport:
        self.module_points = self._visit_body(module.body, prefix="", in_class=False)
        report = CyclomaticReport()
        if self.module_points > 0:
            report.blocks.append(
                BlockComplexity("<module>", "module", 1, 1 + self.module_points)
            )
        report.blocks.extend(self.functions)
        report.total = sum(b.complexity for b in report.blocks)
        return report

    def _visit_body(self, body: list[ast.Stmt], prefix: str, in_class: bool) -> int:
        points = 0
        for stmt in body:
            points += self._visit_stmt(stmt, prefix, in_class)
        return points

    def _visit_stmt(self, stmt: ast.Stmt, prefix: str, in_class: bool) -> int:
        points = 0
        if isinstance(stmt, ast.FunctionDef):
            for dec in stmt.decorators:
                points += _expression_points(dec)
            for param in stmt.params.params:
                if param.annotation is not None:
                    points += _expression_points(param.annotation)
                if param.default is not None:
                    points += _expression_points(param.default)
            if stmt.returns is not None:
                points += _expression_points(stmt.returns)
            name = f"{prefix}{stmt.name}"
            inner = self._visit_body(stmt.body, prefix=f"{name}.", in_class=False)
            kind = "method" if in_class else "function"
            self.functions.append(BlockComplexity(name, kind, stmt.line, 1 + inner))
            return points
        if isinstance(stmt, ast.ClassDef):
            for dec in stmt.decorators:
                points += _expression_points(dec)
            for base in stmt.bases:
                points += _expression_points(base)
            for kw in stmt.keywords:
                points += _expression_points(kw.value)
            points += self._visit_body(stmt.body, prefix=f"{prefix}{stmt.name}.", in_class=True)
            return points
        if isinstance(stmt, ast.If):
            points += 1 + _expression_points(stmt.test)
            points += self._visit_body(stmt.body, prefix, in_class)
            points += self._visit_body(stmt.orelse, prefix, in_class)
            return points
        if isinstance(stmt, ast.While):
            points += 1 + _expression_points(stmt.test)
            points += self._visit_body(stmt.body, prefix, in_class)
            points += self._visit_body(stmt.orelse, prefix, in_class)
            return points
        if isinstance(stmt, ast.For):
            points += 1 + _expression_points(stmt.target) + _expression_points(stmt.iter)
            points += self._visit_body(stmt.body, prefix, in_class)
            points += self._visit_body(stmt.orelse, prefix, in_class)
            return points
        if isinstance(stmt, ast.Try):
            points += self._visit_body(stmt.body, prefix, in_class)
            for handler in stmt.handlers:
                points += 1
                if handler.type is not None:
                    points += _expression_points(handler.type)
                points += self._visit_body(handler.body, prefix, in_class)
            points += self._visit_body(stmt.orelse, prefix, in_class)
            points += self._visit_body(stmt.finalbody, prefix, in_class)
            return points
        if isinstance(stmt, ast.With):
            for item in stmt.items:
                points += _expression_points(item.context)
                if item.optional_vars is not None:
                    points += _expression_points(item.optional_vars)
            points += self._visit_body(stmt.body, prefix, in_class)
            return points
        if isinstance(stmt, ast.Assert):
            points += 1 + _expression_points(stmt.test)
            if stmt.msg is not None:
                points += _expression_points(stmt.msg)
            return points
        # simple statements: count points in any contained expressions
        for child in ast.iter_child_nodes(stmt):
            points += _expression_points(child)
        return points


def cyclomatic_complexity(module: ast.Module) -> CyclomaticReport:
    return _Collector().run(module)

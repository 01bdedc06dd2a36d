"""Lexical scope construction and name resolution.

Flow-insensitive by design: a binding anywhere in a scope satisfies loads
anywhere in that scope, which keeps the error category free of
order-of-definition false positives. Class scopes follow the real lookup rule:
visible to code directly in the class body, skipped for nested functions.
A wildcard import makes unresolved loads in its module unknowable, so
resolution treats them as satisfied.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import ast_nodes as ast


@dataclass
class Binding:
    name: str
    kind: str  # param/assign/for/with/except/import/def/class/namedexpr/comprehension
    line: int
    col: int
    used: bool = False


@dataclass
class Load:
    name: str
    line: int
    col: int


@dataclass
class Scope:
    kind: str  # module/function/class/lambda/comprehension
    name: str
    parent: "Scope | None" = None
    node: object = None  # owning FunctionDef/Lambda for function-ish scopes
    bindings: dict[str, Binding] = field(default_factory=dict)
    loads: list[Load] = field(default_factory=list)
    global_names: set[str] = field(default_factory=set)
    nonlocal_names: set[str] = field(default_factory=set)
    has_star_import: bool = False
    children: list["Scope"] = field(default_factory=list)

    def module(self) -> "Scope":
        scope = self
        while scope.parent is not None:
            scope = scope.parent
        return scope

    def iter_tree(self):
        yield self
        for child in self.children:
            yield from child.iter_tree()


class ScopeBuilder:
    def build(self, module: ast.Module) -> Scope:
        root = Scope("module", "<module>")
        self._stmts(module.body, root)
        return root

    # -- binding helpers ---------------------------------------------------

    def _child(self, kind: str, name: str, parent: Scope) -> Scope:
        scope = Scope(kind, name, parent)
        parent.children.append(scope)
        return scope

    def _bind(self, scope: Scope, name: str, kind: str, line: int, col: int) -> None:
        target = scope
        if name in scope.global_names:
            target = scope.module()
        elif name in scope.nonlocal_names:
            target = self._enclosing_function(scope) or scope
        if name not in target.bindings:
            target.bindings[name] = Binding(name, kind, line, col)

    @staticmethod
    def _enclosing_function(scope: Scope) -> Scope | None:
        cur = scope.parent
        while cur is not None:
            if cur.kind in ("function", "lambda"):
                return cur
            cur = cur.parent
        return None

    def _bind_target(self, target: ast.Expr, kind: str, scope: Scope) -> None:
        if isinstance(target, ast.Name):
            self._bind(scope, target.id, kind, target.line, target.col)
        elif isinstance(target, (ast.TupleExpr, ast.ListExpr)):
            for elt in target.elts:
                self._bind_target(elt, kind, scope)
        elif isinstance(target, ast.Starred):
            self._bind_target(target.value, kind, scope)
        elif isinstance(target, ast.Attribute):
            self._expr(target.value, scope)
        elif isinstance(target, ast.Subscript):
            self._expr(target.value, scope)
            self._expr(target.index, scope)
        else:
            self._expr(target, scope)

    # -- statements ---------------------------------------------------------

    def _stmts(self, body: list[ast.Stmt], scope: Scope) -> None:
        for stmt in body:
            self._stmt(stmt, scope)

    def _stmt(self, stmt: ast.Stmt, scope: Scope) -> None:
        if isinstance(stmt, ast.FunctionDef):
            for dec in stmt.decorators:
                self._expr(dec, scope)
            for param in stmt.params.params:
                if param.annotation is not None:
                    self._expr(param.annotation, scope)
                if param.default is not None:
                    self._expr(param.default, scope)
            if stmt.returns is not None:
                self._expr(stmt.returns, scope)
            self._bind(scope, stmt.name, "def", stmt.line, stmt.col)
            fscope = self._child("function", stmt.name, scope)
            fscope.node = stmt
            for param in stmt.params.named():
                self._bind(fscope, param.name, "param", param.line, param.col)
            self._stmts(stmt.body, fscope)
            return
        if isinstance(stmt, ast.ClassDef):
            for dec in stmt.decorators:
                self._expr(dec, scope)
            for base in stmt.bases:
                self._expr(base, scope)
            for kw in stmt.keywords:
                self._expr(kw.value, scope)
            self._bind(scope, stmt.name, "class", stmt.line, stmt.col)
            cscope = self._child("class", stmt.name, scope)
            self._stmts(stmt.body, cscope)
            return
        if isinstance(stmt, ast.Assign):
            self._expr(stmt.value, scope)
            for target in stmt.targets:
                self._bind_target(target, "assign", scope)
            return
        if isinstance(stmt, ast.AugAssign):
            self._expr(stmt.value, scope)
            if isinstance(stmt.target, ast.Name):
                # augmented assignment reads before it writes
                scope.loads.append(Load(stmt.target.id, stmt.target.line, stmt.target.col))
            self._bind_target(stmt.target, "assign", scope)
            return
        if isinstance(stmt, ast.AnnAssign):
            self._expr(stmt.annotation, scope)
            if stmt.value is not None:
                self._expr(stmt.value, scope)
            self._bind_target(stmt.target, "assign", scope)
            return
        if isinstance(stmt, ast.For):
            self._expr(stmt.iter, scope)
            self._bind_target(stmt.target, "for", scope)
            self._stmts(stmt.body, scope)
            self._stmts(stmt.orelse, scope)
            return
        if isinstance(stmt, ast.While):
            self._expr(stmt.test, scope)
            self._stmts(stmt.body, scope)
            self._stmts(stmt.orelse, scope)
            return
        if isinstance(stmt, ast.If):
            self._expr(stmt.test, scope)
            self._stmts(stmt.body, scope)
            self._stmts(stmt.orelse, scope)
            return
        if isinstance(stmt, ast.With):
            for item in stmt.items:
                self._expr(item.context, scope)
                if item.optional_vars is not None:
                    self._bind_target(item.optional_vars, "with", scope)
            self._stmts(stmt.body, scope)
            return
        if isinstance(stmt, ast.Try):
            self._stmts(stmt.body, scope)
            for handler in stmt.handlers:
                if handler.type is not None:
                    self._expr(handler.type, scope)
                if handler.name:
                    self._bind(scope, handler.name, "except", handler.line, handler.col)
                self._stmts(handler.body, scope)
            self._stmts(stmt.orelse, scope)
            self._stmts(stmt.finalbody, scope)
            return
        if isinstance(stmt, ast.Import):
            for alias in stmt.names:
                self._bind(scope, alias.bound_name, "import", alias.line, alias.col)
            return
        if isinstance(stmt, ast.ImportFrom):
            for alias in stmt.names:
                if alias.name == "*":
                    scope.module().has_star_import = True
                else:
                    self._bind(scope, alias.bound_name, "import", alias.line, alias.col)
            return
        if isinstance(stmt, ast.Global):
            scope.global_names.update(stmt.names)
            return
        if isinstance(stmt, ast.Nonlocal):
            scope.nonlocal_names.update(stmt.names)
            return
        if isinstance(stmt, ast.Delete):
            for target in stmt.targets:
                self._expr(target, scope)
            return
        for child in ast.iter_child_nodes(stmt):
            self._expr(child, scope)

    # -- expressions ----------------------------------------------------------

    def _expr(self, expr: ast.AnyNode, scope: Scope) -> None:
        if isinstance(expr, ast.Name):
            scope.loads.append(Load(expr.id, expr.line, expr.col))
            return
        if isinstance(expr, ast.Lambda):
            for param in expr.params.params:
                if param.default is not None:
                    self._expr(param.default, scope)
            lscope = self._child("lambda", "<lambda>", scope)
            lscope.node = expr
            for param in expr.params.named():
                self._bind(lscope, param.name, "param", param.line, param.col)
            self._expr(expr.body, lscope)
            return
        if isinstance(expr, (ast.ListComp, ast.SetComp, ast.GeneratorExp, ast.DictComp)):
            self._comprehension(expr, scope)
            return
        if isinstance(expr, ast.NamedExpr):
            self._expr(expr.value, scope)
            # walrus assigns into the nearest real scope
            target_scope = scope
            while target_scope.kind == "comprehension" and target_scope.parent is not None:
                target_scope = target_scope.parent
            self._bind_target(expr.target, "namedexpr", target_scope)
            return
        if isinstance(expr, ast.String):
            for interp in expr.interpolations:
                self._expr(interp, scope)
            return
        if isinstance(expr, (ast.Node, ast.Parameters)):
            for child in ast.iter_child_nodes(expr):
                self._expr(child, scope)

    def _comprehension(self, expr, scope: Scope) -> None:
        generators: list[ast.Comprehension] = expr.generators
        # first iterable evaluates where the comprehension appears
        self._expr(generators[0].iter, scope)
        cscope = self._child("comprehension", "<comprehension>", scope)
        for index, gen in enumerate(generators):
            if index > 0:
                self._expr(gen.iter, cscope)
            self._bind_target(gen.target, "comprehension", cscope)
            for cond in gen.ifs:
                self._expr(cond, cscope)
        if isinstance(expr, ast.DictComp):
            self._expr(expr.key, cscope)
            self._expr(expr.value, cscope)
        else:
            self._expr(expr.elt, cscope)


def build_scopes(module: ast.Module) -> Scope:
    return ScopeBuilder().build(module)


def resolve_names(root: Scope, builtins: frozenset[str]) -> list[Load]:
    """Mark bindings used; return loads that resolve nowhere."""
    undefined: list[Load] = []
    star_anywhere = root.has_star_import
    for scope in root.iter_tree():
        for load in scope.loads:
            if _resolve_one(scope, load.name):
                continue
            if load.name in builtins or star_anywhere:
                continue
            undefined.append(load)
    undefined.sort(key=lambda l: (l.line, l.col))
    return undefined


def _resolve_one(scope: Scope, name: str) -> bool:
    if name in scope.global_names:
        module = scope.module()
        binding = module.bindings.get(name)
        if binding is not None:
            binding.used = True
            return True
        return False
    current: Scope | None = scope
    while current is not None:
        if current.kind == "class" and current is not scope:
            current = current.parent
            continue
        binding = current.bindings.get(name)
        if binding is not None:
            binding.used = True
            return True
        current = current.parent
    return False

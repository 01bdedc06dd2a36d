"""Syntax tree produced by the parser.

Deliberately close to the shape of CPython's ast module so metric logic reads
familiarly, but owned here: nodes are plain dataclasses carrying start
positions, and child iteration works by field introspection.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from typing import Iterator, Optional, Union


@dataclass
class Node:
    line: int
    col: int


# -- helper records (not expressions or statements themselves) ----------


@dataclass
class Param(Node):
    name: str
    annotation: Optional["Expr"] = None
    default: Optional["Expr"] = None
    # one of: positional_only, positional, vararg, keyword_only, kwarg
    kind: str = "positional"


@dataclass
class Parameters:
    params: list[Param] = field(default_factory=list)

    def named(self) -> list[Param]:
        """Parameters that bind a name (skips bare ``*`` markers)."""
        return [p for p in self.params if p.name]


@dataclass
class Alias(Node):
    name: str
    asname: Optional[str] = None

    @property
    def bound_name(self) -> str:
        if self.asname:
            return self.asname
        return self.name.split(".")[0]


@dataclass
class Keyword(Node):
    arg: Optional[str]  # None for **kwargs
    value: "Expr" = None  # type: ignore[assignment]


@dataclass
class Comprehension(Node):
    target: "Expr"
    iter: "Expr"
    ifs: list["Expr"] = field(default_factory=list)
    is_async: bool = False


@dataclass
class WithItem(Node):
    context: "Expr"
    optional_vars: Optional["Expr"] = None


@dataclass
class ExceptHandler(Node):
    type: Optional["Expr"]
    name: Optional[str]
    body: list["Stmt"] = field(default_factory=list)


# -- expressions --------------------------------------------------------


@dataclass
class Name(Node):
    id: str


@dataclass
class Number(Node):
    text: str


@dataclass
class String(Node):
    # Adjacent literal concatenation collapses into one node; parts keeps the
    # raw lexemes. interpolations holds parsed f-string field expressions.
    parts: list[str] = field(default_factory=list)
    is_fstring: bool = False
    interpolations: list["Expr"] = field(default_factory=list)
    end_line: int = 0  # last physical line of the last part


@dataclass
class NameConstant(Node):
    value: Optional[bool]  # True / False / None


@dataclass
class EllipsisLiteral(Node):
    pass


@dataclass
class BoolOp(Node):
    op: str  # "and" | "or"
    values: list["Expr"] = field(default_factory=list)


@dataclass
class BinOp(Node):
    left: "Expr"
    op: str
    right: "Expr"


@dataclass
class UnaryOp(Node):
    op: str  # "not" | "-" | "+" | "~"
    operand: "Expr" = None  # type: ignore[assignment]


@dataclass
class Compare(Node):
    left: "Expr"
    ops: list[str] = field(default_factory=list)
    comparators: list["Expr"] = field(default_factory=list)


@dataclass
class Lambda(Node):
    params: Parameters = field(default_factory=Parameters)
    body: "Expr" = None  # type: ignore[assignment]


@dataclass
class IfExp(Node):
    test: "Expr"
    body: "Expr"
    orelse: "Expr"


@dataclass
class Dict(Node):
    keys: list[Optional["Expr"]] = field(default_factory=list)  # None => ** unpack
    values: list["Expr"] = field(default_factory=list)


@dataclass
class Set(Node):
    elts: list["Expr"] = field(default_factory=list)


@dataclass
class ListExpr(Node):
    elts: list["Expr"] = field(default_factory=list)


@dataclass
class TupleExpr(Node):
    elts: list["Expr"] = field(default_factory=list)


@dataclass
class ListComp(Node):
    elt: "Expr"
    generators: list[Comprehension] = field(default_factory=list)


@dataclass
class SetComp(Node):
    elt: "Expr"
    generators: list[Comprehension] = field(default_factory=list)


@dataclass
class DictComp(Node):
    key: "Expr"
    value: "Expr"
    generators: list[Comprehension] = field(default_factory=list)


@dataclass
class GeneratorExp(Node):
    elt: "Expr"
    generators: list[Comprehension] = field(default_factory=list)


@dataclass
class Await(Node):
    value: "Expr"


@dataclass
class Yield(Node):
    value: Optional["Expr"] = None


@dataclass
class YieldFrom(Node):
    value: "Expr" = None  # type: ignore[assignment]


@dataclass
class Call(Node):
    func: "Expr"
    args: list["Expr"] = field(default_factory=list)
    keywords: list[Keyword] = field(default_factory=list)


@dataclass
class Attribute(Node):
    value: "Expr"
    attr: str = ""


@dataclass
class Subscript(Node):
    value: "Expr"
    index: "Expr" = None  # type: ignore[assignment]


@dataclass
class Slice(Node):
    lower: Optional["Expr"] = None
    upper: Optional["Expr"] = None
    step: Optional["Expr"] = None


@dataclass
class Starred(Node):
    value: "Expr" = None  # type: ignore[assignment]


@dataclass
class NamedExpr(Node):
    target: "Expr" = None  # type: ignore[assignment]
    value: "Expr" = None  # type: ignore[assignment]


# -- statements ----------------------------------------------------------


@dataclass
class Module:
    body: list["Stmt"] = field(default_factory=list)
    line: int = 1
    col: int = 0


@dataclass
class FunctionDef(Node):
    name: str
    params: Parameters = field(default_factory=Parameters)
    body: list["Stmt"] = field(default_factory=list)
    decorators: list["Expr"] = field(default_factory=list)
    returns: Optional["Expr"] = None
    is_async: bool = False


@dataclass
class ClassDef(Node):
    name: str
    bases: list["Expr"] = field(default_factory=list)
    keywords: list[Keyword] = field(default_factory=list)
    body: list["Stmt"] = field(default_factory=list)
    decorators: list["Expr"] = field(default_factory=list)


@dataclass
class Return(Node):
    value: Optional["Expr"] = None


@dataclass
class Delete(Node):
    targets: list["Expr"] = field(default_factory=list)


@dataclass
class Assign(Node):
    targets: list["Expr"] = field(default_factory=list)
    value: "Expr" = None  # type: ignore[assignment]


@dataclass
class AugAssign(Node):
    target: "Expr"
    op: str = ""
    value: "Expr" = None  # type: ignore[assignment]


@dataclass
class AnnAssign(Node):
    target: "Expr"
    annotation: "Expr" = None  # type: ignore[assignment]
    value: Optional["Expr"] = None


@dataclass
class For(Node):
    target: "Expr"
    iter: "Expr"
    body: list["Stmt"] = field(default_factory=list)
    orelse: list["Stmt"] = field(default_factory=list)
    is_async: bool = False


@dataclass
class While(Node):
    test: "Expr"
    body: list["Stmt"] = field(default_factory=list)
    orelse: list["Stmt"] = field(default_factory=list)


@dataclass
class If(Node):
    test: "Expr"
    body: list["Stmt"] = field(default_factory=list)
    orelse: list["Stmt"] = field(default_factory=list)


@dataclass
class With(Node):
    items: list[WithItem] = field(default_factory=list)
    body: list["Stmt"] = field(default_factory=list)
    is_async: bool = False


@dataclass
class Raise(Node):
    exc: Optional["Expr"] = None
    cause: Optional["Expr"] = None


@dataclass
class Try(Node):
    body: list["Stmt"] = field(default_factory=list)
    handlers: list[ExceptHandler] = field(default_factory=list)
    orelse: list["Stmt"] = field(default_factory=list)
    finalbody: list["Stmt"] = field(default_factory=list)


@dataclass
class Assert(Node):
    test: "Expr"
    msg: Optional["Expr"] = None


@dataclass
class Import(Node):
    names: list[Alias] = field(default_factory=list)


@dataclass
class ImportFrom(Node):
    module: Optional[str]
    names: list[Alias] = field(default_factory=list)  # Alias("*") for star import
    level: int = 0


@dataclass
class Global(Node):
    names: list[str] = field(default_factory=list)


@dataclass
class Nonlocal(Node):
    names: list[str] = field(default_factory=list)


@dataclass
class ExprStmt(Node):
    value: "Expr" = None  # type: ignore[assignment]


@dataclass
class Pass(Node):
    pass


@dataclass
class Break(Node):
    pass


@dataclass
class Continue(Node):
    pass


Expr = Union[
    Name, Number, String, NameConstant, EllipsisLiteral, BoolOp, BinOp, UnaryOp,
    Compare, Lambda, IfExp, Dict, Set, ListExpr, TupleExpr, ListComp, SetComp,
    DictComp, GeneratorExp, Await, Yield, YieldFrom, Call, Attribute, Subscript,
    Slice, Starred, NamedExpr,
]

Stmt = Union[
    FunctionDef, ClassDef, Return, Delete, Assign, AugAssign, AnnAssign, For,
    While, If, With, Raise, Try, Assert, Import, ImportFrom, Global, Nonlocal,
    ExprStmt, Pass, Break, Continue,
]

AnyNode = Union[Module, Node, Parameters]


def iter_child_nodes(node: AnyNode) -> Iterator[AnyNode]:
    for f in fields(node):  # type: ignore[arg-type]
        value = getattr(node, f.name)
        if isinstance(value, (Node, Parameters)):
            yield value
        elif isinstance(value, (list, tuple)):
            for item in value:
                if isinstance(item, (Node, Parameters)):
                    yield item


def walk(node: AnyNode) -> Iterator[AnyNode]:
    """Yield node and all descendants, depth-first, document order."""
    stack = [node]
    while stack:
        current = stack.pop()
        yield current
        children = list(iter_child_nodes(current))
        stack.extend(reversed(children))

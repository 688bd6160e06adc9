"""Syntax tree for programs: blocks, formulas, and procedure statements.

Nodes carry their source range so later stages (diagnostics, unsat core
visualization) can point back into the document. The resolver fills in
the ``vtype``/``is_const`` annotations after parsing.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Union

from .diagnostics import Range

# ---------------------------------------------------------------------------
# Terms and formulas


@dataclass
class Term:
    """An identifier used as a term: a bound variable or a constant."""

    name: str
    span: Range
    is_const: bool = False
    vtype: str | None = None


@dataclass
class QuantVar:
    name: str
    span: Range
    vtype: str | None = None


@dataclass
class Quant:
    kind: str  # "forall" | "exists"
    vars: list[QuantVar]
    body: "Formula"
    span: Range


@dataclass
class Not:
    body: "Formula"
    span: Range


@dataclass
class BinOp:
    op: str  # "and" | "or" | "implies" | "equiv"
    left: "Formula"
    right: "Formula"
    span: Range


@dataclass
class Atom:
    pred: str
    args: list[Term]
    span: Range


@dataclass
class Eq:
    left: Term
    right: Term
    span: Range


@dataclass
class BoolConst:
    value: bool
    span: Range


Formula = Union[Quant, Not, BinOp, Atom, Eq, BoolConst]


@dataclass
class Sentence:
    index: int  # 1-based position within its theory block
    formula: Formula
    span: Range
    file: str


# ---------------------------------------------------------------------------
# Vocabulary declarations


@dataclass
class TypeDecl:
    name: str
    span: Range


@dataclass
class PredDecl:
    name: str
    arg_types: list[str]
    span: Range


@dataclass
class ConstDecl:
    name: str
    type: str
    span: Range


Decl = Union[TypeDecl, PredDecl, ConstDecl]


# ---------------------------------------------------------------------------
# Structure assignments


@dataclass
class SetTuple:
    elements: list[str]
    span: Range


@dataclass
class SetAssign:
    """``sym = { ... }`` or ``sym<ct|cf> = { ... }``."""

    symbol: str
    part: str  # "total" | "ct" | "cf"
    tuples: list[SetTuple]
    span: Range


@dataclass
class SimpleAssign:
    """``c = element`` for constants or ``p = true|false`` for 0-ary predicates."""

    symbol: str
    value: str | bool
    span: Range


Assignment = Union[SetAssign, SimpleAssign]


# ---------------------------------------------------------------------------
# Procedure statements and expressions


@dataclass
class IntLit:
    value: int
    span: Range


@dataclass
class StrLit:
    value: str
    span: Range


@dataclass
class BoolLit:
    value: bool
    span: Range


@dataclass
class VarRef:
    name: str
    span: Range


@dataclass
class Call:
    func: str
    args: list["Expr"]
    span: Range


@dataclass
class Unary:
    op: str  # "not" | "neg"
    operand: "Expr"
    span: Range


@dataclass
class Binary:
    op: str  # "&" "|" "==" "!=" "<" "<=" ">" ">=" "+" "-"
    left: "Expr"
    right: "Expr"
    span: Range


Expr = Union[IntLit, StrLit, BoolLit, VarRef, Call, Unary, Binary]


@dataclass
class AssignStmt:
    var: str
    expr: Expr
    span: Range


@dataclass
class CallStmt:
    call: Call
    span: Range


@dataclass
class IfStmt:
    cond: Expr
    then: list["Stmt"]
    orelse: list["Stmt"]
    span: Range


@dataclass
class WhileStmt:
    cond: Expr
    body: list["Stmt"]
    span: Range


@dataclass
class ExitStmt:
    code: Expr | None
    span: Range


Stmt = Union[AssignStmt, CallStmt, IfStmt, WhileStmt, ExitStmt]


# ---------------------------------------------------------------------------
# Blocks and programs


@dataclass
class VocabularyBlock:
    name: str
    decls: list[Decl]
    span: Range
    file: str
    name_span: Range


@dataclass
class TheoryBlock:
    name: str
    vocab_name: str
    sentences: list[Sentence]
    span: Range
    file: str
    name_span: Range
    vocab_span: Range


@dataclass
class StructureBlock:
    name: str
    vocab_name: str
    assignments: list[Assignment]
    span: Range
    file: str
    name_span: Range
    vocab_span: Range


@dataclass
class ProcedureBlock:
    name: str
    body: list[Stmt]
    span: Range
    file: str
    name_span: Range


Block = Union[VocabularyBlock, TheoryBlock, StructureBlock, ProcedureBlock]


@dataclass
class Program:
    blocks: list[Block]


def merge_programs(programs: list[Program]) -> Program:
    return Program([b for p in programs for b in p.blocks])


# Field names that hold source bookkeeping rather than structure.
_POSITION_FIELDS = {"span", "file", "name_span", "vocab_span"}


def _strip(node) -> object:
    if dataclasses.is_dataclass(node) and not isinstance(node, type):
        parts = [type(node).__name__]
        for f in dataclasses.fields(node):
            if f.name in _POSITION_FIELDS:
                continue
            parts.append(_strip(getattr(node, f.name)))
        return tuple(parts)
    if isinstance(node, (list, tuple)):
        return tuple(_strip(x) for x in node)
    return node


def structurally_equal(a, b) -> bool:
    """Equality of syntax trees ignoring source positions."""
    return _strip(a) == _strip(b)

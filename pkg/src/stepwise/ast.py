"""Surface syntax tree for the supported language subset.

Nodes keep their source span (excluded from equality so structurally equal
parses compare equal) and, where the trace or an error message later needs the
user's own spelling, a verbatim source slice.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import Span


def _span_field():
    return field(compare=False)


# --- expressions -----------------------------------------------------------


@dataclass
class Expr:
    pass


@dataclass
class Var(Expr):
    name: str
    span: Span = _span_field()


@dataclass
class Con(Expr):
    name: str
    span: Span = _span_field()


@dataclass
class IntLit(Expr):
    value: int
    span: Span = _span_field()


@dataclass
class CharLit(Expr):
    value: str
    span: Span = _span_field()


@dataclass
class StringLit(Expr):
    value: str
    span: Span = _span_field()


@dataclass
class App(Expr):
    fn: Expr
    args: list[Expr]
    span: Span = _span_field()


@dataclass
class BinOp(Expr):
    op: str
    left: Expr
    right: Expr
    span: Span = _span_field()


@dataclass
class Neg(Expr):
    operand: Expr
    span: Span = _span_field()


@dataclass
class Lam(Expr):
    params: list[Pattern]
    body: Expr
    span: Span = _span_field()
    text: str = field(compare=False, default="")


@dataclass
class LeftSection(Expr):
    op: str
    operand: Expr
    span: Span = _span_field()
    text: str = field(compare=False, default="")


@dataclass
class RightSection(Expr):
    op: str
    operand: Expr
    span: Span = _span_field()
    text: str = field(compare=False, default="")


@dataclass
class If(Expr):
    cond: Expr
    then: Expr
    other: Expr
    span: Span = _span_field()


@dataclass
class Case(Expr):
    scrutinee: Expr
    alts: list[CaseAlt]
    span: Span = _span_field()
    text: str = field(compare=False, default="")


@dataclass
class Let(Expr):
    defs: list[Equation]
    body: Expr
    span: Span = _span_field()
    text: str = field(compare=False, default="")


@dataclass
class TupleLit(Expr):
    items: list[Expr]
    span: Span = _span_field()


@dataclass
class ListLit(Expr):
    items: list[Expr]
    span: Span = _span_field()


@dataclass
class EnumFrom(Expr):
    start: Expr
    span: Span = _span_field()


@dataclass
class EnumFromTo(Expr):
    start: Expr
    stop: Expr
    span: Span = _span_field()


@dataclass
class EnumFromThen(Expr):
    start: Expr
    next: Expr
    span: Span = _span_field()


@dataclass
class EnumFromThenTo(Expr):
    start: Expr
    next: Expr
    stop: Expr
    span: Span = _span_field()


@dataclass
class Comprehension(Expr):
    """Parsed but rejected during type checking; carries its source text."""

    head: Expr
    quals: list[CompQual]
    span: Span = _span_field()
    text: str = field(compare=False, default="")


@dataclass
class CompQual:
    pattern: Pattern | None  # None for a boolean guard qualifier
    expr: Expr
    span: Span = _span_field()


# --- patterns --------------------------------------------------------------


@dataclass
class Pattern:
    pass


@dataclass
class PVar(Pattern):
    name: str
    span: Span = _span_field()


@dataclass
class PWild(Pattern):
    span: Span = _span_field()


@dataclass
class PInt(Pattern):
    value: int
    span: Span = _span_field()


@dataclass
class PChar(Pattern):
    value: str
    span: Span = _span_field()


@dataclass
class PString(Pattern):
    value: str
    span: Span = _span_field()


@dataclass
class PCon(Pattern):
    name: str
    args: list[Pattern]
    span: Span = _span_field()


@dataclass
class PTuple(Pattern):
    items: list[Pattern]
    span: Span = _span_field()


@dataclass
class PList(Pattern):
    items: list[Pattern]
    span: Span = _span_field()


@dataclass
class PBang(Pattern):
    pattern: Pattern
    span: Span = _span_field()


def pattern_vars(pat: Pattern) -> list[str]:
    match pat:
        case PVar(name):
            return [name]
        case PCon(_, args) | PTuple(args) | PList(args):
            out: list[str] = []
            for a in args:
                out.extend(pattern_vars(a))
            return out
        case PBang(sub):
            return pattern_vars(sub)
        case _:
            return []


# --- type expressions (signatures, data declarations) ----------------------


@dataclass
class TypeExpr:
    pass


@dataclass
class TEVar(TypeExpr):
    name: str
    span: Span = _span_field()


@dataclass
class TECon(TypeExpr):
    name: str
    args: list[TypeExpr]
    span: Span = _span_field()


@dataclass
class TEFun(TypeExpr):
    arg: TypeExpr
    result: TypeExpr
    span: Span = _span_field()


@dataclass
class TETuple(TypeExpr):
    items: list[TypeExpr]
    span: Span = _span_field()


@dataclass
class TEList(TypeExpr):
    item: TypeExpr
    span: Span = _span_field()


# --- declarations ----------------------------------------------------------


@dataclass
class GuardedRhs:
    """One `| guard = body` clause (guard None for a plain `= body`)."""

    guard: Expr | None
    body: Expr
    guard_text: str = field(compare=False, default="")
    body_text: str = field(compare=False, default="")


@dataclass
class CaseAlt:
    pattern: Pattern
    clauses: list[GuardedRhs]
    span: Span = _span_field()
    pat_text: str = field(compare=False, default="")


@dataclass
class Equation:
    name: str
    patterns: list[Pattern]
    clauses: list[GuardedRhs]
    wheres: list[Equation]
    span: Span = _span_field()
    lhs_text: str = field(compare=False, default="")

    @property
    def arity(self) -> int:
        return len(self.patterns)


@dataclass
class TypeSig:
    names: list[str]
    type: TypeExpr
    span: Span = _span_field()


@dataclass
class ConDecl:
    name: str
    args: list[TypeExpr]
    span: Span = _span_field()


@dataclass
class DataDecl:
    name: str
    params: list[str]
    constructors: list[ConDecl]
    span: Span = _span_field()


@dataclass
class TypeAlias:
    name: str
    params: list[str]
    aliased: TypeExpr
    span: Span = _span_field()


@dataclass
class EquationGroup:
    """Contiguous equations for one name, all with the same arity."""

    name: str
    equations: list[Equation]
    signature: TypeExpr | None = None

    @property
    def arity(self) -> int:
        return self.equations[0].arity


@dataclass
class Program:
    data_decls: list[DataDecl]
    aliases: list[TypeAlias]
    groups: list[EquationGroup]
    source: str = field(compare=False, default="")

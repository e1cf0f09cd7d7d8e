"""Desugared core: a pattern-matching calculus.

Each function becomes one Matching (ordered alternatives, ordered guard
clauses, guard fall-through to the next alternative). All list/string/tuple/
enumeration sugar is gone. Every alternative clause keeps a verbatim rendering
of its source equation for trace justifications.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import ast
from .typecheck import ConInfo


# --- core expressions --------------------------------------------------------


class CoreExpr:
    pass


@dataclass
class Var(CoreExpr):
    name: str


@dataclass
class IntC(CoreExpr):
    value: int


@dataclass
class CharC(CoreExpr):
    value: str


@dataclass
class BoolC(CoreExpr):
    value: bool


@dataclass
class ConApp(CoreExpr):
    """Constructor application, saturated or partial. `literal` marks cells
    that came from list/string/tuple literals (they display as sugar)."""

    name: str
    args: list[CoreExpr]
    literal: bool = False


@dataclass
class App(CoreExpr):
    fn: CoreExpr
    args: list[CoreExpr]


@dataclass
class Lam(CoreExpr):
    matching: Matching
    text: str = ""  # the user's own spelling, shown for lambdas and sections


@dataclass
class Let(CoreExpr):
    bindings: list[Binding]
    body: CoreExpr


@dataclass
class Match(CoreExpr):
    """A matching applied to scrutinees (case expressions, if-then-else, and
    guarded zero-argument definitions)."""

    matching: Matching
    args: list[CoreExpr]
    kind: str = "case"  # "case" | "if" | "caf"
    text: str = ""


# --- core patterns -----------------------------------------------------------


class CorePat:
    pass


@dataclass
class PVarC(CorePat):
    name: str


@dataclass
class PWildC(CorePat):
    pass


@dataclass
class PIntC(CorePat):
    value: int


@dataclass
class PCharC(CorePat):
    value: str


@dataclass
class PBoolC(CorePat):
    value: bool


@dataclass
class PConC(CorePat):
    name: str
    args: list[CorePat]


@dataclass
class PBangC(CorePat):
    pattern: CorePat


# --- matchings and bindings --------------------------------------------------


@dataclass
class Clause:
    guard: CoreExpr | None  # None: fires silently (plain rhs or `otherwise`)
    body: CoreExpr
    text: str | None  # justification; None for anonymous lambdas


@dataclass
class Alt:
    patterns: list[CorePat]
    clauses: list[Clause]
    wheres: list[Binding] = field(default_factory=list)


@dataclass
class Matching:
    arity: int
    alts: list[Alt]
    name: str = ""  # for incomplete-match messages


@dataclass
class Binding:
    """A definition: top-level, let- or where-bound."""

    name: str
    rhs: CoreExpr
    text: str  # e.g. "xs = x:xs"
    expansion_step: bool  # plain value bindings show a `{ name = rhs }` step
    level: str = "local"  # "top" | "local"


@dataclass
class CoreProgram:
    bindings: dict[str, Binding]
    constructors: dict[str, ConInfo]


class NameSupply:
    """Monotone counter; freshened locals render as `<base>$<k>`."""

    def __init__(self) -> None:
        self.counter = 0

    def fresh(self, base: str) -> str:
        name = f"{base}${self.counter}"
        self.counter += 1
        return name


# --- desugaring --------------------------------------------------------------


def _string_chain(chars: str, literal: bool = True) -> CoreExpr:
    out: CoreExpr = ConApp("[]", [], literal)
    for c in reversed(chars):
        out = ConApp(":", [CharC(c), out], literal)
    return out


def _tuple_name(n: int) -> str:
    return f"({',' * (n - 1)})"


def desugar_pattern(pat: ast.Pattern) -> CorePat:
    match pat:
        case ast.PVar(name):
            return PVarC(name)
        case ast.PWild():
            return PWildC()
        case ast.PInt(v):
            return PIntC(v)
        case ast.PChar(v):
            return PCharC(v)
        case ast.PString(s):
            out: CorePat = PConC("[]", [])
            for c in reversed(s):
                out = PConC(":", [PCharC(c), out])
            return out
        case ast.PCon("True", []):
            return PBoolC(True)
        case ast.PCon("False", []):
            return PBoolC(False)
        case ast.PCon(name, args):
            return PConC(name, [desugar_pattern(a) for a in args])
        case ast.PTuple(items):
            return PConC(_tuple_name(len(items)),
                         [desugar_pattern(i) for i in items])
        case ast.PList(items):
            out = PConC("[]", [])
            for i in reversed(items):
                out = PConC(":", [desugar_pattern(i), out])
            return out
        case ast.PBang(sub):
            return PBangC(desugar_pattern(sub))
    raise AssertionError(pat)


IF_TRUE_TEXT = "if True then x else y = x"
IF_FALSE_TEXT = "if False then x else y = y"


class Desugarer:
    def __init__(self, constructors: dict[str, ConInfo]):
        self.constructors = constructors

    def expr(self, e: ast.Expr) -> CoreExpr:
        match e:
            case ast.Var("otherwise"):
                return BoolC(True)
            case ast.Var(name):
                return Var(name)
            case ast.Con("True"):
                return BoolC(True)
            case ast.Con("False"):
                return BoolC(False)
            case ast.Con(name):
                return ConApp(name, [])
            case ast.IntLit(v):
                return IntC(v)
            case ast.CharLit(v):
                return CharC(v)
            case ast.StringLit(s):
                return _string_chain(s)
            case ast.App(fn, args):
                core_args = [self.expr(a) for a in args]
                match fn:
                    case ast.Con(name) if name not in ("True", "False"):
                        return ConApp(name, core_args)
                return App(self.expr(fn), core_args)
            case ast.BinOp(":", left, right):
                return ConApp(":", [self.expr(left), self.expr(right)])
            case ast.BinOp(op, left, right):
                return App(Var(op), [self.expr(left), self.expr(right)])
            case ast.Neg(ast.IntLit(v)):
                return IntC(-v)
            case ast.Neg(operand):
                return App(Var("negate"), [self.expr(operand)])
            case ast.Lam(params, body, _, text):
                alt = Alt([desugar_pattern(p) for p in params],
                          [Clause(None, self.expr(body), None)])
                return Lam(Matching(len(params), [alt], "lambda"), text)
            case ast.LeftSection(op, operand, _, text):
                return self._section(op, self.expr(operand), None, text)
            case ast.RightSection(op, operand, _, text):
                return self._section(op, None, self.expr(operand), text)
            case ast.If(cond, then, other):
                alts = [
                    Alt([PBoolC(True)], [Clause(None, self.expr(then),
                                                IF_TRUE_TEXT)]),
                    Alt([PBoolC(False)], [Clause(None, self.expr(other),
                                                 IF_FALSE_TEXT)]),
                ]
                return Match(Matching(1, alts, "if"), [self.expr(cond)],
                             kind="if")
            case ast.Case(scrut, alts, _, text):
                core_alts = [self._case_alt(a) for a in alts]
                return Match(Matching(1, core_alts, "case"),
                             [self.expr(scrut)], kind="case", text=text)
            case ast.Let(defs, body, _, _):
                bindings = self.local_bindings(defs)
                return Let(bindings, self.expr(body))
            case ast.TupleLit(items):
                return ConApp(_tuple_name(len(items)),
                              [self.expr(i) for i in items], literal=True)
            case ast.ListLit(items):
                out: CoreExpr = ConApp("[]", [], literal=True)
                for i in reversed(items):
                    out = ConApp(":", [self.expr(i), out], literal=True)
                return out
            case ast.EnumFrom(a):
                return App(Var("enumFrom"), [self.expr(a)])
            case ast.EnumFromTo(a, b):
                return App(Var("enumFromTo"), [self.expr(a), self.expr(b)])
            case ast.EnumFromThen(a, b):
                return App(Var("enumFromThen"), [self.expr(a), self.expr(b)])
            case ast.EnumFromThenTo(a, b, c):
                return App(Var("enumFromThenTo"),
                           [self.expr(a), self.expr(b), self.expr(c)])
        raise AssertionError(f"cannot desugar {e!r}")

    def _section(self, op: str, left: CoreExpr | None, right: CoreExpr | None,
                 text: str) -> CoreExpr:
        param = "%x"
        l = left if left is not None else Var(param)
        r = right if right is not None else Var(param)
        body = ConApp(":", [l, r]) if op == ":" else App(Var(op), [l, r])
        alt = Alt([PVarC(param)], [Clause(None, body, None)])
        return Lam(Matching(1, [alt], "section"), text)

    def _case_alt(self, alt: ast.CaseAlt) -> Alt:
        clauses = []
        for c in alt.clauses:
            text = (f"{alt.pat_text} | {c.guard_text} -> {c.body_text}"
                    if c.guard is not None
                    else f"{alt.pat_text} -> {c.body_text}")
            clauses.append(Clause(self._guard(c.guard), self.expr(c.body), text))
        return Alt([desugar_pattern(alt.pattern)], clauses)

    def _guard(self, guard: ast.Expr | None) -> CoreExpr | None:
        if guard is None:
            return None
        g = self.expr(guard)
        if isinstance(g, BoolC) and g.value:
            return None  # `otherwise`/True guards fire without a step
        return g

    def equation_alt(self, eq: ast.Equation) -> Alt:
        clauses = []
        for c in eq.clauses:
            text = (f"{eq.lhs_text} | {c.guard_text} = {c.body_text}"
                    if c.guard is not None
                    else f"{eq.lhs_text} = {c.body_text}")
            clauses.append(Clause(self._guard(c.guard), self.expr(c.body), text))
        wheres = self.local_bindings(eq.wheres)
        return Alt([desugar_pattern(p) for p in eq.patterns], clauses, wheres)

    def local_bindings(self, defs: list[ast.Equation]) -> list[Binding]:
        groups: list[list[ast.Equation]] = []
        index: dict[str, list[ast.Equation]] = {}
        for eq in defs:
            if eq.name in index:
                index[eq.name].append(eq)
            else:
                index[eq.name] = [eq]
                groups.append(index[eq.name])
        return [self.binding(eqs[0].name, eqs, level="local") for eqs in groups]

    def binding(self, name: str, eqs: list[ast.Equation], level: str) -> Binding:
        arity = eqs[0].arity
        first = eqs[0]
        plain_value = (arity == 0 and len(eqs) == 1
                       and len(first.clauses) == 1
                       and first.clauses[0].guard is None)
        if arity > 0:
            matching = Matching(arity, [self.equation_alt(e) for e in eqs], name)
            rhs: CoreExpr = Lam(matching, text=name)
            text = self._clause_text(first)
            return Binding(name, rhs, text, expansion_step=False, level=level)
        if plain_value:
            rhs = self.expr(first.clauses[0].body)
            if first.wheres:
                rhs = Let(self.local_bindings(first.wheres), rhs)
            return Binding(name, rhs, self._clause_text(first),
                           expansion_step=True, level=level)
        # zero-argument definition with guards (or several equations)
        matching = Matching(0, [self.equation_alt(e) for e in eqs], name)
        rhs = Match(matching, [], kind="caf", text=name)
        return Binding(name, rhs, self._clause_text(first),
                       expansion_step=False, level=level)

    def _clause_text(self, eq: ast.Equation) -> str:
        c = eq.clauses[0]
        if c.guard is not None:
            return f"{eq.lhs_text} | {c.guard_text} = {c.body_text}"
        return f"{eq.lhs_text} = {c.body_text}"


def desugar_program(program: ast.Program,
                    constructors: dict[str, ConInfo]) -> CoreProgram:
    d = Desugarer(constructors)
    bindings: dict[str, Binding] = {}
    for group in program.groups:
        bindings[group.name] = d.binding(group.name, group.equations,
                                         level="top")
    return CoreProgram(bindings, dict(constructors))


def desugar_expr(expr: ast.Expr,
                 constructors: dict[str, ConInfo]) -> CoreExpr:
    return Desugarer(constructors).expr(expr)


def merge_bindings(user: CoreProgram, prelude: CoreProgram) -> CoreProgram:
    """User definitions shadow prelude definitions of the same name entirely."""
    bindings = dict(prelude.bindings)
    bindings.update(user.bindings)
    constructors = dict(prelude.constructors)
    constructors.update(user.constructors)
    return CoreProgram(bindings, constructors)

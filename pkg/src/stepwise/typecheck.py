"""Hindley-Milner inference without type classes.

Arithmetic is Int-only; comparisons are deliberately overly polymorphic
(`a -> a -> Bool`) with failure deferred to runtime. Unsupported-but-parsed
features (list comprehensions) are rejected here with an explicit message.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import ast
from .errors import Span, TypecheckError
from .types import (
    BOOL, CHAR, INT, ORDERING, STRING, Scheme, TCon, TRigid, TVar, Type,
    UnifyError, free_type_vars, generalize, prune, render_type, scheme, tcon,
    tfun, tfun_n, tlist, ttuple, unify,
)

TypeEnv = dict[str, Scheme]


@dataclass(frozen=True)
class ConInfo:
    name: str
    type_name: str
    arity: int
    index: int  # declaration order, drives structural comparison
    scheme: Scheme


def _gen(i: int) -> Type:
    from .types import TGen

    return TGen(i)


def builtin_constructors() -> dict[str, ConInfo]:
    a, b = _gen(0), _gen(1)
    cons: dict[str, ConInfo] = {}

    def add(name, type_name, arity, index, count, body):
        cons[name] = ConInfo(name, type_name, arity, index, Scheme(count, body))

    add("False", "Bool", 0, 0, 0, BOOL)
    add("True", "Bool", 0, 1, 0, BOOL)
    add("[]", "[]", 0, 0, 1, tlist(a))
    add(":", "[]", 2, 1, 1, tfun_n([a, tlist(a)], tlist(a)))
    add("LT", "Ordering", 0, 0, 0, ORDERING)
    add("EQ", "Ordering", 0, 1, 0, ORDERING)
    add("GT", "Ordering", 0, 2, 0, ORDERING)
    add("Nothing", "Maybe", 0, 0, 1, tcon("Maybe", a))
    add("Just", "Maybe", 1, 1, 1, tfun(a, tcon("Maybe", a)))
    for n in (2, 3, 4):
        name = f"({',' * (n - 1)})"
        gens = [_gen(i) for i in range(n)]
        add(name, name, n, 0, n, tfun_n(gens, TCon(name, tuple(gens))))
    return cons


def builtin_type_arities() -> dict[str, int]:
    return {
        "Int": 0, "Bool": 0, "Char": 0, "Ordering": 0, "Maybe": 1,
        "[]": 1, "->": 2, "(,)": 2, "(,,)": 3, "(,,,)": 4,
    }


def base_env() -> TypeEnv:
    a = TVar()
    env: TypeEnv = {}
    for op in ("+", "-", "*", "div", "mod"):
        env[op] = scheme(tfun_n([INT, INT], INT))
    env["negate"] = scheme(tfun(INT, INT))
    for op in ("==", "/=", "<", "<=", ">", ">="):
        env[op] = generalize(tfun_n([a, a], BOOL))
    env["compare"] = generalize(tfun_n([a, a], ORDERING))
    env["chr"] = scheme(tfun(INT, CHAR))
    env["ord"] = scheme(tfun(CHAR, INT))
    for name in ("isAlpha", "isDigit", "isAlphaNum", "isUpper", "isLower"):
        env[name] = scheme(tfun(CHAR, BOOL))
    env["show"] = scheme(tfun(INT, STRING))
    env["otherwise"] = scheme(BOOL)
    return env


COMPREHENSION_MESSAGE = "list comprehensions are not supported"


class Inferencer:
    def __init__(self, env: TypeEnv,
                 constructors: dict[str, ConInfo] | None = None,
                 type_arities: dict[str, int] | None = None,
                 aliases: dict[str, tuple[list[str], ast.TypeExpr]] | None = None):
        self.env = dict(env)
        self.constructors = dict(constructors or builtin_constructors())
        self.type_arities = dict(type_arities or builtin_type_arities())
        self.aliases = dict(aliases or {})
        self.current_def: str | None = None

    # --- declarations ---

    def register_alias(self, alias: ast.TypeAlias) -> None:
        if alias.name in self.type_arities or alias.name in self.aliases:
            raise TypecheckError(f"redefinition of type {alias.name}", alias.span)
        self.aliases[alias.name] = (alias.params, alias.aliased)

    def register_data(self, decl: ast.DataDecl) -> None:
        if decl.name in self.type_arities or decl.name in self.aliases:
            raise TypecheckError(f"redefinition of type {decl.name}", decl.span)
        self.type_arities[decl.name] = len(decl.params)
        gens = {p: _gen(i) for i, p in enumerate(decl.params)}
        result = TCon(decl.name, tuple(gens[p] for p in decl.params))
        for index, con in enumerate(decl.constructors):
            if con.name in self.constructors:
                raise TypecheckError(
                    f"redefinition of constructor {con.name}", con.span)
            args = [self.convert_type(t, gens, strict=True) for t in con.args]
            self.constructors[con.name] = ConInfo(
                con.name, decl.name, len(con.args), index,
                Scheme(len(decl.params), tfun_n(args, result)))

    def convert_type(self, te: ast.TypeExpr, var_map: dict[str, Type],
                     strict: bool = False, depth: int = 0) -> Type:
        if depth > 100:
            raise TypecheckError("recursive type alias", te.span)
        match te:
            case ast.TEVar(name):
                if name not in var_map:
                    if strict:
                        raise TypecheckError(
                            f"type variable {name} not in scope", te.span)
                    var_map[name] = TVar()
                return var_map[name]
            case ast.TEFun(arg, result):
                return tfun(self.convert_type(arg, var_map, strict, depth),
                            self.convert_type(result, var_map, strict, depth))
            case ast.TETuple(items):
                return ttuple([self.convert_type(t, var_map, strict, depth)
                               for t in items])
            case ast.TEList(item):
                return tlist(self.convert_type(item, var_map, strict, depth))
            case ast.TECon(name, args):
                if name in self.aliases:
                    params, body = self.aliases[name]
                    if len(args) != len(params):
                        raise TypecheckError(
                            f"type alias {name} expects {len(params)} "
                            f"arguments", te.span)
                    inner = {p: self.convert_type(a, var_map, strict, depth)
                             for p, a in zip(params, args)}
                    return self.convert_type(body, inner, True, depth + 1)
                if name == "String" and not args:
                    return STRING
                if name not in self.type_arities:
                    raise TypecheckError(f"unknown type {name}", te.span)
                want = self.type_arities[name]
                if len(args) != want:
                    raise TypecheckError(
                        f"type {name} expects {want} argument"
                        f"{'s' if want != 1 else ''}", te.span)
                return TCon(name, tuple(
                    self.convert_type(a, var_map, strict, depth) for a in args))
        raise AssertionError(te)

    def skolemize(self, te: ast.TypeExpr) -> Type:
        rigid: dict[str, Type] = {}

        def conv(t: ast.TypeExpr) -> Type:
            match t:
                case ast.TEVar(name):
                    return rigid.setdefault(name, TRigid(name))
                case ast.TEFun(a, r):
                    return tfun(conv(a), conv(r))
                case ast.TETuple(items):
                    return ttuple([conv(i) for i in items])
                case ast.TEList(item):
                    return tlist(conv(item))
                case ast.TECon(name, _) if name in self.aliases or name == "String":
                    return self.convert_type(t, rigid)
                case ast.TECon(name, args):
                    if name not in self.type_arities:
                        raise TypecheckError(f"unknown type {name}", t.span)
                    return TCon(name, tuple(conv(a) for a in args))
            raise AssertionError(t)

        return conv(te)

    # --- programs ---

    def infer_program(self, program: ast.Program) -> TypeEnv:
        for alias in program.aliases:
            self.register_alias(alias)
        for decl in program.data_decls:
            self.register_data(decl)

        placeholders: dict[str, TVar] = {}
        for group in program.groups:
            if group.signature is not None:
                self.env[group.name] = generalize(
                    self.convert_type(group.signature, {}))
            else:
                tv = TVar()
                placeholders[group.name] = tv
                self.env[group.name] = Scheme(0, tv)

        for group in program.groups:
            self.current_def = group.name
            t = self.infer_equations(group.equations, self.env)
            if group.signature is not None:
                self.unify_at(t, self.skolemize(group.signature),
                              group.equations[0].span,
                              context=f"definition of {group.name}: ")
            else:
                self.unify_at(placeholders[group.name], t,
                              group.equations[0].span,
                              context=f"definition of {group.name}: ")
            self.current_def = None

        for name, tv in placeholders.items():
            self.env[name] = generalize(prune(tv))
        return self.env

    def infer_equations(self, equations: list[ast.Equation],
                        scope: TypeEnv) -> Type:
        result = TVar()
        for eq in equations:
            self.unify_at(self.infer_equation(eq, scope), result, eq.span,
                          context=f"equation for {eq.name}: ")
        return result

    def infer_equation(self, eq: ast.Equation, scope: TypeEnv) -> Type:
        local = dict(scope)
        arg_ts = [self.infer_pattern(p, local) for p in eq.patterns]
        if eq.wheres:
            self.infer_local_block(eq.wheres, local)
        body_t = TVar()
        for clause in eq.clauses:
            if clause.guard is not None:
                self.check(clause.guard, BOOL, local)
            self.unify_at(self.infer(clause.body, local), body_t,
                          clause.body.span)
        return tfun_n(arg_ts, body_t)

    def infer_local_block(self, defs: list[ast.Equation],
                          scope: TypeEnv) -> None:
        groups: list[tuple[str, list[ast.Equation]]] = []
        index: dict[str, list[ast.Equation]] = {}
        for eq in defs:
            if eq.name in index:
                if eq.arity != index[eq.name][0].arity:
                    raise TypecheckError(
                        f"equations for {eq.name} have different numbers "
                        "of arguments", eq.span)
                index[eq.name].append(eq)
            else:
                index[eq.name] = [eq]
                groups.append((eq.name, index[eq.name]))
        mono = {v.id for s in scope.values() for v in free_type_vars(s.body)}
        placeholders: dict[str, TVar] = {}
        for name, _ in groups:
            tv = TVar()
            placeholders[name] = tv
            scope[name] = Scheme(0, tv)
        for name, eqs in groups:
            t = self.infer_equations(eqs, scope)
            self.unify_at(placeholders[name], t, eqs[0].span,
                          context=f"definition of {name}: ")
        for name, _ in groups:
            scope[name] = generalize(prune(placeholders[name]), mono)

    # --- patterns ---

    def infer_pattern(self, pat: ast.Pattern, scope: TypeEnv) -> Type:
        match pat:
            case ast.PVar(name):
                tv = TVar()
                scope[name] = Scheme(0, tv)
                return tv
            case ast.PWild():
                return TVar()
            case ast.PInt():
                return INT
            case ast.PChar():
                return CHAR
            case ast.PString():
                return STRING
            case ast.PBang(sub):
                return self.infer_pattern(sub, scope)
            case ast.PTuple(items):
                return ttuple([self.infer_pattern(p, scope) for p in items])
            case ast.PList(items):
                elem = TVar()
                for p in items:
                    self.unify_at(self.infer_pattern(p, scope), elem, pat.span)
                return tlist(elem)
            case ast.PCon(name, args):
                info = self.constructors.get(name)
                if info is None:
                    raise TypecheckError(f"unknown constructor {name}", pat.span)
                if len(args) != info.arity:
                    raise TypecheckError(
                        f"constructor {name} expects {info.arity} "
                        f"argument{'s' if info.arity != 1 else ''}", pat.span)
                t = info.scheme.instantiate()
                for p in args:
                    arg_t = self.infer_pattern(p, scope)
                    t = self.apply_type(t, arg_t, pat.span)
                return t
        raise AssertionError(pat)

    # --- expressions ---

    def apply_type(self, fn_t: Type, arg_t: Type, span: Span) -> Type:
        res = TVar()
        self.unify_at(fn_t, tfun(arg_t, res), span)
        return res

    def op_type(self, op: str, scope: TypeEnv, span: Span) -> Type:
        if op == ":":
            return self.constructors[":"].scheme.instantiate()
        s = scope.get(op)
        if s is None:
            raise TypecheckError(f"operator {op} not in scope", span)
        return s.instantiate()

    def check(self, expr: ast.Expr, expected: Type, scope: TypeEnv) -> None:
        self.unify_at(self.infer(expr, scope), expected, expr.span)

    def infer(self, expr: ast.Expr, scope: TypeEnv) -> Type:
        match expr:
            case ast.Var(name):
                s = scope.get(name)
                if s is None:
                    raise TypecheckError(f"variable not in scope: {name}",
                                         expr.span)
                return s.instantiate()
            case ast.Con(name):
                info = self.constructors.get(name)
                if info is None:
                    raise TypecheckError(f"unknown constructor {name}",
                                         expr.span)
                return info.scheme.instantiate()
            case ast.IntLit():
                return INT
            case ast.CharLit():
                return CHAR
            case ast.StringLit():
                return STRING
            case ast.App(fn, args):
                t = self.infer(fn, scope)
                for a in args:
                    t = self.apply_type(t, self.infer(a, scope), a.span)
                return t
            case ast.BinOp(op, left, right):
                t = self.op_type(op, scope, expr.span)
                t = self.apply_type(t, self.infer(left, scope), left.span)
                return self.apply_type(t, self.infer(right, scope), right.span)
            case ast.Neg(operand):
                self.check(operand, INT, scope)
                return INT
            case ast.Lam(params, body):
                local = dict(scope)
                arg_ts = [self.infer_pattern(p, local) for p in params]
                return tfun_n(arg_ts, self.infer(body, local))
            case ast.LeftSection(op, operand):
                t = self.op_type(op, scope, expr.span)
                return self.apply_type(t, self.infer(operand, scope),
                                       expr.span)
            case ast.RightSection(op, operand):
                t = self.op_type(op, scope, expr.span)
                x, mid, res = TVar(), TVar(), TVar()
                self.unify_at(t, tfun(x, mid), expr.span)
                self.unify_at(mid, tfun(self.infer(operand, scope), res),
                              expr.span)
                return tfun(x, res)
            case ast.If(cond, then, other):
                self.check(cond, BOOL, scope)
                t = self.infer(then, scope)
                self.unify_at(self.infer(other, scope), t, other.span)
                return t
            case ast.Case(scrutinee, alts):
                scrut_t = self.infer(scrutinee, scope)
                result = TVar()
                for alt in alts:
                    local = dict(scope)
                    self.unify_at(self.infer_pattern(alt.pattern, local),
                                  scrut_t, alt.span)
                    for clause in alt.clauses:
                        if clause.guard is not None:
                            self.check(clause.guard, BOOL, local)
                        self.unify_at(self.infer(clause.body, local), result,
                                      clause.body.span)
                return result
            case ast.Let(defs, body):
                local = dict(scope)
                self.infer_local_block(defs, local)
                return self.infer(body, local)
            case ast.TupleLit(items):
                return ttuple([self.infer(i, scope) for i in items])
            case ast.ListLit(items):
                elem = TVar()
                for i in items:
                    self.unify_at(self.infer(i, scope), elem, i.span)
                return tlist(elem)
            case ast.EnumFrom(start):
                self.check(start, INT, scope)
                return tlist(INT)
            case ast.EnumFromTo(start, stop):
                self.check(start, INT, scope)
                self.check(stop, INT, scope)
                return tlist(INT)
            case ast.EnumFromThen(start, nxt):
                self.check(start, INT, scope)
                self.check(nxt, INT, scope)
                return tlist(INT)
            case ast.EnumFromThenTo(start, nxt, stop):
                self.check(start, INT, scope)
                self.check(nxt, INT, scope)
                self.check(stop, INT, scope)
                return tlist(INT)
            case ast.Comprehension():
                where = (f"definition of {self.current_def}, "
                         if self.current_def else "")
                raise TypecheckError(
                    f"{where}expression {expr.text}: {COMPREHENSION_MESSAGE}",
                    expr.span, plain=True)
        raise AssertionError(expr)

    def unify_at(self, a: Type, b: Type, span: Span, context: str = "") -> None:
        try:
            unify(a, b)
        except UnifyError as e:
            left = render_type(prune(e.left))
            right = render_type(prune(e.right))
            raise TypecheckError(
                f"{context}cannot match {left} with {right}", span) from None


def infer_program(program: ast.Program, env: TypeEnv) -> tuple[TypeEnv, Inferencer]:
    """Check a whole program; returns the extended environment and the
    inferencer (whose constructor table later stages reuse)."""
    inf = Inferencer(env)
    inf.infer_program(program)
    return inf.env, inf


def infer_expr(expr: ast.Expr, env: TypeEnv,
               constructors: dict[str, ConInfo] | None = None,
               type_arities: dict[str, int] | None = None,
               aliases=None) -> Scheme:
    """Principal type of a goal expression under `env`."""
    inf = Inferencer(env, constructors, type_arities, aliases)
    t = inf.infer(expr, inf.env)
    return generalize(prune(t))

"""Recursive-descent parser over the laid-out token stream.

Operators use the standard fixity table (no user fixity declarations).
List comprehensions parse into a surface node so the type checker can reject
them with a useful message instead of a bare syntax error.
"""

from __future__ import annotations

from . import ast
from .errors import ParseError, Pos, Span
from .lexer import Token, lex

# op -> (precedence, associativity); comparisons are non-associative
FIXITY: dict[str, tuple[int, str]] = {
    ".": (9, "r"), "!!": (9, "l"),
    "*": (7, "l"),
    "+": (6, "l"), "-": (6, "l"),
    ":": (5, "r"), "++": (5, "r"),
    "==": (4, "n"), "/=": (4, "n"),
    "<": (4, "n"), "<=": (4, "n"), ">": (4, "n"), ">=": (4, "n"),
    "&&": (3, "r"), "||": (2, "r"),
    "$": (0, "r"), "$!": (0, "r"),
}

ATOM_START = {"varid", "conid", "int", "char", "string", "(", "["}


def normalize_text(text: str) -> str:
    """Collapse all interior whitespace to single spaces."""
    return " ".join(text.split())


class Parser:
    def __init__(self, source: str, top_level: bool):
        self.source = source
        self.tokens = lex(source, top_level=top_level)
        self.index = 0
        starts, acc = [], 0
        for line in source.split("\n"):
            starts.append(acc)
            acc += len(line) + 1
        self.line_starts = starts
        self.last_end = Pos(1, 1)

    # --- token plumbing ---

    def peek(self, k: int = 0) -> Token | None:
        i = self.index + k
        return self.tokens[i] if i < len(self.tokens) else None

    def at(self, kind: str, k: int = 0) -> bool:
        t = self.peek(k)
        return t is not None and t.kind == kind

    def at_op(self, op: str) -> bool:
        t = self.peek()
        return t is not None and t.kind == "varsym" and t.value == op

    def next(self) -> Token:
        t = self.peek()
        if t is None:
            raise ParseError("unexpected end of input", Span.point(*self._eof_pos()))
        self.index += 1
        if not t.virtual:
            self.last_end = Pos(t.end_line, t.end_col)
        return t

    def expect(self, kind: str, what: str | None = None) -> Token:
        t = self.peek()
        if t is None or t.kind != kind:
            raise self.error(f"expecting {what or kind}")
        return self.next()

    def error(self, message: str) -> ParseError:
        t = self.peek()
        if t is None:
            return ParseError(message, Span.point(*self._eof_pos()))
        return ParseError(message, Span.point(t.line, t.col))

    def _eof_pos(self) -> tuple[int, int]:
        lines = self.source.split("\n")
        return len(lines), len(lines[-1]) + 1

    def pos(self) -> Pos:
        t = self.peek()
        if t is None:
            return Pos(*self._eof_pos())
        return t.pos

    def span_from(self, start: Pos) -> Span:
        return Span(start, max(start, self.last_end))

    def offset(self, p: Pos) -> int:
        return self.line_starts[p.line - 1] + p.col - 1

    def slice(self, span: Span) -> str:
        return normalize_text(self.source[self.offset(span.start):self.offset(span.end)])

    def skip_semis(self) -> None:
        while self.at(";"):
            self.next()

    # --- program ---

    def parse_program(self) -> ast.Program:
        data_decls: list[ast.DataDecl] = []
        aliases: list[ast.TypeAlias] = []
        pending_sigs: dict[str, ast.TypeExpr] = {}
        groups: list[ast.EquationGroup] = []
        by_name: dict[str, ast.EquationGroup] = {}
        closed: set[str] = set()

        self.expect("{", "a definition")
        self.skip_semis()
        while not self.at("}"):
            t = self.peek()
            assert t is not None
            if t.kind == "data":
                data_decls.append(self.parse_data())
            elif t.kind == "type":
                aliases.append(self.parse_alias())
            else:
                sig = self.try_signature()
                if sig is not None:
                    for name in sig.names:
                        if name in pending_sigs or name in by_name:
                            raise ParseError(f"duplicate type signature for {name}",
                                             sig.span)
                        pending_sigs[name] = sig.type
                else:
                    eq = self.parse_equation()
                    group = by_name.get(eq.name)
                    if group is not None and eq.name in closed:
                        raise ParseError(
                            f"equations for {eq.name} are not contiguous", eq.span)
                    if group is None:
                        group = ast.EquationGroup(eq.name, [eq],
                                                  pending_sigs.pop(eq.name, None))
                        by_name[eq.name] = group
                        groups.append(group)
                    else:
                        if eq.arity != group.arity:
                            raise ParseError(
                                f"equations for {eq.name} have different numbers "
                                "of arguments", eq.span)
                        group.equations.append(eq)
                    closed.update(by_name.keys() - {eq.name})
            if self.at("}"):
                break
            if not self.at(";"):
                raise self.error("expecting end of definition")
            self.skip_semis()
        self.expect("}")
        if self.peek() is not None:
            raise self.error("expecting end of input")
        for name in pending_sigs:
            raise ParseError(f"type signature for {name} lacks a definition")
        return ast.Program(data_decls, aliases, groups, source=self.source)

    def parse_data(self) -> ast.DataDecl:
        start = self.pos()
        self.expect("data")
        name = self.expect("conid", "a type name").value
        params = []
        while self.at("varid"):
            params.append(self.next().value)
        if len(set(params)) != len(params):
            raise ParseError("type parameters must be distinct",
                             self.span_from(start))
        self.expect("=", "'='")
        cons = [self.parse_condecl()]
        while self.at("|"):
            self.next()
            cons.append(self.parse_condecl())
        return ast.DataDecl(str(name), [str(p) for p in params], cons,
                            self.span_from(start))

    def parse_condecl(self) -> ast.ConDecl:
        start = self.pos()
        name = self.expect("conid", "a constructor name").value
        args = []
        while self._at_atype():
            args.append(self.parse_atype())
        return ast.ConDecl(str(name), args, self.span_from(start))

    def parse_alias(self) -> ast.TypeAlias:
        start = self.pos()
        self.expect("type")
        name = self.expect("conid", "a type name").value
        params = []
        while self.at("varid"):
            params.append(self.next().value)
        self.expect("=", "'='")
        aliased = self.parse_type()
        return ast.TypeAlias(str(name), [str(p) for p in params], aliased,
                             self.span_from(start))

    def try_signature(self) -> ast.TypeSig | None:
        saved = self.index
        start = self.pos()
        names: list[str] = []
        try:
            while True:
                if self.at("varid"):
                    names.append(self.next().value)
                elif self.at("(") and self.at("varsym", 1) and self.at(")", 2):
                    self.next()
                    names.append(self.next().value)
                    self.next()
                else:
                    raise self.error("expecting a name")
                if self.at(","):
                    self.next()
                    continue
                break
            if not self.at("::"):
                raise self.error("expecting ::")
        except ParseError:
            self.index = saved
            return None
        self.next()
        ty = self.parse_type()
        return ast.TypeSig(names, ty, self.span_from(start))

    # --- equations ---

    def parse_equation(self) -> ast.Equation:
        start = self.pos()
        name, patterns = self.parse_funlhs()
        lhs_text = self.slice(self.span_from(start))
        seen: set[str] = set()
        for v in [v for p in patterns for v in ast.pattern_vars(p)]:
            if v in seen:
                raise ParseError(f"repeated variable {v} in patterns",
                                 self.span_from(start))
            seen.add(v)
        clauses = self.parse_rhs("=")
        wheres = self.parse_where()
        return ast.Equation(name, patterns, clauses, wheres,
                            self.span_from(start), lhs_text)

    def parse_funlhs(self) -> tuple[str, list[ast.Pattern]]:
        if self.at("(") and self.at("varsym", 1) and self.at(")", 2):
            self.next()
            name = self.next().value
            self.next()
            pats = []
            while self._at_apat():
                pats.append(self.parse_apat())
            return str(name), pats
        first = self.parse_apat()
        if self.at("varsym") and not self.at_op("!"):
            op = self.next().value
            second = self.parse_apat()
            return str(op), [first, second]
        if isinstance(first, ast.PVar):
            pats = []
            while self._at_apat():
                pats.append(self.parse_apat())
            return first.name, pats
        raise self.error("expecting a function name")

    def parse_rhs(self, arrow: str) -> list[ast.GuardedRhs]:
        if self.at(arrow):
            self.next()
            body = self.parse_expr_inner()
            return [ast.GuardedRhs(None, body, "", self.slice(_span_of(body)))]
        if not self.at("|"):
            raise self.error(f"expecting {arrow} or |")
        clauses = []
        while self.at("|"):
            self.next()
            guard = self.parse_expr_inner()
            self.expect(arrow, f"'{arrow}'")
            body = self.parse_expr_inner()
            clauses.append(ast.GuardedRhs(guard, body, self.slice(_span_of(guard)),
                                          self.slice(_span_of(body))))
        return clauses

    def parse_where(self) -> list[ast.Equation]:
        if not self.at("where"):
            return []
        self.next()
        return self.parse_local_block()

    def parse_local_block(self) -> list[ast.Equation]:
        self.expect("{", "an indented block")
        defs = []
        self.skip_semis()
        while not self.at("}"):
            defs.append(self.parse_equation())
            if self.at("}"):
                break
            if not self.at(";"):
                raise self.error("expecting end of binding")
            self.skip_semis()
        self.expect("}")
        return defs

    # --- expressions ---

    def parse_expr_inner(self) -> ast.Expr:
        return self.parse_opexpr(0)

    def parse_opexpr(self, min_prec: int) -> ast.Expr:
        start = self.pos()
        if self.at_op("-"):
            if min_prec > 6:
                raise self.error("unexpected -")
            self.next()
            operand = self.parse_opexpr(7)
            lhs: ast.Expr = ast.Neg(operand, self.span_from(start))
        else:
            lhs = self.parse_lexpr()
        while True:
            t = self.peek()
            if t is None or t.kind != "varsym":
                return lhs
            op = str(t.value)
            if op not in FIXITY:
                raise self.error(f"unknown operator {op}")
            if self.at(")", 1):
                return lhs  # left section: `(expr op)`
            prec, assoc = FIXITY[op]
            if prec < min_prec:
                return lhs
            self.next()
            rhs = self.parse_opexpr(prec if assoc == "r" else prec + 1)
            lhs = ast.BinOp(op, lhs, rhs, self.span_from(start))
            if assoc == "n" and self.at("varsym"):
                nxt = str(self.peek().value)
                if nxt in FIXITY and FIXITY[nxt][0] == prec:
                    raise self.error(
                        f"cannot mix non-associative operators {op} and {nxt}")

    def parse_lexpr(self) -> ast.Expr:
        t = self.peek()
        if t is None:
            raise self.error("expecting an expression")
        if t.kind == "\\":
            return self.parse_lambda()
        if t.kind == "if":
            return self.parse_if()
        if t.kind == "case":
            return self.parse_case()
        if t.kind == "let":
            return self.parse_let()
        return self.parse_fexpr()

    def parse_lambda(self) -> ast.Expr:
        start = self.pos()
        self.expect("\\")
        params = [self.parse_apat()]
        while self._at_apat():
            params.append(self.parse_apat())
        seen: set[str] = set()
        for v in [v for p in params for v in ast.pattern_vars(p)]:
            if v in seen:
                raise ParseError(f"repeated variable {v} in patterns",
                                 self.span_from(start))
            seen.add(v)
        self.expect("->", "->")
        body = self.parse_expr_inner()
        span = self.span_from(start)
        return ast.Lam(params, body, span, self.slice(span))

    def parse_if(self) -> ast.Expr:
        start = self.pos()
        self.expect("if")
        cond = self.parse_expr_inner()
        self.expect("then", "'then'")
        then = self.parse_expr_inner()
        self.expect("else", "'else'")
        other = self.parse_expr_inner()
        return ast.If(cond, then, other, self.span_from(start))

    def parse_case(self) -> ast.Expr:
        start = self.pos()
        self.expect("case")
        scrut = self.parse_expr_inner()
        self.expect("of", "'of'")
        self.expect("{", "an alternative")
        alts = []
        self.skip_semis()
        while not self.at("}"):
            alts.append(self.parse_case_alt())
            if self.at("}"):
                break
            if not self.at(";"):
                raise self.error("expecting end of alternative")
            self.skip_semis()
        self.expect("}")
        if not alts:
            raise ParseError("case expression has no alternatives",
                             self.span_from(start))
        span = self.span_from(start)
        return ast.Case(scrut, alts, span, self.slice(span))

    def parse_case_alt(self) -> ast.CaseAlt:
        start = self.pos()
        pat = self.parse_pattern()
        pat_text = self.slice(self.span_from(start))
        clauses = self.parse_rhs("->")
        if self.at("where"):
            raise self.error("where is not supported in case alternatives")
        span = self.span_from(start)
        return ast.CaseAlt(pat, clauses, span, pat_text)

    def parse_let(self) -> ast.Expr:
        start = self.pos()
        self.expect("let")
        defs = self.parse_local_block()
        self.expect("in", "'in'")
        body = self.parse_expr_inner()
        span = self.span_from(start)
        return ast.Let(defs, body, span, self.slice(span))

    def parse_fexpr(self) -> ast.Expr:
        start = self.pos()
        head = self.parse_atom()
        args = []
        while self._at_atom():
            args.append(self.parse_atom())
        if not args:
            return head
        if isinstance(head, ast.App):  # `(f x) y` normalizes to `f x y`
            return ast.App(head.fn, head.args + args, self.span_from(start))
        return ast.App(head, args, self.span_from(start))

    def _at_atom(self) -> bool:
        t = self.peek()
        return t is not None and t.kind in ATOM_START

    def parse_atom(self) -> ast.Expr:
        t = self.peek()
        if t is None:
            raise self.error("expecting an expression")
        start = t.pos
        if t.kind == "int":
            self.next()
            return ast.IntLit(t.value, self.span_from(start))
        if t.kind == "char":
            self.next()
            return ast.CharLit(t.value, self.span_from(start))
        if t.kind == "string":
            self.next()
            return ast.StringLit(t.value, self.span_from(start))
        if t.kind == "varid":
            self.next()
            return ast.Var(str(t.value), self.span_from(start))
        if t.kind == "conid":
            self.next()
            return ast.Con(str(t.value), self.span_from(start))
        if t.kind == "(":
            return self.parse_paren()
        if t.kind == "[":
            return self.parse_bracket()
        raise self.error("expecting an expression")

    def parse_paren(self) -> ast.Expr:
        start = self.pos()
        self.expect("(")
        if self.at(")"):
            raise self.error("unit () is not supported")
        if self.at_op("-") and self.at(")", 1):
            self.next()
            self.next()
            return ast.Var("-", self.span_from(start))
        # bare operator or right section; `(- e)` stays negation
        if self.at("varsym") and not self.at_op("-"):
            op = str(self.peek().value)
            if op not in FIXITY and not self.at(")", 1):
                raise self.error(f"unknown operator {op}")
            self.next()
            if self.at(")"):
                self.next()
                span = self.span_from(start)
                if op == ":":
                    return ast.Con(":", span)
                return ast.Var(op, span)
            operand = self.parse_expr_inner()
            self.expect(")", "')'")
            span = self.span_from(start)
            return ast.RightSection(op, operand, span, self.slice(span))
        expr = self.parse_expr_inner()
        if self.at(")"):
            self.next()
            return expr
        if self.at("varsym") and self.at(")", 1):
            op = str(self.next().value)
            if op not in FIXITY:
                raise self.error(f"unknown operator {op}")
            self.next()
            span = self.span_from(start)
            return ast.LeftSection(op, expr, span, self.slice(span))
        if self.at(","):
            items = [expr]
            while self.at(","):
                self.next()
                items.append(self.parse_expr_inner())
            self.expect(")", "')'")
            if len(items) > 4:
                raise ParseError("tuples are limited to 4 components",
                                 self.span_from(start))
            return ast.TupleLit(items, self.span_from(start))
        raise self.error("expecting ')'")

    def parse_bracket(self) -> ast.Expr:
        start = self.pos()
        self.expect("[")
        if self.at("]"):
            self.next()
            return ast.ListLit([], self.span_from(start))
        first = self.parse_expr_inner()
        if self.at(".."):
            self.next()
            if self.at("]"):
                self.next()
                return ast.EnumFrom(first, self.span_from(start))
            stop = self.parse_expr_inner()
            self.expect("]", "']'")
            return ast.EnumFromTo(first, stop, self.span_from(start))
        if self.at("|"):
            self.next()
            quals = [self.parse_comp_qual()]
            while self.at(","):
                self.next()
                quals.append(self.parse_comp_qual())
            self.expect("]", "']'")
            span = self.span_from(start)
            return ast.Comprehension(first, quals, span, self.slice(span))
        if self.at(","):
            self.next()
            second = self.parse_expr_inner()
            if self.at(".."):
                self.next()
                if self.at("]"):
                    self.next()
                    return ast.EnumFromThen(first, second, self.span_from(start))
                stop = self.parse_expr_inner()
                self.expect("]", "']'")
                return ast.EnumFromThenTo(first, second, stop,
                                          self.span_from(start))
            items = [first, second]
            while self.at(","):
                self.next()
                items.append(self.parse_expr_inner())
            self.expect("]", "']'")
            return ast.ListLit(items, self.span_from(start))
        self.expect("]", "']'")
        return ast.ListLit([first], self.span_from(start))

    def parse_comp_qual(self) -> ast.CompQual:
        start = self.pos()
        saved = self.index
        try:
            pat = self.parse_pattern()
            if self.at("<-"):
                self.next()
                expr = self.parse_expr_inner()
                return ast.CompQual(pat, expr, self.span_from(start))
        except ParseError:
            pass
        self.index = saved
        expr = self.parse_expr_inner()
        return ast.CompQual(None, expr, self.span_from(start))

    # --- patterns ---

    def parse_pattern(self) -> ast.Pattern:
        start = self.pos()
        p = self.parse_pattern10()
        if self.at_op(":"):
            self.next()
            rest = self.parse_pattern()
            return ast.PCon(":", [p, rest], self.span_from(start))
        return p

    def parse_pattern10(self) -> ast.Pattern:
        t = self.peek()
        if t is not None and t.kind == "conid":
            start = t.pos
            self.next()
            args = []
            while self._at_apat():
                args.append(self.parse_apat())
            return ast.PCon(str(t.value), args, self.span_from(start))
        return self.parse_apat()

    def _at_apat(self) -> bool:
        t = self.peek()
        if t is None:
            return False
        return t.kind in ("varid", "conid", "int", "char", "string", "_", "(", "[") \
            or (t.kind == "varsym" and t.value == "!")

    def parse_apat(self) -> ast.Pattern:
        t = self.peek()
        if t is None:
            raise self.error("expecting a pattern")
        start = t.pos
        if t.kind == "varid":
            self.next()
            return ast.PVar(str(t.value), self.span_from(start))
        if t.kind == "_":
            self.next()
            return ast.PWild(self.span_from(start))
        if t.kind == "int":
            self.next()
            return ast.PInt(t.value, self.span_from(start))
        if t.kind == "char":
            self.next()
            return ast.PChar(t.value, self.span_from(start))
        if t.kind == "string":
            self.next()
            return ast.PString(t.value, self.span_from(start))
        if t.kind == "conid":
            self.next()
            return ast.PCon(str(t.value), [], self.span_from(start))
        if t.kind == "varsym" and t.value == "!":
            self.next()
            sub = self.parse_apat()
            return ast.PBang(sub, self.span_from(start))
        if t.kind == "(":
            self.next()
            p = self.parse_pattern()
            if self.at(","):
                items = [p]
                while self.at(","):
                    self.next()
                    items.append(self.parse_pattern())
                self.expect(")", "')'")
                if len(items) > 4:
                    raise ParseError("tuples are limited to 4 components",
                                     self.span_from(start))
                return ast.PTuple(items, self.span_from(start))
            self.expect(")", "')'")
            return p
        if t.kind == "[":
            self.next()
            items = []
            if not self.at("]"):
                items.append(self.parse_pattern())
                while self.at(","):
                    self.next()
                    items.append(self.parse_pattern())
            self.expect("]", "']'")
            return ast.PList(items, self.span_from(start))
        raise self.error("expecting a pattern")

    # --- types ---

    def parse_type(self) -> ast.TypeExpr:
        start = self.pos()
        b = self.parse_btype()
        if self.at("->"):
            self.next()
            res = self.parse_type()
            return ast.TEFun(b, res, self.span_from(start))
        return b

    def parse_btype(self) -> ast.TypeExpr:
        start = self.pos()
        first = self.parse_atype()
        args = []
        while self._at_atype():
            args.append(self.parse_atype())
        if not args:
            return first
        if isinstance(first, ast.TECon) and not first.args:
            return ast.TECon(first.name, args, self.span_from(start))
        raise ParseError("only type constructors can be applied",
                         self.span_from(start))

    def _at_atype(self) -> bool:
        t = self.peek()
        return t is not None and t.kind in ("varid", "conid", "(", "[")

    def parse_atype(self) -> ast.TypeExpr:
        t = self.peek()
        if t is None:
            raise self.error("expecting a type")
        start = t.pos
        if t.kind == "varid":
            self.next()
            return ast.TEVar(str(t.value), self.span_from(start))
        if t.kind == "conid":
            self.next()
            return ast.TECon(str(t.value), [], self.span_from(start))
        if t.kind == "(":
            self.next()
            ty = self.parse_type()
            if self.at(","):
                items = [ty]
                while self.at(","):
                    self.next()
                    items.append(self.parse_type())
                self.expect(")", "')'")
                if len(items) > 4:
                    raise ParseError("tuples are limited to 4 components",
                                     self.span_from(start))
                return ast.TETuple(items, self.span_from(start))
            self.expect(")", "')'")
            return ty
        if t.kind == "[":
            self.next()
            inner = self.parse_type()
            self.expect("]", "']'")
            return ast.TEList(inner, self.span_from(start))
        raise self.error("expecting a type")


def _span_of(node) -> Span:
    return node.span


def parse_program(source: str) -> ast.Program:
    """Parse a whole module of definitions."""
    return Parser(source, top_level=True).parse_program()


def parse_expr(source: str) -> ast.Expr:
    """Parse a single expression (the evaluation goal)."""
    p = Parser(source, top_level=False)
    expr = p.parse_expr_inner()
    if p.peek() is not None:
        raise p.error("expecting end of input")
    return expr

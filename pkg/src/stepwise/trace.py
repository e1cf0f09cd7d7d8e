"""Steps, traces, and their textual renderings.

The expression renderer works over small display views (built either from the
machine's heap graph or from surface syntax). Parenthesization matches the
classroom trace style: any non-atomic operand or argument is parenthesized,
fully evaluated lists render as `[a, b, c]` (strings as "..."), and partially
evaluated spines keep explicit `:` with parentheses.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import ast

SCHEMA_VERSION = 1


# --- display views -----------------------------------------------------------


class View:
    pass


@dataclass
class VInt(View):
    value: int


@dataclass
class VChr(View):
    value: str


@dataclass
class VBoolV(View):
    value: bool


@dataclass
class VName(View):
    """Variable, function or constructor name; operator names render "(op)"."""

    name: str


@dataclass
class VAtomText(View):
    """Verbatim source text that is already self-delimiting, e.g. "(+1)"."""

    text: str


@dataclass
class VText(View):
    """Verbatim source text needing parentheses in argument position."""

    text: str


@dataclass
class VStrV(View):
    value: str


@dataclass
class VListV(View):
    items: list[View]


@dataclass
class VTupleV(View):
    items: list[View]


@dataclass
class VConV(View):
    name: str
    args: list[View]


@dataclass
class VApp(View):
    fn: View
    args: list[View]


@dataclass
class VOp(View):
    op: str
    left: View
    right: View


@dataclass
class VNeg(View):
    operand: View


@dataclass
class VIf(View):
    cond: View
    then: View
    other: View


@dataclass
class VEnum(View):
    first: View
    second: View | None
    stop: View | None


def _is_opname(name: str) -> bool:
    return bool(name) and not (name[0].isalpha() or name[0] in "_$%")


def mk_app(fn: View, args: list[View]) -> View:
    """Collapse `(op) a b` to infix display."""
    if not args:
        return fn
    if isinstance(fn, VApp):
        return mk_app(fn.fn, fn.args + args)
    if isinstance(fn, VName) and _is_opname(fn.name) and len(args) == 2:
        return VOp(fn.name, args[0], args[1])
    return VApp(fn, args)


def _atomic(v: View) -> bool:
    match v:
        case VInt(value):
            return value >= 0
        case VChr() | VBoolV() | VStrV() | VListV() | VTupleV() | VAtomText() \
                | VEnum():
            return True
        case VName():
            return True  # operator names get their own parens
        case VConV(_, args):
            return not args
        case _:
            return False


_CHAR_ESCAPES = {"\n": "\\n", "\t": "\\t", "\\": "\\\\", "\r": "\\r", "\0": "\\0"}


def escape_char(c: str) -> str:
    if c in _CHAR_ESCAPES:
        return _CHAR_ESCAPES[c]
    if c == "'":
        return "\\'"
    return c


def escape_string_char(c: str) -> str:
    if c in _CHAR_ESCAPES:
        return _CHAR_ESCAPES[c]
    if c == '"':
        return '\\"'
    return c


def render_expr(view: View, nested: bool = False) -> str:
    """Render a display view; `nested` adds parentheses around non-atoms."""
    text = _render(view)
    if nested and not _atomic(view):
        return f"({text})"
    return text


def _render(v: View) -> str:
    match v:
        case VInt(value):
            return str(value)
        case VChr(value):
            return f"'{escape_char(value)}'"
        case VBoolV(value):
            return "True" if value else "False"
        case VName(name):
            return f"({name})" if _is_opname(name) else name
        case VAtomText(text) | VText(text):
            return text
        case VStrV(value):
            return '"' + "".join(escape_string_char(c) for c in value) + '"'
        case VListV(items):
            return "[" + ", ".join(render_expr(i) for i in items) + "]"
        case VTupleV(items):
            return "(" + ", ".join(render_expr(i) for i in items) + ")"
        case VConV(name, args):
            if not args:
                return "[]" if name == "[]" else name
            parts = [name] + [render_expr(a, nested=True) for a in args]
            return " ".join(parts)
        case VApp(fn, args):
            head = render_expr(fn, nested=not isinstance(fn, VApp))
            return " ".join([head] + [render_expr(a, nested=True) for a in args])
        case VOp(op, left, right):
            return (f"{render_expr(left, nested=True)} {op} "
                    f"{render_expr(right, nested=True)}")
        case VNeg(operand):
            return f"-{render_expr(operand, nested=True)}"
        case VIf(cond, then, other):
            return (f"if {render_expr(cond)} then {render_expr(then)} "
                    f"else {render_expr(other)}")
        case VEnum(first, second, stop):
            head = render_expr(first)
            if second is not None:
                head += f", {render_expr(second)}"
            tail = render_expr(stop) if stop is not None else ""
            return f"[{head}..{tail}]"
    raise AssertionError(v)


# --- surface syntax to views (round-trip rendering, REPL echo) ---------------


def ast_view(e: ast.Expr) -> View:
    match e:
        case ast.Var(name):
            return VName(name)
        case ast.Con(name):
            return VName(name)
        case ast.IntLit(v):
            return VInt(v)
        case ast.CharLit(v):
            return VChr(v)
        case ast.StringLit(v):
            return VStrV(v)
        case ast.App(fn, args):
            return mk_app(ast_view(fn), [ast_view(a) for a in args])
        case ast.BinOp(op, left, right):
            return VOp(op, ast_view(left), ast_view(right))
        case ast.Neg(operand):
            return VNeg(ast_view(operand))
        case ast.Lam(_, _, _, text) | ast.Case(_, _, _, text) \
                | ast.Let(_, _, _, text):
            return VText(text)
        case ast.LeftSection(_, _, _, text) | ast.RightSection(_, _, _, text):
            return VAtomText(text)
        case ast.If(cond, then, other):
            return VIf(ast_view(cond), ast_view(then), ast_view(other))
        case ast.TupleLit(items):
            return VTupleV([ast_view(i) for i in items])
        case ast.ListLit(items):
            return VListV([ast_view(i) for i in items])
        case ast.EnumFrom(a):
            return VEnum(ast_view(a), None, None)
        case ast.EnumFromTo(a, b):
            return VEnum(ast_view(a), None, ast_view(b))
        case ast.EnumFromThen(a, b):
            return VEnum(ast_view(a), ast_view(b), None)
        case ast.EnumFromThenTo(a, b, c):
            return VEnum(ast_view(a), ast_view(b), ast_view(c))
        case ast.Comprehension(_, _, _, text):
            return VText(text)
    raise AssertionError(e)


def render_source_expr(e: ast.Expr) -> str:
    return render_expr(ast_view(e))


# --- steps and traces --------------------------------------------------------

KIND_EQUATION = "equation"
KIND_PRIMITIVE = "primitive"
KIND_BINDING = "binding"
KIND_CONTINUE = "continue"
KIND_FINAL = "final"


@dataclass
class Step:
    index: int
    display: str
    depth: int = 0
    kind: str | None = None  # None only for step 0 (the goal)
    text: str | None = None

    @property
    def label(self) -> str | None:
        if self.kind == KIND_CONTINUE:
            return "continue?"
        if self.kind == KIND_FINAL:
            return "final result"
        return self.text


@dataclass
class Trace:
    steps: list[Step]
    status: str  # "final" | "truncated" | "suspended" | "error"
    error: str | None = None
    final_display: str | None = None

    @property
    def step_count(self) -> int:
        return len(self.steps)


def wrap_line(line: str, width: int, cont_indent: int = 6) -> list[str]:
    """Greedy wrap at spaces; continuations get a hanging indent. Token order
    is never changed and tokens longer than the width are left intact."""
    if len(line) <= width:
        return [line]
    out = []
    indent = " " * cont_indent
    rest = line
    while len(rest) > width:
        cut = rest.rfind(" ", cont_indent, width + 1)
        if cut <= cont_indent:
            cut = rest.find(" ", width)
            if cut == -1:
                break
        out.append(rest[:cut].rstrip())
        rest = indent + rest[cut + 1:]
    out.append(rest)
    return out


def render_trace_plain(trace: Trace, width: int = 60) -> str:
    lines: list[str] = []
    if trace.steps:
        lines.extend(wrap_line("  " + trace.steps[0].display, width))
    for step in trace.steps[1:]:
        lines.append(f"  {{ {step.label} }}")
        dots = "." * (4 * step.depth)
        sep = " " if dots else ""
        lines.extend(wrap_line(f"= {dots}{sep}{step.display}", width))
    if trace.status == "truncated":
        lines.append("-- truncated (max steps reached)")
    elif trace.status == "error":
        lines.append(f"-- runtime error: {trace.error}")
    return "\n".join(lines)


def render_trace_structured(trace: Trace) -> str:
    """Line-delimited records: a header, one record per step, and a status
    footer. Field names are a stable wire contract (see README)."""
    records: list[dict] = [{"record": "trace", "schema_version": SCHEMA_VERSION}]
    for s in trace.steps:
        records.append({
            "record": "step",
            "index": s.index,
            "display": s.display,
            "depth": s.depth,
            "kind": s.kind,
            "text": s.label,
        })
    records.append({
        "record": "status",
        "status": trace.status,
        "step_count": trace.step_count,
        "error": trace.error,
    })
    return "\n".join(json.dumps(r, ensure_ascii=False) for r in records)


TRACE_RECORD_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "oneOf": [
        {
            "type": "object",
            "properties": {
                "record": {"const": "trace"},
                "schema_version": {"type": "integer", "minimum": 1},
            },
            "required": ["record", "schema_version"],
        },
        {
            "type": "object",
            "properties": {
                "record": {"const": "step"},
                "index": {"type": "integer", "minimum": 0},
                "display": {"type": "string"},
                "depth": {"type": "integer", "minimum": 0},
                "kind": {"enum": ["equation", "primitive", "binding",
                                  "continue", "final", None]},
                "text": {"type": ["string", "null"]},
            },
            "required": ["record", "index", "display", "depth", "kind", "text"],
        },
        {
            "type": "object",
            "properties": {
                "record": {"const": "status"},
                "status": {"enum": ["final", "truncated", "suspended",
                                    "error"]},
                "step_count": {"type": "integer", "minimum": 0},
                "error": {"type": ["string", "null"]},
            },
            "required": ["record", "status", "step_count", "error"],
        },
    ],
}

"""Lazy abstract machine: normal-order graph reduction with sharing.

A heap node is a thunk, an indirection, or a weak-head-normal-form value;
thunks are updated in place exactly once. The machine is a generator of
observable steps:

  * applying one equation after its patterns matched and its chosen guard
    evaluated to True (justified by the equation's source text);
  * one primitive reduction, justified `lhs = result`;
  * expanding one let/where binding occurrence, justified `name = rhs`;
  * a continue? expansion during deep forcing.

Everything else (pattern decomposition, environment lookup, indirection
chasing, constructor allocation) is silent. Steps fired while evaluation has
descended into a pattern-matched argument, or into a guard, display only the
focused subterm behind four dots per elided context; primitive operand
forcing and constructor spines are rendered in full.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass

from .core import (
    App, Binding, BoolC, CharC, ConApp, CoreExpr, CoreProgram, IntC, Lam, Let,
    Match, Matching, NameSupply, PBangC, PBoolC, PCharC, PConC, PIntC, PVarC,
    PWildC, Var,
)
from .errors import EvalError
from .trace import (
    KIND_BINDING, KIND_CONTINUE, KIND_EQUATION, KIND_FINAL, KIND_PRIMITIVE,
    Step, Trace, VAtomText, VBoolV, VChr, VConV, VIf, VInt, VListV, VName,
    VOp, VStrV, VText, VTupleV, View, mk_app, render_expr,
)

PRIM_ARITY = {
    "+": 2, "-": 2, "*": 2, "div": 2, "mod": 2, "negate": 1,
    "==": 2, "/=": 2, "<": 2, "<=": 2, ">": 2, ">=": 2, "compare": 2,
    "chr": 1, "ord": 1, "show": 1,
    "isAlpha": 1, "isDigit": 1, "isAlphaNum": 1, "isUpper": 1, "isLower": 1,
}
_INFIX_PRIMS = {"+", "-", "*", "==", "/=", "<", "<=", ">", ">="}


class NodeRef(CoreExpr):
    """Internal core expression pointing straight at a heap node."""

    __slots__ = ("node",)

    def __init__(self, node: "Node"):
        self.node = node


class Node:
    __slots__ = ("thunk", "value", "ind", "name", "expanded", "in_eval",
                 "binding_kind", "expansion_step", "binding_text")

    def __init__(self):
        self.thunk: tuple[CoreExpr, dict] | None = None
        self.value: Value | None = None
        self.ind: Node | None = None
        self.name: str | None = None
        self.expanded = False
        self.in_eval = False
        self.binding_kind: str | None = None  # "top" | "local"
        self.expansion_step = False
        self.binding_text: str | None = None

    def set_thunk(self, expr: CoreExpr, env: dict) -> None:
        self.thunk = (expr, env)
        self.value = None
        self.ind = None

    def set_value(self, v: "Value") -> None:
        self.value = v
        self.thunk = None
        self.ind = None


def value_node(v: "Value") -> Node:
    n = Node()
    n.value = v
    return n


def thunk_node(expr: CoreExpr, env: dict) -> Node:
    n = Node()
    n.thunk = (expr, env)
    return n


# --- weak-head-normal-form values ---------------------------------------------


class Value:
    pass


@dataclass
class VIntM(Value):
    value: int


@dataclass
class VCharM(Value):
    value: str


@dataclass
class VBoolM(Value):
    value: bool


@dataclass
class VConM(Value):
    name: str
    args: list[Node]
    literal: bool = False


@dataclass
class VFunM(Value):
    matching: Matching
    env: dict
    name: str | None = None
    text: str = ""


@dataclass
class VConFunM(Value):
    """Constructor applied to fewer arguments than its arity."""

    name: str
    args: list[Node]


@dataclass
class VPrimM(Value):
    op: str
    args: list[Node]


@dataclass
class VPartialM(Value):
    fn: VFunM
    args: list[Node]


def _is_fun(v: Value) -> bool:
    return isinstance(v, (VFunM, VConFunM, VPrimM, VPartialM))


class Machine:
    """One evaluation of `goal` against `program`.

    Owns its heap; not shareable between threads mid-run. Deterministic:
    stepping the same program and goal yields byte-identical traces.
    """

    def __init__(self, program: CoreProgram, goal: CoreExpr,
                 continue_budget: int = 10):
        if sys.getrecursionlimit() < 20000:
            sys.setrecursionlimit(20000)
        self.constructors = program.constructors
        self.budget = max(1, continue_budget)
        self.supply = NameSupply()
        self.globals: dict[str, Node] = {}
        for op in PRIM_ARITY:
            self.globals[op] = value_node(VPrimM(op, []))
        self._install_bindings(program.bindings.values(), self.globals,
                               top=True)
        self.goal = thunk_node(goal, {})
        self._frames: list[Node] = []
        self._unroll: list[int] | None = None
        self.status = "running"
        self.error: str | None = None
        self.final_display: str | None = None
        self.steps: list[Step] = [Step(0, self._display_root(), 0, None, None)]
        self.cursor = 0
        self._gen = self._run()

    # --- navigation ---

    @property
    def current(self) -> Step:
        return self.steps[self.cursor]

    def step(self) -> Step | None:
        """Advance one observable step (continues past a continue? pause);
        returns the step now current, or None when evaluation has finished."""
        if self.cursor < len(self.steps) - 1:
            self.cursor += 1
            return self.steps[self.cursor]
        if self._gen is None:
            return None
        try:
            s = next(self._gen)
        except StopIteration:
            self._gen = None
            return None
        self.steps.append(s)
        self.cursor += 1
        return s

    def step_back(self) -> Step:
        """Move to the previous step; no-op at step 0."""
        if self.cursor > 0:
            self.cursor -= 1
        return self.steps[self.cursor]

    # --- setup ---

    def _install_bindings(self, bindings, env: dict, top: bool) -> dict:
        # top-level bindings live in a flat namespace reached by fallback,
        # so their closures capture an empty local environment
        inner = {} if top else env
        nodes: list[tuple[Binding, Node]] = []
        for b in bindings:
            n = Node()
            n.name = b.name if top else self.supply.fresh(b.name)
            n.binding_kind = "top" if top else "local"
            env[b.name] = n
            nodes.append((b, n))
        for b, n in nodes:
            if isinstance(b.rhs, Lam):
                n.set_value(VFunM(b.rhs.matching, inner, name=n.name,
                                  text=b.rhs.text))
                n.expanded = True
            else:
                n.set_thunk(b.rhs, inner)
                n.expansion_step = b.expansion_step
                n.binding_text = b.text
        return env

    # --- the step generator ---

    def _run(self):
        try:
            yield from self._whnf(self.goal)
            yield from self._deep_force()
            root = self._deref(self.goal)
            self.final_display = render_expr(self._view(root, sugar=True))
            self.status = "final"
            if isinstance(root.value, VConM) or len(self.steps) == 1:
                yield Step(len(self.steps), self.final_display, 0,
                           KIND_FINAL, None)
        except EvalError as e:
            self.status = "error"
            self.error = e.message
        except RecursionError:
            self.status = "error"
            self.error = "evaluation exceeded the recursion limit"

    def _deep_force(self):
        allowance = self.budget
        visited = 0
        stack = [self.goal]
        while stack:
            if allowance <= 0:
                self._unroll = [visited]
                display = self._display_root()
                self._unroll = None
                yield Step(len(self.steps), display, 0, KIND_CONTINUE, None)
                allowance = self.budget
            node = stack.pop()
            yield from self._whnf(node)
            v = self._deref(node).value
            if isinstance(v, VConM):
                allowance -= 1
                visited += 1
                stack.extend(reversed(v.args))

    # --- evaluation to WHNF ---

    def _deref(self, node: Node) -> Node:
        while node.ind is not None:
            if node.ind.ind is not None:
                node.ind = node.ind.ind
            node = node.ind
        return node

    def _whnf(self, node: Node):
        node = self._deref(node)
        if node.value is not None:
            return
        if node.in_eval:
            raise EvalError("infinite loop detected")
        node.in_eval = True
        try:
            if node.expansion_step and not node.expanded:
                node.expanded = True
                kind = (KIND_EQUATION if node.binding_kind == "top"
                        else KIND_BINDING)
                yield self._step(kind, node.binding_text)
            node.expanded = True
            while node.value is None and node.ind is None:
                expr, env = node.thunk
                yield from self._eval(expr, env, node)
        finally:
            node.in_eval = False

    def _eval(self, expr: CoreExpr, env: dict, target: Node):
        match expr:
            case Var(name):
                tgt = env.get(name) or self.globals.get(name)
                if tgt is None:
                    raise EvalError(f"variable not in scope: {name}")
                yield from self._whnf(tgt)
                target.ind = tgt
                target.thunk = None
            case NodeRef(node=tgt):
                yield from self._whnf(tgt)
                target.ind = tgt
                target.thunk = None
            case IntC(v):
                target.set_value(VIntM(v))
            case CharC(v):
                target.set_value(VCharM(v))
            case BoolC(v):
                target.set_value(VBoolM(v))
            case ConApp(name, args, literal):
                arity = self._con_arity(name)
                nodes = [self._alloc(a, env) for a in args]
                if len(nodes) == arity:
                    target.set_value(VConM(name, nodes, literal))
                else:
                    target.set_value(VConFunM(name, nodes))
            case Lam(matching, text):
                target.set_value(VFunM(matching, env, text=text))
            case Let(bindings, body):
                env2 = self._install_bindings(bindings, dict(env), top=False)
                target.set_thunk(body, env2)
            case Match(matching, args, kind, text):
                nodes = [self._alloc(a, env) for a in args]
                # reroute the display through the live argument nodes
                target.thunk = (Match(matching, [NodeRef(n) for n in nodes],
                                      kind, text), env)
                yield from self._apply_matching(matching, env, nodes, target)
            case App(fn, args):
                fnode = self._alloc(fn, env)
                nodes = [self._alloc(a, env) for a in args]
                target.thunk = (App(NodeRef(fnode),
                                    [NodeRef(n) for n in nodes]), env)
                yield from self._whnf(fnode)
                yield from self._apply(self._deref(fnode).value, nodes, target)
            case _:
                raise AssertionError(expr)

    def _con_arity(self, name: str) -> int:
        info = self.constructors.get(name)
        if info is None:
            raise EvalError(f"unknown constructor {name}")
        return info.arity

    def _alloc(self, expr: CoreExpr, env: dict) -> Node:
        match expr:
            case Var(name):
                node = env.get(name) or self.globals.get(name)
                if node is None:
                    raise EvalError(f"variable not in scope: {name}")
                return node
            case NodeRef(node=node):
                return node
            case IntC(v):
                return value_node(VIntM(v))
            case CharC(v):
                return value_node(VCharM(v))
            case BoolC(v):
                return value_node(VBoolM(v))
            case _:
                return thunk_node(expr, env)

    def _apply(self, fv: Value, args: list[Node], target: Node):
        if isinstance(fv, VPartialM):
            yield from self._apply(fv.fn, fv.args + args, target)
            return
        if isinstance(fv, VFunM):
            arity = fv.matching.arity
            if len(args) < arity:
                target.set_value(VPartialM(fv, args))
                return
            if len(args) == arity:
                yield from self._apply_matching(fv.matching, fv.env, args,
                                                target, fv.name)
                return
            inner = Node()
            yield from self._apply_matching(fv.matching, fv.env,
                                            args[:arity], inner, fv.name)
            target.set_thunk(App(NodeRef(inner),
                                 [NodeRef(a) for a in args[arity:]]), {})
            return
        if isinstance(fv, VConFunM):
            combined = fv.args + args
            arity = self._con_arity(fv.name)
            if len(combined) < arity:
                target.set_value(VConFunM(fv.name, combined))
            else:
                target.set_value(VConM(fv.name, combined[:arity]))
                assert len(combined) == arity
            return
        if isinstance(fv, VPrimM):
            combined = fv.args + args
            arity = PRIM_ARITY[fv.op]
            if len(combined) < arity:
                target.set_value(VPrimM(fv.op, combined))
            else:
                yield from self._apply_prim(fv.op, combined[:arity], target)
                rest = combined[arity:]
                if rest:
                    inner = value_node(target.value)
                    target.set_thunk(App(NodeRef(inner),
                                         [NodeRef(a) for a in rest]), {})
            return
        raise EvalError("cannot apply a non-function value")

    # --- pattern matching ---

    def _apply_matching(self, matching: Matching, env: dict,
                        args: list[Node], target: Node,
                        fname: str | None = None):
        for alt in matching.alts:
            env2 = dict(env)
            matched = True
            for pat, arg in zip(alt.patterns, args):
                matched = yield from self._match(pat, arg, env2)
                if not matched:
                    break
            if not matched:
                continue
            if alt.wheres:
                env2 = self._install_bindings(alt.wheres, env2, top=False)
            for clause in alt.clauses:
                if clause.guard is None:
                    fired = True
                else:
                    gnode = thunk_node(clause.guard, env2)
                    self._frames.append(gnode)
                    try:
                        yield from self._whnf(gnode)
                    finally:
                        self._frames.pop()
                    gv = self._deref(gnode).value
                    assert isinstance(gv, VBoolM)
                    fired = gv.value
                if fired:
                    target.set_thunk(clause.body, env2)
                    if clause.text is not None:
                        yield self._step(KIND_EQUATION, clause.text)
                    return
        raise EvalError(self._no_match_message(matching, args, fname))

    def _no_match_message(self, matching: Matching, args: list[Node],
                          fname: str | None) -> str:
        name = fname or matching.name
        if name in ("case", "if"):
            scrut = render_expr(self._view(args[0], sugar=True))
            return f"no alternative matched {scrut}"
        call = mk_app(VName(name or "<function>"),
                      [self._view(a, sugar=True) for a in args])
        return f"no equation matched {render_expr(call)}"

    def _match(self, pat, arg: Node, env: dict):
        match pat:
            case PVarC(name):
                env[name] = arg
                return True
            case PWildC():
                return True
            case PBangC(sub):
                yield from self._force_arg(arg)
                result = yield from self._match(sub, arg, env)
                return result
            case PIntC(v):
                yield from self._force_arg(arg)
                val = self._deref(arg).value
                return isinstance(val, VIntM) and val.value == v
            case PCharC(v):
                yield from self._force_arg(arg)
                val = self._deref(arg).value
                return isinstance(val, VCharM) and val.value == v
            case PBoolC(v):
                yield from self._force_arg(arg)
                val = self._deref(arg).value
                return isinstance(val, VBoolM) and val.value == v
            case PConC(name, subpats):
                yield from self._force_arg(arg)
                val = self._deref(arg).value
                if not isinstance(val, VConM) or val.name != name:
                    return False
                for sub, sub_arg in zip(subpats, val.args):
                    ok = yield from self._match(sub, sub_arg, env)
                    if not ok:
                        return False
                return True
        raise AssertionError(pat)

    def _force_arg(self, arg: Node):
        """Force an argument needed by pattern matching; steps taken inside
        display with this argument as the elided-context focus."""
        self._frames.append(arg)
        try:
            yield from self._whnf(arg)
        finally:
            self._frames.pop()

    # --- primitives ---

    def _apply_prim(self, op: str, args: list[Node], target: Node):
        if op in ("+", "-", "*", "div", "mod", "negate"):
            ints = []
            for a in args:
                yield from self._whnf(a)
                v = self._deref(a).value
                assert isinstance(v, VIntM)
                ints.append(v.value)
            if op == "+":
                r = ints[0] + ints[1]
            elif op == "-":
                r = ints[0] - ints[1]
            elif op == "*":
                r = ints[0] * ints[1]
            elif op == "negate":
                r = -ints[0]
            else:
                if ints[1] == 0:
                    raise EvalError("division by zero")
                r = ints[0] // ints[1] if op == "div" else ints[0] % ints[1]
            target.set_value(VIntM(r))
            yield self._prim_step(op, args, target)
            return
        if op in ("==", "/=", "<", "<=", ">", ">=", "compare"):
            ordering = yield from self._structural_compare(args[0], args[1])
            if op == "compare":
                name = ("LT", "EQ", "GT")[ordering + 1]
                target.set_value(VConM(name, []))
            else:
                result = {
                    "==": ordering == 0, "/=": ordering != 0,
                    "<": ordering < 0, "<=": ordering <= 0,
                    ">": ordering > 0, ">=": ordering >= 0,
                }[op]
                target.set_value(VBoolM(result))
            yield self._prim_step(op, args, target)
            return
        # unary character/show primitives
        a = args[0]
        yield from self._whnf(a)
        v = self._deref(a).value
        if op == "chr":
            assert isinstance(v, VIntM)
            if not 0 <= v.value <= 0x10FFFF:
                raise EvalError(f"chr: {v.value} is out of range")
            target.set_value(VCharM(chr(v.value)))
        elif op == "ord":
            assert isinstance(v, VCharM)
            target.set_value(VIntM(ord(v.value)))
        elif op == "show":
            assert isinstance(v, VIntM)
            target.set_value(self._string_value(str(v.value)))
        else:
            assert isinstance(v, VCharM)
            c = v.value
            result = {
                "isAlpha": c.isalpha(),
                "isDigit": "0" <= c <= "9",
                "isAlphaNum": c.isalnum(),
                "isUpper": c.isupper(),
                "isLower": c.islower(),
            }[op]
            target.set_value(VBoolM(result))
        yield self._prim_step(op, args, target)

    def _string_value(self, s: str) -> VConM:
        out = VConM("[]", [], literal=True)
        for c in reversed(s):
            out = VConM(":", [value_node(VCharM(c)), value_node(out)],
                        literal=True)
        return out

    def _structural_compare(self, a: Node, b: Node):
        """Structural ordering; recurses over constructor arguments
        left-to-right and stops at the first difference. Comparing function
        values is the documented runtime failure."""
        yield from self._whnf(a)
        yield from self._whnf(b)
        va = self._deref(a).value
        vb = self._deref(b).value
        if _is_fun(va) or _is_fun(vb):
            raise EvalError("cannot compare functions")
        if isinstance(va, VIntM) and isinstance(vb, VIntM):
            return (va.value > vb.value) - (va.value < vb.value)
        if isinstance(va, VCharM) and isinstance(vb, VCharM):
            return (va.value > vb.value) - (va.value < vb.value)
        if isinstance(va, VBoolM) and isinstance(vb, VBoolM):
            return (va.value > vb.value) - (va.value < vb.value)
        if isinstance(va, VConM) and isinstance(vb, VConM):
            ia = self.constructors[va.name].index
            ib = self.constructors[vb.name].index
            if ia != ib:
                return (ia > ib) - (ia < ib)
            for x, y in zip(va.args, vb.args):
                r = yield from self._structural_compare(x, y)
                if r != 0:
                    return r
            return 0
        raise EvalError("cannot compare values of different shapes")

    def _prim_step(self, op: str, args: list[Node], target: Node) -> Step:
        parts = [render_expr(self._view(a, sugar=True), nested=True)
                 for a in args]
        result = render_expr(self._view(target, sugar=True))
        if op in _INFIX_PRIMS and len(parts) == 2:
            text = f"{parts[0]} {op} {parts[1]} = {result}"
        else:
            text = f"{op} {' '.join(parts)} = {result}"
        return self._step(KIND_PRIMITIVE, text)

    # --- step construction and rendering ---

    def _step(self, kind: str, text: str | None) -> Step:
        if self._frames:
            depth = len(self._frames)
            display = render_expr(self._view(self._frames[-1]))
        else:
            depth = 0
            display = self._display_root()
        return Step(len(self.steps), display, depth, kind, text)

    def _display_root(self) -> str:
        return render_expr(self._view(self.goal))

    # --- heap graph to display views ---

    def _view(self, node: Node, sugar: bool = False,
              path: frozenset | None = None) -> View:
        path = path or frozenset()
        node = self._deref(node)
        if self._unroll is None and id(node) in path:
            return VName(node.name or "...")
        if node.value is None:
            expr, env = node.thunk
            if node.name and not node.expanded:
                return VName(node.name)
            return self._view_expr(expr, env, path | {id(node)}, sugar)
        return self._view_value(node, node.value, sugar, path)

    def _view_value(self, node: Node, v: Value, sugar: bool,
                    path: frozenset) -> View:
        match v:
            case VIntM(value):
                return VInt(value)
            case VCharM(value):
                return VChr(value)
            case VBoolM(value):
                return VBoolV(value)
            case VConM(name, args, literal):
                if self._unroll is not None:
                    if self._unroll[0] <= 0:
                        return VName(node.name or "...")
                    self._unroll[0] -= 1
                    if name == ":":
                        head, tail = args
                        return VOp(":", self._view(head, sugar, path),
                                   self._view(tail, sugar, path))
                if name == ":":
                    spine = self._spine_view(node, sugar, path)
                    if spine is not None:
                        return spine
                    head, tail = args
                    return VOp(":", self._view(head, sugar, path | {id(node)}),
                               self._view(tail, sugar, path | {id(node)}))
                if name == "[]":
                    return VListV([])
                if name.startswith("(,"):
                    return VTupleV([self._view(a, sugar, path | {id(node)})
                                    for a in args])
                return VConV(name, [self._view(a, sugar, path | {id(node)})
                                    for a in args])
            case VFunM(_, _, name, text):
                if name:
                    return VName(name)
                return self._text_view(text or "<function>")
            case VConFunM(name, args):
                return mk_app(VName(name),
                              [self._view(a, sugar, path | {id(node)})
                               for a in args])
            case VPrimM(op, args):
                return mk_app(VName(op),
                              [self._view(a, sugar, path | {id(node)})
                               for a in args])
            case VPartialM(fn, args):
                head = self._view_value(node, fn, sugar, path)
                return mk_app(head, [self._view(a, sugar, path | {id(node)})
                                     for a in args])
        raise AssertionError(v)

    def _spine_view(self, node: Node, sugar: bool, path: frozenset) -> View | None:
        """Bracket (or string) sugar for a cons spine whose cells are all
        evaluated and, outside final-result rendering, literal-built."""
        items: list[Node] = []
        seen: set[int] = set()
        cur = node
        while True:
            cur = self._deref(cur)
            if id(cur) in seen:
                return None  # cyclic spine never sugars
            seen.add(id(cur))
            v = cur.value
            if not isinstance(v, VConM):
                return None
            if v.name == "[]":
                break
            if v.name != ":" or not (sugar or v.literal):
                return None
            items.append(v.args[0])
            cur = v.args[1]
        elem_path = path | seen
        views = []
        chars: list[str] | None = []
        for item in items:
            it = self._deref(item)
            if chars is not None and isinstance(it.value, VCharM):
                chars.append(it.value.value)
            else:
                chars = None
            views.append(self._view(item, sugar, elem_path))
        if items and chars is not None:
            return VStrV("".join(chars))
        return VListV(views)

    def _view_expr(self, expr: CoreExpr, env: dict, path: frozenset,
                   sugar: bool) -> View:
        match expr:
            case Var(name):
                node = env.get(name) or self.globals.get(name)
                if node is None:
                    return VName(name)
                return self._view(node, sugar, path)
            case NodeRef(node=node):
                return self._view(node, sugar, path)
            case IntC(v):
                return VInt(v)
            case CharC(v):
                return VChr(v)
            case BoolC(v):
                return VBoolV(v)
            case ConApp(name, args, literal):
                if name == ":" and len(args) == 2:
                    if literal:
                        lit = self._literal_spine_view(expr, env, path, sugar)
                        if lit is not None:
                            return lit
                    return VOp(":", self._view_expr(args[0], env, path, sugar),
                               self._view_expr(args[1], env, path, sugar))
                if name == "[]":
                    return VListV([])
                views = [self._view_expr(a, env, path, sugar) for a in args]
                if len(args) == self._con_arity(name):
                    if name.startswith("(,"):
                        return VTupleV(views)
                    return VConV(name, views)
                return mk_app(VName(name), views)
            case App(fn, args):
                return mk_app(self._view_expr(fn, env, path, sugar),
                              [self._view_expr(a, env, path, sugar)
                               for a in args])
            case Lam(_, text):
                return self._text_view(text or "<function>")
            case Let(_, body):
                return self._view_expr(body, env, path, sugar)
            case Match(matching, args, kind, text):
                if kind == "if":
                    cond = self._view_expr(args[0], env, path, sugar)
                    then = self._view_expr(matching.alts[0].clauses[0].body,
                                           env, path, sugar)
                    other = self._view_expr(matching.alts[1].clauses[0].body,
                                            env, path, sugar)
                    return VIf(cond, then, other)
                return self._text_view(text or "<expression>")
        raise AssertionError(expr)

    def _literal_spine_view(self, expr: ConApp, env: dict, path: frozenset,
                            sugar: bool) -> View | None:
        """Sugar for a still-unevaluated literal chain (goal displays)."""
        items: list[CoreExpr] = []
        cur: CoreExpr = expr
        while isinstance(cur, ConApp) and cur.name == ":" and cur.literal:
            items.append(cur.args[0])
            cur = cur.args[1]
        if not (isinstance(cur, ConApp) and cur.name == "[]" and cur.literal):
            return None
        if items and all(isinstance(i, CharC) for i in items):
            return VStrV("".join(i.value for i in items))
        return VListV([self._view_expr(i, env, path, sugar) for i in items])

    @staticmethod
    def _text_view(text: str) -> View:
        if text.startswith("("):
            return VAtomText(text)
        return VText(text)

    # --- final value as a comparable tree (oracle tests) ---

    def result_tree(self):
        return self._tree(self.goal, set())

    def _tree(self, node: Node, path: set):
        node = self._deref(node)
        if id(node) in path:
            return ("cycle",)
        v = node.value
        match v:
            case VIntM(value):
                return ("int", value)
            case VCharM(value):
                return ("char", value)
            case VBoolM(value):
                return ("bool", value)
            case VConM(name, args, _):
                path = path | {id(node)}
                return ("con", name, tuple(self._tree(a, path) for a in args))
            case None:
                return ("thunk",)
            case _:
                return ("function",)


def run(program: CoreProgram, goal: CoreExpr, max_steps: int = 1000,
        continue_budget: int = 10) -> Trace:
    """Run to completion, truncation, suspension, or error."""
    machine = Machine(program, goal, continue_budget)
    status = None
    while True:
        s = machine.step()
        if s is None:
            status = machine.status
            break
        if len(machine.steps) - 1 > max_steps:
            machine.steps.pop()
            status = "truncated"
            break
        if s.kind == KIND_CONTINUE:
            status = "suspended"
            break
    return Trace(list(machine.steps), status, machine.error,
                 machine.final_display)

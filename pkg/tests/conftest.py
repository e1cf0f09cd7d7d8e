from __future__ import annotations

import pytest

from stepwise import core, load_prelude, parse_expr, parse_program, run
from stepwise.typecheck import infer_expr, infer_program


class Session:
    """A program loaded on top of the prelude, ready to evaluate goals."""

    def __init__(self, program_text: str = ""):
        env, bindings = load_prelude()
        self.constructors = bindings.constructors
        if program_text.strip():
            program = parse_program(program_text)
            env, inf = infer_program(program, env)
            user = core.desugar_program(program, inf.constructors)
            bindings = core.merge_bindings(user, bindings)
            self.constructors = bindings.constructors
        self.env = env
        self.bindings = bindings

    def goal(self, text: str) -> core.CoreExpr:
        expr = parse_expr(text)
        infer_expr(expr, self.env, self.constructors)
        return core.desugar_expr(expr, self.constructors)

    def run(self, goal_text: str, max_steps: int = 100000,
            continue_budget: int = 10**9):
        return run(self.bindings, self.goal(goal_text), max_steps=max_steps,
                   continue_budget=continue_budget)

    def value(self, goal_text: str, **kw):
        t = self.run(goal_text, **kw)
        assert t.status == "final", (t.status, t.error)
        return t.final_display


@pytest.fixture
def session():
    return Session()


def tree_to_py(tree):
    """Machine/oracle value trees as plain Python data (tests only)."""
    kind = tree[0]
    if kind in ("int", "char", "bool"):
        return tree[1]
    if kind == "con":
        name, args = tree[1], tree[2]
        if name in (":", "[]"):
            out = []
            chars = True
            while tree[1] == ":":
                chars = chars and tree[2][0][0] == "char"
                out.append(tree_to_py(tree[2][0]))
                tree = tree[2][1]
            assert tree[1] == "[]"
            if out and chars:
                return "".join(out)
            return out
        if name.startswith("(,"):
            return tuple(tree_to_py(a) for a in args)
        if name == "Nothing":
            return None
        if name == "Just":
            return ("Just", tree_to_py(args[0]))
        return (name,) + tuple(tree_to_py(a) for a in args)
    return ("<%s>" % kind,)

"""Types and type schemes: kind-* variables only, no classes.

Inference uses mutable variable binding (union-find style); quantified
schemes store their body with numbered placeholders so instantiation is a
fresh-variable substitution.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field


class Type:
    pass


_var_ids = itertools.count()


@dataclass(eq=False)
class TVar(Type):
    ref: Type | None = None
    id: int = field(default_factory=lambda: next(_var_ids))


@dataclass(frozen=True)
class TGen(Type):
    """Quantified placeholder; only valid inside a Scheme body."""

    index: int


@dataclass(frozen=True)
class TRigid(Type):
    """Skolem constant used when checking a declared signature."""

    name: str


@dataclass(eq=False)
class TCon(Type):
    name: str
    args: tuple[Type, ...] = ()


def tcon(name: str, *args: Type) -> TCon:
    return TCon(name, tuple(args))


INT = tcon("Int")
BOOL = tcon("Bool")
CHAR = tcon("Char")
ORDERING = tcon("Ordering")


def tfun(arg: Type, result: Type) -> TCon:
    return tcon("->", arg, result)


def tfun_n(args: list[Type], result: Type) -> Type:
    for a in reversed(args):
        result = tfun(a, result)
    return result


def tlist(item: Type) -> TCon:
    return tcon("[]", item)


def ttuple(items: list[Type]) -> TCon:
    return TCon(f"({',' * (len(items) - 1)})", tuple(items))


STRING = tlist(CHAR)


def prune(t: Type) -> Type:
    while isinstance(t, TVar) and t.ref is not None:
        t = t.ref
    return t


class UnifyError(Exception):
    def __init__(self, left: Type, right: Type):
        super().__init__("cannot unify")
        self.left = left
        self.right = right


def _occurs(var: TVar, t: Type) -> bool:
    t = prune(t)
    if t is var:
        return True
    if isinstance(t, TCon):
        return any(_occurs(var, a) for a in t.args)
    return False


def unify(a: Type, b: Type) -> None:
    a, b = prune(a), prune(b)
    if a is b:
        return
    if isinstance(a, TVar):
        if _occurs(a, b):
            raise UnifyError(a, b)
        a.ref = b
        return
    if isinstance(b, TVar):
        unify(b, a)
        return
    if isinstance(a, TRigid) and isinstance(b, TRigid) and a.name == b.name:
        return
    if isinstance(a, TCon) and isinstance(b, TCon) \
            and a.name == b.name and len(a.args) == len(b.args):
        for x, y in zip(a.args, b.args):
            unify(x, y)
        return
    raise UnifyError(a, b)


@dataclass
class Scheme:
    count: int  # number of quantified variables
    body: Type

    def instantiate(self) -> Type:
        if self.count == 0:
            return self.body
        fresh = [TVar() for _ in range(self.count)]

        def subst(t: Type) -> Type:
            t = prune(t)
            if isinstance(t, TGen):
                return fresh[t.index]
            if isinstance(t, TCon):
                return TCon(t.name, tuple(subst(a) for a in t.args))
            return t

        return subst(self.body)


def free_type_vars(t: Type, acc: set[int] | None = None,
                   out: list[TVar] | None = None) -> list[TVar]:
    """Unbound variables of t in first-occurrence order."""
    if acc is None:
        acc, out = set(), []
    t = prune(t)
    if isinstance(t, TVar):
        if t.id not in acc:
            acc.add(t.id)
            out.append(t)
    elif isinstance(t, TCon):
        for a in t.args:
            free_type_vars(a, acc, out)
    return out


def generalize(t: Type, monomorphic: set[int] = frozenset()) -> Scheme:
    """Quantify the unbound variables of t not listed in `monomorphic`."""
    mapping: dict[int, int] = {}

    def walk(t: Type) -> Type:
        t = prune(t)
        if isinstance(t, TVar):
            if t.id in monomorphic:
                return t
            if t.id not in mapping:
                mapping[t.id] = len(mapping)
            return TGen(mapping[t.id])
        if isinstance(t, TCon):
            return TCon(t.name, tuple(walk(a) for a in t.args))
        return t

    body = walk(t)
    return Scheme(len(mapping), body)


def scheme(src: Type) -> Scheme:
    """Generalize over every variable (for building the base environment)."""
    return generalize(src)


_NAMES = "abcdefghijklmnopqrstuvwxyz"


def render_type(t: Type | Scheme) -> str:
    """Canonical rendering: variables renamed a, b, c... by first occurrence,
    tuples printed without interior spaces, arrows right-associated."""
    if isinstance(t, Scheme):
        t = t.instantiate()
    names: dict[object, str] = {}

    def name_of(key: object) -> str:
        if key not in names:
            i = len(names)
            names[key] = _NAMES[i] if i < 26 else f"t{i}"
        return names[key]

    def go(t: Type, ctx: int) -> str:
        # ctx 0 top, 1 arrow argument, 2 constructor argument
        t = prune(t)
        if isinstance(t, TVar):
            return name_of(t.id)
        if isinstance(t, TGen):
            return name_of(("g", t.index))
        if isinstance(t, TRigid):
            return t.name
        assert isinstance(t, TCon)
        if t.name == "->":
            text = f"{go(t.args[0], 1)} -> {go(t.args[1], 0)}"
            return f"({text})" if ctx >= 1 else text
        if t.name == "[]":
            return f"[{go(t.args[0], 0)}]"
        if t.name.startswith("(,"):
            return "(" + ",".join(go(a, 0) for a in t.args) + ")"
        if not t.args:
            return t.name
        text = t.name + " " + " ".join(go(a, 2) for a in t.args)
        return f"({text})" if ctx == 2 else text

    return go(t, 0)

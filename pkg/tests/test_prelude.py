import pytest

from conftest import Session, tree_to_py
from stepwise.machine import Machine
from stepwise.parser import Parser
from stepwise.prelude import PRIMITIVE_NAMES, load_prelude, prelude_source
from stepwise.typecheck import Inferencer, base_env
from stepwise.types import render_type

# name -> published signature; compared after canonical variable renaming
EXPECTED_TYPES = {
    "even": "Int -> Bool",
    "odd": "Int -> Bool",
    "max": "a -> a -> a",
    "min": "a -> a -> a",
    "compare": "a -> a -> Ordering",
    "fst": "(a,b) -> a",
    "snd": "(a,b) -> b",
    "&&": "Bool -> Bool -> Bool",
    "||": "Bool -> Bool -> Bool",
    "head": "[a] -> a",
    "tail": "[a] -> [a]",
    "++": "[a] -> [a] -> [a]",
    "!!": "[a] -> Int -> a",
    "length": "[a] -> Int",
    "reverse": "[a] -> [a]",
    "init": "[a] -> [a]",
    "last": "[a] -> a",
    "sum": "[Int] -> Int",
    "product": "[Int] -> Int",
    "and": "[Bool] -> Bool",
    "or": "[Bool] -> Bool",
    "take": "Int -> [a] -> [a]",
    "drop": "Int -> [a] -> [a]",
    "maximum": "[a] -> a",
    "minimum": "[a] -> a",
    "concat": "[[a]] -> [a]",
    "repeat": "a -> [a]",
    "replicate": "Int -> a -> [a]",
    "cycle": "[a] -> [a]",
    "iterate": "(a -> a) -> a -> [a]",
    "map": "(a -> b) -> [a] -> [b]",
    "filter": "(a -> Bool) -> [a] -> [a]",
    "foldr": "(a -> b -> b) -> b -> [a] -> b",
    "foldl": "(a -> b -> a) -> a -> [b] -> a",
    "foldl'": "(a -> b -> a) -> a -> [b] -> a",
    ".": "(b -> c) -> (a -> b) -> a -> c",
    "$": "(a -> b) -> a -> b",
    "$!": "(a -> b) -> a -> b",
    "zip": "[a] -> [b] -> [(a,b)]",
    "zipWith": "(a -> b -> c) -> [a] -> [b] -> [c]",
    "takeWhile": "(a -> Bool) -> [a] -> [a]",
    "dropWhile": "(a -> Bool) -> [a] -> [a]",
    "any": "(a -> Bool) -> [a] -> Bool",
    "all": "(a -> Bool) -> [a] -> Bool",
    "lookup": "a -> [(a,b)] -> Maybe b",
    "chr": "Int -> Char",
    "ord": "Char -> Int",
    "isAlpha": "Char -> Bool",
    "isDigit": "Char -> Bool",
    "isAlphaNum": "Char -> Bool",
    "isUpper": "Char -> Bool",
    "isLower": "Char -> Bool",
    "show": "Int -> String",
    "enumFrom": "Int -> [Int]",
    "enumFromTo": "Int -> Int -> [Int]",
    "enumFromThen": "Int -> Int -> [Int]",
    "enumFromThenTo": "Int -> Int -> Int -> [Int]",
}


def canonical(type_text: str) -> str:
    p = Parser(type_text, top_level=False)
    te = p.parse_type()
    return render_type(Inferencer(base_env()).convert_type(te, {}))


def value(goal, program="", **kw):
    s = Session(program)
    m = Machine(s.bindings, s.goal(goal), continue_budget=10**9)
    while m.step() is not None:
        pass
    assert m.status == "final", (goal, m.status, m.error)
    return tree_to_py(m.result_tree())


def test_every_name_loads_with_published_type():
    env, bindings = load_prelude()
    for name, expected in EXPECTED_TYPES.items():
        assert name in env, name
        assert render_type(env[name]) == canonical(expected), name
    # the union of equational and primitive names is exactly the published list
    equational = set(bindings.bindings)
    prims = set(PRIMITIVE_NAMES)
    listed = set(EXPECTED_TYPES)
    assert equational | prims >= listed
    assert equational.isdisjoint(prims)
    assert (equational | prims) - listed == \
        {"+", "-", "*", "div", "mod", "negate",
         "==", "/=", "<", "<=", ">", ">="}  # operators, not listed names


def test_reverse_is_accumulator_version():
    src = prelude_source()
    _, after = src.split("reverse :: [a] -> [a]\n", 1)
    body = after.split("\n\n", 1)[0]
    assert "where" in body and "acc" in body


def test_foldl_strict_variant_forces_accumulator():
    s = Session()
    t = s.run("foldl' (+) 0 [1,2,3]")
    prims = [st.text for st in t.steps if st.kind == "primitive"]
    assert prims == ["0 + 1 = 1", "1 + 2 = 3", "3 + 3 = 6"]
    t2 = s.run("foldl (+) 0 [1,2,3]")
    prims2 = [st.text for st in t2.steps if st.kind == "primitive"]
    assert prims2 == ["0 + 1 = 1", "1 + 2 = 3", "3 + 3 = 6"]
    # lazy foldl builds the whole chain before any addition fires
    first_prim_l = [st.kind for st in t2.steps[1:]].index("primitive")
    first_prim_s = [st.kind for st in t.steps[1:]].index("primitive")
    assert first_prim_s < first_prim_l


# behavioral checks against brute-force Python equivalents
XS = [3, 1, 4, 1, 5]


@pytest.mark.parametrize("goal,expected", [
    ("even 6", True),
    ("odd 6", False),
    ("max 2 9", 9),
    ("min 2 9", 2),
    ("compare 3 3", ("EQ",)),
    ("fst (1,2)", 1),
    ("snd (1,2)", 2),
    ("True && False", False),
    ("False || True", True),
    ("head [3,1,4,1,5]", XS[0]),
    ("tail [3,1,4,1,5]", XS[1:]),
    ("[3,1,4,1,5] ++ [9]", XS + [9]),
    ("[3,1,4,1,5] !! 3", XS[3]),
    ("length [3,1,4,1,5]", len(XS)),
    ("reverse [3,1,4,1,5]", XS[::-1]),
    ("init [3,1,4,1,5]", XS[:-1]),
    ("last [3,1,4,1,5]", XS[-1]),
    ("sum [3,1,4,1,5]", sum(XS)),
    ("product [3,1,4,1,5]", 3 * 1 * 4 * 1 * 5),
    ("and [True,False]", False),
    ("or [True,False]", True),
    ("take 2 [3,1,4,1,5]", XS[:2]),
    ("take 9 [3,1,4,1,5]", XS),
    ("drop 2 [3,1,4,1,5]", XS[2:]),
    ("maximum [3,1,4,1,5]", max(XS)),
    ("minimum [3,1,4,1,5]", min(XS)),
    ("concat [[3],[1,4],[]]", [3, 1, 4]),
    ("take 3 (repeat 7)", [7, 7, 7]),
    ("replicate 4 'x'", "xxxx"),
    ("take 5 (cycle [1,2])", [1, 2, 1, 2, 1]),
    ("take 4 (iterate (*2) 1)", [1, 2, 4, 8]),
    ("map (*2) [3,1,4,1,5]", [x * 2 for x in XS]),
    ("filter odd [3,1,4,1,5]", [x for x in XS if x % 2]),
    ("foldr (-) 0 [3,1,4]", 3 - (1 - (4 - 0))),
    ("foldl (-) 0 [3,1,4]", ((0 - 3) - 1) - 4),
    ("foldl' (-) 0 [3,1,4]", ((0 - 3) - 1) - 4),
    ("((+1) . (*2)) 10", 21),
    ("negate $ 5", -5),
    ("negate $! 5", -5),
    ("zip [1,2] \"ab\"", [(1, "a"), (2, "b")]),
    ("zipWith (+) [1,2] [30,40]", [31, 42]),
    ("takeWhile odd [3,1,4,1,5]", [3, 1]),
    ("dropWhile odd [3,1,4,1,5]", [4, 1, 5]),
    ("any even [3,1,4]", True),
    ("all even [3,1,4]", False),
    ("lookup 2 [(1,'a'),(2,'b')]", ("Just", "b")),
    ("lookup 3 [(1,'a')]", None),
    ("chr 100", "d"),
    ("ord 'd'", 100),
    ("isAlpha 'a'", True),
    ("isDigit 'a'", False),
    ("isAlphaNum '9'", True),
    ("isUpper 'a'", False),
    ("isLower 'a'", True),
    ("show 405", "405"),
    ("enumFrom 3 !! 4", 7),
    ("enumFromTo 2 6", list(range(2, 7))),
    ("enumFromThen 1 3 !! 5", 11),
    ("enumFromThenTo 1 3 11", list(range(1, 12, 2))),
    ("enumFromThenTo 9 6 0", list(range(9, -1, -3))),
    ("enumFromThenTo 1 2 0", []),
])
def test_prelude_behavior(goal, expected):
    assert value(goal) == expected


def test_foldr_productive_on_infinite_list():
    s = Session()
    t = s.run("take 3 (foldr (:) [] [1..])", max_steps=500,
              continue_budget=100)
    assert t.status == "final" and t.final_display == "[1, 2, 3]"


def test_foldl_not_productive_on_infinite_list():
    s = Session()
    t = s.run("foldl (+) 0 [1..]", max_steps=500)
    assert t.status == "truncated"


@pytest.mark.parametrize("fn", ["maximum", "minimum", "head", "tail",
                                "init", "last"])
def test_empty_list_is_runtime_error_not_crash(fn):
    s = Session()
    t = s.run(f"{fn} []")
    assert t.status == "error"
    assert "no equation matched" in t.error


def test_user_shadowing_equations_justify_traces():
    s = Session("sum [] = 0\nsum (x:xs) = x + sum xs\n")
    t = s.run("sum [1]")
    assert t.steps[1].text == "sum (x:xs) = x + sum xs"


def test_wrong_base_case_shadow_yields_zero():
    s = Session("product [] = 0\nproduct (x:xs) = x*product xs\n")
    t = s.run("product [1,2,3]")
    assert t.final_display == "0"


def test_no_shadowing_uses_builtin_definitions():
    s = Session()
    t = s.run("sum [1,2]")
    assert t.final_display == "3"
    assert t.steps[1].text == "sum (x:xs) = x + sum xs"

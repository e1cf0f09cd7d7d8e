import pytest

from stepwise.errors import LexError
from stepwise.lexer import lex, lex_raw


def kinds(tokens):
    return [t.kind for t in tokens]


def test_simple_tokens():
    toks = lex_raw("sum [] = 0")
    assert [(t.kind, t.value) for t in toks] == [
        ("varid", "sum"), ("[", "["), ("]", "]"), ("=", "="), ("int", 0)]


def test_positions_are_one_based():
    toks = lex_raw("f x = x")
    assert (toks[0].line, toks[0].col) == (1, 1)
    assert (toks[1].line, toks[1].col) == (1, 3)


def test_operators_max_munch():
    toks = lex_raw("a <= b ++ c !! d")
    ops = [t.value for t in toks if t.kind == "varsym"]
    assert ops == ["<=", "++", "!!"]


def test_reserved_ops_have_own_kind():
    toks = lex_raw("x = y | z :: t -> u")
    assert "=" in kinds(toks) and "|" in kinds(toks)
    assert "::" in kinds(toks) and "->" in kinds(toks)


def test_char_and_string_literals():
    toks = lex_raw("'a' '\\n' \"ab\\\"c\"")
    assert [(t.kind, t.value) for t in toks] == [
        ("char", "a"), ("char", "\n"), ("string", 'ab"c')]


def test_unterminated_string_has_position():
    with pytest.raises(LexError) as e:
        lex_raw('x = "ab')
    assert e.value.span.start.col == 5


def test_unterminated_char():
    with pytest.raises(LexError):
        lex_raw("x = 'a")


def test_illegal_character():
    with pytest.raises(LexError, match="illegal character"):
        lex_raw("x = °5")


def test_line_comments_and_block_comments():
    toks = lex_raw("x -- comment\n{- multi\nline {- nested -} -} y ---- dashes")
    assert [t.value for t in toks] == ["x", "y"]


def test_dashes_in_operator_not_comment():
    toks = lex_raw("a --> b")
    assert [t.value for t in toks if t.kind == "varsym"] == ["-->"]


def test_enum_dots_token():
    toks = lex_raw("[1..n]")
    assert ".." in kinds(toks)


def test_unsupported_pattern_operators_rejected():
    with pytest.raises(LexError, match="not supported"):
        lex_raw("f ~x = 1")


def test_layout_top_level_groups_by_column():
    toks = lex("f x = 1\ng y = 2\n")
    ks = kinds(toks)
    assert ks[0] == "{" and ks.count(";") == 1 and ks[-1] == "}"


def test_layout_continuation_lines_join():
    toks = lex("insert x (y:ys) | x<=y = x:y:ys\n                | otherwise = ys\n")
    assert kinds(toks).count(";") == 0


def test_layout_where_block_alignment():
    source = "f x = a + b\n  where a = 1\n        b = 2\n"
    toks = lex(source)
    # one block for the module, one for the where bindings
    assert kinds(toks).count("{") == 2
    assert kinds(toks).count(";") == 1


def test_layout_let_in_inline():
    toks = lex("f = let x = 1; y = 2 in x", top_level=False)
    ks = kinds(toks)
    assert ks.count("{") == 1 and ks.count("}") == 1
    assert ks.index("}") < ks.index("in")


def test_layout_case_inside_parens_closes():
    toks = lex("g (case x of []   -> 1) 2", top_level=False)
    ks = kinds(toks)
    assert ks.index("}") < ks.index(")")

import random

import pytest
from hypothesis import given, settings

from gxrepair.eval import eval_node, eval_path
from gxrepair.gxpath import (
    And, Complement, Concat, ConstraintSet, DataEq, DataNeq, Epsilon, Exists, ExistsEq, ExistsNeq, Fragment,
    Intersect, Inverse, Label, NodeTest, Not, Or, ParseError, Repeat, Star, Union, Wildcard, classify,
    parse_node, parse_path, pretty,
)
from gxrepair.gxpath.ast import walk

import golden_asts as golden
from generators import node_exprs, path_exprs, random_graph, random_node, random_path


@pytest.mark.parametrize("text, expected", [
    ("eps", Epsilon()),
    ("_", Wildcard()),
    ("a", Label("a")),
    ('"x y"', Label("x y")),
    ("a^-", Inverse("a")),
    ("a.b + c", Union(Concat(Label("a"), Label("b")), Label("c"))),
    ("a + b & c", Union(Label("a"), Intersect(Label("b"), Label("c")))),
    ("!a.b", Concat(Complement(Label("a")), Label("b"))),
    ("!a*", Complement(Star(Label("a")))),
    ("(a{1,2})*", Star(Repeat(Label("a"), 1, 2))),
    ("a{0,0}", Repeat(Label("a"), 0, 0)),
    ("[=\"c\"]", NodeTest(DataEq("c"))),
    ("a => b", Union(Label("b"), Complement(Label("a")))),
    ("a => b => c", Union(Union(Label("c"), Complement(Label("b"))), Complement(Label("a")))),
])
def test_parse_path(text, expected):
    assert parse_path(text) == expected


@pytest.mark.parametrize("text, expected", [
    ('="actor"', DataEq("actor")),
    ('!="actor"', DataNeq("actor")),
    ('!="a" & ="b" + ="c"', Or(And(DataNeq("a"), DataEq("b")), DataEq("c"))),
    ("<a>", Exists(Label("a"))),
    ("<a = b^->", ExistsEq(Label("a"), Inverse("b"))),
    ("<a != b>", ExistsNeq(Label("a"), Label("b"))),
    ("!<a>", Not(Exists(Label("a")))),
    ('="p" => ="q"', Or(DataEq("q"), Not(DataEq("p")))),
])
def test_parse_node(text, expected):
    assert parse_node(text) == expected


def test_reference_expressions_match_golden_asts():
    assert parse_node(golden.FILM_TEXT) == golden.FILM_PHI
    assert parse_path(golden.CONNECTED_TEXT) == golden.CONNECTED
    assert parse_path(golden.TWO_LOW_TEXT) == golden.TWO_LOW
    assert parse_node(golden.PSI_1_TEXT) == golden.PSI_1
    assert parse_node(golden.PSI_2_TEXT) == golden.PSI_2


@pytest.mark.parametrize("text, line, column", [
    ("a.", 1, 3),
    ("a{3,1}", 1, 2),
    ('"bad\\q"', 1, 5),
    ("a b", 1, 3),
    ("a.\n  (b", 2, 5),
    ("b^-^-", 1, 4),
])
def test_parse_errors_carry_position(text, line, column):
    with pytest.raises(ParseError) as info:
        parse_path(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_inverse_only_on_labels():
    with pytest.raises(ParseError):
        parse_path("(a.b)^-")


@pytest.mark.parametrize("expr, text", [
    (Epsilon(), "eps"),
    (Star(Wildcard()), "_*"),
    (Label("eps"), '"eps"'),
    (Not(DataEq("c")), '!(="c")'),
])
def test_pretty_examples(expr, text):
    assert pretty(expr) == text


@settings(max_examples=400)
@given(path_exprs())
def test_path_round_trip(e):
    assert parse_path(pretty(e)) == e


@settings(max_examples=400)
@given(node_exprs())
def test_node_round_trip(e):
    assert parse_node(pretty(e)) == e


def test_classify_examples():
    assert Fragment.POS_NODE in classify(golden.PSI_1)
    assert Fragment.POS_NODE in classify(golden.PSI_2)
    two_low = classify(golden.TWO_LOW)
    assert Fragment.POS not in two_low and Fragment.REG in two_low
    star = classify(parse_path("a*"))
    assert Fragment.CORE in star and Fragment.POS in star and Fragment.POS_NODE not in star
    assert Fragment.CORE not in classify(parse_path("(a.b)*"))
    # intersection stays positive
    assert Fragment.POS in classify(parse_path("a & b"))


def test_classify_is_monotone_on_subexpressions():
    rng = random.Random(5)
    for _ in range(300):
        e = random_path(rng, 4) if rng.random() < 0.5 else random_node(rng, 4)
        if Fragment.POS in classify(e):
            assert all(Fragment.POS in classify(x) for x in walk(e))


def test_implication_is_sugar_for_union_with_complement():
    rng = random.Random(9)
    for _ in range(100):
        g = random_graph(rng, max_nodes=4)
        a, b = random_path(rng, 2), random_path(rng, 2)
        lhs = eval_path(g, parse_path(f"({pretty(a)}) => ({pretty(b)})"))
        assert lhs == eval_path(g, Union(b, Complement(a)))
        p, q = random_node(rng, 2), random_node(rng, 2)
        assert eval_node(g, parse_node(f"({pretty(p)}) => ({pretty(q)})")) == eval_node(g, Or(q, Not(p)))


def test_constraint_file_format(tmp_path):
    text = (
        "# comment line\n"
        "\n"
        'node: ="#not a comment"  # trailing comment\n'
        "path: _*\n"
    )
    r = ConstraintSet.loads(text)
    assert r.constraints == (DataEq("#not a comment"), Star(Wildcard()))
    assert ConstraintSet.loads(r.dumps()) == r
    with pytest.raises(ParseError) as info:
        ConstraintSet.loads("path: _*\n[=\"c\"]\n")
    assert info.value.line == 2
    with pytest.raises(ParseError):
        ConstraintSet.loads("node: a.b\n")


def test_constraint_set_metadata():
    r = ConstraintSet((golden.PSI_1, golden.PSI_2))
    assert r.labels() == {"value_of", "appears_in", "appears_negated_in"}
    assert r.constants() == {"var", "clause", "T", "F"}
    assert Fragment.POS_NODE in r.fragment()
    assert len(r.node_constraints) == 2 and r.path_constraints == []

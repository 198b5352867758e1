import random
from fractions import Fraction

import pytest

from nilhecke.algebra import NilHecke
from nilhecke.expr import BinOp, ParseError, EvaluationError, evaluate, parse_expr, parse_polynomial, to_source
from nilhecke.parabolic import idempotent
from nilhecke.polyring import Polynomial
from nilhecke.sampling import random_expression


def ev(text, spec="A2"):
    return evaluate(parse_expr(text), NilHecke.of(spec))


def test_grammar_examples():
    assert ev("d1*d1").is_zero()
    nh = NilHecke.of("A2")
    h = ev("(1/2)*t2*d1 + e")
    assert h == nh.multiplication(Polynomial.parse("t2", 3)).scale(Fraction(1, 2)) * nh.delta(1) + nh.one()


def test_precedence_and_associativity():
    node = parse_expr("1 - 2 - 3")
    assert isinstance(node, BinOp) and node.op == "-" and isinstance(node.left, BinOp)
    assert ev("2 + 3*d1") == ev("2 + (3*d1)")
    assert ev("d1*d2*d1") == ev("(d1*d2)*d1")
    assert ev("-d1^2").is_zero()
    assert ev("(t1 + 1)^2") == ev("t1*t1 + 2*t1 + 1")


def test_atoms():
    nh = NilHecke.of("A2")
    assert ev("s1") == nh.embed_weyl(1)
    assert ev("eP[1]") == idempotent(nh, (1,))
    assert ev("eP[]") == nh.one()
    assert ev("d2/2") == nh.delta(2).scale(Fraction(1, 2))


def test_parse_error_positions():
    with pytest.raises(ParseError) as info:
        parse_expr("d1*(")
    assert info.value.position == 4
    with pytest.raises(ParseError) as info:
        parse_expr("d1 +\n  ?")
    assert (info.value.line, info.value.column) == (2, 3)
    with pytest.raises(ParseError):
        parse_expr("d1 d2")


def test_evaluation_errors():
    with pytest.raises(EvaluationError):
        ev("d3")
    with pytest.raises(EvaluationError):
        ev("t4")
    with pytest.raises(EvaluationError):
        ev("d1/0")
    with pytest.raises(EvaluationError):
        ev("1/d1")


def test_parse_polynomial():
    assert parse_polynomial("(t1 - t2)^2/2", 2) == Polynomial.parse("1/2*t1^2 - t1*t2 + 1/2*t2^2", 2)


def test_to_source_reparses_to_same_tree():
    rng = random.Random(0)
    for _ in range(100):
        node = parse_expr(random_expression(rng, 2, 3))
        assert parse_expr(to_source(node)) == parse_expr(to_source(parse_expr(to_source(node))))
        nh = NilHecke.of("A2")
        assert evaluate(parse_expr(to_source(node)), nh) == evaluate(node, nh)


@pytest.mark.parametrize("spec", ["A1", "A2", "B2"])
def test_normal_form_text_round_trip(spec):
    nh = NilHecke.of(spec)
    rng = random.Random(1)
    for _ in range(40):
        h = evaluate(parse_expr(random_expression(rng, nh.group.rank, nh.nvars)), nh)
        assert evaluate(parse_expr(h.to_text()), nh) == h

import math

import pytest
from hypothesis import given

from qlr.corpus import entries
from qlr.errors import ParseError, TypingError
from qlr.parser import parse, parse_type
from qlr.semantics import denote
from qlr.syntax import (REAL, Arrow, Prod, abstract_constants, alpha_eq, beta_step, free_vars, normalize,
                        plug, pretty, reduction_sequence, subst, typecheck)

from strategies import closed_fns


def test_types_parse_with_the_usual_associativity():
    assert parse_type("Real -> Real -> Real") == Arrow(REAL, Arrow(REAL, REAL))
    assert parse_type("Real * Real * Real") == Prod(Prod(REAL, REAL), REAL)
    assert parse_type("(Real -> Real) * Real") == Prod(Arrow(REAL, REAL), REAL)


def test_typecheck_examples():
    assert str(typecheck(parse(r"\x:Real. sin x"))) == "Real -> Real"
    assert str(typecheck(parse("(1.0, 2.0)"))) == "Real * Real"
    assert typecheck(parse(r"\f:Real->Real. \x:Real. f (f x)")) == Arrow(Arrow(REAL, REAL), Arrow(REAL, REAL))


def test_parse_error_position():
    with pytest.raises(ParseError) as e:
        parse("\\x:Real. (x,")
    assert (e.value.line, e.value.col) == (1, 13)


def test_type_error_position():
    with pytest.raises(TypingError) as e:
        typecheck(parse("-- comment\n(\\x:Real. x 1.0)"))
    assert e.value.span.line == 2 and e.value.span.col == 11


def test_unbound_variable():
    with pytest.raises(TypingError, match="unbound"):
        typecheck(parse("y"))


def test_capture_avoiding_substitution():
    t = parse(r"\y:Real. add x y")
    out = subst(t, "x", parse("y"))
    assert free_vars(out) == {"y"}
    assert alpha_eq(out, parse(r"\z:Real. add y z"))


def test_beta_and_normal_form():
    t = parse(r"(\f:Real->Real. \x:Real. f (f x)) (\y:Real. sin y)")
    seq = reduction_sequence(t)
    assert len(seq) >= 3
    assert alpha_eq(seq[-1], parse(r"\x:Real. sin (sin x)"))
    assert beta_step(seq[-1]) is None


@pytest.mark.parametrize("e", entries(), ids=lambda e: e.name)
def test_subject_reduction_on_corpus(e):
    for step in e.steps:
        assert typecheck(step) == e.type
    assert len(e.steps) - 1 >= 2


@pytest.mark.parametrize("e", entries(), ids=lambda e: e.name)
def test_pretty_round_trip_on_corpus(e):
    assert alpha_eq(parse(pretty(e.term)), e.term)


@given(closed_fns())
def test_generated_programs_typecheck_and_evaluate(p):
    src, fn = p
    t = parse(src)
    assert typecheck(t) == Arrow(REAL, REAL)
    for x in (-1.3, 0.0, 0.7):
        assert denote(t)(x) == pytest.approx(fn(x), rel=1e-12, abs=1e-12)
        assert denote(normalize(t))(x) == pytest.approx(fn(x), rel=1e-12, abs=1e-12)


@given(closed_fns())
def test_generated_pretty_round_trip(p):
    t = parse(p[0])
    assert alpha_eq(parse(pretty(t)), t)


def test_plug_and_holes():
    ctx = parse("[] 0.0")
    t = plug(ctx, parse(r"\x:Real. cos x"))
    assert denote(t) == 1.0
    assert typecheck(ctx, hole=Arrow(REAL, REAL)) == REAL


def test_abstract_constants():
    t, consts = abstract_constants(parse("add 1.5 (mul x 2.0)"))
    assert sorted(consts.values()) == [1.5, 2.0]
    assert free_vars(t) == {"x", *consts}
    env = {"x": 3.0, **consts}
    assert denote(t, env) == 7.5
    assert math.isclose(denote(parse("add 1.5 (mul x 2.0)"), {"x": 3.0}), 7.5)

import math

import pytest
from hypothesis import given, strategies as st

from qlr.corpus import dlambda_terms
from qlr.errors import ContractError, TypingError
from qlr.finite import FiniteQlr
from qlr.lipschitz import (LAWVERE_FINITE, FlatMap, checkDLambdaProps, checkLipValidity, check_additive,
                           check_filter, denoteLL, derivLL, distanceLL, llCurry, llUncurry,
                           local_constant_growth, localContextualityBound, quotientSeparate)
from qlr.parser import parse
from qlr.quantale import Lawvere, TruncChain
from qlr.semantics import denote
from qlr.syntax import REAL, Arrow

from strategies import closed_fns

MUL = parse(r"\x:Real. \y:Real. mul x y")
SIN = parse(r"\x:Real. sin x")
ID = parse(r"\x:Real. x")


def test_lawvere_finiteness_filter():
    samples = [0.0, 0.5, 1.0, 7.0, math.inf]
    assert check_filter(LAWVERE_FINITE, Lawvere(), samples).ok
    assert not LAWVERE_FINITE(math.inf)


@given(closed_fns(depth=2), st.floats(-2, 2))
def test_values_agree_with_the_plain_model(p, x):
    t = parse(p[0])
    assert denoteLL(t)(x) == pytest.approx(denote(t)(x), abs=1e-12)


def test_multiplication_constant_grows_with_the_point():
    # the local constant of mul at (x, 0) is |(x, 0)| + 1
    assert local_constant_growth(MUL, [(0, 0), (10, 0), (100, 0)]) == pytest.approx([1, 11, 101])


def test_sine_family_is_the_global_constant():
    body = parse("sin x")
    assert derivLL(body, {"x": 0.3}, {"x": 0.25}) == pytest.approx(0.25)


@given(closed_fns(depth=2), st.floats(-2, 2), st.floats(0, 0.5))
def test_local_validity_on_generated_programs(p, x, a):
    rep = checkLipValidity(parse(p[0]), (x,), a, samples=200)
    assert rep.ok, rep.to_json()
    assert rep.radius > 0


def test_validity_report_json_fields():
    rep = checkLipValidity(MUL, (1.0, 2.0), 0.1, samples=300)
    assert set(rep.to_json()) == {"point", "radius", "bound", "observed", "margin"}
    assert rep.ok and rep.margin >= -1e-9


def test_validity_needs_first_order_terms():
    with pytest.raises(TypingError):
        checkLipValidity(parse(r"\f:Real->Real. f 1.0"), (0.0,), 0.1)
    with pytest.raises(TypingError):
        checkLipValidity(SIN, (0.0, 1.0), 0.1)


def test_distance_is_pointwise():
    d = distanceLL(Arrow(REAL, REAL), denoteLL(SIN), denoteLL(ID))
    assert d(1.0) == pytest.approx(1.0 - math.sin(1.0))


def test_local_contextuality_gate():
    ctx = parse("[] 0.0")
    near = parse(r"\x:Real. add x 0.01")
    inside = localContextualityBound(ctx, ID, near, delta_t=0.05, radius=0.1)
    assert inside.in_regime and inside.holds and inside.status == "ok"
    outside = localContextualityBound(ctx, SIN, ID, delta_t=0.5)
    assert not outside.in_regime and outside.bound is None
    assert outside.status == "out of local regime"


def test_curry_round_trip_of_families():
    f = lambda p: p[0] * p[1]
    phi = lambda p, d: abs(p[0]) * d[1] + abs(p[1]) * d[0]
    m = FlatMap(f, phi)
    back = llUncurry(llCurry(m))
    for z, x, zeta, alpha in [(1.0, 2.0, 0.1, 0.2), (-3.0, 0.5, 1.0, 0.0)]:
        assert back.fn((z, x)) == f((z, x))
        assert back.phi((z, x), (zeta, alpha)) == pytest.approx(phi((z, x), (zeta, alpha)))


def test_additivity_check():
    check_additive(lambda x, a: 2 * a, [0.0, 1.0], [(0.1, 0.2)])
    with pytest.raises(ContractError):
        check_additive(lambda x, a: a * a, [0.0], [(0.5, 0.5)])


def test_derivative_operator_properties():
    unary, binary, curried = dlambda_terms()
    rep = checkDLambdaProps(unary, binary, curried, probes=16)
    assert rep.ok, rep.lines()


def test_separation_quotient():
    q = TruncChain(2)
    X = FiniteQlr(["a", "b", "c"], q, [[0, 0, 1], [0, 0, 1], [1, 1, 0]])
    Y = quotientSeparate(X)
    assert Y.carrier == ("a/b", "c")
    assert Y.d("a/b", "c") == 1
    bad = FiniteQlr(["a", "b"], q, [[0, 1], [2, 0]])
    with pytest.raises(ContractError):
        quotientSeparate(bad)

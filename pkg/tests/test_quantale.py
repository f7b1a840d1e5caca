import itertools
import math

import pytest
from hypothesis import given, strategies as st

from qlr.errors import StructuralError
from qlr.quantale import (DiscreteTwo, Interval, IntervalLattice, Lawvere, Product, SupLocale, TruncChain,
                          check_quantale_laws, diagonal_compose, diagonal_member, quantale_from_config)

from conftest import lawvere_values

INF = math.inf


def brute_residual(q, a, b):
    # least c with a <= b + c, by search over the finite carrier
    cands = [c for c in q.elements() if q.leq(a, q.plus(b, c))]
    return q.meet(cands)


@pytest.mark.parametrize("cfg", ["trunc:1", "trunc:3", "trunc:8", "two", "locale:3",
                                 "product(two,trunc:2)", "product(trunc:1,trunc:2)"])
def test_residual_matches_search(cfg):
    q = quantale_from_config(cfg)
    for a, b in itertools.product(q.elements(), repeat=2):
        assert q.eq(q.residual(a, b), brute_residual(q, a, b))


@pytest.mark.parametrize("cfg", ["trunc:2", "two", "locale:2", "product(two,two)"])
def test_finite_laws_exhaustive(cfg):
    assert check_quantale_laws(quantale_from_config(cfg)).ok


def test_truncated_addition_saturates():
    q = TruncChain(2)
    assert q.plus(1, 1) == 2
    assert q.plus(1, 2) == INF
    assert q.residual(INF, 1) == 2
    assert q.residual(INF, 0) == INF
    assert q.residual(1, 2) == 0


def test_two_point_is_a_locale():
    q = DiscreteTwo()
    for a, b in itertools.product(q.elements(), repeat=2):
        assert q.plus(a, b) == q.join2(a, b)


@given(lawvere_values(), lawvere_values())
def test_lawvere_residual_closed_form(a, b):
    r = Lawvere().residual(a, b)
    if a <= b:
        assert r == 0
    elif a == INF:
        assert r == INF
    else:
        assert r == a - b


@given(lawvere_values(), lawvere_values(), lawvere_values())
def test_lawvere_adjunction(a, b, c):
    q = Lawvere(tol=1e-6)
    # a <= b + c iff a ⊸ b <= c, up to rounding
    assert q.leq(a, q.plus(b, c)) == q.leq(q.residual(a, b), c)


@given(lawvere_values(), lawvere_values())
def test_lawvere_heyting(a, b):
    h = Lawvere().heyting(a, b)
    assert h == (0.0 if a <= b else a)


def test_lawvere_sampled_laws():
    assert check_quantale_laws(Lawvere(tol=1e-12), triples=1000, seed=3).ok


def test_diagonal_composition_over_lawvere():
    q = Lawvere()
    assert diagonal_compose(q, 5.0, 2.0, 4.0) == pytest.approx(7.0)
    assert diagonal_member(q, 3.0, 1.0, 2.0)
    assert not diagonal_member(q, 0.5, 1.0, 2.0)


def test_interval_lattice_diagonal_is_join():
    q = IntervalLattice()
    a, b = Interval(0, 1), Interval(2, 3)
    assert diagonal_compose(q, a, Interval(0, 3), b) == Interval(0, 3)


def test_config_parsing():
    assert quantale_from_config("trunc:4") == TruncChain(4)
    assert isinstance(quantale_from_config("lawvere"), Lawvere)
    assert isinstance(quantale_from_config("locale"), SupLocale)
    p = quantale_from_config("product(two, product(trunc:1, two))")
    assert isinstance(p, Product) and len(p.factors) == 2
    with pytest.raises(StructuralError):
        quantale_from_config("banana:3")


@given(st.integers(1, 6), st.data())
def test_product_is_componentwise(n, data):
    q = Product([TruncChain(n), DiscreteTwo()])
    els = list(q.elements())
    a, b = data.draw(st.sampled_from(els)), data.draw(st.sampled_from(els))
    assert q.plus(a, b) == (q.factors[0].plus(a[0], b[0]), q.factors[1].plus(a[1], b[1]))
    assert q.leq(a, b) == (a[0] <= b[0] and a[1] <= b[1])

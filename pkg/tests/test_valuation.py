import math

import pytest
from hypothesis import given, strategies as st

from qlr.errors import DomainError
from qlr.quantale import Interval
from qlr.semantics import Grid, fig1_functions
from qlr.valuation import (IntervalUnion, check_dual_valuation, check_join_valuation, check_metric,
                           check_partial_metric, diamValuation, dualFromJoin, dualMetric,
                           inducedPartialMetric, interval_samples, lebesgueValuation, liftedM, liftedP,
                           quotientEquiv, residual, uMetric)

reals = st.floats(-100, 100, allow_nan=False)
ENDS = [-2.0, -0.5, 0.0, 1.0, 1.5, 3.0]


@given(reals, reals)
def test_diameter_of_hull_is_euclidean(x, y):
    assert diamValuation()(uMetric(x, y)) == pytest.approx(abs(x - y))


def test_diameter_is_a_join_valuation():
    assert check_join_valuation(diamValuation(), interval_samples(ENDS)).ok


def test_lebesgue_is_a_join_valuation_on_unions():
    pieces = [IntervalUnion.of((a, b)) for a, b in [(0, 1), (0.5, 2), (3, 4), (-1, 0)]]
    unions = pieces + [p.union(q) for p in pieces for q in pieces]
    assert check_join_valuation(lebesgueValuation(), unions).ok


def test_induced_partial_metric_axioms():
    V = diamValuation()
    rep = check_partial_metric(interval_samples(ENDS), lambda a, b: inducedPartialMetric(V, a, b),
                               eq=lambda a, b: quotientEquiv(V, a, b))
    for law in ("small_self_distance", "symmetric", "partial_triangle"):
        assert rep[law].passed, law


def test_induced_partial_metric_separates_only_up_to_the_quotient():
    # two distinct points have the same diameter, so they are identified by the quotient
    V = diamValuation()
    a, b = Interval(0, 0), Interval(1, 1)
    assert inducedPartialMetric(V, a, a) == inducedPartialMetric(V, b, b) == 0
    assert not quotientEquiv(V, a, b)


def test_dual_valuation_and_metric():
    D = dualFromJoin(diamValuation())
    assert check_dual_valuation(D, interval_samples(ENDS)).ok
    # hull of [0,1] and [2,3] has diameter 3, each side gains 2
    assert dualMetric(D, Interval(0, 1), Interval(2, 3)) == pytest.approx(4.0)
    assert check_metric(interval_samples(ENDS), lambda a, b: dualMetric(D, a, b))["triangle"].passed


def test_diameter_of_empty_set():
    with pytest.raises(DomainError):
        diamValuation()(Interval.empty())


@given(st.floats(0, 10), st.floats(0, 10))
def test_residual(a, b):
    assert residual(a, b) == max(a - b, 0.0)


def test_lifted_partial_metric_sine_identity():
    # on [-0.1, 0.1] the joint image of sine and the identity is [-0.1, 0.1]
    assert liftedP(math.sin, lambda y: y, 0.0, Interval(-0.1, 0.1)) == pytest.approx(0.2)


@given(st.floats(-3, 3), st.floats(0, 2))
def test_lifted_metric_is_reflexive_and_nonnegative(x, r):
    I = Interval(x - r, x + r)
    g = Grid(201)
    assert liftedM(math.sin, math.sin, x, I, g) == pytest.approx(0.0, abs=1e-12)
    assert liftedM(math.sin, math.cos, x, I, g) >= 0


def test_lifted_partial_metric_on_fig1():
    f, g, h = fig1_functions("a")
    I = Interval(-2.0, 2.0)
    p = lambda u, v: liftedP(u, v, 0.0, I)
    assert p(f, g) == pytest.approx(2.3)
    assert p(f, g) == pytest.approx(p(f, h) + p(h, g) - p(h, h), abs=1e-6)


def test_unbounded_window():
    assert liftedP(math.sin, math.sin, 0.0, Interval(0, math.inf)) == math.inf

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qlr.errors import TypingError, UnsupportedOperation
from qlr.parser import parse
from qlr.primitives import lookup
from qlr.semantics import (FIG1_RADII, Grid, contextuality_bound, denote, derivQ, derivQr, distD, distE,
                           distance, fig1_csv, non_additivity_witness, piecewise_f, reproduce_fig1,
                           sampled_derivative)
from qlr.syntax import REAL, Arrow, normalize, reduction_sequence

from strategies import closed_fns

SIN = parse(r"\x:Real. sin x")
ID = parse(r"\x:Real. x")
FINE = Grid(4001)
COARSE = Grid(101)


@given(st.sampled_from(["sin", "cos", "exp", "neg", "abs"]), st.floats(-4, 4), st.floats(0, 2))
def test_unary_modulus_is_tight(name, x, a):
    spec = lookup(name)
    m = spec.modulus((x,), (a,))
    s = sampled_derivative(spec, x, a, FINE)
    assert s <= m + 1e-9
    # the modulus is the exact supremum; the grid misses at most one step of slope
    assert m <= s + 2 * a / 4000 * max(1.0, math.exp(x + a)) + 1e-9


@given(st.floats(-3, 3), st.floats(-3, 3), st.floats(0, 1), st.floats(0, 1),
       st.floats(-1, 1), st.floats(-1, 1))
def test_mul_modulus_bounds_differences(x1, x2, a1, a2, s, t):
    m = lookup("mul").modulus((x1, x2), (a1, a2))
    assert abs(x1 * x2 - (x1 + s * a1) * (x2 + t * a2)) <= m + 1e-9


def test_derivative_of_sine_near_zero():
    # sine is increasing on [-0.1, 0.1], so the largest change from 0 is sin 0.1
    assert derivQ(SIN)(0.0, 0.1) == pytest.approx(math.sin(0.1), abs=1e-12)
    assert derivQ(SIN)(0.0, math.pi) == pytest.approx(1.0)


def test_plain_distance_sine_identity():
    # sup over |y| <= pi/2 of max(|y|, |sin y|) is pi/2
    assert distD(denote(SIN), denote(ID), Arrow(REAL, REAL), 0.0, math.pi / 2) == pytest.approx(math.pi / 2)


def test_reflexive_distance_kills_self_variation():
    f = denote(SIN)
    assert distE(f, f, Arrow(REAL, REAL), 0.3, 1.0, COARSE) == 0.0
    assert distD(f, f, Arrow(REAL, REAL), 0.3, 1.0, COARSE) > 0.5


@given(closed_fns(depth=2), st.floats(-2, 2), st.floats(0, 1))
def test_derivative_bounds_observed_change(p, x, a):
    t = parse(p[0])
    f, D = p[1], derivQ(t)
    bound = D(x, a)
    for y in COARSE.axis(x, a):
        assert abs(f(x) - f(float(y))) <= bound + 1e-9 * (1 + abs(bound))


@given(closed_fns(depth=2), st.floats(-2, 2), st.floats(0, 1))
def test_fundamental_lemma_on_generated_programs(p, x, a):
    t = parse(p[0])
    v = denote(t)
    assert distD(v, v, Arrow(REAL, REAL), x, a, COARSE) <= derivQ(t)(x, a) + 1e-9
    assert distE(v, v, Arrow(REAL, REAL), x, a, COARSE) == 0.0


@given(closed_fns(depth=2), st.floats(-2, 2), st.floats(0, 1))
def test_interpretation_is_invariant_under_beta(p, x, a):
    t = parse(p[0])
    n = normalize(t)
    assert denote(n)(x) == pytest.approx(denote(t)(x), abs=1e-12)
    assert derivQ(n)(x, a) == pytest.approx(derivQ(t)(x, a), abs=1e-12)
    assert derivQr(n)(x, a) == pytest.approx(derivQr(t)(x, a), abs=1e-12)


def test_higher_order_derivative_through_steps():
    t = parse(r"(\f:Real->Real. \x:Real. f (f x)) (\y:Real. sin y)")
    vals = {round(derivQ(s)(0.4, 0.2), 12) for s in reduction_sequence(t)}
    assert len(vals) == 1


def test_distance_needs_ground_arguments():
    ty = Arrow(Arrow(REAL, REAL), REAL)
    with pytest.raises(UnsupportedOperation):
        distance(ty, None, None)(None, None)
    with pytest.raises(ValueError):
        Grid(2)


def test_contextual_bound_for_application_to_zero():
    ctx = parse("[] 0.0")
    at_point = contextuality_bound(ctx, SIN, ID)
    assert at_point.bound == 0.0 and at_point.actual == 0.0
    local = contextuality_bound(ctx, SIN, ID, radius=0.1, grid=FINE)
    # both programs move by at most 0.1 when the argument moves by 0.1
    assert local.bound == pytest.approx(0.1)
    assert local.actual == pytest.approx(0.1)
    assert local.holds


def test_contextual_bound_rejects_mismatched_types():
    with pytest.raises(TypingError):
        contextuality_bound(parse("[] 0.0"), SIN, parse("(1.0, 2.0)"))


def test_fig1_values_at_radius_two():
    a = reproduce_fig1("a", 0.0, 2.0)
    assert (a.d_fg, a.d_fh, a.d_hg, a.d_hh) == pytest.approx((2.3, 1.15, 1.15, 1.15))
    assert a.violated
    b = reproduce_fig1("b", 0.0, 2.0)
    assert (b.d_fg, b.d_fh, b.d_hg) == pytest.approx((2.3, 0.0, 1.15))
    assert b.violated


def test_fig1_as_drawn_gives_no_triangle_violation():
    assert not reproduce_fig1("b", 0.0, 2.0, variant="drawn").violated


def test_fig1_csv_shape():
    text = fig1_csv("a")
    lines = text.splitlines()
    assert lines[0].startswith("# qlr-fig1 v1 panel=a")
    assert lines[1] == "x,r,d_fg,d_fh,d_hg,d_hh,violated"
    assert len(lines) == 2 + len(FIG1_RADII)
    assert fig1_csv("a") == text


def test_non_additivity_by_hand():
    # f is x on [-1, 1] and 2x outside, so D(f)(0, 1) = 1 and D(f)(0, 2) = |f(2)| = 4
    rep = non_additivity_witness()
    assert (rep.Df_1, rep.Df_2) == pytest.approx((1.0, 4.0))
    assert (rep.Dg_1, rep.Dg_2) == pytest.approx((2.0, 2.0))
    assert rep.superadditive_f and rep.subadditive_g
    assert piecewise_f(2.0) == 4.0


@pytest.mark.parametrize("res", [3, 11, 1001])
def test_grid_axis_contains_centre_and_ends(res):
    ax = Grid(res).axis(0.3, 0.5)
    assert 0.3 in ax and ax[0] == pytest.approx(-0.2) and ax[-1] == pytest.approx(0.8)
    assert np.all(np.diff(ax) > 0)

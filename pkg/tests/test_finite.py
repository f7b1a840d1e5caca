import itertools
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qlr.errors import ContractError, StructuralError, UnsupportedOperation
from qlr.finite import (FiniteQlr, FiniteQlrMap, all_functions, check_axioms, check_derivative_laws, curry,
                        derivative, derivative_map, discrete_two, distance_via_hfg, dumps, expQ, expQr,
                        loads, productQlr, uncurry)
from qlr.quantale import DiscreteTwo, TruncChain

from conftest import finite_spaces

INF = math.inf


def oracle_derivative(X, Y, f):
    """``D(f)(x, α)`` computed element by element with the scalar quantale operations."""
    out = {}
    for i, x in enumerate(X.carrier):
        for alpha in X.q.elements():
            vals = [Y.d(Y.carrier[f[i]], Y.carrier[f[j]])
                    for j, y in enumerate(X.carrier) if X.q.leq(X.d(x, y), alpha)]
            out[x, alpha] = Y.q.join(vals)
    return out


def decoded(X, Y, table):
    return {(x, X.q.decode(tuple(int(c) for c in e))): Y.ops.decode(table[i, a])
            for i, x in enumerate(X.carrier) for a, e in enumerate(X.ops.elements)}


@given(finite_spaces(), finite_spaces(), st.data())
def test_derivative_matches_scalar_oracle(X, Y, data):
    f = data.draw(st.lists(st.integers(0, Y.n - 1), min_size=X.n, max_size=X.n))
    got = decoded(X, Y, derivative(X, Y, np.array(f)))
    want = oracle_derivative(X, Y, f)
    assert set(got) == set(want)
    for k in want:
        assert Y.q.eq(got[k], want[k]), k


@given(finite_spaces(), finite_spaces(), st.data())
def test_derivative_is_smallest(X, Y, data):
    f = np.array(data.draw(st.lists(st.integers(0, Y.n - 1), min_size=X.n, max_size=X.n)))
    m = derivative_map(X, Y, f)
    assert m.valid
    # lowering any entry that is not already bottom breaks validity
    flat = m.deriv.reshape(-1, Y.ops.k)
    for idx in range(flat.shape[0]):
        for c in range(Y.ops.k):
            if flat[idx, c] > 0:
                low = flat.copy()
                low[idx, c] -= 1
                assert not FiniteQlrMap(X, Y, f, low.reshape(m.deriv.shape)).valid


def test_exponential_distance_by_hand():
    # X = {a, b} discrete, Y = {0, 1} over trunc:1 with d(0,1) = d(1,0) = 1
    q = TruncChain(1)
    Y = FiniteQlr([0, 1], q, [[0, 1], [1, 0]])
    X = FiniteQlr(["a", "b"], q, [[0, INF], [INF, 0]])
    E = expQ(X, Y)
    ident = E.code([0, 1])
    const0 = E.code([0, 0])
    d = E.unflatten(E.space.D[ident, const0])
    # at x = a with α = inf every y is in the ball: sup{b(f a, g y), b(f a, f y)} = 1
    a, top = 0, Y.ops.m - 1
    assert Y.ops.decode(d[a, top]) == 1
    # at α = 0 only y = a: b(f a, g a) = b(0, 0) = 0
    assert Y.ops.decode(d[a, 0]) == 0


@given(finite_spaces(max_n=2), finite_spaces(max_n=2))
def test_self_distance_is_derivative(X, Y):
    if X.q != Y.q and not isinstance(X.q, DiscreteTwo):
        pass
    E = expQ(X, Y)
    for i, f in enumerate(E.fs):
        assert np.array_equal(E.unflatten(E.space.D[i, i]), derivative(X, Y, f))


@given(finite_spaces(max_n=2, reflexive=True), finite_spaces(max_n=2, reflexive=True))
def test_reflexive_self_distance_zero(X, Y):
    if not Y.q.is_heyting:
        return
    E = expQr(X, Y)
    n = len(E.fs)
    assert (E.space.D[np.arange(n), np.arange(n)] == 0).all()


@given(finite_spaces(max_n=2), finite_spaces(max_n=2))
def test_distance_via_hfg(X, Y):
    E = expQ(X, Y)
    for (a, f), (b, g) in itertools.product(enumerate(E.fs), repeat=2):
        assert np.array_equal(distance_via_hfg(X, Y, f, g), E.unflatten(E.space.D[a, b]))


def test_reflexive_exponential_rejects_non_reflexive():
    q = TruncChain(1)
    X = FiniteQlr(["a"], q, [[1]])
    with pytest.raises(ContractError):
        expQr(X, X)


def test_size_caps():
    q = TruncChain(1)
    X = FiniteQlr(list(range(5)), q, [[0] * 5 for _ in range(5)])
    with pytest.raises(UnsupportedOperation):
        expQ(X, X)


@given(finite_spaces(configs=("two", "trunc:1"), max_n=2, reflexive=True),
       finite_spaces(configs=("two", "trunc:1"), max_n=2, reflexive=True),
       finite_spaces(configs=("two", "trunc:1"), max_n=2, reflexive=True))
def test_curry_round_trip_on_reflexive_spaces(Z, X, Y):
    ZX = productQlr(Z, X)
    E = expQ(X, Y)
    for f in all_functions(ZX.n, Y.n):
        m = derivative_map(ZX, Y, f)
        lam, _ = curry(Z, X, Y, m, E=E)
        assert lam.valid
        assert uncurry(Z, E, lam).same_as(m)


def test_curry_checks_its_exponential():
    q = TruncChain(1)
    X = FiniteQlr(["a"], q, [[0]])
    m = derivative_map(productQlr(X, X), X, np.array([0]))
    with pytest.raises(StructuralError):
        curry(X, X, X, m, reflexive=True, E=expQ(X, X))


def test_curry_rejects_invalid_maps():
    q = TruncChain(1)
    X = FiniteQlr(["a", "b"], q, [[0, 1], [1, 0]])
    P = productQlr(X, X)
    f = np.array([0, 1, 1, 0])
    zero = np.zeros((P.n, P.ops.m, 1), dtype=np.int64)
    with pytest.raises(ContractError):
        curry(X, X, X, FiniteQlrMap(P, X, f, zero))


def test_axioms_on_discrete_two():
    rep = check_axioms(discrete_two())
    for law in ("reflexive", "symmetric", "separated", "transitive", "ultraMetric"):
        assert rep[law].passed


def test_axiom_witness_is_first_in_carrier_order():
    q = TruncChain(2)
    X = FiniteQlr(["a", "b", "c"], q, [[0, 0, 1], [0, 0, 0], [1, 0, 0]])
    rep = check_axioms(X, ("transitive",))
    assert not rep.ok
    assert rep["transitive"].witness == ("a", "b", "c")


def test_derivative_laws_when_every_radius_is_attained():
    # from each point some other point sits at distance exactly 1 and some at inf
    q = TruncChain(1)
    X = FiniteQlr(["a", "b", "c"], q, [[0, 1, INF], [1, 0, INF], [1, INF, 0]])
    Z = FiniteQlr(["z"], q, [[0]])
    rep = check_derivative_laws(X, X, Z)
    for law in ("D1", "D2.1", "D2.2", "D3", "D4", "D5", "D6"):
        assert rep[law].passed, law


def test_identity_derivative_fails_when_radius_unattained():
    # on a single point D(id)(a, inf) = a(a, a) = 0, not inf
    q = DiscreteTwo()
    X = FiniteQlr(["a"], q, [[0]])
    rep = check_derivative_laws(X, X, X)
    assert not rep["D1"].passed


@given(finite_spaces())
def test_text_format_round_trip(X):
    Y = loads(dumps(X))
    assert Y.carrier == X.carrier and Y.q == X.q
    assert np.array_equal(Y.D, X.D)


def test_text_format_errors():
    with pytest.raises(StructuralError):
        loads("carrier: a\n")
    with pytest.raises(StructuralError):
        loads("quantale: trunc:1\ncarrier: a b\na: 0 1\n")

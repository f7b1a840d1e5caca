"""Exact QLR engine on finite carriers over finite products of chains.

Distances are stored as integer arrays of shape ``(n, n, k)``: entry
``[x, y, i]`` is the index, in chain ``i``, of coordinate ``i`` of ``a(x, y)``.
On a product of chains the lattice order is the coordinatewise order of
indices, so joins are ``max`` and meets are ``min``; ``plus``, ``⊸`` and ``⇐``
are looked up in the per-chain tables.  The exponential quantale
``R^{X×Q}`` is again a product of chains (one copy of ``R`` per probe key),
so exponentials stay in the same representation.

Maps are pairs ``(fn, deriv)`` where ``fn`` is an index array into the
target carrier and ``deriv`` has shape ``(n, m, k)``: ``deriv[x, a]`` is the
bound at ``(x, α_a)`` with ``α_a`` the ``a``-th element of the source quantale.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import ContractError, StructuralError, UnsupportedOperation
from .quantale import DiscreteTwo, Pointwise, Product, Quantale, quantale_from_config
from .reports import LawReport, LawResult

MAX_CARRIER = 4
MAX_QUANTALE = 8


# --------------------------------------------------------------------------
# vectorised chain-product arithmetic


class ChainOps:
    """Coordinatewise operations for a finite product of chains."""

    def __init__(self, q: Quantale):
        self.q = q
        self.tables = q.chain_factors()
        self.k = len(self.tables)
        self.sizes = tuple(t.size for t in self.tables)

    @cached_property
    def elements(self) -> np.ndarray:
        """All elements as coordinate rows, in the order of ``q.elements()``."""
        grid = itertools.product(*(range(s) for s in self.sizes))
        return np.array(list(grid), dtype=np.int64).reshape(-1, self.k)

    @property
    def m(self) -> int:
        return int(np.prod(self.sizes))

    def index_of(self, coords: np.ndarray) -> np.ndarray:
        """Position in ``elements`` of coordinate rows (last axis)."""
        return np.ravel_multi_index(tuple(np.moveaxis(coords, -1, 0)), self.sizes)

    def _table_op(self, name, a, b):
        a, b = np.broadcast_arrays(a, b)
        out = np.empty(a.shape, dtype=np.int64)
        for i, t in enumerate(self.tables):
            out[..., i] = getattr(t, name)[a[..., i], b[..., i]]
        return out

    def plus(self, a, b):
        return self._table_op("plus", a, b)

    def residual(self, a, b):
        return self._table_op("residual", a, b)

    def heyting(self, a, b):
        return self._table_op("heyting", a, b)

    @staticmethod
    def leq(a, b):
        return np.all(a <= b, axis=-1)

    @staticmethod
    def eq(a, b):
        return np.all(a == b, axis=-1)

    @staticmethod
    def join(a, b):
        return np.maximum(a, b)

    @staticmethod
    def meet(a, b):
        return np.minimum(a, b)

    def decode(self, coords) -> object:
        return self.q.decode(tuple(int(c) for c in coords))

    def encode(self, el) -> np.ndarray:
        return np.array(self.q.encode(el), dtype=np.int64)


def _ops(q: Quantale) -> ChainOps:
    try:
        return ChainOps(q)
    except UnsupportedOperation:
        raise UnsupportedOperation(
            f"the finite engine needs a finite product of chains, got {q.name}") from None


# --------------------------------------------------------------------------
# spaces and maps


class FiniteQlr:
    """A QLR ``(X, Q, a)`` with finite carrier ``X`` and finite chain-product ``Q``."""

    def __init__(self, carrier: Sequence, quantale: Quantale, dist, name: str | None = None,
                 *, _coords: np.ndarray | None = None):
        self.carrier = tuple(carrier)
        self.q = quantale
        self.ops = _ops(quantale)
        self.name = name or f"X{len(self.carrier)}"
        n = len(self.carrier)
        if _coords is not None:
            arr = np.asarray(_coords, dtype=np.int64)
            if arr.shape != (n, n, self.ops.k):
                raise StructuralError(f"distance array has shape {arr.shape}, expected {(n, n, self.ops.k)}")
        else:
            rows = list(dist)
            if len(rows) != n or any(len(r) != n for r in rows):
                raise StructuralError("distance matrix must be square over the carrier")
            arr = np.empty((n, n, self.ops.k), dtype=np.int64)
            for i, row in enumerate(rows):
                for j, el in enumerate(row):
                    arr[i, j] = self.ops.encode(quantale.check(el))
        arr.setflags(write=False)
        self.D = arr
        self._index = {p: i for i, p in enumerate(self.carrier)}

    @classmethod
    def from_coords(cls, carrier, quantale, coords, name=None) -> "FiniteQlr":
        return cls(carrier, quantale, None, name, _coords=coords)

    @property
    def n(self) -> int:
        return len(self.carrier)

    def index(self, p) -> int:
        return self._index[p]

    def d(self, x, y):
        """Distance between two carrier points, as a quantale element."""
        return self.ops.decode(self.D[self._index[x], self._index[y]])

    def matrix(self) -> list[list]:
        return [[self.ops.decode(self.D[i, j]) for j in range(self.n)] for i in range(self.n)]

    def __repr__(self):
        return f"FiniteQlr({self.name}, |X|={self.n}, Q={self.q.name})"


@dataclass(frozen=True, eq=False)
class FiniteQlrMap:
    """A candidate morphism ``(fn, deriv)`` between finite QLR."""

    src: FiniteQlr
    dst: FiniteQlr
    fn: np.ndarray
    deriv: np.ndarray

    def __post_init__(self):
        fn = np.asarray(self.fn, dtype=np.int64)
        deriv = np.asarray(self.deriv, dtype=np.int64)
        expect = (self.src.n, self.src.ops.m, self.dst.ops.k)
        if fn.shape != (self.src.n,) or deriv.shape != expect:
            raise StructuralError(f"map tables have shapes {fn.shape}, {deriv.shape}; expected {(self.src.n,)}, {expect}")
        object.__setattr__(self, "fn", fn)
        object.__setattr__(self, "deriv", deriv)

    def violations(self) -> np.ndarray:
        return map_violations(self.src, self.dst, self.fn, self.deriv)

    @property
    def valid(self) -> bool:
        return not self.violations().any()

    def same_as(self, other: "FiniteQlrMap") -> bool:
        return np.array_equal(self.fn, other.fn) and np.array_equal(self.deriv, other.deriv)


def _radius_mask(X: FiniteQlr) -> np.ndarray:
    """``C[x, y, a]``: whether ``a(x, y) <= α_a``."""
    E = X.ops.elements
    return ChainOps.leq(X.D[:, :, None, :], E[None, None, :, :])


def map_violations(X: FiniteQlr, Y: FiniteQlr, fn, deriv) -> np.ndarray:
    """Boolean ``(x, y, a)`` array of failures of the QLR-map condition."""
    fn = np.asarray(fn)
    C = _radius_mask(X)
    out = Y.D[fn[:, None], fn[None, :]]  # (n, n, k)
    ok = ChainOps.leq(out[:, :, None, :], np.asarray(deriv)[:, None, :, :])
    return C & ~ok


def _masked_join(C: np.ndarray, V: np.ndarray) -> np.ndarray:
    """``J[..., x, a, :] = max_y { V[..., x, y, :] | C[x, y, a] }`` with empty join 0."""
    masked = np.where(C[..., None], V[..., :, :, None, :], 0)
    return masked.max(axis=-3)


def derivative(X: FiniteQlr, Y: FiniteQlr, fn) -> np.ndarray:
    """The smallest derivative ``D(f)(x, α) = ∨{ b(f x, f y) | a(x, y) <= α }``."""
    fn = np.asarray(fn, dtype=np.int64)
    if fn.shape != (X.n,) or (fn.size and (fn.min() < 0 or fn.max() >= Y.n)):
        raise StructuralError("function table must map every source point into the target")
    V = Y.D[fn[:, None], fn[None, :]]
    return _masked_join(_radius_mask(X), V)


def derivative_map(X: FiniteQlr, Y: FiniteQlr, fn) -> FiniteQlrMap:
    return FiniteQlrMap(X, Y, fn, derivative(X, Y, fn))


# --------------------------------------------------------------------------
# constructions


def _check_caps(X: FiniteQlr, Y: FiniteQlr, max_size: int, max_q: int):
    if X.n > max_size or Y.n > max_size:
        raise UnsupportedOperation(f"carrier larger than the cap {max_size}")
    if X.ops.m > max_q or Y.ops.m > max_q:
        raise UnsupportedOperation(f"quantale larger than the cap {max_q}")


def all_functions(nx: int, ny: int) -> np.ndarray:
    """Every function ``X -> Y`` as a row of images; row index is the mixed-radix code."""
    return np.array(list(itertools.product(range(ny), repeat=nx)), dtype=np.int64).reshape(-1, nx)


def function_code(images: Sequence[int], ny: int) -> int:
    code = 0
    for v in images:
        code = code * ny + int(v)
    return code


@dataclass(frozen=True, eq=False)
class Exponential:
    """``Y^X`` with its carrier table; ``space`` is the QLR, ``fs[i]`` the images of function ``i``."""

    X: FiniteQlr
    Y: FiniteQlr
    space: FiniteQlr
    fs: np.ndarray
    reflexive_variant: bool

    def code(self, images: Sequence[int]) -> int:
        return function_code(images, self.Y.n)

    def unflatten(self, value: np.ndarray) -> np.ndarray:
        """View a flattened ``R^{X×Q}`` element as ``(n_X, m_X, k_Y)``."""
        return np.asarray(value).reshape(value.shape[:-1] + (self.X.n, self.X.ops.m, self.Y.ops.k))


def exp_keys(X: FiniteQlr) -> list:
    return [(x, X.ops.decode(e)) for x in X.carrier for e in X.ops.elements]


def exp_distance(X: FiniteQlr, Y: FiniteQlr, fa: np.ndarray, fb: np.ndarray) -> np.ndarray:
    """``d^Q(f, g)(x, α) = ∨{ b(f x, g y), b(f x, f y) | a(x, y) <= α }``.

    ``fa`` has shape ``(A, n_X)`` and ``fb`` shape ``(B, n_X)``; the result has
    shape ``(A, B, n_X, m_X, k_Y)``.
    """
    fa = np.atleast_2d(fa)
    fb = np.atleast_2d(fb)
    cross = Y.D[fa[:, None, :, None], fb[None, :, None, :]]      # (A, B, x, y, k)
    self_ = Y.D[fa[:, :, None], fa[:, None, :]][:, None]          # (A, 1, x, y, k)
    V = np.maximum(cross, self_)
    return _masked_join(_radius_mask(X), V)


def _check_reflexive(X: FiniteQlr, what: str):
    diag = X.D[np.arange(X.n), np.arange(X.n)]
    bad = np.argwhere(np.any(diag != 0, axis=-1))
    if len(bad):
        x = X.carrier[int(bad[0][0])]
        raise ContractError(f"{what} is not reflexive at {x!r}", witness=x)


def _exp(X: FiniteQlr, Y: FiniteQlr, reflexive: bool, max_size: int, max_q: int) -> Exponential:
    _check_caps(X, Y, max_size, max_q)
    if reflexive:
        if not Y.q.is_heyting:
            raise UnsupportedOperation(f"{Y.q.name} is not Heyting")
        _check_reflexive(X, X.name)
        _check_reflexive(Y, Y.name)
    fs = all_functions(X.n, Y.n)
    d = exp_distance(X, Y, fs, fs)
    if reflexive:
        Df = np.stack([derivative(X, Y, f) for f in fs])            # (F, x, m, k)
        d = Y.ops.heyting(d, Df[:, None])
    F = len(fs)
    coords = d.reshape(F, F, -1)
    q = Pointwise(exp_keys(X), Y.q)
    carrier = [tuple(Y.carrier[i] for i in f) for f in fs]
    tag = "r" if reflexive else ""
    space = FiniteQlr.from_coords(carrier, q, coords, name=f"{Y.name}^{X.name}{tag}")
    return Exponential(X, Y, space, fs, reflexive)


def expQ(X: FiniteQlr, Y: FiniteQlr, *, max_size: int = MAX_CARRIER,
         max_q: int = MAX_QUANTALE) -> Exponential:
    """Exponential of ``X`` and ``Y`` in the category of all QLR."""
    return _exp(X, Y, False, max_size, max_q)


def expQr(X: FiniteQlr, Y: FiniteQlr, *, max_size: int = MAX_CARRIER,
          max_q: int = MAX_QUANTALE) -> Exponential:
    """Exponential in the reflexive category: ``d^Q(f, g) ⇐ D(f)``."""
    return _exp(X, Y, True, max_size, max_q)


def productQlr(X: FiniteQlr, Y: FiniteQlr) -> FiniteQlr:
    carrier = [(x, y) for x in X.carrier for y in Y.carrier]
    q = Product([X.q, Y.q])
    DX = np.repeat(np.repeat(X.D, Y.n, axis=0), Y.n, axis=1)
    DY = np.tile(Y.D, (X.n, X.n, 1))
    return FiniteQlr.from_coords(carrier, q, np.concatenate([DX, DY], axis=-1),
                                 name=f"{X.name}x{Y.name}")


def unit_space(q: Quantale | None = None) -> FiniteQlr:
    q = q or DiscreteTwo()
    return FiniteQlr(["*"], q, [[q.zero]], name="1")


def discrete_two() -> FiniteQlr:
    """``({0, 1}, {0 < inf}, d_disc)``."""
    q = DiscreteTwo()
    return FiniteQlr([0, 1], q, [[0, math.inf], [math.inf, 0]], name="2")


def projection(X: FiniteQlr, Y: FiniteQlr, i: int) -> np.ndarray:
    """Function table of ``π_i`` on ``X × Y`` (``i`` is 1 or 2)."""
    xs, ys = np.divmod(np.arange(X.n * Y.n), Y.n)
    return xs if i == 1 else ys


# --------------------------------------------------------------------------
# currying


def _split_deriv(Z: FiniteQlr, X: FiniteQlr, deriv: np.ndarray) -> np.ndarray:
    """View a derivative on ``Z × X`` as ``(z, x, γ, α, k)``."""
    return deriv.reshape(Z.n, X.n, Z.ops.m, X.ops.m, -1)


def _section_derivs(X: FiniteQlr, Y: FiniteQlr, rows: np.ndarray) -> np.ndarray:
    return np.stack([derivative(X, Y, r) for r in rows])            # (z, x, α, k)


def curry(Z: FiniteQlr, X: FiniteQlr, Y: FiniteQlr, m: FiniteQlrMap, *,
          reflexive: bool = False, check: bool = True,
          E: Exponential | None = None) -> tuple[FiniteQlrMap, Exponential]:
    """``λ`` (or ``λ^r``) of a map ``Z × X -> Y``; returns the map into ``Y^X``.

    A prebuilt exponential ``E`` of the matching variant may be passed to avoid rebuilding it.
    """
    if check and not m.valid:
        raise ContractError("input is not a QLR map", witness=_first_violation(m))
    if E is None:
        E = expQr(X, Y) if reflexive else expQ(X, Y)
    elif E.reflexive_variant != reflexive or E.X is not X or E.Y is not Y:
        raise StructuralError("exponential does not match the requested variant or spaces")
    table = m.fn.reshape(Z.n, X.n)
    codes = np.array([E.code(r) for r in table], dtype=np.int64)
    lam = _split_deriv(Z, X, m.deriv).transpose(0, 2, 1, 3, 4)     # (z, γ, x, α, k)
    if reflexive:
        sec = _section_derivs(X, Y, table)                          # (z, x, α, k)
        lam = Y.ops.heyting(lam, sec[:, None])
    deriv = lam.reshape(Z.n, Z.ops.m, -1)
    return FiniteQlrMap(Z, E.space, codes, deriv), E


def uncurry(Z: FiniteQlr, E: Exponential, m: FiniteQlrMap, *, check: bool = True) -> FiniteQlrMap:
    """``ev`` (or ``ev^r`` when ``E`` is the reflexive exponential) of a map ``Z -> Y^X``."""
    if check and not m.valid:
        raise ContractError("input is not a QLR map", witness=_first_violation(m))
    X, Y = E.X, E.Y
    table = E.fs[m.fn]                                               # (z, x)
    psi = E.unflatten(m.deriv)                                       # (z, γ, x, α, k)
    if E.reflexive_variant:
        sec = _section_derivs(X, Y, table)
        psi = Y.ops.join(psi, sec[:, None])
    ZX = productQlr(Z, X)
    deriv = psi.transpose(0, 2, 1, 3, 4).reshape(Z.n * X.n, Z.ops.m * X.ops.m, Y.ops.k)
    return FiniteQlrMap(ZX, Y, table.reshape(-1), deriv)


def _first_violation(m: FiniteQlrMap):
    bad = np.argwhere(m.violations())
    if not len(bad):
        return None
    x, y, a = (int(i) for i in bad[0])
    return (m.src.carrier[x], m.src.carrier[y], m.src.ops.decode(m.src.ops.elements[a]))


# --------------------------------------------------------------------------
# distance through h_{f,g}


def distance_via_hfg(X: FiniteQlr, Y: FiniteQlr, f, g) -> np.ndarray:
    """``D(h_{f,g})(<0, x>, <inf, α>)`` for all ``x, α``; shape ``(n_X, m_X, k_Y)``.

    ``h_{f,g} : 2 × X -> Y`` sends ``(0, x)`` to ``f x`` and ``(1, x)`` to ``g x``.
    """
    two = discrete_two()
    TX = productQlr(two, X)
    h = np.concatenate([np.asarray(f), np.asarray(g)])
    Dh = derivative(TX, Y, h).reshape(2, X.n, 2, X.ops.m, Y.ops.k)
    return Dh[0, :, 1]   # source point (0, x), radius (inf, α)


# --------------------------------------------------------------------------
# axioms

AXIOMS = ("reflexive", "symmetric", "separated", "transitive", "relaxed", "hyperRelaxed",
          "partialMetric", "partialSeparated", "ultraMetric", "partialUltraMetric")


def _witness(mask: np.ndarray, X: FiniteQlr):
    bad = np.argwhere(~mask)
    if not len(bad):
        return None
    return tuple(X.carrier[int(i)] for i in bad[0])


def check_axioms(X: FiniteQlr, axioms: Iterable[str] = AXIOMS) -> LawReport:
    """Exhaustive check of metric-like axioms; failures carry the first witness in carrier order."""
    ops, D, n = X.ops, X.D, X.n
    diag = D[np.arange(n), np.arange(n)]
    xy = D[:, :, None, :]     # a(x, y) indexed (x, y, z)
    yz = D[None, :, :, :]     # a(y, z)
    xz = D[:, None, :, :]     # a(x, z)
    yy = diag[None, :, None, :]
    eye = np.eye(n, dtype=bool)
    report = LawReport(X.name)
    for ax in axioms:
        if ax not in AXIOMS:
            raise StructuralError(f"unknown axiom {ax!r}")
        if ax in ("partialMetric", "partialUltraMetric") and not X.q.is_integral:
            raise UnsupportedOperation(f"{ax} needs an integral quantale")
        if ax == "reflexive":
            mask = np.all(diag == 0, axis=-1)
        elif ax == "symmetric":
            mask = ChainOps.eq(D, D.transpose(1, 0, 2))
        elif ax == "separated":
            mask = eye | ~np.all(D == 0, axis=-1)
        elif ax in ("transitive", "relaxed"):
            mask = ChainOps.leq(xz, ops.plus(xy, yz))
        elif ax == "hyperRelaxed":
            # a(x, z) <= a(x, y) + a(y, y) + a(y, z)
            mask = ChainOps.leq(xz, ops.plus(ops.plus(xy, yy), yz))
        elif ax == "partialMetric":
            dx = diag[:, None, :]
            dy = diag[None, :, :]
            member = (ChainOps.eq(ops.plus(dy, ops.residual(D, dy)), D)
                      & ChainOps.eq(ops.plus(ops.residual(D, dx), dx), D))
            trans = ChainOps.leq(xz, ops.plus(xy, ops.residual(yz, yy)))
            mask = member[:, :, None] & trans
        elif ax == "partialSeparated":
            same = (ChainOps.eq(D, diag[:, None, :]) & ChainOps.eq(D, diag[None, :, :])
                    & ChainOps.eq(D, D.transpose(1, 0, 2)))
            mask = eye | ~same
        elif ax == "ultraMetric":
            refl = np.all(diag == 0, axis=-1)
            mask = refl[:, None, None] & ChainOps.leq(xz, ops.join(xy, yz))
        elif ax == "partialUltraMetric":
            member = ChainOps.leq(ops.join(diag[:, None, :], diag[None, :, :]), D)
            mask = member[:, :, None] & ChainOps.leq(xz, ops.join(xy, yz))
        report.results.append(LawResult(ax, bool(mask.all()), int(mask.size), _witness(mask, X)))
    return report


def induced_metric(X: FiniteQlr) -> FiniteQlr:
    """``a*(x, y) = (a(x, y) ⊸ a(x, x)) + (a(x, y) ⊸ a(y, y))``."""
    pre = check_axioms(X, ("symmetric", "partialSeparated", "partialMetric"))
    if not pre.ok:
        bad = pre.failed()[0]
        raise ContractError(f"not a symmetric separated partial metric ({bad.law})", witness=bad.witness)
    ops, D, n = X.ops, X.D, X.n
    diag = D[np.arange(n), np.arange(n)]
    star = ops.plus(ops.residual(D, diag[:, None, :]), ops.residual(D, diag[None, :, :]))
    return FiniteQlr.from_coords(X.carrier, X.q, star, name=f"{X.name}*")


def check_symmetric_exp(X: FiniteQlr, Y: FiniteQlr) -> LawResult:
    E = expQ(X, Y)
    return check_axioms(E.space, ("symmetric",))["symmetric"]


# --------------------------------------------------------------------------
# derivative laws


def _elem_index(Y: FiniteQlr, coords: np.ndarray) -> np.ndarray:
    return Y.ops.index_of(coords)


def _law(results: list, name: str, mask: np.ndarray, witness=None):
    results.append(LawResult(name, bool(mask.all()), int(mask.size), None if mask.all() else witness))


def check_derivative_laws(X: FiniteQlr, Y: FiniteQlr, Z: FiniteQlr) -> LawReport:
    """D1-D6 exhaustively over all maps between the given spaces.

    * D1 on ``X``; D2 on ``X × Y``;
    * D3 on every pair ``f : X -> Y``, ``g : X -> Z``;
    * D4 on every composable pair ``f : X -> Y``, ``g : Y -> Z``;
    * D5 on every ``f : Z × X -> Y`` (curried into ``Y^X``);
    * D6 on every ``f : Z -> Y^X``.

    D1-D3 are checked for equality, D4-D6 for ``<=``.
    """
    res: list[LawResult] = []
    # D1
    idx = np.arange(X.n)
    D1 = derivative(X, X, idx)
    E = X.ops.elements
    m1 = ChainOps.eq(D1, E[None])
    _law(res, "D1", m1, _first_entry(m1, X))
    # D2
    P = productQlr(X, Y)
    EP = P.ops.elements
    for i, coords in ((1, slice(0, X.ops.k)), (2, slice(X.ops.k, None))):
        Dp = derivative(P, X if i == 1 else Y, projection(X, Y, i))
        mask = ChainOps.eq(Dp, EP[None, :, coords])
        _law(res, f"D2.{i}", mask, _first_entry(mask, P))
    # D3
    fsY, fsZ = all_functions(X.n, Y.n), all_functions(X.n, Z.n)
    YZ = productQlr(Y, Z)
    DfY = np.stack([derivative(X, Y, f) for f in fsY])
    DgZ = np.stack([derivative(X, Z, g) for g in fsZ])
    m3 = []
    for a, f in enumerate(fsY):
        for b, g in enumerate(fsZ):
            pair = f * Z.n + g
            lhs = derivative(X, YZ, pair)
            rhs = np.concatenate([DfY[a], DgZ[b]], axis=-1)
            m3.append(ChainOps.eq(lhs, rhs))
    m3 = np.stack(m3)
    _law(res, "D3", m3, _first_index(m3))
    # D4
    gsYZ = all_functions(Y.n, Z.n)
    DgYZ = np.stack([derivative(Y, Z, g) for g in gsYZ])          # (G, y, m_Y, k_Z)
    m4, strict = [], False
    for a, f in enumerate(fsY):
        ai = _elem_index(Y, DfY[a])                                # (x, m_X)
        for b, g in enumerate(gsYZ):
            lhs = derivative(X, Z, g[f])
            rhs = DgYZ[b][f[:, None], ai]
            m4.append(ChainOps.leq(lhs, rhs))
            strict = strict or bool(np.any(lhs != rhs))
    m4 = np.stack(m4)
    _law(res, "D4", m4, _first_index(m4))
    res.append(LawResult("D4.strict_somewhere", strict, len(fsY) * len(gsYZ), None))
    # D5: f : Z × X -> Y
    EXY = expQ(X, Y)
    ZX = productQlr(Z, X)
    m5 = []
    for f in all_functions(Z.n * X.n, Y.n):
        mp = derivative_map(ZX, Y, f)
        lam, _ = curry(Z, X, Y, mp, check=False)
        lhs = derivative(Z, EXY.space, lam.fn)
        m5.append(ChainOps.leq(lhs, lam.deriv))
    m5 = np.stack(m5)
    _law(res, "D5", m5, _first_index(m5))
    # D6: f : Z -> Y^X
    m6 = []
    for codes in itertools.product(range(len(EXY.fs)), repeat=Z.n):
        mp = derivative_map(Z, EXY.space, np.array(codes))
        ev = uncurry(Z, EXY, mp, check=False)
        lhs = derivative(ev.src, Y, ev.fn)
        m6.append(ChainOps.leq(lhs, ev.deriv))
    m6 = np.stack(m6)
    _law(res, "D6", m6, _first_index(m6))
    return LawReport(f"D-laws({X.name},{Y.name},{Z.name})", res)


def _first_entry(mask: np.ndarray, X: FiniteQlr):
    bad = np.argwhere(~mask)
    if not len(bad):
        return None
    x, a = (int(i) for i in bad[0][:2])
    return (X.carrier[x], X.ops.decode(X.ops.elements[a]))


def _first_index(mask: np.ndarray):
    bad = np.argwhere(~mask)
    return None if not len(bad) else tuple(int(i) for i in bad[0])


# --------------------------------------------------------------------------
# instance generation


def all_spaces(q: Quantale, n: int, *, reflexive: bool = False, symmetric: bool = False,
               canonical: bool = True) -> Iterator[FiniteQlr]:
    """Every QLR on ``n`` points over ``q``; with ``canonical`` one per isomorphism class."""
    ops = _ops(q)
    E = ops.elements
    m = len(E)
    cells = [(i, j) for i in range(n) for j in range(n)
             if not (reflexive and i == j) and not (symmetric and j < i)]
    seen = set()
    perms = list(itertools.permutations(range(n)))
    for choice in itertools.product(range(m), repeat=len(cells)):
        M = np.zeros((n, n), dtype=np.int64)
        for (i, j), c in zip(cells, choice):
            M[i, j] = c
            if symmetric:
                M[j, i] = c
        if canonical:
            key = min(tuple(M[np.ix_(p, p)].ravel()) for p in perms)
            if key in seen:
                continue
            seen.add(key)
        yield FiniteQlr.from_coords([f"p{i}" for i in range(n)], q, E[M], name=f"{q.name}#{len(seen)}")


def random_space(q: Quantale, n: int, rng: np.random.Generator, *, reflexive=False,
                 symmetric=False) -> FiniteQlr:
    ops = _ops(q)
    M = rng.integers(0, ops.m, size=(n, n))
    if symmetric:
        M = np.triu(M) + np.triu(M, 1).T
    if reflexive:
        np.fill_diagonal(M, 0)
    return FiniteQlr.from_coords([f"p{i}" for i in range(n)], q, ops.elements[M], name=f"{q.name}~{n}")


def spaces_satisfying(q: Quantale, n: int, axioms: Sequence[str], **kw) -> list[FiniteQlr]:
    return [X for X in all_spaces(q, n, **kw) if check_axioms(X, axioms).ok]


# --------------------------------------------------------------------------
# text format

HEADER = "# qlr-finite v1"


def format_element(el) -> str:
    if isinstance(el, tuple):
        return "(" + ",".join(format_element(e) for e in el) + ")"
    if el == math.inf:
        return "inf"
    return str(int(el)) if float(el).is_integer() else repr(el)


def parse_element(q: Quantale, text: str):
    text = text.strip()
    if isinstance(q, Product):
        if not (text.startswith("(") and text.endswith(")")):
            raise StructuralError(f"expected a tuple for {q.name}, got {text!r}")
        parts, depth, cur = [], 0, ""
        for ch in text[1:-1]:
            if ch == "," and depth == 0:
                parts.append(cur)
                cur = ""
                continue
            depth += (ch == "(") - (ch == ")")
            cur += ch
        parts.append(cur)
        if len(parts) != len(q.factors):
            raise StructuralError(f"tuple {text!r} does not match {q.name}")
        return tuple(parse_element(f, p) for f, p in zip(q.factors, parts))
    if text in ("inf", "∞"):
        return q.check(math.inf)
    try:
        v = float(text)
    except ValueError:
        raise StructuralError(f"bad quantale element {text!r}") from None
    return q.check(int(v) if v.is_integer() else v)


def dumps(X: FiniteQlr) -> str:
    lines = [HEADER, f"quantale: {X.q.name}", "carrier: " + " ".join(str(p) for p in X.carrier)]
    for p, row in zip(X.carrier, X.matrix()):
        lines.append(f"{p}: " + " ".join(format_element(e) for e in row))
    return "\n".join(lines) + "\n"


def loads(text: str, name: str | None = None) -> FiniteQlr:
    """Parse the plain-text matrix format written by :func:`dumps`."""
    lines = [ln.split("--")[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if len(lines) < 2 or not lines[0].startswith("quantale:") or not lines[1].startswith("carrier:"):
        raise StructuralError("expected 'quantale:' and 'carrier:' header lines")
    q = quantale_from_config(lines[0].split(":", 1)[1])
    carrier = lines[1].split(":", 1)[1].split()
    rows = {}
    for ln in lines[2:]:
        head, _, rest = ln.partition(":")
        # tuples contain no spaces in the canonical format
        rows[head.strip()] = [parse_element(q, tok) for tok in rest.split()]
    if set(rows) != set(carrier):
        raise StructuralError("distance rows must be given for exactly the carrier points")
    return FiniteQlr(carrier, q, [rows[p] for p in carrier], name=name)

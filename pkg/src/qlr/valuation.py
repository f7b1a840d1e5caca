"""Valuations on lattices of intervals and the metrics they induce.

The interval partial ultra-metric ``u(x, y) = [min, max]`` followed by the
diameter recovers the Euclidean distance.  Lifting ``u`` pointwise to
functions and measuring afterwards gives the partial metric ``p`` and the
metric ``m`` on real functions.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .errors import DomainError
from .quantale import Interval
from .reports import LawReport, LawResult
from .semantics import DEFAULT_GRID, Grid

INF = math.inf


def residual(a: float, b: float) -> float:
    """``a ⊸ b`` in the Lawvere quantale: ``max(a - b, 0)``, with ``inf ⊸ inf = 0``."""
    if b >= a:
        return 0.0
    return a - b


def uMetric(x: float, y: float) -> Interval:
    return Interval(min(x, y), max(x, y))


# --------------------------------------------------------------------------
# lattices


@dataclass(frozen=True)
class IntervalUnion:
    """A finite union of closed intervals, kept as sorted disjoint pieces."""

    pieces: tuple[tuple[float, float], ...]

    @classmethod
    def of(cls, *items) -> "IntervalUnion":
        spans = []
        for it in items:
            if isinstance(it, Interval):
                if not it.is_empty:
                    spans.append((it.lo, it.hi))
            elif isinstance(it, IntervalUnion):
                spans.extend(it.pieces)
            else:
                lo, hi = it
                if lo > hi:
                    raise DomainError(f"interval with lo > hi: {it}")
                spans.append((float(lo), float(hi)))
        spans.sort()
        merged: list[list[float]] = []
        for lo, hi in spans:
            if merged and lo <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], hi)
            else:
                merged.append([lo, hi])
        return cls(tuple((lo, hi) for lo, hi in merged))

    @property
    def is_empty(self) -> bool:
        return not self.pieces

    def union(self, other: "IntervalUnion") -> "IntervalUnion":
        return IntervalUnion.of(self, other)

    def intersect(self, other: "IntervalUnion") -> "IntervalUnion":
        out = []
        for (a, b), (c, d) in itertools.product(self.pieces, other.pieces):
            lo, hi = max(a, c), min(b, d)
            if lo <= hi:
                out.append((lo, hi))
        return IntervalUnion.of(*out)

    def subset_of(self, other: "IntervalUnion") -> bool:
        return all(any(c <= a and b <= d for c, d in other.pieces) for a, b in self.pieces)

    def __str__(self):
        if not self.pieces:
            return "{}"
        return " u ".join(f"[{a:g}, {b:g}]" for a, b in self.pieces)


@dataclass(frozen=True)
class Lattice:
    name: str
    join: Callable
    meet: Callable
    leq: Callable
    is_bottom: Callable


INTERVALS = Lattice("intervals", lambda a, b: a.hull(b), lambda a, b: a.meet(b),
                    lambda a, b: b.contains(a), lambda a: a.is_empty)
UNIONS = Lattice("interval-unions", lambda a, b: a.union(b), lambda a, b: a.intersect(b),
                 lambda a, b: a.subset_of(b), lambda a: a.is_empty)


# --------------------------------------------------------------------------
# valuations


@dataclass(frozen=True)
class JoinValuation:
    lattice: Lattice
    F: Callable
    name: str

    def __call__(self, a) -> float:
        return self.F(a)


def _diam(a) -> float:
    if isinstance(a, IntervalUnion):
        if a.is_empty:
            raise DomainError("diam is undefined on the empty set")
        return a.pieces[-1][1] - a.pieces[0][0]
    if a.is_empty:
        raise DomainError("diam is undefined on the empty interval")
    return a.hi - a.lo


def _lebesgue(a) -> float:
    if isinstance(a, Interval):
        return 0.0 if a.is_empty else a.hi - a.lo
    return sum(hi - lo for lo, hi in a.pieces)


def diamValuation() -> JoinValuation:
    return JoinValuation(INTERVALS, _diam, "diam")


def lebesgueValuation() -> JoinValuation:
    """Lebesgue measure on finite unions of intervals, where the join is the union."""
    return JoinValuation(UNIONS, _lebesgue, "lebesgue")


def check_join_valuation(V: JoinValuation, samples: Sequence, tol: float = 1e-9) -> LawReport:
    """Monotonicity on comparable pairs and submodularity on pairs with a non-bottom meet."""
    L = V.lattice
    mono_bad = sub_bad = None
    n_mono = n_sub = 0
    for a, b in itertools.product(samples, repeat=2):
        if L.leq(a, b):
            n_mono += 1
            if V(a) > V(b) + tol and mono_bad is None:
                mono_bad = (a, b)
        m = L.meet(a, b)
        if L.is_bottom(m):
            continue
        n_sub += 1
        if V(L.join(a, b)) > V(a) + residual(V(b), V(m)) + tol and sub_bad is None:
            sub_bad = (a, b)
    return LawReport(V.name, [LawResult("monotone", mono_bad is None, n_mono, mono_bad),
                              LawResult("submodular", sub_bad is None, n_sub, sub_bad)])


def inducedPartialMetric(V: JoinValuation, a, b) -> float:
    """``p_F(a, b) = F(a ∨ b)``."""
    return V(V.lattice.join(a, b))


def quotientEquiv(V: JoinValuation, a, b, tol: float = 1e-12) -> bool:
    L = V.lattice
    comparable = L.leq(a, b) or L.leq(b, a)
    return comparable and abs(V(a) - V(b)) <= tol


@dataclass(frozen=True)
class DualJoinValuation:
    lattice: Lattice
    D: Callable
    name: str

    def __call__(self, a, b) -> float:
        return self.D(a, b)


def dualFromJoin(V: JoinValuation) -> DualJoinValuation:
    """``F'(a, b) = F(b) ⊸ F(a)``."""
    return DualJoinValuation(V.lattice, lambda a, b: residual(V(b), V(a)), f"{V.name}'")


def check_dual_valuation(D: DualJoinValuation, samples: Sequence, tol: float = 1e-9) -> LawReport:
    L = D.lattice
    zero_bad = next((a for a in samples if D(a, a) > tol), None)
    tri_bad = None
    n = 0
    for a, b, c in itertools.product(samples, repeat=3):
        m = L.meet(b, c)
        if L.is_bottom(m):
            continue
        n += 1
        if D(a, L.join(b, c)) > D(a, b) + D(m, c) + tol and tri_bad is None:
            tri_bad = (a, b, c)
    return LawReport(D.name, [LawResult("zero_on_diagonal", zero_bad is None, len(samples), zero_bad),
                              LawResult("dual_submodular", tri_bad is None, n, tri_bad)])


def dualMetric(D: DualJoinValuation, a, b) -> float:
    """``d_D(a, b) = D(a, a ∨ b) + D(b, b ∨ a)``."""
    j = D.lattice.join(a, b)
    return D(a, j) + D(b, j)


# --------------------------------------------------------------------------
# generic axiom checks on sampled points


def check_partial_metric(points: Sequence, p: Callable, *, eq: Callable | None = None,
                         tol: float = 1e-9, subject: str = "p") -> LawReport:
    """The partial-metric axioms over the Lawvere quantale on every pair and triple."""
    eq = eq or (lambda x, y: x == y)
    P = {(i, j): p(x, y) for (i, x), (j, y) in itertools.product(enumerate(points), repeat=2)}
    n = len(points)
    idx = range(n)
    small = next(((i, j) for i in idx for j in idx if P[i, i] > P[i, j] + tol), None)
    sym = next(((i, j) for i in idx for j in idx if abs(P[i, j] - P[j, i]) > tol), None)
    sep = next(((i, j) for i in idx for j in idx
                if abs(P[i, i] - P[i, j]) <= tol and abs(P[j, j] - P[i, j]) <= tol
                and not eq(points[i], points[j])), None)
    tri = next(((i, j, k) for i in idx for j in idx for k in idx
                if P[i, j] > P[i, k] + P[k, j] - P[k, k] + tol), None)
    return LawReport(subject, [
        LawResult("small_self_distance", small is None, n * n, small),
        LawResult("symmetric", sym is None, n * n, sym),
        LawResult("separated", sep is None, n * n, sep),
        LawResult("partial_triangle", tri is None, n ** 3, tri),
    ])


def check_metric(points: Sequence, d: Callable, *, tol: float = 1e-9, subject: str = "d") -> LawReport:
    n = len(points)
    M = [[d(x, y) for y in points] for x in points]
    idx = range(n)
    refl = next((i for i in idx if M[i][i] > tol), None)
    sym = next(((i, j) for i in idx for j in idx if abs(M[i][j] - M[j][i]) > tol), None)
    tri = next(((i, j, k) for i in idx for j in idx for k in idx
                if M[i][j] > M[i][k] + M[k][j] + tol), None)
    return LawReport(subject, [LawResult("reflexive", refl is None, n, refl),
                               LawResult("symmetric", sym is None, n * n, sym),
                               LawResult("triangle", tri is None, n ** 3, tri)])


# --------------------------------------------------------------------------
# lifting to real functions


def _window(x: float, I: Interval) -> Interval:
    return Interval.point(x).hull(I) if not I.is_empty else Interval.point(x)


def liftedP(f: Callable[[float], float], g: Callable[[float], float], x: float, I: Interval,
            grid: Grid = DEFAULT_GRID) -> float:
    """``p(f, g)(x, I)``: diameter of the joint image of ``f`` and ``g`` over ``{x} ∨ I``."""
    J = _window(x, I)
    if not J.is_bounded:
        return INF
    if J.lo == J.hi:
        ys = [J.lo]
    else:
        ys = [float(y) for y in grid.axis((J.lo + J.hi) / 2, (J.hi - J.lo) / 2)]
    vals = [f(y) for y in ys] + [g(y) for y in ys]
    return max(vals) - min(vals)


def liftedM(f, g, x: float, I: Interval, grid: Grid = DEFAULT_GRID) -> float:
    """``m(f, g) = 2 p(f, g) - p(f, f) - p(g, g)``."""
    pfg = liftedP(f, g, x, I, grid)
    if pfg == INF:
        return INF
    return max(0.0, 2 * pfg - liftedP(f, f, x, I, grid) - liftedP(g, g, x, I, grid))


def interval_samples(endpoints: Iterable[float]) -> list[Interval]:
    """All closed intervals with endpoints drawn from ``endpoints``."""
    pts = sorted(set(endpoints))
    return [Interval(a, b) for a, b in itertools.combinations_with_replacement(pts, 2)]

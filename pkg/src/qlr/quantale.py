"""Commutative quantales in the quantitative ("reversed") presentation.

Order is written so that ``0`` is "no difference": in the Lawvere quantale
``leq`` is the usual order on ``[0, inf]`` and ``join`` is ``max``.  Every
descriptor is an immutable object whose methods are pure functions of their
arguments.

Element representations:

* ``Lawvere``, ``SupLocale``: floats in ``[0, inf]``.
* ``TruncChain``, ``DiscreteTwo``, finite ``SupLocale``: ints ``0..n`` and ``math.inf``.
* ``Product`` / ``Pointwise``: tuples of component elements.
* ``IntervalLattice``: :class:`Interval`.
* ``PowersetMonoid``: frozensets of residues mod ``n``.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Any, Iterable, Sequence

import numpy as np

from .errors import StructuralError, UnsupportedOperation
from .reports import LawReport, LawResult

INF = math.inf


# --------------------------------------------------------------------------
# intervals


@dataclass(frozen=True)
class Interval:
    """A closed real interval; ``Interval.empty()`` and ``Interval.full()`` included.

    The empty interval is stored as ``[inf, -inf]`` so that hull and
    intersection are plain ``min``/``max`` on the endpoints.
    """

    lo: float
    hi: float

    def __post_init__(self):
        if math.isnan(self.lo) or math.isnan(self.hi):
            raise StructuralError("interval endpoints must not be NaN")
        if self.lo > self.hi and not (self.lo == INF and self.hi == -INF):
            raise StructuralError(f"interval with lo > hi: [{self.lo}, {self.hi}]")

    @classmethod
    def empty(cls) -> "Interval":
        return cls(INF, -INF)

    @classmethod
    def full(cls) -> "Interval":
        return cls(-INF, INF)

    @classmethod
    def point(cls, x: float) -> "Interval":
        return cls(x, x)

    @classmethod
    def hull_of(cls, values: Iterable[float]) -> "Interval":
        vals = list(values)
        if not vals:
            return cls.empty()
        return cls(min(vals), max(vals))

    @property
    def is_empty(self) -> bool:
        return self.lo > self.hi

    @property
    def is_full(self) -> bool:
        return self.lo == -INF and self.hi == INF

    @property
    def is_bounded(self) -> bool:
        return not self.is_empty and math.isfinite(self.lo) and math.isfinite(self.hi)

    def hull(self, other: "Interval") -> "Interval":
        return Interval(min(self.lo, other.lo), max(self.hi, other.hi))

    def meet(self, other: "Interval") -> "Interval":
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if lo > hi:
            return Interval.empty()
        return Interval(lo, hi)

    def contains(self, other: "Interval") -> bool:
        """Whether ``other`` is a subset of ``self``."""
        if other.is_empty:
            return True
        return self.lo <= other.lo and other.hi <= self.hi

    def contains_point(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    @property
    def width(self) -> float:
        if self.is_empty:
            raise StructuralError("the empty interval has no width")
        return self.hi - self.lo

    def __str__(self):
        if self.is_empty:
            return "{}"
        if self.is_full:
            return "R"
        return f"[{self.lo:g}, {self.hi:g}]"


# --------------------------------------------------------------------------
# finite chain tables (vectorised backend for the finite engine)


@dataclass(frozen=True, eq=False)
class ChainTable:
    """Index tables of a finite chain quantale; index order is the chain order.

    On a chain, join is ``max`` and meet is ``min`` of indices, bottom is 0.
    """

    name: str
    elements: tuple
    plus: np.ndarray
    residual: np.ndarray
    heyting: np.ndarray

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def zero(self) -> int:
        return 0


# --------------------------------------------------------------------------
# quantale descriptors


class Quantale:
    """Base class of quantale descriptors.

    Subclasses implement ``contains``, ``leq``, ``plus``, ``join2``, ``meet2``
    and ``residual``; ``heyting`` is optional.
    """

    name = "quantale"
    is_locale = False
    is_heyting = False
    is_integral = True
    declares_star_star = False
    finite = False

    def __init__(self, tol: float = 1e-9):
        self.tol = tol

    # structure -----------------------------------------------------------
    @property
    def zero(self):
        raise NotImplementedError

    @property
    def bottom(self):
        return self.zero

    @property
    def top(self):
        raise NotImplementedError

    def contains(self, a) -> bool:
        raise NotImplementedError

    def check(self, a):
        if not self.contains(a):
            raise StructuralError(f"{a!r} is not an element of {self.name}")
        return a

    def leq(self, a, b) -> bool:
        raise NotImplementedError

    def eq(self, a, b) -> bool:
        return self.leq(a, b) and self.leq(b, a)

    def plus(self, a, b):
        raise NotImplementedError

    def join2(self, a, b):
        raise NotImplementedError

    def meet2(self, a, b):
        raise NotImplementedError

    def join(self, items: Iterable = ()):
        return reduce(self.join2, items, self.bottom)

    def meet(self, items: Iterable = ()):
        return reduce(self.meet2, items, self.top)

    def residual(self, a, b):
        """``a ⊸ b``: the least ``d`` with ``b + d >= a``."""
        raise UnsupportedOperation(f"{self.name} has no residual")

    def heyting(self, a, b):
        """``a ⇐ b``: the least ``d`` with ``b ∨ d >= a``."""
        raise UnsupportedOperation(f"{self.name} is not a Heyting quantale")

    def way_above_zero(self, a) -> bool:
        raise UnsupportedOperation(f"way-below relation not implemented for {self.name}")

    # enumeration ---------------------------------------------------------
    def elements(self) -> list:
        raise UnsupportedOperation(f"{self.name} is not finite")

    def sample(self, rng: np.random.Generator, n: int) -> list:
        els = self.elements()
        return [els[i] for i in rng.integers(0, len(els), size=n)]

    def chain_factors(self) -> list[ChainTable]:
        """Coordinates of a finite product of chains, for the vectorised engine."""
        raise UnsupportedOperation(f"{self.name} is not a finite product of chains")

    def encode(self, a) -> tuple[int, ...]:
        raise UnsupportedOperation(f"{self.name} is not a finite product of chains")

    def decode(self, idx: Sequence[int]):
        raise UnsupportedOperation(f"{self.name} is not a finite product of chains")

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return type(self) is type(other) and self.name == other.name

    def __hash__(self):
        return hash(self.name)


def _is_ext_real(a) -> bool:
    return isinstance(a, (int, float)) and not isinstance(a, bool) and not math.isnan(a) and a >= 0


class Lawvere(Quantale):
    """``([0, inf], 0, +, <=)``."""

    name = "lawvere"
    is_heyting = True
    declares_star_star = True

    @property
    def zero(self):
        return 0.0

    @property
    def top(self):
        return INF

    def contains(self, a):
        return _is_ext_real(a)

    def leq(self, a, b):
        return a <= b or b == INF or (a != INF and a - b <= self.tol)

    def plus(self, a, b):
        return a + b

    def join2(self, a, b):
        return max(a, b)

    def meet2(self, a, b):
        return min(a, b)

    def residual(self, a, b):
        if a <= b:
            return 0.0
        if a == INF:
            return INF
        return a - b

    def heyting(self, a, b):
        return 0.0 if a <= b else a

    def way_above_zero(self, a):
        return a > 0

    def sample(self, rng, n):
        out = []
        for _ in range(n):
            r = rng.random()
            if r < 0.08:
                out.append(0.0)
            elif r < 0.14:
                out.append(INF)
            elif r < 0.3:
                out.append(float(rng.integers(0, 6)))
            else:
                out.append(float(rng.uniform(0.0, 10.0)))
        return out


class _Chain(Quantale):
    """A finite chain ``0 < 1 < ... < n < inf`` with some monotone plus."""

    finite = True
    is_heyting = True
    declares_star_star = True

    def __init__(self, n: int, tol: float = 1e-9):
        super().__init__(tol)
        if n < 0:
            raise StructuralError("chain length must be non-negative")
        self.n = n

    @cached_property
    def _elements(self):
        return tuple(range(self.n + 1)) + (INF,)

    @cached_property
    def _index(self):
        return {e: i for i, e in enumerate(self._elements)}

    @property
    def zero(self):
        return 0

    @property
    def top(self):
        return INF

    def contains(self, a):
        return (a == INF) or (isinstance(a, (int, float)) and not isinstance(a, bool)
                              and float(a).is_integer() and 0 <= a <= self.n)

    def leq(self, a, b):
        return a <= b

    def join2(self, a, b):
        return max(a, b)

    def meet2(self, a, b):
        return min(a, b)

    def heyting(self, a, b):
        return 0 if a <= b else a

    def way_above_zero(self, a):
        return a > 0

    def elements(self):
        return list(self._elements)

    def encode(self, a):
        return (self._index[a],)

    def decode(self, idx):
        return self._elements[idx[0]]

    @cached_property
    def _table(self):
        els = self._elements
        m = len(els)
        plus = np.empty((m, m), dtype=np.int64)
        res = np.empty((m, m), dtype=np.int64)
        hey = np.empty((m, m), dtype=np.int64)
        for i, a in enumerate(els):
            for j, b in enumerate(els):
                plus[i, j] = self._index[self.plus(a, b)]
                res[i, j] = self._index[self.residual(a, b)]
                hey[i, j] = self._index[self.heyting(a, b)]
        for arr in (plus, res, hey):
            arr.setflags(write=False)
        return ChainTable(self.name, els, plus, res, hey)

    def chain_factors(self):
        return [self._table]


class TruncChain(_Chain):
    """``{0, 1, ..., n, inf}`` with addition saturating to ``inf`` past ``n``."""

    def __init__(self, n: int, tol: float = 1e-9):
        super().__init__(n, tol)
        self.name = f"trunc:{n}"

    def plus(self, a, b):
        s = a + b
        return INF if s > self.n else s

    def residual(self, a, b):
        if a <= b:
            return 0
        if a != INF:
            return a - b
        d = self.n + 1 - b
        return d if d <= self.n else INF


class SupLocale(Quantale):
    """``([0, inf], 0, max, <=)``, or its finite sub-chain ``{0..n, inf}``."""

    is_locale = True
    is_heyting = True
    declares_star_star = True

    def __new__(cls, levels: int | None = None, tol: float = 1e-9):
        if levels is not None and cls is SupLocale:
            return super().__new__(_FiniteSupLocale)
        return super().__new__(cls)

    def __init__(self, levels: int | None = None, tol: float = 1e-9):
        Quantale.__init__(self, tol)
        self.name = "locale"

    @property
    def zero(self):
        return 0.0

    @property
    def top(self):
        return INF

    def contains(self, a):
        return _is_ext_real(a)

    def leq(self, a, b):
        return a <= b or b == INF or (a != INF and a - b <= self.tol)

    def plus(self, a, b):
        return max(a, b)

    def join2(self, a, b):
        return max(a, b)

    def meet2(self, a, b):
        return min(a, b)

    def residual(self, a, b):
        return 0.0 if a <= b else a

    def heyting(self, a, b):
        return 0.0 if a <= b else a

    def way_above_zero(self, a):
        return a > 0

    def sample(self, rng, n):
        return Lawvere.sample(self, rng, n)


class _FiniteSupLocale(_Chain, SupLocale):
    def __init__(self, levels: int, tol: float = 1e-9):
        _Chain.__init__(self, levels, tol)
        self.name = f"locale:{levels}"

    plus = _Chain.join2

    def residual(self, a, b):
        return 0 if a <= b else a

    contains = _Chain.contains
    leq = _Chain.leq
    zero = _Chain.zero
    top = _Chain.top
    heyting = _Chain.heyting
    sample = Quantale.sample


class DiscreteTwo(_Chain):
    """``{0, inf}``; plus, join and residual all coincide with the two-point lattice."""

    is_locale = True

    def __init__(self, tol: float = 1e-9):
        Quantale.__init__(self, tol)
        self.n = -1
        self.name = "two"

    @cached_property
    def _elements(self):
        return (0, INF)

    def contains(self, a):
        return a == 0 or a == INF

    def plus(self, a, b):
        return max(a, b)

    def residual(self, a, b):
        return 0 if a <= b else a


class Product(Quantale):
    """Finite product of quantales, ordered and operated componentwise."""

    def __init__(self, factors: Sequence[Quantale], tol: float = 1e-9):
        super().__init__(tol)
        self.factors = tuple(factors)
        self.name = "product(" + ",".join(f.name for f in self.factors) + ")"
        self.is_locale = all(f.is_locale for f in self.factors)
        self.is_heyting = all(f.is_heyting for f in self.factors)
        self.is_integral = all(f.is_integral for f in self.factors)
        self.declares_star_star = all(f.declares_star_star for f in self.factors)
        self.finite = all(f.finite for f in self.factors)

    @property
    def zero(self):
        return tuple(f.zero for f in self.factors)

    @property
    def bottom(self):
        return tuple(f.bottom for f in self.factors)

    @property
    def top(self):
        return tuple(f.top for f in self.factors)

    def contains(self, a):
        return (isinstance(a, tuple) and len(a) == len(self.factors)
                and all(f.contains(x) for f, x in zip(self.factors, a)))

    def check(self, a):
        if not isinstance(a, tuple) or len(a) != len(self.factors):
            raise StructuralError(f"{a!r} does not match the arity of {self.name}")
        return super().check(a)

    def leq(self, a, b):
        return all(f.leq(x, y) for f, x, y in zip(self.factors, a, b))

    def plus(self, a, b):
        return tuple(f.plus(x, y) for f, x, y in zip(self.factors, a, b))

    def join2(self, a, b):
        return tuple(f.join2(x, y) for f, x, y in zip(self.factors, a, b))

    def meet2(self, a, b):
        return tuple(f.meet2(x, y) for f, x, y in zip(self.factors, a, b))

    def residual(self, a, b):
        return tuple(f.residual(x, y) for f, x, y in zip(self.factors, a, b))

    def heyting(self, a, b):
        if not self.is_heyting:
            raise UnsupportedOperation(f"{self.name} is not a Heyting quantale")
        return tuple(f.heyting(x, y) for f, x, y in zip(self.factors, a, b))

    def way_above_zero(self, a):
        return all(f.way_above_zero(x) for f, x in zip(self.factors, a))

    def elements(self):
        return list(itertools.product(*(f.elements() for f in self.factors)))

    def sample(self, rng, n):
        cols = [f.sample(rng, n) for f in self.factors]
        return list(zip(*cols))

    def chain_factors(self):
        return [t for f in self.factors for t in f.chain_factors()]

    def encode(self, a):
        return tuple(i for f, x in zip(self.factors, a) for i in f.encode(x))

    def decode(self, idx):
        out, k = [], 0
        for f in self.factors:
            w = len(f.chain_factors())
            out.append(f.decode(idx[k:k + w]))
            k += w
        return tuple(out)


class Pointwise(Product):
    """The function quantale ``base^keys`` on a finite probe set, as a keyed product."""

    def __init__(self, keys: Sequence, base: Quantale, tol: float = 1e-9):
        super().__init__([base] * len(keys), tol)
        self.keys = tuple(keys)
        self.base = base
        self.name = f"pointwise[{len(self.keys)}]({base.name})"

    def as_dict(self, a) -> dict:
        return dict(zip(self.keys, a))

    def from_dict(self, d: dict) -> tuple:
        return tuple(d[k] for k in self.keys)

    def __eq__(self, other):
        return isinstance(other, Pointwise) and self.keys == other.keys and self.base == other.base

    def __hash__(self):
        return hash((self.keys, self.base))


class IntervalLattice(Quantale):
    """Closed intervals of the real line ordered by inclusion, with ``+ = hull``.

    This is a complete lattice whose join is idempotent, but hull does not
    distribute over intersections, so it is *not* a locale and residuals are
    not defined.
    """

    name = "interval"

    @property
    def zero(self):
        return Interval.empty()

    @property
    def top(self):
        return Interval.full()

    def contains(self, a):
        return isinstance(a, Interval)

    def leq(self, a, b):
        return b.contains(a)

    def eq(self, a, b):
        return a == b

    def plus(self, a, b):
        return a.hull(b)

    def join2(self, a, b):
        return a.hull(b)

    def meet2(self, a, b):
        return a.meet(b)

    def way_above_zero(self, a):
        return not a.is_empty

    def sample(self, rng, n):
        out = []
        for _ in range(n):
            r = rng.random()
            if r < 0.05:
                out.append(Interval.empty())
            elif r < 0.08:
                out.append(Interval.full())
            else:
                lo = float(rng.integers(-4, 5))
                out.append(Interval(lo, lo + float(rng.integers(0, 4))))
        return out


class PowersetMonoid(Quantale):
    """Subsets of the cyclic group ``Z_n`` under Minkowski sum.

    ``leq`` is reverse inclusion: a larger set relates more, so it is a
    *smaller* difference.  The unit ``{0}`` is not the bottom (the whole
    group), so the quantale is not integral.
    """

    finite = True
    is_heyting = True
    is_integral = False

    def __init__(self, n: int, tol: float = 1e-9):
        super().__init__(tol)
        self.n = n
        self.name = f"powerset:{n}"
        self._all = frozenset(range(n))

    @property
    def zero(self):
        return frozenset({0})

    @property
    def bottom(self):
        return self._all

    @property
    def top(self):
        return frozenset()

    def contains(self, a):
        return isinstance(a, frozenset) and a <= self._all

    def leq(self, a, b):
        return a >= b

    def eq(self, a, b):
        return a == b

    def plus(self, a, b):
        return frozenset((x + y) % self.n for x in a for y in b)

    def join2(self, a, b):
        return a & b

    def meet2(self, a, b):
        return a | b

    def residual(self, a, b):
        return frozenset(m for m in range(self.n) if all((x + m) % self.n in a for x in b))

    def heyting(self, a, b):
        return a | (self._all - b)

    def elements(self):
        return [frozenset(c) for r in range(self.n + 1)
                for c in itertools.combinations(range(self.n), r)]


# --------------------------------------------------------------------------
# diagonals


def diagonal_member(q: Quantale, delta, alpha, beta) -> bool:
    """Whether ``delta`` is a diagonal from ``alpha`` to ``beta``.

    On quantales: ``alpha + (delta ⊸ alpha) = delta = (delta ⊸ beta) + beta``.
    On the interval lattice (no residual): ``alpha ∨ beta <= delta``.
    """
    if isinstance(q, IntervalLattice):
        return q.leq(q.join2(alpha, beta), delta)
    left = q.plus(alpha, q.residual(delta, alpha))
    right = q.plus(q.residual(delta, beta), beta)
    return q.eq(left, delta) and q.eq(right, delta)


def diagonal_compose(q: Quantale, eta, beta, gamma):
    """Composite ``eta +_beta gamma = eta + (gamma ⊸ beta)`` of two diagonals.

    Over Lawvere this is ``eta + gamma - beta``; on the interval lattice it is the join.
    """
    if isinstance(q, IntervalLattice):
        return q.join2(eta, gamma)
    return q.plus(eta, q.residual(gamma, beta))


# --------------------------------------------------------------------------
# textual config

_SIMPLE = {
    "lawvere": lambda: Lawvere(),
    "locale": lambda: SupLocale(),
    "two": lambda: DiscreteTwo(),
    "interval": lambda: IntervalLattice(),
}


def _split_args(s: str) -> list[str]:
    parts, depth, cur = [], 0, ""
    for ch in s:
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur += ch
    parts.append(cur)
    return [p.strip() for p in parts if p.strip()]


def quantale_from_config(text: str) -> Quantale:
    """Build a descriptor from a short textual spec.

    Grammar: ``lawvere | locale[:n] | two | interval | trunc:n | powerset:n
    | product(q, q, ...)``.
    """
    s = text.strip()
    if s in _SIMPLE:
        return _SIMPLE[s]()
    m = re.fullmatch(r"(trunc|locale|powerset):(\d+)", s)
    if m:
        kind, n = m.group(1), int(m.group(2))
        return {"trunc": TruncChain, "locale": SupLocale, "powerset": PowersetMonoid}[kind](n)
    m = re.fullmatch(r"product\((.*)\)", s)
    if m:
        return Product([quantale_from_config(p) for p in _split_args(m.group(1))])
    raise StructuralError(f"unknown quantale config {text!r}")


# --------------------------------------------------------------------------
# law checking


def _first(mask: np.ndarray):
    bad = np.argwhere(~mask)
    return None if len(bad) == 0 else tuple(int(i) for i in bad[0])


def _finite_laws(q: Quantale) -> LawReport:
    els = q.elements()
    n = len(els)
    index = {e: i for i, e in enumerate(els)}
    results: list[LawResult] = []

    def table(op):
        t = np.empty((n, n), dtype=np.int64)
        for i, a in enumerate(els):
            for j, b in enumerate(els):
                r = op(a, b)
                if r not in index:
                    raise StructuralError(f"{q.name}: {op.__name__}({a!r}, {b!r}) = {r!r} is not an element")
                t[i, j] = index[r]
        return t

    leq = np.array([[q.leq(a, b) for b in els] for a in els], dtype=bool)
    plus = table(q.plus)
    meet = table(q.meet2)
    join = table(q.join2)
    A = np.arange(n)[:, None, None]
    B = np.arange(n)[None, :, None]
    C = np.arange(n)[None, None, :]

    def add(law, mask):
        w = _first(mask)
        if w is not None:
            w = tuple(els[i] for i in w)
        results.append(LawResult(law, w is None, int(mask.size), w))

    add("associativity", plus[plus[A, B], C] == plus[A, plus[B, C]])
    add("commutativity", plus == plus.T)
    z = index[q.zero]
    add("unit", plus[z, :] == np.arange(n))
    add("monotonicity", ~leq[A, B] | leq[plus[A, C], plus[B, C]])
    top = index[q.top]
    add("distributivity", (plus[A, meet[B, C]] == meet[plus[A, B], plus[A, C]]))
    add("distributivity_empty", plus[:, top] == top)
    try:
        res = table(q.residual)
    except UnsupportedOperation:
        results.append(LawResult("adjunction", False, 0, "residual undefined"))
    else:
        add("adjunction", leq[res[A, B], C] == leq[A, plus[C, B]])
    if q.is_heyting:
        hey = table(q.heyting)
        add("heyting_adjunction", leq[hey[A, B], C] == leq[A, join[C, B]])
        if q.declares_star_star:
            a2, b2 = np.arange(n)[:, None], np.arange(n)[None, :]
            add("star_star", ~leq | leq[b2, join[hey[b2, a2], a2]])
    if q.is_locale:
        add("locale", plus == join)
    if q.is_integral:
        add("integral", np.array([index[q.zero] == index[q.bottom]]))
    return LawReport(q.name, results)


def _sampled_laws(q: Quantale, triples) -> LawReport:
    laws = ["associativity", "commutativity", "unit", "monotonicity", "distributivity",
            "distributivity_empty", "adjunction"]
    if q.is_heyting:
        laws.append("heyting_adjunction")
        if q.declares_star_star:
            laws.append("star_star")
    if q.is_locale:
        laws.append("locale")
    witnesses: dict[str, Any] = {law: None for law in laws}
    eq, leq, plus = q.eq, q.leq, q.plus
    for a, b, c in triples:
        checks = {
            "associativity": lambda: eq(plus(plus(a, b), c), plus(a, plus(b, c))),
            "commutativity": lambda: eq(plus(a, b), plus(b, a)),
            "unit": lambda: eq(plus(q.zero, a), a),
            "monotonicity": lambda: not leq(a, b) or leq(plus(a, c), plus(b, c)),
            "distributivity": lambda: eq(plus(a, q.meet2(b, c)), q.meet2(plus(a, b), plus(a, c))),
            "distributivity_empty": lambda: eq(plus(a, q.top), q.top),
            "adjunction": lambda: leq(q.residual(a, b), c) == leq(a, plus(c, b)),
            "heyting_adjunction": lambda: leq(q.heyting(a, b), c) == leq(a, q.join2(c, b)),
            "star_star": lambda: not leq(a, b) or leq(b, q.join2(q.heyting(b, a), a)),
            "locale": lambda: eq(plus(a, b), q.join2(a, b)),
        }
        for law in laws:
            if witnesses[law] is not None:
                continue
            try:
                holds = checks[law]()
            except UnsupportedOperation:
                witnesses[law] = "undefined"
                continue
            if not holds:
                witnesses[law] = (a, b, c)
    results = [LawResult(law, witnesses[law] is None, len(triples), witnesses[law]) for law in laws]
    if q.is_integral:
        results.append(LawResult("integral", q.eq(q.zero, q.bottom), 1, None))
    return LawReport(q.name, results)


def check_quantale_laws(q: Quantale, samples: Sequence | None = None, *,
                        triples: int = 1000, seed: int = 0) -> LawReport:
    """Check the quantale axioms on ``q``.

    Finite descriptors are checked exhaustively over all triples unless
    ``samples`` is given.  Otherwise ``triples`` random triples are drawn,
    from ``samples`` if provided or from ``q.sample``.

    ``star_star`` is checked in the form needed for ``ev ∘ λ = id`` in the
    reflexive category: ``a <= b`` implies ``b <= (b ⇐ a) ∨ a``.
    """
    if q.finite and samples is None:
        return _finite_laws(q)
    rng = np.random.default_rng(seed)
    if samples is None:
        pool = q.sample(rng, 3 * triples)
        trip = [tuple(pool[3 * i:3 * i + 3]) for i in range(triples)]
    else:
        samples = list(samples)
        idx = rng.integers(0, len(samples), size=(triples, 3))
        trip = [(samples[i], samples[j], samples[k]) for i, j, k in idx]
    return _sampled_laws(q, trip)

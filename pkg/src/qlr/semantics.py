"""The quantitative model of the λ-calculus over the reals, in its plain and reflexive variants.

Values (``⟦σ⟧``) are floats, tuples and :class:`Fn` closures.  Differences
(``∇σ``) are non-negative floats, tuples and :class:`DFn` closures taking a
value and a difference.  Distances between functions are suprema over
balls; here they are computed on finite grids, so they are *lower* bounds of
the true suprema, while primitive moduli are *upper* bounds of the true
derivatives.  Every soundness check is phrased as sampled <= bound.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import numpy as np

from .errors import UnsupportedOperation, TypingError
from .syntax import (HOLE_VAR, abstract_constants, App, Arrow, Const, Hole, Lam, Pair, Prim, Prod, Proj, RealT,
                     Term, Type, Var, hole_to_var, free_vars, plug, typecheck)

INF = math.inf


# --------------------------------------------------------------------------
# values and differences


class Fn:
    """A function value."""

    __slots__ = ("f", "label")

    def __init__(self, f: Callable, label: str = "fn"):
        self.f = f
        self.label = label

    def __call__(self, v):
        return self.f(v)

    def __repr__(self):
        return f"<{self.label}>"


class DFn:
    """A difference at arrow type: a map ``(value, difference) -> difference``."""

    __slots__ = ("f", "label")

    def __init__(self, f: Callable, label: str = "dfn"):
        self.f = f
        self.label = label

    def __call__(self, v, beta):
        return self.f(v, beta)

    def __repr__(self):
        return f"<{self.label}>"


def zero_like(ty: Type):
    """The zero difference of ``∇ty``."""
    if isinstance(ty, RealT):
        return 0.0
    if isinstance(ty, Prod):
        return (zero_like(ty.left), zero_like(ty.right))
    cod = ty.cod
    return DFn(lambda v, b: zero_like(cod), "0")


def djoin(a, b):
    if isinstance(a, tuple):
        return tuple(djoin(x, y) for x, y in zip(a, b))
    if isinstance(a, DFn):
        return DFn(lambda v, be: djoin(a(v, be), b(v, be)), "join")
    return max(a, b)


def djoin_all(items: Sequence, ty: Type):
    items = list(items)
    if not items:
        return zero_like(ty)
    if isinstance(items[0], (int, float)):
        return max(items)
    if isinstance(items[0], tuple):
        return tuple(djoin_all([it[i] for it in items], ty.left if i == 0 else ty.right)
                     for i in range(2))
    return DFn(lambda v, be: djoin_all([it(v, be) for it in items], ty.cod), "sup")


def dheyting(a, b):
    """``a ⇐ b`` in ``∇σ``, pointwise: ``0`` where ``a <= b``, else ``a``."""
    if isinstance(a, tuple):
        return tuple(dheyting(x, y) for x, y in zip(a, b))
    if isinstance(a, DFn):
        return DFn(lambda v, be: dheyting(a(v, be), b(v, be)), "heyting")
    return 0.0 if a <= b else a


# --------------------------------------------------------------------------
# denotation


def _curry_prim(spec, args=()):
    if len(args) == spec.arity:
        return spec(*args)
    return Fn(lambda v: _curry_prim(spec, args + (v,)), spec.label)


def denote(t: Term, env: Mapping[str, object] | None = None):
    """``⟦t⟧`` at the environment ``env``."""
    env = env or {}
    if isinstance(t, Const):
        return float(t.value)
    if isinstance(t, Var):
        return env[t.name]
    if isinstance(t, Hole):
        return env[HOLE_VAR]
    if isinstance(t, Prim):
        return _curry_prim(t.spec)
    if isinstance(t, Pair):
        return (denote(t.left, env), denote(t.right, env))
    if isinstance(t, Proj):
        return denote(t.body, env)[t.index - 1]
    if isinstance(t, Lam):
        name, body = t.name, t.body
        return Fn(lambda v: denote(body, {**env, name: v}), "λ")
    if isinstance(t, App):
        return denote(t.fn, env)(denote(t.arg, env))
    raise TypeError(f"not a term: {t!r}")


# --------------------------------------------------------------------------
# derivatives


def _curry_modulus(spec, args=(), betas=()):
    if len(args) == spec.arity:
        return float(spec.modulus(args, betas))
    return DFn(lambda v, b: _curry_modulus(spec, args + (v,), betas + (b,)), f"D({spec.label})")


def derivQ(t: Term, env: Mapping | None = None, denv: Mapping | None = None):
    """``∥t∥(x̄, ᾱ)`` in the plain model."""
    env, denv = env or {}, denv or {}
    if isinstance(t, Const):
        return 0.0
    if isinstance(t, Var):
        return denv[t.name]
    if isinstance(t, Hole):
        return denv[HOLE_VAR]
    if isinstance(t, Prim):
        return _curry_modulus(t.spec)
    if isinstance(t, Pair):
        return (derivQ(t.left, env, denv), derivQ(t.right, env, denv))
    if isinstance(t, Proj):
        return derivQ(t.body, env, denv)[t.index - 1]
    if isinstance(t, Lam):
        name, body = t.name, t.body
        return DFn(lambda v, b: derivQ(body, {**env, name: v}, {**denv, name: b}), "∥λ∥")
    if isinstance(t, App):
        return derivQ(t.fn, env, denv)(denote(t.arg, env), derivQ(t.arg, env, denv))
    raise TypeError(f"not a term: {t!r}")


def _zero_env(denv: Mapping, types: Mapping[str, Type] | None):
    out = {}
    for k, v in denv.items():
        out[k] = _zero_of_value(v)
    return out


def _zero_of_value(d):
    if isinstance(d, tuple):
        return tuple(_zero_of_value(x) for x in d)
    if isinstance(d, DFn):
        return DFn(lambda v, b: _zero_of_value(d(v, b)), "0")
    return 0.0


def derivQr(t: Term, env: Mapping | None = None, denv: Mapping | None = None):
    """``∥t∥`` in the reflexive model.

    Abstraction: ``λ(∥t∥) ⇐ D̂`` with ``D̂(v, β) = ∥t∥_Q(x̄*v, 0̄*β)``, an upper
    bound for the derivative of the section ``y ↦ ⟦t⟧(x̄*y)``.
    Application: ``∥t∥(⟦u⟧, ∥u∥) ∨ D̂_t(⟦u⟧, ∥u∥)`` with ``D̂_t = ∥t∥_Q(x̄, 0̄)``.
    Closed primitives get the zero difference, which is what the reflexive
    currying of their modulus gives.
    """
    env, denv = env or {}, denv or {}
    if isinstance(t, Const):
        return 0.0
    if isinstance(t, Var):
        return denv[t.name]
    if isinstance(t, Hole):
        return denv[HOLE_VAR]
    if isinstance(t, Prim):
        spec = t.spec
        return _zero_of_value(_curry_modulus(spec))
    if isinstance(t, Pair):
        return (derivQr(t.left, env, denv), derivQr(t.right, env, denv))
    if isinstance(t, Proj):
        return derivQr(t.body, env, denv)[t.index - 1]
    if isinstance(t, Lam):
        name, body = t.name, t.body
        zero = _zero_env(denv, None)

        def clause(v, b):
            inner = derivQr(body, {**env, name: v}, {**denv, name: b})
            dhat = derivQ(body, {**env, name: v}, {**zero, name: b})
            return dheyting(inner, dhat)
        return DFn(clause, "∥λ∥r")
    if isinstance(t, App):
        u_val = denote(t.arg, env)
        u_diff = derivQr(t.arg, env, denv)
        main = derivQr(t.fn, env, denv)(u_val, u_diff)
        dhat = derivQ(t.fn, env, _zero_env(denv, None))(u_val, u_diff)
        return djoin(main, dhat)
    raise TypeError(f"not a term: {t!r}")


# --------------------------------------------------------------------------
# sampled distances


@dataclass(frozen=True)
class Grid:
    """Sampling of balls: ``resolution`` points per axis of a bounded interval."""

    resolution: int = 1001

    def __post_init__(self):
        if self.resolution < 3:
            raise ValueError("grid resolution must be at least 3")

    def axis(self, x: float, r: float, n: int | None = None) -> np.ndarray:
        if r == 0:
            return np.array([x])
        if not math.isfinite(r):
            raise UnsupportedOperation("cannot sample a ball of infinite radius")
        n = n or self.resolution
        pts = np.linspace(x - r, x + r, n)
        return np.unique(np.append(pts, x))

    def ball(self, ty: Type, x, alpha) -> list:
        """Grid points ``y`` with ``a_ty(x, y) <= alpha`` for ground ``ty``."""
        dims = _ground_dims(ty)
        if dims is None:
            raise UnsupportedOperation(f"cannot sample values of type {ty}")
        per = max(3, int(round(self.resolution ** (1.0 / dims))))
        return list(self._ball(ty, x, alpha, per if dims > 1 else self.resolution))

    def _ball(self, ty, x, alpha, n):
        if isinstance(ty, RealT):
            return [float(y) for y in self.axis(float(x), float(alpha), n)]
        left = self._ball(ty.left, x[0], alpha[0], n)
        right = self._ball(ty.right, x[1], alpha[1], n)
        return [(a, b) for a in left for b in right]


def _ground_dims(ty: Type) -> int | None:
    if isinstance(ty, RealT):
        return 1
    if isinstance(ty, Prod):
        a, b = _ground_dims(ty.left), _ground_dims(ty.right)
        return None if a is None or b is None else a + b
    return None


DEFAULT_GRID = Grid()


def distance(ty: Type, f, g, *, reflexive: bool = False, grid: Grid = DEFAULT_GRID):
    """``a_ty(f, g)``: the plain lifting ``d`` or, with ``reflexive``, the lifting ``e``.

    At arrow type the result is a :class:`DFn` computing sampled suprema:
    ``d(f, g)(x, α) = sup { b(f x, g y), b(f x, f y) | a(x, y) <= α }`` and
    ``e(f, g) = d(f, g) ⇐ d(f, f)``.
    """
    if isinstance(ty, RealT):
        return abs(f - g)
    if isinstance(ty, Prod):
        return (distance(ty.left, f[0], g[0], reflexive=reflexive, grid=grid),
                distance(ty.right, f[1], g[1], reflexive=reflexive, grid=grid))
    if _ground_dims(ty.dom) is None:
        raise UnsupportedOperation(f"distance at {ty} needs a ground argument type")
    cod = ty.cod

    def b(u, v):
        return distance(cod, u, v, reflexive=reflexive, grid=grid)

    def plain(x, alpha):
        fx = f(x)
        terms = []
        for y in grid.ball(ty.dom, x, alpha):
            fy = f(y)
            terms.append(b(fx, g(y)) if g is f else djoin(b(fx, g(y)), b(fx, fy)))
        return djoin_all(terms, cod)

    if not reflexive:
        return DFn(plain, "d")

    def self_(x, alpha):
        fx = f(x)
        return djoin_all([b(fx, f(y)) for y in grid.ball(ty.dom, x, alpha)], cod)

    return DFn(lambda x, a: dheyting(plain(x, a), self_(x, a)), "e")


def distD(f, g, ty: Type, x, alpha, grid: Grid = DEFAULT_GRID):
    """The plain distance at a probe; a float when ``ty``'s codomain is ground."""
    d = distance(ty, f, g, grid=grid)
    return d(x, alpha) if isinstance(d, DFn) else d


def distE(f, g, ty: Type, x, alpha, grid: Grid = DEFAULT_GRID):
    """``e(f, g)(x, α) = d(f, g)(x, α)`` if it exceeds ``D(f)(x, α)``, else ``0``."""
    d = distD(f, g, ty, x, alpha, grid)
    D = distD(f, f, ty, x, alpha, grid)
    return dheyting(d, D)


def sampled_derivative(f: Callable[[float], float], x: float, alpha: float,
                       grid: Grid = DEFAULT_GRID) -> float:
    """``D(f)(x, α) = sup { |f(x) - f(y)| : |x - y| <= α }`` on the grid."""
    fx = f(x)
    return max(abs(fx - f(float(y))) for y in grid.axis(x, alpha))


# --------------------------------------------------------------------------
# probing Diff/Value objects


class Probe:
    """A deterministic source of arguments, one per arrow layer."""

    def __init__(self, seed: int, radius_scale: float = 1.0):
        self.seed = seed
        self.radius_scale = radius_scale

    def _rng(self, depth: int, salt: int):
        return np.random.default_rng([self.seed, depth, salt])

    def value(self, ty: Type, depth: int):
        return random_value(ty, self._rng(depth, 1))

    def diff(self, ty: Type, depth: int):
        return random_diff(ty, self._rng(depth, 2), self.radius_scale)


def _feature(ty: Type, v) -> float:
    if isinstance(ty, RealT):
        return float(v)
    if isinstance(ty, Prod):
        return _feature(ty.left, v[0]) + 0.5 * _feature(ty.right, v[1])
    return _feature(ty.cod, v(_canonical(ty.dom)))


def _canonical(ty: Type):
    if isinstance(ty, RealT):
        return 0.5
    if isinstance(ty, Prod):
        return (_canonical(ty.left), _canonical(ty.right))
    cod = ty.cod
    return Fn(lambda v: _canonical(cod), "k")


def _lift(ty: Type, s: float):
    """A value of ``ty`` built from a scalar."""
    if isinstance(ty, RealT):
        return s
    if isinstance(ty, Prod):
        return (_lift(ty.left, s), _lift(ty.right, 0.5 * s - 1.0))
    dom, cod = ty.dom, ty.cod
    return Fn(lambda v: _lift(cod, math.sin(s + _feature(dom, v))), "probe")


def random_value(ty: Type, rng: np.random.Generator):
    if isinstance(ty, RealT):
        return float(rng.uniform(-3, 3))
    if isinstance(ty, Prod):
        return (random_value(ty.left, rng), random_value(ty.right, rng))
    a, b = float(rng.uniform(-2, 2)), float(rng.uniform(-2, 2))
    dom, cod = ty.dom, ty.cod
    return Fn(lambda v: _lift(cod, a * math.sin(_feature(dom, v)) + b), "probe")


def _dlift(ty: Type, s: float):
    if isinstance(ty, RealT):
        return abs(s)
    if isinstance(ty, Prod):
        return (_dlift(ty.left, s), _dlift(ty.right, 0.5 * s))
    dom, cod = ty.dom, ty.cod
    return DFn(lambda v, b: _dlift(cod, s + _dfeature(dom, b)), "dprobe")


def _dfeature(ty: Type, d) -> float:
    if isinstance(ty, RealT):
        return float(d)
    if isinstance(ty, Prod):
        return _dfeature(ty.left, d[0]) + _dfeature(ty.right, d[1])
    return _dfeature(ty.cod, d(_canonical(ty.dom), zero_like(ty.dom)))


def random_diff(ty: Type, rng: np.random.Generator, scale: float = 1.0):
    if isinstance(ty, RealT):
        return 0.0 if rng.random() < 0.15 else float(rng.uniform(0, scale))
    if isinstance(ty, Prod):
        return (random_diff(ty.left, rng, scale), random_diff(ty.right, rng, scale))
    c = float(rng.uniform(0, 2))
    dom, cod = ty.dom, ty.cod
    return DFn(lambda v, b: _dlift(cod, c * (1 + abs(math.sin(_feature(dom, v)))) + _dfeature(dom, b)),
               "dprobe")


def observe_value(ty: Type, v, probe: Probe, depth: int = 0) -> list[float]:
    """Flatten a value into reals by applying it to the probe's arguments."""
    if isinstance(ty, RealT):
        return [float(v)]
    if isinstance(ty, Prod):
        return observe_value(ty.left, v[0], probe, depth) + observe_value(ty.right, v[1], probe, depth)
    return observe_value(ty.cod, v(probe.value(ty.dom, depth)), probe, depth + 1)


def observe_diff(ty: Type, d, probe: Probe, depth: int = 0) -> list[float]:
    if isinstance(ty, RealT):
        return [float(d)]
    if isinstance(ty, Prod):
        return observe_diff(ty.left, d[0], probe, depth) + observe_diff(ty.right, d[1], probe, depth)
    arg, darg = probe.value(ty.dom, depth), probe.diff(ty.dom, depth)
    return observe_diff(ty.cod, d(arg, darg), probe, depth + 1)


def close(a: float, b: float, tol: float = 1e-9) -> bool:
    if a == b:
        return True
    if math.isnan(a) or math.isnan(b) or math.isinf(a) or math.isinf(b):
        return False
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def probes(n: int = 64, seed: int = 0, radius_scale: float = 1.0) -> list[Probe]:
    return [Probe(seed * 100_003 + i, radius_scale) for i in range(n)]


# --------------------------------------------------------------------------
# the model as a whole


def closed_type(t: Term) -> Type:
    return typecheck(t)


def self_distance(t: Term, *, reflexive: bool = False, grid: Grid = DEFAULT_GRID):
    """``a_σ(⟦t⟧, ⟦t⟧)`` for a closed term ``t``."""
    ty = typecheck(t)
    v = denote(t)
    return distance(ty, v, v, reflexive=reflexive, grid=grid)


@dataclass
class ContextualityResult:
    bound: float
    actual: float
    distance_note: str

    @property
    def holds(self) -> bool:
        return self.actual <= self.bound + 1e-9


def contextuality_bound(ctx: Term, t: Term, u: Term, *, env: Mapping[str, float] | None = None,
                        radius: float = 0.0, grid: Grid = DEFAULT_GRID) -> ContextualityResult:
    """Bound ``∥C∥(⟦t⟧, a_σ(⟦t⟧, ⟦u⟧))`` against the observed distance of ``C[t]`` and ``C[u]``.

    The real inputs of ``C`` are its free variables (placed at ``env[name]``,
    default 0) and its numeric constants; each gets difference budget
    ``radius``.  ``actual`` is the sampled distance ``d(⟦C[t]⟧, ⟦C[u]⟧)(x̄, radius)``
    of the two programs as functions of those inputs, so with ``radius = 0``
    it is just ``|⟦C[t]⟧ - ⟦C[u]⟧|``.
    """
    sigma, tu = typecheck(t), typecheck(u)
    if sigma != tu:
        raise TypingError(f"compared terms have types {sigma} and {tu}")
    fv = sorted(free_vars(hole_to_var(ctx)) - {HOLE_VAR})
    out_ty = typecheck(ctx, {x: RealT() for x in fv}, hole=sigma)
    if not isinstance(out_ty, RealT):
        raise TypingError(f"observable contexts must have type Real, got {out_ty}")
    inputs = {x: float((env or {}).get(x, 0.0)) for x in fv}
    if radius > 0:
        ctx, consts = abstract_constants(ctx)
        inputs.update(consts)
    names = sorted(inputs)
    tv, uv = denote(t), denote(u)
    d_tu = distance(sigma, tv, uv, grid=grid)
    bound = derivQ(ctx, {**inputs, HOLE_VAR: tv}, {**{x: radius for x in names}, HOLE_VAR: d_tu})
    ct, cu = plug(ctx, t), plug(ctx, u)
    if radius == 0 or not names:
        actual = abs(denote(ct, inputs) - denote(cu, inputs))
    else:
        def as_fn(term):
            return lambda point: denote(term, dict(zip(names, _flatten(point))))
        dom = RealT()
        for _ in names[1:]:
            dom = Prod(dom, RealT())
        x0 = _nest([inputs[x] for x in names])
        r0 = _nest([radius] * len(names))
        actual = distance(Arrow(dom, RealT()), as_fn(ct), as_fn(cu), grid=grid)(x0, r0)
    return ContextualityResult(float(bound), float(actual),
                               f"hole distance sampled on a {grid.resolution}-point grid")


def _nest(xs):
    out = xs[0]
    for x in xs[1:]:
        out = (out, x)
    return out


def _flatten(t):
    if isinstance(t, tuple):
        return [y for x in t for y in _flatten(x)]
    return [t]


# --------------------------------------------------------------------------
# counterexamples


S_NORM = 1.0 - math.cos(2.0)


def _s(y):
    return (1.0 - math.cos(y)) / S_NORM


FIG1 = {
    # calibrated: realises the values marked on the figure exactly at x = 0, r = 2
    ("a", "calibrated"): (lambda y: 0.3, lambda y: 1.45 + 1.15 * _s(y), lambda y: 1.45 - 1.15 * _s(y)),
    ("b", "calibrated"): (lambda y: 0.3 + 1.15 * _s(y), lambda y: 2.6 - 1.15 * _s(y), lambda y: 1.45),
    # the curves exactly as plotted
    ("a", "drawn"): (lambda y: 0.3, lambda y: 2.25 - 0.8 * math.cos(y), lambda y: 0.65 + 0.8 * math.cos(y)),
    ("b", "drawn"): (lambda y: 1.1 - 0.8 * math.cos(y), lambda y: 1.8 + 0.8 * math.cos(y), lambda y: 1.45),
}


def fig1_functions(which: str, variant: str = "calibrated"):
    """``(f, g, h)`` for panel ``which`` of the transitivity counterexamples."""
    try:
        return FIG1[(which, variant)]
    except KeyError:
        raise ValueError(f"unknown panel/variant {which!r}/{variant!r}") from None


@dataclass(frozen=True)
class CounterexampleRow:
    x: float
    r: float
    d_fg: float
    d_fh: float
    d_hg: float
    d_hh: float
    violated: bool


def reproduce_fig1(which: str, x: float, r: float, *, variant: str = "calibrated",
                   grid: Grid = DEFAULT_GRID) -> CounterexampleRow:
    """Panel ``a``: ``d(f,g) > d(f,h) + d(h,g) - d(h,h)``.  Panel ``b``: ``e(f,g) > e(f,h) + e(h,g)``."""
    f, g, h = fig1_functions(which, variant)
    ty = Arrow(RealT(), RealT())
    dist = distD if which == "a" else distE
    d_fg, d_fh = dist(f, g, ty, x, r, grid), dist(f, h, ty, x, r, grid)
    d_hg, d_hh = dist(h, g, ty, x, r, grid), dist(h, h, ty, x, r, grid)
    tol = 1e-9
    if which == "a":
        violated = d_fg > d_fh + d_hg - d_hh + tol
    else:
        violated = d_fg > d_fh + d_hg + tol
    return CounterexampleRow(x, r, d_fg, d_fh, d_hg, d_hh, violated)


CSV_COLUMNS = ("x", "r", "d_fg", "d_fh", "d_hg", "d_hh", "violated")
CSV_VERSION = "qlr-fig1 v1"


def rows_to_csv(rows: Sequence[CounterexampleRow], *, which: str, variant: str,
                grid: Grid = DEFAULT_GRID) -> str:
    dist = "d" if which == "a" else "e"
    lines = [f"# {CSV_VERSION} panel={which} variant={variant} distance={dist} grid={grid.resolution}",
             ",".join(CSV_COLUMNS)]
    for row in rows:
        lines.append(",".join([f"{row.x:.6f}", f"{row.r:.6f}", f"{row.d_fg:.6f}", f"{row.d_fh:.6f}",
                               f"{row.d_hg:.6f}", f"{row.d_hh:.6f}", "true" if row.violated else "false"]))
    return "\n".join(lines) + "\n"


FIG1_RADII = (0.0, 0.5, 1.0, 1.5, 2.0)


def fig1_csv(which: str, *, variant: str = "calibrated", x: float = 0.0,
             radii: Sequence[float] = FIG1_RADII, grid: Grid = DEFAULT_GRID) -> str:
    rows = [reproduce_fig1(which, x, r, variant=variant, grid=grid) for r in radii]
    return rows_to_csv(rows, which=which, variant=variant, grid=grid)


def piecewise_f(x: float) -> float:
    return x if abs(x) <= 1 else 2 * x


def piecewise_g(x: float) -> float:
    return 2 * x if abs(x) <= 1 else x


@dataclass(frozen=True)
class NonAdditivityReport:
    Df_1: float
    Df_2: float
    Dg_1: float
    Dg_2: float

    @property
    def superadditive_f(self) -> bool:
        return self.Df_2 > 2 * self.Df_1

    @property
    def subadditive_g(self) -> bool:
        return self.Dg_2 < 2 * self.Dg_1


def non_additivity_witness(grid: Grid = DEFAULT_GRID) -> NonAdditivityReport:
    """Derivatives at ``0`` of the two piecewise-linear maps, at radii 1 and 2."""
    return NonAdditivityReport(
        sampled_derivative(piecewise_f, 0.0, 1.0, grid), sampled_derivative(piecewise_f, 0.0, 2.0, grid),
        sampled_derivative(piecewise_g, 0.0, 1.0, grid), sampled_derivative(piecewise_g, 0.0, 2.0, grid))

"""The locally-Lipschitz model.

A value at arrow type is a pair ``⟨fn, fam⟩``: the function and its family
of local constants ``fam(x, α)``, additive in ``α``.  A difference at arrow
type is a function of the argument only, and the distance between two
functions is pointwise.  Base families have the closed form ``L(x)·Σα``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import numpy as np

from .errors import ContractError, TypingError, UnsupportedOperation
from .finite import FiniteQlr, check_axioms
from .quantale import Quantale
from .reports import LawReport, LawResult
from .semantics import Probe, close, random_value
from .syntax import (HOLE_VAR, App, Arrow, Const, Hole, Lam, Pair, Prim, Prod, Proj, RealT,
                     Term, Type, Var, abstract_constants, apps, free_vars, hole_to_var, normalize,
                     plug, typecheck)

INF = math.inf


# --------------------------------------------------------------------------
# finiteness filters


@dataclass(frozen=True)
class FinFilter:
    """A downward-closed, ``+``-closed set of finite differences."""

    name: str
    contains: Callable[[object], bool]

    def __call__(self, a) -> bool:
        return self.contains(a)


LAWVERE_FINITE = FinFilter("[0,inf)", lambda a: a < INF)


def product_filter(*filters: FinFilter) -> FinFilter:
    return FinFilter("x".join(f.name for f in filters),
                     lambda a: all(f(x) for f, x in zip(filters, a)))


def check_filter(flt: FinFilter, q: Quantale, samples: Sequence) -> LawReport:
    down = plus = None
    n = 0
    for a in samples:
        for b in samples:
            n += 1
            if flt(b) and q.leq(a, b) and not flt(a) and down is None:
                down = (a, b)
            if flt(a) and flt(b) and not flt(q.plus(a, b)) and plus is None:
                plus = (a, b)
    return LawReport(flt.name, [LawResult("downward_closed", down is None, n, down),
                                LawResult("plus_closed", plus is None, n, plus)])


# --------------------------------------------------------------------------
# values and differences


class LLFn:
    """An arrow value ``⟨fn, fam⟩``; ``fam(x, α)`` is a difference of the codomain."""

    __slots__ = ("fn", "fam", "label")

    def __init__(self, fn: Callable, fam: Callable, label: str = "ll"):
        self.fn = fn
        self.fam = fam
        self.label = label

    def __call__(self, v):
        return self.fn(v)

    def __repr__(self):
        return f"<{self.label}>"


class DTable:
    """A difference at arrow type: a function of the argument only."""

    __slots__ = ("f",)

    def __init__(self, f: Callable):
        self.f = f

    def __call__(self, v):
        return self.f(v)


def dzero(ty: Type):
    if isinstance(ty, RealT):
        return 0.0
    if isinstance(ty, Prod):
        return (dzero(ty.left), dzero(ty.right))
    cod = ty.cod
    return DTable(lambda v: dzero(cod))


def dplus(a, b):
    if isinstance(a, tuple):
        return tuple(dplus(x, y) for x, y in zip(a, b))
    if isinstance(a, DTable):
        return DTable(lambda v: dplus(a(v), b(v)))
    return a + b


def dscale(c: float, a):
    if isinstance(a, tuple):
        return tuple(dscale(c, x) for x in a)
    if isinstance(a, DTable):
        return DTable(lambda v: dscale(c, a(v)))
    return 0.0 if c == 0 or a == 0 else c * a


def _zero_of(d):
    if isinstance(d, tuple):
        return tuple(_zero_of(x) for x in d)
    if isinstance(d, DTable):
        return DTable(lambda v: _zero_of(d(v)))
    return 0.0


def _prim_value(spec, args=(), k: int = 0):
    """Curried ``⟨f, φ⟩`` with ``φ((x̄), (ᾱ)) = Lip(f)(x̄)·Σᾱ``, split by currying."""
    n = spec.arity
    if len(args) == n:
        return spec(*args)

    def fam(v, beta):
        # λ₁: the remaining arguments are a function of later inputs
        return _prim_fam(spec, args + (v,), beta)
    return LLFn(lambda v: _prim_value(spec, args + (v,)), fam, spec.label)


def _prim_fam(spec, args, beta):
    if len(args) == spec.arity:
        L, _ = spec.lip(args)
        return dscale(L, beta)
    return DTable(lambda v: _prim_fam(spec, args + (v,), beta))


def denoteLL(t: Term, env: Mapping | None = None):
    env = env or {}
    if isinstance(t, Const):
        return float(t.value)
    if isinstance(t, Var):
        return env[t.name]
    if isinstance(t, Hole):
        return env[HOLE_VAR]
    if isinstance(t, Prim):
        return _prim_value(t.spec)
    if isinstance(t, Pair):
        return (denoteLL(t.left, env), denoteLL(t.right, env))
    if isinstance(t, Proj):
        return denoteLL(t.body, env)[t.index - 1]
    if isinstance(t, Lam):
        name, body = t.name, t.body

        def fam(v, beta):
            # derivLL of the body with the context frozen: ᾱ = 0̄
            return derivLL(body, {**env, name: v}, _Frozen(env, name, beta))
        return LLFn(lambda v: denoteLL(body, {**env, name: v}), fam, "λ")
    if isinstance(t, App):
        return denoteLL(t.fn, env)(denoteLL(t.arg, env))
    raise TypeError(f"not a term: {t!r}")


class _Frozen(dict):
    """A difference environment that is zero everywhere except at one name."""

    def __init__(self, env: Mapping, name: str, beta):
        super().__init__()
        self.env = env
        self.name = name
        self.beta = beta

    def __missing__(self, key):
        if key == self.name:
            return self.beta
        return _zero_value_diff(self.env[key])

    def __contains__(self, key):
        return key == self.name or key in self.env


def _zero_value_diff(v):
    if isinstance(v, tuple):
        return tuple(_zero_value_diff(x) for x in v)
    if isinstance(v, LLFn):
        return DTable(lambda w: _zero_value_diff(v(w)))
    return 0.0


def _denv_get(denv, name):
    return denv[name]


def derivLL(t: Term, env: Mapping | None = None, denv: Mapping | None = None):
    """``∥t∥(x̄, ᾱ)`` in the locally-Lipschitz model."""
    env, denv = env or {}, denv if denv is not None else {}
    if isinstance(t, Const):
        return 0.0
    if isinstance(t, Var):
        return _denv_get(denv, t.name)
    if isinstance(t, Hole):
        return _denv_get(denv, HOLE_VAR)
    if isinstance(t, Prim):
        return _zero_value_diff(_prim_value(t.spec))
    if isinstance(t, Pair):
        return (derivLL(t.left, env, denv), derivLL(t.right, env, denv))
    if isinstance(t, Proj):
        return derivLL(t.body, env, denv)[t.index - 1]
    if isinstance(t, Lam):
        name, body = t.name, t.body

        def table(v):
            inner = _Extended(denv, name, _zero_value_diff(v))
            return derivLL(body, {**env, name: v}, inner)
        return DTable(table)
    if isinstance(t, App):
        fv = denoteLL(t.fn, env)
        uv = denoteLL(t.arg, env)
        return dplus(derivLL(t.fn, env, denv)(uv), fv.fam(uv, derivLL(t.arg, env, denv)))
    raise TypeError(f"not a term: {t!r}")


class _Extended(dict):
    def __init__(self, base: Mapping, name: str, value):
        super().__init__()
        self.base = base
        self.name = name
        self.value = value

    def __missing__(self, key):
        if key == self.name:
            return self.value
        return self.base[key]


def distanceLL(ty: Type, f, g):
    """Pointwise distance: ``a_{σ→τ}(f, g)(x) = a_τ(f x, g x)``."""
    if isinstance(ty, RealT):
        return abs(f - g)
    if isinstance(ty, Prod):
        return (distanceLL(ty.left, f[0], g[0]), distanceLL(ty.right, f[1], g[1]))
    cod = ty.cod
    return DTable(lambda x: distanceLL(cod, f(x), g(x)))


# --------------------------------------------------------------------------
# currying of families


@dataclass(frozen=True)
class FlatMap:
    """``f : Z × X → Y`` with family ``phi((z, x), (ζ, α))``, all components real tuples."""

    fn: Callable
    phi: Callable


def llCurry(m: FlatMap) -> LLFn:
    """``λ₀(φ)(z)(x, α) = φ((z, x), (0, α))`` and ``λ₁(φ)(z, ζ)(x) = φ((z, x), (ζ, 0))``."""
    def inner(z):
        return LLFn(lambda x: m.fn((z, x)), lambda x, a: m.phi((z, x), (_zero_of(z), a)), "λ₀")
    return LLFn(inner, lambda z, zeta: DTable(lambda x: m.phi((z, x), (zeta, _zero_of(x)))), "λ")


def llUncurry(c: LLFn) -> FlatMap:
    """``ev(ψ, χ)((z, x), (ζ, α)) = χ(z, ζ)(x) + ψ(z)(x, α)``."""
    return FlatMap(lambda p: c(p[0])(p[1]),
                   lambda p, d: dplus(c.fam(p[0], d[0])(p[1]), c(p[0]).fam(p[1], d[1])))


def check_additive(phi: Callable, points: Sequence, diffs: Sequence[tuple], tol: float = 1e-9) -> None:
    """Raise :class:`ContractError` unless ``phi(x, a + b) = phi(x, a) + phi(x, b)`` on the probes."""
    for x in points:
        for a, b in diffs:
            lhs = _flat(phi(x, _add(a, b)))
            rhs = _flat(dplus(phi(x, a), phi(x, b)))
            if not all(close(u, v, tol) for u, v in zip(lhs, rhs)):
                raise ContractError("family is not additive in its difference argument",
                                    witness=(x, a, b))


def _add(a, b):
    if isinstance(a, tuple):
        return tuple(_add(x, y) for x, y in zip(a, b))
    return a + b


def _flat(d) -> list[float]:
    if isinstance(d, tuple):
        return [y for x in d for y in _flat(x)]
    if isinstance(d, DTable):
        return _flat(d(0.5))
    return [float(d)]


# --------------------------------------------------------------------------
# validity of local bounds


@dataclass
class WitnessReport:
    point: tuple[float, ...]
    radius: float
    budget: tuple[float, ...]
    bound: float
    observed: float
    samples: int
    tol: float = 1e-9

    @property
    def margin(self) -> float:
        return self.bound - self.observed

    @property
    def ok(self) -> bool:
        return self.observed <= self.bound + self.tol

    def to_json(self) -> dict:
        return {"point": list(self.point), "radius": self.radius, "bound": self.bound,
                "observed": self.observed, "margin": self.margin}


def first_order_arity(ty: Type) -> int | None:
    """``n`` when ``ty = Real -> ... -> Real`` with ``n`` arrows."""
    n = 0
    while isinstance(ty, Arrow):
        if not isinstance(ty.dom, RealT):
            return None
        n += 1
        ty = ty.cod
    return n if isinstance(ty, RealT) else None


def _applied_body(t: Term, n: int) -> tuple[Term, list[str]]:
    names = [f"x{i + 1}" for i in range(n)]
    avoid = free_vars(t)
    names = [nm + "_" if nm in avoid else nm for nm in names]
    return normalize(apps(t, *[Var(nm) for nm in names])), names


@dataclass(frozen=True)
class RadiusInfo:
    value: float
    sensitivity: float
    delta: float


def radius_analysis(e: Term, env: Mapping[str, float]) -> RadiusInfo:
    """Value, ∞-to-output sensitivity and validity radius of a first-order normal form."""
    if isinstance(e, Const):
        return RadiusInfo(e.value, 0.0, INF)
    if isinstance(e, Var):
        return RadiusInfo(env[e.name], 1.0, INF)
    head, args = e, []
    while isinstance(head, App):
        args.append(head.arg)
        head = head.fn
    args.reverse()
    if not isinstance(head, Prim) or len(args) != head.spec.arity:
        raise UnsupportedOperation(f"radius analysis needs a first-order normal form, got {e!r}")
    kids = [radius_analysis(a, env) for a in args]
    xs = tuple(k.value for k in kids)
    L, r_f = head.spec.lip(xs)
    total = sum(k.sensitivity for k in kids)
    delta = min([k.delta for k in kids] + [r_f / total if total > 0 else INF])
    return RadiusInfo(head.spec(*xs), L * total, delta)


def checkLipValidity(t: Term, point: Sequence[float], budget: Sequence[float] | float, *,
                     samples: int = 2000, seed: int = 0, window: float = 1.0,
                     tol: float = 1e-9) -> WitnessReport:
    """Sample ``y, z`` within the derived radius of ``point`` and within ``budget`` of each other.

    ``window`` caps the sampling radius when the derived radius is infinite.
    """
    ty = typecheck(t)
    n = first_order_arity(ty)
    if n is None or free_vars(t):
        raise TypingError(f"validity checks need a closed first-order term, got type {ty}")
    point = tuple(float(x) for x in point)
    if len(point) != n:
        raise TypingError(f"term takes {n} arguments, got a point of dimension {len(point)}")
    alphas = tuple(float(a) for a in budget) if isinstance(budget, Sequence) else (float(budget),) * n
    body, names = _applied_body(t, n)
    env = dict(zip(names, point))
    info = radius_analysis(body, env)
    if info.delta <= 0:
        raise ContractError("no positive validity radius can be derived", witness=point)
    bound = float(derivLL(body, env, dict(zip(names, alphas))))
    rho = min(info.delta, window)
    F = denoteLL(t)

    def run(ys):
        v = F
        for y in ys:
            v = v(float(y))
        return float(v)

    rng = np.random.default_rng(seed)
    x = np.array(point)
    a = np.array(alphas)
    observed = 0.0
    count = 0
    # structured pairs: centre against the budget corners clipped to the ball
    cands = []
    for s in (1.0, -1.0):
        step = np.minimum(a, rho / math.sqrt(max(n, 1))) * s
        cands.append((x, x + step))
    for _ in range(samples):
        y = x + _in_ball(rng, n, rho)
        z = y + rng.uniform(-1, 1, n) * a
        if n and np.linalg.norm(z - x) > rho:
            continue
        cands.append((y, z))
    for y, z in cands:
        count += 1
        observed = max(observed, abs(run(y) - run(z)))
    return WitnessReport(point, info.delta, alphas, bound, observed, count, tol)


def _in_ball(rng, n: int, rho: float) -> np.ndarray:
    if n == 0:
        return np.zeros(0)
    v = rng.normal(size=n)
    v /= np.linalg.norm(v) or 1.0
    return v * rho * rng.random() ** (1.0 / n)


def local_constant_growth(t: Term, points: Sequence[Sequence[float]]) -> list[float]:
    """``derivLL`` per unit budget of the first argument, along ``points``."""
    ty = typecheck(t)
    n = first_order_arity(ty)
    body, names = _applied_body(t, n)
    out = []
    for p in points:
        denv = {nm: (1.0 if i == 0 else 0.0) for i, nm in enumerate(names)}
        out.append(float(derivLL(body, dict(zip(names, map(float, p))), denv)))
    return out


# --------------------------------------------------------------------------
# local contextuality


@dataclass
class LocalContextuality:
    in_regime: bool
    delta_t: float
    gap: float
    bound: float | None
    actual: float | None

    @property
    def holds(self) -> bool:
        return self.in_regime and self.actual <= self.bound + 1e-9

    @property
    def status(self) -> str:
        if not self.in_regime:
            return "out of local regime"
        return "ok" if self.holds else "violated"


def localContextualityBound(ctx: Term, t: Term, u: Term, *, delta_t: float,
                            probe_points: Sequence[float] | None = None,
                            env: Mapping[str, float] | None = None, radius: float = 0.0,
                            samples: int = 201) -> LocalContextuality:
    """The local contextual bound, gated on ``a_σ(⟦t⟧, ⟦u⟧) <= δ_t`` at the probe points.

    ``σ`` must be ``Real`` or ``Real -> Real``; the gate compares the
    pointwise distance with ``delta_t`` on ``probe_points``.
    """
    sigma, tu = typecheck(t), typecheck(u)
    if sigma != tu:
        raise TypingError(f"compared terms have types {sigma} and {tu}")
    if not (isinstance(sigma, RealT) or sigma == Arrow(RealT(), RealT())):
        raise UnsupportedOperation(f"local contextuality is sampled only at Real and Real -> Real, got {sigma}")
    fv = sorted(free_vars(hole_to_var(ctx)) - {HOLE_VAR})
    out_ty = typecheck(ctx, {x: RealT() for x in fv}, hole=sigma)
    if not isinstance(out_ty, RealT):
        raise TypingError(f"observable contexts must have type Real, got {out_ty}")
    tv, uv = denoteLL(t), denoteLL(u)
    d = distanceLL(sigma, tv, uv)
    pts = list(probe_points) if probe_points is not None else list(np.linspace(-2, 2, 41))
    gap = float(d) if isinstance(sigma, RealT) else max(float(d(p)) for p in pts)
    if gap > delta_t:
        return LocalContextuality(False, delta_t, gap, None, None)
    inputs = {x: float((env or {}).get(x, 0.0)) for x in fv}
    if radius > 0:
        ctx, consts = abstract_constants(ctx)
        inputs.update(consts)
    names = sorted(inputs)
    bound = float(derivLL(ctx, {**inputs, HOLE_VAR: tv}, {**{x: radius for x in names}, HOLE_VAR: d}))
    ct, cu = plug(ctx, t), plug(ctx, u)
    base = denoteLL(ct, inputs)
    actual = abs(base - denoteLL(cu, inputs))
    if radius > 0 and names:
        rng = np.random.default_rng(0)
        for _ in range(samples):
            moved = {x: inputs[x] + float(rng.uniform(-radius, radius)) for x in names}
            actual = max(actual, abs(base - denoteLL(cu, moved)), abs(base - denoteLL(ct, moved)))
    return LocalContextuality(True, delta_t, gap, bound, float(actual))


# --------------------------------------------------------------------------
# properties of the derivative operator


def _obs_value(ty: Type, v, probe: Probe, depth: int = 0) -> list[float]:
    if isinstance(ty, RealT):
        return [float(v)]
    if isinstance(ty, Prod):
        return _obs_value(ty.left, v[0], probe, depth) + _obs_value(ty.right, v[1], probe, depth)
    return _obs_value(ty.cod, v(_ll_probe_value(ty.dom, probe, depth)), probe, depth + 1)


def _ll_probe_value(ty: Type, probe: Probe, depth: int):
    return _to_ll(ty, probe.value(ty, depth))


def _to_ll(ty: Type, v):
    """Turn a plain probe value into an LL value (arrow families via a crude bound)."""
    if isinstance(ty, RealT):
        return v
    if isinstance(ty, Prod):
        return (_to_ll(ty.left, v[0]), _to_ll(ty.right, v[1]))
    cod = ty.cod
    return LLFn(lambda w: _to_ll(cod, v(w)), lambda w, a: _probe_fam(ty, a), "probe")


def _probe_fam(ty: Type, a):
    return dscale(1.0, _fam_scalar_lift(ty.cod, _diff_size(ty.dom, a)))


def _diff_size(ty: Type, a) -> float:
    if isinstance(ty, RealT):
        return float(a)
    if isinstance(ty, Prod):
        return _diff_size(ty.left, a[0]) + _diff_size(ty.right, a[1])
    return _diff_size(ty.cod, a(_ll_canonical(ty.dom)))


def _ll_canonical(ty: Type):
    if isinstance(ty, RealT):
        return 0.5
    if isinstance(ty, Prod):
        return (_ll_canonical(ty.left), _ll_canonical(ty.right))
    cod = ty.cod
    return LLFn(lambda w: _ll_canonical(cod), lambda w, a: dzero(cod), "k")


def _fam_scalar_lift(ty: Type, s: float):
    if isinstance(ty, RealT):
        return s
    if isinstance(ty, Prod):
        return (_fam_scalar_lift(ty.left, s), _fam_scalar_lift(ty.right, s))
    cod = ty.cod
    return DTable(lambda w: _fam_scalar_lift(cod, s))


def random_ll_diff(ty: Type, rng: np.random.Generator, scale: float = 1.0):
    if isinstance(ty, RealT):
        return 0.0 if rng.random() < 0.15 else float(rng.uniform(0, scale))
    if isinstance(ty, Prod):
        return (random_ll_diff(ty.left, rng, scale), random_ll_diff(ty.right, rng, scale))
    c = float(rng.uniform(0, scale))
    cod = ty.cod
    return DTable(lambda w: _fam_scalar_lift(cod, c))


def ll_probe_diff(ty: Type, probe: Probe, depth: int):
    return random_ll_diff(ty, np.random.default_rng([probe.seed, depth, 7]), probe.radius_scale)


def observe_ll_value(ty: Type, v, probe: Probe) -> list[float]:
    return _obs_value(ty, v, probe)


def observe_ll_diff(ty: Type, d, probe: Probe) -> list[float]:
    return _obs_ll(ty, d, probe)


def _obs_ll(ty: Type, d, probe: Probe, depth: int = 0) -> list[float]:
    if isinstance(ty, RealT):
        return [float(d)]
    if isinstance(ty, Prod):
        return _obs_ll(ty.left, d[0], probe, depth) + _obs_ll(ty.right, d[1], probe, depth)
    return _obs_ll(ty.cod, d(_ll_probe_value(ty.dom, probe, depth)), probe, depth + 1)


def observe_ll_family(ty: Type, v, probe: Probe) -> list[float]:
    """Observe the family component of an arrow value at the probe's argument and difference."""
    if not isinstance(ty, Arrow):
        return []
    x = _ll_probe_value(ty.dom, probe, 0)
    a = ll_probe_diff(ty.dom, probe, 0)
    return _obs_ll(ty.cod, v.fam(x, a), probe, 1) + observe_ll_family(ty.cod, v(x), _shift(probe))


def _shift(probe: Probe) -> Probe:
    return Probe(probe.seed + 7919, probe.radius_scale)


def _lists_close(a: list[float], b: list[float], tol: float) -> bool:
    return len(a) == len(b) and all(close(x, y, tol) for x, y in zip(a, b))


def _ground_points(ty: Type, rng, count: int) -> list:
    return [random_value(ty, rng) for _ in range(count)]


def checkDLambdaProps(unary: Sequence[Term], binary: Sequence[Term], curried: Sequence[Term], *,
                      probes: int = 64, seed: int = 0, tol: float = 1e-9) -> LawReport:
    """Properties (1)-(6) of the derivative operator, checked at random ground probes.

    ``unary`` are closed terms ``Real -> Real``, ``binary`` closed terms
    ``Real * Real -> Real`` and ``curried`` closed terms ``Real -> Real -> Real``.
    """
    from .parser import parse
    rng = np.random.default_rng(seed)
    R = RealT()
    RR = Prod(R, R)
    xs = _ground_points(R, rng, probes)
    ps = _ground_points(RR, rng, probes)
    dr = [(float(rng.uniform(0, 2)), float(rng.uniform(0, 2))) for _ in range(probes)]
    drr = [((float(rng.uniform(0, 2)), float(rng.uniform(0, 2))),
            (float(rng.uniform(0, 2)), float(rng.uniform(0, 2)))) for _ in range(probes)]
    results = []

    def law(name, bad, n):
        results.append(LawResult(name, bad is None, n, bad))

    # (1) identity and composition
    ident = denoteLL(parse(r"\x:Real. x"))
    law("1.identity", next((x for x, (a, _) in zip(xs, dr) if not close(ident.fam(x, a), a, tol)), None), probes)
    bad, n = None, 0
    for f in unary:
        for g in unary:
            fv, gv = denoteLL(f), denoteLL(g)
            comp = denoteLL(Lam("x", R, App(g, App(f, Var("x")))))
            for x, (a, _) in zip(xs, dr):
                n += 1
                lhs = comp.fam(x, a)
                rhs = gv.fam(fv(x), fv.fam(x, a))
                if not close(lhs, rhs, tol) and bad is None:
                    bad = (f, g, x, a)
    law("1.composition", bad, n)

    # (2) additivity and zero
    bad, n = None, 0
    for f in list(unary):
        fv = denoteLL(f)
        for x, (a, b) in zip(xs, dr):
            n += 1
            if not close(fv.fam(x, a + b), fv.fam(x, a) + fv.fam(x, b), tol) or fv.fam(x, 0.0) != 0:
                bad = bad or (f, x, a, b)
    for h in binary:
        hv = denoteLL(h)
        for p, (a, b) in zip(ps, drr):
            n += 1
            if not close(hv.fam(p, _add(a, b)), hv.fam(p, a) + hv.fam(p, b), tol):
                bad = bad or (h, p, a, b)
    law("2.additivity", bad, n)

    # (3) projections
    bad = None
    for i, src in ((1, r"\p:Real*Real. fst p"), (2, r"\p:Real*Real. snd p")):
        pv = denoteLL(parse(src))
        for p, (a, _) in zip(ps, drr):
            if not close(pv.fam(p, a), a[i - 1], tol):
                bad = bad or (i, p, a)
    law("3.projections", bad, 2 * probes)

    # (4) pairing
    bad, n = None, 0
    for f in unary:
        for g in unary:
            pair = denoteLL(Lam("x", R, Pair(App(f, Var("x")), App(g, Var("x")))))
            fv, gv = denoteLL(f), denoteLL(g)
            for x, (a, _) in zip(xs, dr):
                n += 1
                lhs = pair.fam(x, a)
                if not (close(lhs[0], fv.fam(x, a), tol) and close(lhs[1], gv.fam(x, a), tol)):
                    bad = bad or (f, g, x, a)
    law("4.pairing", bad, n)

    # (5) currying: ∥λ(h)∥(z, ζ)(x) = ∥h∥((z, x), (ζ, 0)), and λ(h)(z) carries ∥h∥((z, ·), (0, ·))
    bad, n = None, 0
    for h in binary:
        hv = denoteLL(h)
        cur = denoteLL(Lam("z", R, Lam("x", R, App(h, Pair(Var("z"), Var("x"))))))
        for (z, x), ((zeta, alpha), _) in zip(ps, drr):
            n += 1
            outer = cur.fam(z, zeta)(x)
            inner = cur(z).fam(x, alpha)
            if not (close(outer, hv.fam((z, x), (zeta, 0.0)), tol)
                    and close(inner, hv.fam((z, x), (0.0, alpha)), tol)):
                bad = bad or (h, z, x, zeta, alpha)
    law("5.curry", bad, n)

    # (6) application: ∥ev∘⟨k, g⟩∥(x, α) = ∥k∥(x, α)(g x) + fam(k x)(g x, ∥g∥(x, α))
    bad, n = None, 0
    for k in curried:
        kv = denoteLL(k)
        for g in unary:
            gv = denoteLL(g)
            app = denoteLL(Lam("x", R, App(App(k, Var("x")), App(g, Var("x")))))
            for x, (a, _) in zip(xs, dr):
                n += 1
                lhs = app.fam(x, a)
                rhs = kv.fam(x, a)(gv(x)) + kv(x).fam(gv(x), gv.fam(x, a))
                if not close(lhs, rhs, tol):
                    bad = bad or (k, g, x, a)
    law("6.application", bad, n)
    return LawReport("dlambda", results)


# --------------------------------------------------------------------------
# separation quotient


def quotientSeparate(X: FiniteQlr) -> FiniteQlr:
    """``X/≃`` with ``x ≃ x'`` iff ``a(x, x') = 0``; needs a pseudo-metric."""
    rep = check_axioms(X, ("reflexive", "symmetric", "transitive"))
    if not rep.ok:
        bad = rep.failed()[0]
        raise ContractError(f"quotient needs a pseudo-metric; {bad.law} fails", witness=bad.witness)
    zero = (X.D == 0).all(axis=-1)
    classes: list[list[int]] = []
    seen = set()
    for i in range(X.n):
        if i in seen:
            continue
        cls = [j for j in range(X.n) if zero[i, j]]
        seen.update(cls)
        classes.append(cls)
    reps = [c[0] for c in classes]
    for ci in classes:
        for cj in classes:
            block = X.D[np.ix_(ci, cj)]
            if not (block == block[0, 0]).all():
                raise ContractError("distance depends on the representative",
                                    witness=(X.carrier[ci[0]], X.carrier[cj[0]]))
    names = ["/".join(str(X.carrier[j]) for j in c) for c in classes]
    coords = X.D[np.ix_(reps, reps)]
    return FiniteQlr.from_coords(names, X.q, coords, name=f"{X.name}/~")

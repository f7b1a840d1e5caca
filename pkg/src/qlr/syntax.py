"""Types and terms of the simply typed λ-calculus over the reals.

Terms are immutable.  Binders carry type annotations so that typechecking
is syntax-directed.  Reduction covers β, projection of pairs, and the δ-rule
for primitives applied to exactly ``arity`` real constants.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Mapping

from . import primitives
from .errors import TypingError


@dataclass(frozen=True)
class Span:
    line: int
    col: int


# --------------------------------------------------------------------------
# types


class Type:
    pass


@dataclass(frozen=True)
class RealT(Type):
    def __str__(self):
        return "Real"


@dataclass(frozen=True)
class Prod(Type):
    left: Type
    right: Type

    def __str__(self):
        return f"{_tparen(self.left, (Arrow,))} * {_tparen(self.right, (Arrow, Prod))}"


@dataclass(frozen=True)
class Arrow(Type):
    dom: Type
    cod: Type

    def __str__(self):
        return f"{_tparen(self.dom, (Arrow,))} -> {self.cod}"


def _tparen(t: Type, kinds) -> str:
    return f"({t})" if isinstance(t, kinds) else str(t)


REAL = RealT()


def arrows(*tys: Type) -> Type:
    """``arrows(a, b, c) == a -> b -> c``."""
    out = tys[-1]
    for t in reversed(tys[:-1]):
        out = Arrow(t, out)
    return out


def prim_type(arity: int) -> Type:
    return arrows(*([REAL] * (arity + 1)))


def is_first_order(t: Type) -> bool:
    """``Real``, products of reals, or arrows from such to such."""
    def ground(s):
        return isinstance(s, RealT) or (isinstance(s, Prod) and ground(s.left) and ground(s.right))
    if isinstance(t, Arrow):
        return ground(t.dom) and is_first_order(t.cod)
    return ground(t)


# --------------------------------------------------------------------------
# terms


class Term:
    span: Span | None

    def __str__(self):
        return pretty(self)


@dataclass(frozen=True)
class Var(Term):
    name: str
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Lam(Term):
    name: str
    ty: Type
    body: Term
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class App(Term):
    fn: Term
    arg: Term
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Pair(Term):
    left: Term
    right: Term
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Proj(Term):
    index: int  # 1 or 2
    body: Term
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Const(Term):
    value: float
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Prim(Term):
    name: str
    params: tuple[float, ...] = ()
    span: Span | None = field(default=None, compare=False, repr=False)

    @property
    def spec(self) -> primitives.PrimitiveSpec:
        return primitives.lookup(self.name, self.params)


@dataclass(frozen=True)
class Hole(Term):
    """The hole of a context; typed through the ``hole`` argument of :func:`typecheck`."""

    span: Span | None = field(default=None, compare=False, repr=False)


HOLE_VAR = "[]"


def apps(f: Term, *args: Term) -> Term:
    for a in args:
        f = App(f, a)
    return f


# --------------------------------------------------------------------------
# pretty printing


def _fmt_num(v: float) -> str:
    r = repr(float(v))
    return r


def pretty(t: Term) -> str:
    """Render ``t`` in the surface grammar; ``parse(pretty(t)) == t``."""
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Const):
        return _fmt_num(t.value)
    if isinstance(t, Prim):
        if t.params:
            return f"{t.name}[{', '.join(_fmt_num(p) for p in t.params)}]"
        return t.name
    if isinstance(t, Hole):
        return "[]"
    if isinstance(t, Lam):
        return f"\\{t.name}:{t.ty}. {pretty(t.body)}"
    if isinstance(t, Pair):
        return f"({pretty(t.left)}, {pretty(t.right)})"
    if isinstance(t, Proj):
        return f"{'fst' if t.index == 1 else 'snd'} {_atom(t.body)}"
    if isinstance(t, App):
        fn = pretty(t.fn) if isinstance(t.fn, (App, Var, Prim, Const, Hole, Pair)) else f"({pretty(t.fn)})"
        return f"{fn} {_atom(t.arg)}"
    raise TypeError(f"not a term: {t!r}")


def _atom(t: Term) -> str:
    s = pretty(t)
    if isinstance(t, (Lam, App, Proj)) or (isinstance(t, Const) and t.value < 0):
        return f"({s})"
    return s


# --------------------------------------------------------------------------
# typing


def typecheck(t: Term, ctx: Mapping[str, Type] | None = None, *, hole: Type | None = None) -> Type:
    """The type of ``t`` under ``ctx``; ``hole`` types occurrences of ``[]``."""
    ctx = dict(ctx or {})
    return _tc(t, ctx, hole)


def _tc(t: Term, ctx: dict, hole: Type | None) -> Type:
    if isinstance(t, Var):
        if t.name not in ctx:
            raise TypingError(f"unbound variable {t.name}", t.span)
        return ctx[t.name]
    if isinstance(t, Const):
        return REAL
    if isinstance(t, Prim):
        try:
            spec = t.spec
        except Exception as exc:
            raise TypingError(str(exc), t.span) from None
        return prim_type(spec.arity)
    if isinstance(t, Hole):
        if hole is None:
            raise TypingError("hole outside of a context", t.span)
        return hole
    if isinstance(t, Lam):
        inner = dict(ctx)
        inner[t.name] = t.ty
        return Arrow(t.ty, _tc(t.body, inner, hole))
    if isinstance(t, App):
        ft = _tc(t.fn, ctx, hole)
        at = _tc(t.arg, ctx, hole)
        if not isinstance(ft, Arrow):
            raise TypingError(f"applying a term of type {ft}, which is not a function", t.span)
        if ft.dom != at:
            raise TypingError(f"argument has type {at}, expected {ft.dom}", t.arg.span or t.span)
        return ft.cod
    if isinstance(t, Pair):
        return Prod(_tc(t.left, ctx, hole), _tc(t.right, ctx, hole))
    if isinstance(t, Proj):
        bt = _tc(t.body, ctx, hole)
        if not isinstance(bt, Prod):
            raise TypingError(f"projection of a term of type {bt}, which is not a product", t.span)
        return bt.left if t.index == 1 else bt.right
    raise TypingError(f"not a term: {t!r}")


# --------------------------------------------------------------------------
# substitution and reduction


def free_vars(t: Term) -> frozenset[str]:
    if isinstance(t, Var):
        return frozenset({t.name})
    if isinstance(t, Lam):
        return free_vars(t.body) - {t.name}
    if isinstance(t, App):
        return free_vars(t.fn) | free_vars(t.arg)
    if isinstance(t, Pair):
        return free_vars(t.left) | free_vars(t.right)
    if isinstance(t, Proj):
        return free_vars(t.body)
    return frozenset()


def _fresh(base: str, avoid: frozenset[str]) -> str:
    for i in itertools.count(1):
        cand = f"{base}{i}"
        if cand not in avoid:
            return cand
    raise AssertionError


def subst(t: Term, name: str, val: Term) -> Term:
    """Capture-avoiding ``t[val/name]``."""
    if isinstance(t, Var):
        return val if t.name == name else t
    if isinstance(t, Lam):
        if t.name == name:
            return t
        fv = free_vars(val)
        if t.name in fv and name in free_vars(t.body):
            new = _fresh(t.name, fv | free_vars(t.body) | {name})
            body = subst(t.body, t.name, Var(new))
            return Lam(new, t.ty, subst(body, name, val), t.span)
        return Lam(t.name, t.ty, subst(t.body, name, val), t.span)
    if isinstance(t, App):
        return App(subst(t.fn, name, val), subst(t.arg, name, val), t.span)
    if isinstance(t, Pair):
        return Pair(subst(t.left, name, val), subst(t.right, name, val), t.span)
    if isinstance(t, Proj):
        return Proj(t.index, subst(t.body, name, val), t.span)
    return t


def _spine(t: Term) -> tuple[Term, list[Term]]:
    args = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fn
    return t, args[::-1]


def contract(t: Term) -> Term | None:
    """Contract ``t`` if it is itself a redex."""
    if isinstance(t, App) and isinstance(t.fn, Lam):
        return subst(t.fn.body, t.fn.name, t.arg)
    if isinstance(t, Proj) and isinstance(t.body, Pair):
        return t.body.left if t.index == 1 else t.body.right
    if isinstance(t, App):
        head, args = _spine(t)
        if isinstance(head, Prim):
            spec = head.spec
            if len(args) == spec.arity and all(isinstance(a, Const) for a in args):
                return Const(spec(*(a.value for a in args)))
    return None


def _children(t: Term) -> list[Term]:
    if isinstance(t, Lam):
        return [t.body]
    if isinstance(t, App):
        return [t.fn, t.arg]
    if isinstance(t, Pair):
        return [t.left, t.right]
    if isinstance(t, Proj):
        return [t.body]
    return []


def _rebuild(t: Term, kids: list[Term]) -> Term:
    if isinstance(t, Lam):
        return Lam(t.name, t.ty, kids[0], t.span)
    if isinstance(t, App):
        return App(kids[0], kids[1], t.span)
    if isinstance(t, Pair):
        return Pair(kids[0], kids[1], t.span)
    if isinstance(t, Proj):
        return Proj(t.index, kids[0], t.span)
    return t


def beta_step(t: Term) -> Term | None:
    """One leftmost-outermost step, or ``None`` on a normal form."""
    r = contract(t)
    if r is not None:
        return r
    kids = _children(t)
    for i, k in enumerate(kids):
        s = beta_step(k)
        if s is not None:
            new = list(kids)
            new[i] = s
            return _rebuild(t, new)
    return None


def innermost_step(t: Term) -> Term | None:
    """One rightmost-innermost step; a second strategy for confluence checks."""
    kids = _children(t)
    for i in reversed(range(len(kids))):
        s = innermost_step(kids[i])
        if s is not None:
            new = list(kids)
            new[i] = s
            return _rebuild(t, new)
    return contract(t)


def reducts(t: Term) -> Iterator[Term]:
    """Every one-step reduct of ``t``."""
    r = contract(t)
    if r is not None:
        yield r
    kids = _children(t)
    for i, k in enumerate(kids):
        for s in reducts(k):
            new = list(kids)
            new[i] = s
            yield _rebuild(t, new)


def normalize(t: Term, step=beta_step, limit: int = 100_000) -> Term:
    for _ in range(limit):
        s = step(t)
        if s is None:
            return t
        t = s
    raise RuntimeError("reduction did not terminate within the step limit")


def reduction_sequence(t: Term, step=beta_step) -> list[Term]:
    seq = [t]
    while (s := step(seq[-1])) is not None:
        seq.append(s)
    return seq


def alpha_key(t: Term, env: tuple[str, ...] = ()):
    """A hashable key identifying ``t`` up to renaming of bound variables."""
    if isinstance(t, Var):
        for i, n in enumerate(reversed(env)):
            if n == t.name:
                return ("b", i)
        return ("f", t.name)
    if isinstance(t, Lam):
        return ("lam", t.ty, alpha_key(t.body, env + (t.name,)))
    if isinstance(t, App):
        return ("app", alpha_key(t.fn, env), alpha_key(t.arg, env))
    if isinstance(t, Pair):
        return ("pair", alpha_key(t.left, env), alpha_key(t.right, env))
    if isinstance(t, Proj):
        return ("proj", t.index, alpha_key(t.body, env))
    return t


def alpha_eq(t: Term, u: Term) -> bool:
    return alpha_key(t) == alpha_key(u)


# --------------------------------------------------------------------------
# contexts


def plug(ctx: Term, t: Term) -> Term:
    """Fill every hole of ``ctx`` with ``t``; binders of ``ctx`` may capture."""
    if isinstance(ctx, Hole):
        return t
    kids = _children(ctx)
    if not kids:
        return ctx
    return _rebuild(ctx, [plug(k, t) for k in kids])


def plug_typed(ctx: Term, t: Term, hole: Type, tctx: Mapping[str, Type] | None = None) -> Term:
    """Plug after checking that ``t`` has the hole type ``hole``."""
    ty = typecheck(t, tctx)
    if ty != hole:
        raise TypingError(f"term of type {ty} does not fit a hole of type {hole}", t.span)
    return plug(ctx, t)


def hole_to_var(ctx: Term, name: str = HOLE_VAR) -> Term:
    """Replace holes by a variable, so ``C`` can be read as a term in ``name``."""
    return plug(ctx, Var(name))


def has_hole(t: Term) -> bool:
    return isinstance(t, Hole) or any(has_hole(k) for k in _children(t))


def abstract_constants(t: Term, prefix: str = "c") -> tuple[Term, dict[str, float]]:
    """Replace each numeric constant by a fresh variable; returns the term and the values."""
    avoid = set(_names(t))
    values: dict[str, float] = {}

    def go(u: Term) -> Term:
        if isinstance(u, Const):
            name = _fresh(prefix, frozenset(avoid))
            avoid.add(name)
            values[name] = u.value
            return Var(name, u.span)
        kids = _children(u)
        return _rebuild(u, [go(k) for k in kids]) if kids else u
    return go(t), values


def _names(t: Term) -> Iterator[str]:
    if isinstance(t, Var):
        yield t.name
    if isinstance(t, Lam):
        yield t.name
    for k in _children(t):
        yield from _names(k)

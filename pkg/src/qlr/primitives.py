"""Registry of primitive real functions with their difference bounds.

Each primitive carries three things:

* ``fn``: the function ``R^n -> R``;
* ``modulus(xs, alphas)``: an upper bound for
  ``sup { |f(ys) - f(xs)| : |y_i - x_i| <= alpha_i }``, used as ``∥f∥`` in the
  quantitative model;
* ``lip(xs)``: a pair ``(L, radius)`` such that
  ``|f(ys) - f(zs)| <= L * |ys - zs|_2`` whenever ``ys`` and ``zs`` lie within
  Euclidean distance ``radius`` of ``xs``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .errors import StructuralError

INF = math.inf
TWO_PI = 2 * math.pi


def mul0(a: float, b: float) -> float:
    """Product with the convention ``0 * inf = 0``."""
    if a == 0 or b == 0:
        return 0.0
    return a * b


def _safe_exp(x: float) -> float:
    try:
        return math.exp(x)
    except OverflowError:
        return INF


def _has_point(lo: float, hi: float, phase: float) -> bool:
    """Whether ``[lo, hi]`` contains some ``phase + 2kπ``."""
    k = math.ceil((lo - phase) / TWO_PI)
    return phase + k * TWO_PI <= hi


def trig_range(lo: float, hi: float, shift: float = 0.0) -> tuple[float, float]:
    """Exact range of ``sin(y + shift)`` over ``y in [lo, hi]``."""
    lo, hi = lo + shift, hi + shift
    if not (math.isfinite(lo) and math.isfinite(hi)) or hi - lo >= TWO_PI:
        return -1.0, 1.0
    vals = [math.sin(lo), math.sin(hi)]
    top = 1.0 if _has_point(lo, hi, math.pi / 2) else max(vals)
    bot = -1.0 if _has_point(lo, hi, -math.pi / 2) else min(vals)
    return bot, top


def _range_modulus(centre: float, lo: float, hi: float) -> float:
    return max(hi - centre, centre - lo, 0.0)


@dataclass(frozen=True)
class PrimitiveSpec:
    name: str
    arity: int
    fn: Callable[..., float]
    modulus: Callable[[Sequence[float], Sequence[float]], float]
    lip: Callable[[Sequence[float]], tuple[float, float]]
    params: tuple[float, ...] = field(default=())

    @property
    def label(self) -> str:
        if not self.params:
            return self.name
        return f"{self.name}[{', '.join(repr(float(p)) for p in self.params)}]"

    def __call__(self, *xs: float) -> float:
        if len(xs) != self.arity:
            raise StructuralError(f"{self.label} expects {self.arity} arguments, got {len(xs)}")
        return float(self.fn(*xs))


def _sin_mod(xs, als):
    (x,), (a,) = xs, als
    if a == 0:
        return 0.0
    lo, hi = trig_range(x - a, x + a)
    return min(a, _range_modulus(math.sin(x), lo, hi))


def _cos_mod(xs, als):
    (x,), (a,) = xs, als
    if a == 0:
        return 0.0
    lo, hi = trig_range(x - a, x + a, math.pi / 2)
    return min(a, _range_modulus(math.cos(x), lo, hi))


def _exp_mod(xs, als):
    (x,), (a,) = xs, als
    if a == 0:
        return 0.0
    if a == INF:
        return INF
    return _safe_exp(x) * math.expm1(a)


def _mul_mod(xs, als):
    (x1, x2), (a1, a2) = xs, als
    return mul0(abs(x1), a2) + mul0(abs(x2), a1) + mul0(a1, a2)


def _mul_lip(xs):
    return math.hypot(*xs) + 1.0, 1.0


def _exp_lip(xs):
    return _safe_exp(xs[0] + 1.0), 1.0


def _const_lip(value):
    return lambda xs: (value, INF)


_BASE: dict[str, PrimitiveSpec] = {}


def _register(spec: PrimitiveSpec):
    _BASE[spec.name] = spec


_register(PrimitiveSpec("add", 2, lambda x, y: x + y, lambda xs, a: a[0] + a[1], _const_lip(math.sqrt(2))))
_register(PrimitiveSpec("sub", 2, lambda x, y: x - y, lambda xs, a: a[0] + a[1], _const_lip(math.sqrt(2))))
_register(PrimitiveSpec("mul", 2, lambda x, y: x * y, _mul_mod, _mul_lip))
_register(PrimitiveSpec("neg", 1, lambda x: -x, lambda xs, a: a[0], _const_lip(1.0)))
_register(PrimitiveSpec("sin", 1, math.sin, _sin_mod, _const_lip(1.0)))
_register(PrimitiveSpec("cos", 1, math.cos, _cos_mod, _const_lip(1.0)))
_register(PrimitiveSpec("abs", 1, abs, lambda xs, a: a[0], _const_lip(1.0)))
_register(PrimitiveSpec("min", 2, min, lambda xs, a: max(a), _const_lip(1.0)))
_register(PrimitiveSpec("max", 2, max, lambda xs, a: max(a), _const_lip(1.0)))
_register(PrimitiveSpec("exp", 1, _safe_exp, _exp_mod, _exp_lip))

PARAMETRIC = {"affine": 2}


def affine(a: float, b: float) -> PrimitiveSpec:
    """``x ↦ a·x + b``."""
    a, b = float(a), float(b)
    return PrimitiveSpec("affine", 1, lambda x: a * x + b,
                         lambda xs, al: mul0(abs(a), al[0]),
                         _const_lip(abs(a)), params=(a, b))


def names() -> list[str]:
    return sorted(list(_BASE) + list(PARAMETRIC))


def lookup(name: str, params: Sequence[float] = ()) -> PrimitiveSpec:
    if name in PARAMETRIC:
        if len(params) != PARAMETRIC[name]:
            raise StructuralError(f"{name} takes {PARAMETRIC[name]} parameters, got {len(params)}")
        return affine(*params)
    if name not in _BASE:
        raise StructuralError(f"unknown primitive {name!r}")
    if params:
        raise StructuralError(f"{name} takes no parameters")
    return _BASE[name]


def is_primitive(name: str) -> bool:
    return name in _BASE or name in PARAMETRIC

"""Sine against the identity: far apart globally, close around 0."""
import math

from qlr import contextuality_bound, denote, derivQ, parse
from qlr.semantics import distD
from qlr.syntax import REAL, Arrow

sin, ident = parse(r"\x:Real. sin x"), parse(r"\x:Real. x")
ctx = parse("[] 0.0")
ty = Arrow(REAL, REAL)
for r in (0.1, 0.5, math.pi / 2):
    print(f"d(sin, id)(0, {r:.4f}) = {distD(denote(sin), denote(ident), ty, 0.0, r):.6f}")
print("derivative of sin at 0 with radius 0.1:", round(derivQ(sin)(0.0, 0.1), 6))
for r in (0.0, 0.1):
    res = contextuality_bound(ctx, sin, ident, radius=r)
    print(f"C = [] 0.0, input budget {r}: bound {res.bound:.6f}, actual {res.actual:.6f}, holds {res.holds}")

"""Derivatives of maps between finite spaces, and where the identity law needs attained radii."""
import math

import numpy as np

from qlr import FiniteQlr, TruncChain, derivative
from qlr.finite import check_derivative_laws

q = TruncChain(1)                       # elements 0 < 1 < inf
X = FiniteQlr(["a", "b"], q, [[0, 1], [1, 0]])
D = derivative(X, X, np.array([0, 1]))  # identity
for i, x in enumerate(X.carrier):
    row = {q.decode(tuple(e)): X.ops.decode(D[i, k]) for k, e in enumerate(X.ops.elements)}
    print(f"D(id)({x}, alpha) =", row)
print("D(id)(a, inf) is 1, not inf: no point sits at distance inf from a")

Z = FiniteQlr(["z"], q, [[0]])
full = FiniteQlr(["a", "b", "c"], q, [[0, 1, math.inf], [1, 0, math.inf], [1, math.inf, 0]])
for name, space in (("two points", X), ("all radii attained", full)):
    rep = check_derivative_laws(space, space, Z)
    print(f"{name:>20}:", ", ".join(f"{r.law}={'ok' if r.passed else 'fails'}" for r in rep.results))

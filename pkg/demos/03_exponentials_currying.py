"""Function spaces: self-distance is the derivative; currying in both categories."""
import numpy as np

from qlr import FiniteQlr, TruncChain, curry, derivative, expQ, expQr, uncurry
from qlr.finite import derivative_map, productQlr

q = TruncChain(1)
X = FiniteQlr(["a", "b"], q, [[0, 1], [1, 0]])
Y = FiniteQlr(["u", "v"], q, [[0, 1], [1, 0]])
E, Er = expQ(X, Y), expQr(X, Y)
for i, f in enumerate(E.fs):
    same = np.array_equal(E.unflatten(E.space.D[i, i]), derivative(X, Y, f))
    zero = not Er.space.D[i, i].any()
    print(f"f = {list(f)}: d^Q(f,f) = D(f): {same}   d^Qr(f,f) = 0: {zero}")

ZX = productQlr(X, X)
m = derivative_map(ZX, Y, np.array([0, 1, 1, 0]))
lam, _ = curry(X, X, Y, m, E=E)
print("ev(lambda(f)) = f:", uncurry(X, E, lam).same_as(m), "| lambda(f) valid:", lam.valid)
lam_r, _ = curry(X, X, Y, m, reflexive=True, E=Er)
print("reflexive variant: ev(lambda(f)) = f:", uncurry(X, Er, lam_r).same_as(m))

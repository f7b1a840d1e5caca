"""Locally Lipschitz bounds: constants that depend on the point, valid on a neighbourhood."""
from qlr import checkLipValidity, localContextualityBound, parse
from qlr.lipschitz import local_constant_growth

mul = parse(r"\x:Real. \y:Real. mul x y")
print("local constants of mul along (x, 0):", local_constant_growth(mul, [(0, 0), (10, 0), (100, 0)]))
for point in ((1.0, 2.0), (10.0, -3.0)):
    rep = checkLipValidity(mul, point, 0.05, samples=500)
    print("witness", rep.to_json(), "ok" if rep.ok else "VIOLATED")

ctx = parse("[] 0.0")
sin, ident = parse(r"\x:Real. sin x"), parse(r"\x:Real. x")
for delta in (0.1, 2.0):
    res = localContextualityBound(ctx, sin, ident, delta_t=delta, radius=0.1)
    print(f"delta_t={delta}: {res.status}, gap {res.gap:.4f}, bound {res.bound}, actual {res.actual}")

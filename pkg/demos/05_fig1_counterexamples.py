"""Transitivity fails for the naive distances d and e; the lifted partial metric p repairs it."""
from qlr import Interval, liftedP, reproduce_fig1
from qlr.semantics import fig1_csv, fig1_functions

for panel in "ab":
    row = reproduce_fig1(panel, 0.0, 2.0)
    print(f"panel {panel}: d_fg={row.d_fg:.3f} d_fh={row.d_fh:.3f} d_hg={row.d_hg:.3f} "
          f"d_hh={row.d_hh:.3f} violated={row.violated}")
print("as drawn, panel b violated:", reproduce_fig1("b", 0.0, 2.0, variant="drawn").violated)

f, g, h = fig1_functions("a")
I = Interval(-2.0, 2.0)
p = lambda u, v: liftedP(u, v, 0.0, I)
print(f"p(f,g) = {p(f, g):.4f} ; p(f,h) + p(h,g) - p(h,h) = {p(f, h) + p(h, g) - p(h, h):.4f}")
print(fig1_csv("a"), end="")

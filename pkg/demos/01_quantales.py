"""Quantales with the reversed order: 0 means "no difference", joins are suprema of errors."""
import math

from qlr import DiscreteTwo, Lawvere, TruncChain, quantale_from_config
from qlr.quantale import check_quantale_laws

L = Lawvere()
print("Lawvere: 3 + 4 =", L.plus(3.0, 4.0), "| 5 -o 2 =", L.residual(5.0, 2.0),
      "| 5 <= 2 (Heyting) =", L.heyting(5.0, 2.0))

T = TruncChain(3)
print("trunc:3 elements", list(T.elements()), "| 2 + 2 =", T.plus(2, 2), "| inf -o 1 =", T.residual(math.inf, 1))

for cfg in ("two", "trunc:3", "product(two,trunc:2)"):
    rep = check_quantale_laws(quantale_from_config(cfg))
    print(f"{cfg:>22}: {'all laws hold' if rep.ok else rep.failed()}")

# in a locale, plus is the join: distances compose like maxima
two = DiscreteTwo()
print("two: 0 + inf =", two.plus(0, math.inf), "= join", two.join2(0, math.inf))

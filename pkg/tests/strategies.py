"""Random first-order programs with a Python oracle for their value."""
import math

from hypothesis import strategies as st

UNARY = {"sin": math.sin, "cos": math.cos, "neg": lambda x: -x, "abs": abs}
BINARY = {"add": lambda a, b: a + b, "sub": lambda a, b: a - b, "mul": lambda a, b: a * b,
          "min": min, "max": max}


@st.composite
def real_exprs(draw, depth=3):
    """``(source, fn)`` where ``source`` has free variable ``x`` and ``fn`` evaluates it."""
    if depth == 0 or draw(st.booleans()):
        if draw(st.booleans()):
            return "x", lambda x: x
        c = draw(st.floats(-3, 3, allow_nan=False).map(lambda v: round(v, 3)))
        return f"({c!r})" if c < 0 else repr(c), lambda x, c=c: c
    kind = draw(st.sampled_from(["u", "b", "beta", "pair"]))
    a_src, a_fn = draw(real_exprs(depth - 1))
    if kind == "u":
        name = draw(st.sampled_from(sorted(UNARY)))
        return f"{name} ({a_src})", lambda x: UNARY[name](a_fn(x))
    b_src, b_fn = draw(real_exprs(depth - 1))
    if kind == "b":
        name = draw(st.sampled_from(sorted(BINARY)))
        return f"{name} ({a_src}) ({b_src})", lambda x: BINARY[name](a_fn(x), b_fn(x))
    if kind == "beta":
        # (\y. b[x := y]) a, evaluated as b at a
        return (f"(\\x:Real. {b_src}) ({a_src})", lambda x: b_fn(a_fn(x)))
    return f"fst ({a_src}, {b_src})", a_fn


def closed_fns(depth=3):
    return real_exprs(depth).map(lambda p: (f"\\x:Real. {p[0]}", p[1]))

"""Shipped example programs: closed typed terms that take at least two β-steps."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from importlib import resources

from .parser import parse
from .syntax import Term, Type, reduction_sequence, typecheck

SOURCES: dict[str, str] = {
    "twice_sin": r"(\f:Real->Real. \x:Real. f (f x)) (\y:Real. sin y)",
    "compose_sin_cos": r"(\g:Real->Real. \f:Real->Real. \x:Real. g (f x)) sin (\y:Real. cos y)",
    "square": r"(\s:Real->Real->Real. \x:Real. s x x) (\a:Real. \b:Real. mul a b)",
    "apply_const": r"(\k:Real. \x:Real. add k x) ((\c:Real. c) 1.5)",
    "let_double": r"(\d:Real->Real. \x:Real. d (d x)) (\y:Real. add y y)",
    "swap_pair": r"(\p:Real*Real. (snd p, fst p)) ((\x:Real. (x, sin x)) 0.5)",
    "curry_add": r"(\f:Real*Real->Real. \x:Real. \y:Real. f (x, y)) (\p:Real*Real. add (fst p) (snd p))",
    "uncurry_mul": r"(\f:Real->Real->Real. \p:Real*Real. f (fst p) (snd p)) (\a:Real. \b:Real. mul a b)",
    "affine_chain": r"(\f:Real->Real. \x:Real. f (f (f x))) (\y:Real. affine[0.5, 1] y)",
    "exp_neg": r"(\h:Real->Real. \x:Real. exp (h x)) ((\n:Real->Real. n) (\y:Real. neg y))",
    "poly": r"(\m:Real->Real->Real. \x:Real. add (m x x) (m 2.0 x)) (\a:Real. \b:Real. mul a b)",
    "self_compose_pair": r"(\f:Real->Real. \x:Real. (f x, f (f x))) (\y:Real. mul y (cos y))",
    "diag_pair": r"(\f:Real->Real. \x:Real. (f x, f (neg x))) (\y:Real. mul y y)",
    "proj_chain": r"\x:Real. fst ((\y:Real. (sin y, cos y)) ((\z:Real. add z 1.0) x))",
    "const_fn": r"(\c:Real. \x:Real. c) ((\y:Real. mul y 3.0) 2.0)",
    "higher_apply": r"(\a:(Real->Real)->Real->Real. \x:Real. a sin x) (\f:Real->Real. \y:Real. f (add y 1.0))",
    "max_abs": r"(\f:Real->Real. \x:Real. max (f x) (f (neg x))) (\y:Real. abs (sin y))",
    "min_pair": r"(\p:Real*Real. min (fst p) (snd p)) ((\x:Real. (x, mul x 2.0)) 0.25)",
    "sub_self": r"(\f:Real->Real. \x:Real. sub (f x) x) (\y:Real. sin y)",
    "two_arg": r"(\f:Real->Real->Real. \x:Real. \y:Real. f y x) (\a:Real. \b:Real. sub a b)",
    "nested_lets": r"(\a:Real. (\b:Real. (\c:Real. add a (mul b c)) 3.0) 2.0) 1.0",
    "cos_of_sum": r"\x:Real. (\s:Real. cos s) ((\u:Real. \v:Real. add u v) x 0.5)",
    "pair_map": r"(\f:Real->Real. \p:Real*Real. (f (fst p), f (snd p))) (\y:Real. exp y)",
    "iterate3": r"(\t:(Real->Real)->Real->Real. t (t (\y:Real. mul y 0.5))) (\f:Real->Real. \x:Real. f (f x))",
    "closed_real": r"(\f:Real->Real. f (f 0.3)) (\y:Real. add (sin y) 0.1)",
    "grad_like": r"(\f:Real->Real. \x:Real. \h:Real. sub (f (add x h)) (f x)) (\y:Real. mul y y)",
    "select_first": r"(\p:(Real->Real)*(Real->Real). fst p) ((\g:Real->Real. (g, sin)) cos)",
    "shift_then_scale": r"(\s:Real->Real. \c:Real->Real. \x:Real. c (s x)) (\y:Real. add y 2.0) (\y:Real. affine[3, 0] y)",
}

# composable first-order programs for the derivative-operator properties
UNARY = [r"\x:Real. sin x", r"\x:Real. mul x x", r"\x:Real. exp (neg x)",
         r"\x:Real. affine[2, 1] x"]
BINARY = [r"\p:Real*Real. mul (fst p) (snd p)", r"\p:Real*Real. add (sin (fst p)) (snd p)",
          r"\p:Real*Real. max (fst p) (mul 2.0 (snd p))"]
CURRIED = [r"\x:Real. \y:Real. mul x y", r"\x:Real. \y:Real. sin (add x y)"]


@dataclass(frozen=True)
class Entry:
    name: str
    source: str

    @cached_property
    def term(self) -> Term:
        return parse(self.source)

    @cached_property
    def type(self) -> Type:
        return typecheck(self.term)

    @cached_property
    def steps(self) -> list[Term]:
        """The leftmost-outermost reduction sequence, starting at the term itself."""
        return reduction_sequence(self.term)


def entries() -> list[Entry]:
    return [Entry(n, s) for n, s in SOURCES.items()]


def dlambda_terms() -> tuple[list[Term], list[Term], list[Term]]:
    return [parse(s) for s in UNARY], [parse(s) for s in BINARY], [parse(s) for s in CURRIED]


def program_file(name: str) -> str:
    """Text of a shipped ``.stlc`` program such as ``sin.stlc``."""
    return resources.files("qlr").joinpath("corpus", name).read_text()

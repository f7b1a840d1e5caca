import math

import numpy as np
import pytest
from hypothesis import settings, strategies as st

from qlr.finite import FiniteQlr
from qlr.quantale import quantale_from_config

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

SMALL = ("two", "trunc:1", "trunc:2", "locale:2", "product(two,two)")


@st.composite
def finite_spaces(draw, configs=SMALL, max_n=3, reflexive=False):
    q = quantale_from_config(draw(st.sampled_from(configs)))
    els = list(q.elements())
    n = draw(st.integers(1, max_n))
    rows = [[q.zero if reflexive and i == j else draw(st.sampled_from(els)) for j in range(n)]
            for i in range(n)]
    return FiniteQlr([f"p{i}" for i in range(n)], q, rows)


def lawvere_values():
    return st.one_of(st.just(0.0), st.just(math.inf),
                     st.floats(0, 1e6, allow_nan=False, allow_infinity=False))


@pytest.fixture
def rng():
    return np.random.default_rng(0)

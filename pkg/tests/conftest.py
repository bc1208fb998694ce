import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from bunmotive.poly import Poly


def random_poly(rng: random.Random, genus: int = 2, terms: int = 4, lo: int = -4, hi: int = 3) -> Poly:
    """Random Laurent polynomial in L with small curve-symbol exponents."""
    out = {}
    for _ in range(rng.randint(0, terms)):
        exp = [rng.randint(lo, hi)] + [rng.choice((0, 0, 0, 1)) for _ in range(2 * genus)]
        while len(exp) > 1 and exp[-1] == 0:
            exp.pop()
        if exp == [0]:
            exp = []
        out[tuple(exp)] = Fraction(rng.randint(-5, 5), rng.choice((1, 1, 2, 3)))
    return Poly(out)


@st.composite
def polys(draw, genus: int = 2, max_terms: int = 4):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_poly(random.Random(seed), genus, max_terms)


@pytest.fixture
def rng():
    return random.Random(20240601)

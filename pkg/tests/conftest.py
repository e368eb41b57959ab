import random

from hypothesis import strategies as st

from hesslab.exact import IntMatrix, IntVector


def shear(n, i, j, k):
    rows = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
    rows[i][j] = k
    return IntMatrix(rows)


def random_unimodular(rng: random.Random, n: int, steps: int = 6) -> IntMatrix:
    """Product of integer shears and coordinate swaps; always det +-1."""
    m = IntMatrix.identity(n)
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        m = m * shear(n, i, j, rng.randint(-3, 3))
    return m


@st.composite
def unimodular_matrices(draw, n=3, steps=6):
    seed = draw(st.integers(min_value=0, max_value=2 ** 32 - 1))
    return random_unimodular(random.Random(seed), n, steps)


@st.composite
def small_matrices(draw, n=3, lo=-9, hi=9):
    rows = draw(st.lists(
        st.lists(st.integers(min_value=lo, max_value=hi),
                 min_size=n, max_size=n),
        min_size=n, max_size=n))
    return IntMatrix(rows)


@st.composite
def nonzero_vectors(draw, n=3, lo=-20, hi=20):
    coords = draw(st.lists(st.integers(min_value=lo, max_value=hi),
                           min_size=n, max_size=n)
                  .filter(lambda c: any(c)))
    return IntVector(coords)

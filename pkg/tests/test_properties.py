import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from rmatrixkit.freefermion import r_f, xx_point
from rmatrixkit.sampling import random_sl2c
from rmatrixkit.tensor import (
    FockSpace,
    dump_matrix,
    eye,
    graded_permutation,
    parse_matrix,
)

finite = st.floats(
    min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False
)


@given(
    st.lists(
        st.lists(st.tuples(finite, finite), min_size=3, max_size=3),
        min_size=2,
        max_size=4,
    )
)
def test_dump_parse_round_trip(rows):
    m = np.array([[complex(re, im) for re, im in row] for row in rows])
    assert np.array_equal(parse_matrix(dump_matrix(m)), m)


@given(st.integers(min_value=0, max_value=2**32 - 1))
@settings(max_examples=25, deadline=None)
def test_sampled_points_are_unimodular(seed):
    A = random_sl2c(np.random.default_rng(seed))
    assert abs(A.a * A.d - A.b * A.c - 1.0) < 1e-12


@given(st.floats(min_value=0.05, max_value=1.5))
@settings(max_examples=20, deadline=None)
def test_xx_inversion_along_curve(u):
    space = FockSpace(2)
    A = xx_point(u)
    prod = r_f(space, 1, 2, A) @ r_f(space, 2, 1, A.inverse())
    assert np.max(np.abs(prod - A.a * A.d * eye(4))) < 1e-12


@given(st.integers(min_value=0, max_value=2**32 - 1))
@settings(max_examples=20, deadline=None)
def test_permutation_conjugates_r(seed):
    # moving both site labels with the permutation leaves the operator fixed
    rng = np.random.default_rng(seed)
    A = random_sl2c(rng)
    space = FockSpace(2)
    p = graded_permutation(space, 1, 2)
    assert np.max(
        np.abs(p @ r_f(space, 1, 2, A) @ p - r_f(space, 2, 1, A))
    ) < 1e-12

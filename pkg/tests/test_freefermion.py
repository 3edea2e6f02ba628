import numpy as np
import pytest

from rmatrixkit.freefermion import (
    IDENTITY_POINT,
    check_ybe_f,
    check_ybe_r0,
    hamiltonian_from_transfer,
    r0,
    r1,
    r_f,
    r_pm,
    transfer_matrix,
    xx_hopping_hamiltonian,
    xx_point,
)
from rmatrixkit.sampling import random_sl2c
from rmatrixkit.tensor import (
    FockSpace,
    eye,
    frobenius_residual,
    graded_permutation,
    number_ops,
)


@pytest.fixture
def space():
    return FockSpace(2)


def test_identity_point_gives_permutation(space):
    assert frobenius_residual(
        r_f(space, 1, 2, IDENTITY_POINT), graded_permutation(space, 1, 2)
    ) < 1e-14


def test_nn_coefficient_is_minus_a(space, rng):
    A = random_sl2c(rng)
    n1, _ = number_ops(space, 1)
    n2, _ = number_ops(space, 2)
    R = r_f(space, 1, 2, A)
    # project onto the doubly occupied state
    vec = np.zeros(space.dim)
    vec[np.argmax(np.diag((n1 @ n2).real))] = 1.0
    assert abs(vec @ R @ vec - (-A.a)) < 1e-12


def test_inversion_relation(space, rng):
    worst = 0.0
    for _ in range(20):
        A = random_sl2c(rng)
        prod = r_f(space, 1, 2, A) @ r_f(space, 2, 1, A.inverse())
        worst = max(worst, np.max(np.abs(prod - A.a * A.d * eye(space.dim))))
    assert worst < 1e-11


def test_ybe_f(rng):
    worst = max(
        check_ybe_f(random_sl2c(rng), random_sl2c(rng)) for _ in range(20)
    )
    assert worst < 1e-10


def test_ybe_r0(rng):
    worst = max(
        check_ybe_r0(random_sl2c(rng), random_sl2c(rng), random_sl2c(rng))
        for _ in range(10)
    )
    assert worst < 1e-10


def test_r0_equal_points_is_permutation(space, rng):
    A = random_sl2c(rng)
    assert frobenius_residual(
        r0(space, 1, 2, A, A), graded_permutation(space, 1, 2)
    ) < 1e-12


def test_r0_argument_slot_property(rng):
    space = FockSpace(3)
    A1, A2 = random_sl2c(rng), random_sl2c(rng)
    p23 = graded_permutation(space, 2, 3)
    lhs = p23 @ r0(space, 1, 2, A1, A2) @ p23
    rhs = r0(space, 1, 3, A1, A2)
    assert frobenius_residual(lhs, rhs) < 1e-12


def test_r_pm_consistency(space, rng):
    A1, A2 = random_sl2c(rng), random_sl2c(rng)
    rp = r_pm(space, 1, 2, A1, A2, +1)
    rm = r_pm(space, 1, 2, A1, A2, -1)
    assert frobenius_residual(rp + rm, r0(space, 1, 2, A1, A2)) < 1e-12
    assert frobenius_residual(rp - rm, r1(space, 1, 2, A1, A2)) < 1e-12


def test_transfer_matrices_commute():
    t1 = transfer_matrix(0.3, 4)
    t2 = transfer_matrix(0.8, 4)
    assert np.max(np.abs(t1 @ t2 - t2 @ t1)) < 1e-10


def test_hamiltonian_is_xx_hopping():
    h = hamiltonian_from_transfer(4)
    assert frobenius_residual(h, xx_hopping_hamiltonian(4)) < 1e-6


def test_xx_point_is_free_fermion(rng):
    u = rng.uniform(0.1, 1.4)
    A = xx_point(u)
    assert abs(A.a * A.d - A.b * A.c - 1.0) < 1e-12
    assert abs(A.a - np.cos(u)) < 1e-12 and abs(A.b - 1j * np.sin(u)) < 1e-12

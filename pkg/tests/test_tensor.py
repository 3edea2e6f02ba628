import numpy as np
import pytest

from rmatrixkit.sampling import random_complex
from rmatrixkit.tensor import (
    FockSpace,
    anticommutator,
    dump_matrix,
    equal_up_to_scalar,
    eye,
    fermion_mode,
    frobenius_residual,
    graded_permutation,
    kron,
    number_ops,
    parse_matrix,
    supertrace_mode,
)


def test_anticommutation_all_modes():
    space = FockSpace(3, n_layers=2)
    modes = [
        fermion_mode(space, s, l)
        for s in range(1, 4)
        for l in range(2)
    ]
    ident = eye(space.dim)
    worst = 0.0
    for i, (ci, cid) in enumerate(modes):
        for j, (cj, cjd) in enumerate(modes):
            delta = ident if i == j else 0 * ident
            worst = max(
                worst,
                np.max(np.abs(anticommutator(ci, cjd) - delta)),
                np.max(np.abs(anticommutator(ci, cj))),
            )
    assert worst < 1e-13


def test_graded_permutation_involution_and_conjugation():
    space = FockSpace(2)
    p = graded_permutation(space, 1, 2)
    assert np.allclose(p @ p, eye(space.dim))
    c1, _ = fermion_mode(space, 1)
    c2, _ = fermion_mode(space, 2)
    assert np.allclose(p @ c1 @ p, c2)


def test_supertrace_of_identity_vanishes():
    space = FockSpace(1)
    st = supertrace_mode(eye(2), space, 1)
    assert np.allclose(st, 0.0)


def test_supertrace_grading_sign():
    space = FockSpace(2)
    n1, _ = number_ops(space, 1)
    # str over site 1 of n1 ⊗ I is tr((-1)^n n) I = -I on the remaining site
    assert np.allclose(supertrace_mode(n1, space, 1), -eye(2))
    c2, c2d = fermion_mode(space, 2)
    # str(n ⊗ X) = -X: with X the site-2 number operator diag(0, 1)
    assert np.allclose(
        supertrace_mode(n1 @ c2d @ c2, space, 1), -np.diag([0.0, 1.0])
    )


def test_kron_mixed_product(rng):
    a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    b = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    c = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    d = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    lhs = kron(a, b) @ kron(c, d)
    rhs = kron(a @ c, b @ d)
    assert np.max(np.abs(lhs - rhs)) < 1e-12


def test_equal_up_to_scalar():
    a = np.array([[1.0, 2.0], [3.0, 4.0]], dtype=complex)
    assert abs(equal_up_to_scalar(2 * a, a) - 2.0) < 1e-12
    assert abs(equal_up_to_scalar(a, a) - 1.0) < 1e-12
    noisy = a + 1e-3 * np.array([[1, -1], [1j, 0.5]])
    assert equal_up_to_scalar(noisy, a, tol=1e-9) is None


def test_frobenius_residual_properties(rng):
    a = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    b = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    assert frobenius_residual(a, a) == 0.0
    assert frobenius_residual(eye(4), 0 * eye(4)) == pytest.approx(1.0)
    assert frobenius_residual(a, b) == pytest.approx(frobenius_residual(b, a))


def test_dump_parse_round_trip(rng):
    m = rng.standard_normal((5, 3)) + 1j * rng.standard_normal((5, 3))
    assert np.array_equal(parse_matrix(dump_matrix(m)), m)


def test_dump_format():
    text = dump_matrix(np.array([[1 + 2j, -0.5]]))
    assert text.splitlines() == ["1,2 -0.5,0"]

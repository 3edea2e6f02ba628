import numpy as np
import pytest

from rmatrixkit.quantum_affine import (
    AFFINE_GENERATORS,
    SUBALGEBRA_GENERATORS,
    algebra_residuals,
    identification_residual,
    intertwiner_r0,
    intertwiner_space,
    intertwining_residuals,
    params_to_sl2c,
    phi_flip_residual,
)
from rmatrixkit.sampling import random_complex, random_qg_params


def test_algebra_relations(rng):
    worst = 0.0
    for _ in range(10):
        p = random_qg_params(rng)
        worst = max(worst, max(algebra_residuals(p).values()))
    assert worst < 1e-10


def test_intertwining(rng):
    p1, p2 = random_qg_params(rng), random_qg_params(rng)
    z = random_complex(rng)
    assert max(intertwining_residuals(p1, p2, z).values()) < 1e-10


def test_intertwiner_space_dimensions(rng):
    for _ in range(5):
        p1, p2 = random_qg_params(rng), random_qg_params(rng)
        z = random_complex(rng)
        dim_full, _ = intertwiner_space(p1, p2, z, AFFINE_GENERATORS)
        dim_sub, _ = intertwiner_space(p1, p2, z, SUBALGEBRA_GENERATORS)
        assert dim_full == 1
        assert dim_sub == 2


def test_identification_up_to_sign(rng):
    worst = max(
        identification_residual(
            random_qg_params(rng), random_qg_params(rng), random_complex(rng)
        )
        for _ in range(10)
    )
    assert worst < 1e-10


def test_phi_flip_branch_coherence(rng):
    worst = max(phi_flip_residual(random_qg_params(rng)) for _ in range(10))
    assert worst < 1e-10


def test_params_to_sl2c_unimodular(rng):
    p = random_qg_params(rng)
    A = params_to_sl2c(p, 1j)
    assert abs(A.a * A.d - A.b * A.c - 1.0) < 1e-10


def test_symmetric_point_at_z_i(rng):
    p = random_qg_params(rng)
    A = params_to_sl2c(p, 1j)
    assert abs(A.a * A.b - A.c * A.d) < 1e-10

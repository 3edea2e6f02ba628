import numpy as np
import pytest

from rmatrixkit.sampling import (
    random_complex,
    random_couplings,
    random_odd_params,
    random_sl2c,
    symmetric_glued_point,
)
from rmatrixkit.ssw import GluedPoint
from rmatrixkit.superalgebra import (
    central_charge_flow,
    central_charges_ff,
    check_fermionic_invariance,
    check_super_algebra,
    d_matrices,
    derive_smatrix_from_symmetry,
    r_check,
    rcheck_even_invariance_residuals,
    symmetry_condition_residual,
)
from rmatrixkit.tensor import FockSpace


def test_super_algebra_relations(rng):
    worst = max(check_super_algebra(random_odd_params(rng)) for _ in range(10))
    assert worst < 1e-10


def test_even_invariance_biconditional(rng):
    couplings = random_couplings(rng)
    g1 = symmetric_glued_point(rng, couplings)
    g2 = symmetric_glued_point(rng, couplings)
    t1, t2 = random_complex(rng), random_complex(rng)
    assert max(
        rcheck_even_invariance_residuals(g1, g2, t1, t2).values()
    ) < 1e-9
    # a generic non-symmetric point breaks the invariance
    bad_point = random_sl2c(rng)
    assert symmetry_condition_residual(bad_point) > 1e-3
    broken = max(
        rcheck_even_invariance_residuals(
            GluedPoint(bad_point, g1.v), g2, t1, t2, enforce_symmetry=False
        ).values()
    )
    assert broken > 1e-3


def test_fermionic_invariance_gauge_independent(rng):
    couplings = random_couplings(rng)
    g1 = symmetric_glued_point(rng, couplings)
    g2 = symmetric_glued_point(rng, couplings)
    for _ in range(2):
        t1, t2 = random_complex(rng), random_complex(rng)
        assert max(
            check_fermionic_invariance(g1, g2, couplings, t1, t2).values()
        ) < 1e-9


def test_charge_flow_and_shortening(rng):
    couplings = random_couplings(rng)
    g1 = symmetric_glued_point(rng, couplings)
    g2 = symmetric_glued_point(rng, couplings)
    assert max(central_charge_flow(g1, g2, couplings).values()) < 1e-10
    for cc in central_charges_ff(g1, g2, couplings):
        assert abs(cc.C**2 - cc.P * cc.K - 0.25) < 1e-10


def test_derived_smatrix_unique_and_matches(rng):
    couplings = random_couplings(rng)
    g1 = symmetric_glued_point(rng, couplings)
    g2 = symmetric_glued_point(rng, couplings)
    t1, t2 = random_complex(rng), random_complex(rng)
    d1, d2, d1p, d2p = d_matrices(g1, g2, couplings, t1, t2)
    derived = derive_smatrix_from_symmetry(d1, d2, d1p, d2p)
    reference = r_check(FockSpace(2, n_layers=2), 1, g1, g2, t1, t2)
    scale = (reference.conj() * derived).sum() / (
        reference.conj() * reference
    ).sum()
    resid = np.linalg.norm(derived - scale * reference) / np.linalg.norm(
        reference
    )
    assert resid < 1e-9

import numpy as np
import pytest

from rmatrixkit.correspondence import (
    AdsPoint,
    ads_from_ff,
    bridge_coproduct,
    bridge_single_site,
    ff_from_ads,
    rcheck_ads,
)
from rmatrixkit.sampling import (
    random_ads_point,
    random_complex,
    random_couplings,
    random_qg_params,
)
from rmatrixkit.superalgebra import r_check
from rmatrixkit.tensor import FockSpace


def _shell_residual(q: AdsPoint) -> float:
    return abs(
        q.x_plus + 1.0 / q.x_plus - q.x_minus - 1.0 / q.x_minus - 1j / q.g
    )


def test_sampler_on_mass_shell(rng):
    for _ in range(10):
        assert _shell_residual(random_ads_point(rng)) < 1e-10


def test_round_trip_ads_ff_ads(rng):
    q = random_ads_point(rng)
    glued, couplings, t = ff_from_ads(q)
    back = ads_from_ff(glued, couplings, t)
    assert abs(back.x_plus - q.x_plus) < 1e-9
    assert abs(back.x_minus - q.x_minus) < 1e-9
    assert abs(back.eta - q.eta) < 1e-9
    assert abs(back.g - q.g) < 1e-9
    assert _shell_residual(back) < 1e-9


def test_bridge_single_site(rng):
    couplings = random_couplings(rng)
    q = random_qg_params(rng, equal_xy=True)
    assert max(
        bridge_single_site(q, couplings, random_complex(rng)).values()
    ) < 1e-9


def test_bridge_coproduct(rng):
    couplings = random_couplings(rng)
    q1 = random_qg_params(rng, equal_xy=True)
    q2 = random_qg_params(rng, equal_xy=True)
    assert max(
        bridge_coproduct(
            q1, q2, couplings, random_complex(rng), random_complex(rng)
        ).values()
    ) < 1e-9


def test_rcheck_ads_equals_glued_construction(rng):
    q1 = random_ads_point(rng)
    q2 = random_ads_point(rng, g=q1.g)
    matrix_ads = rcheck_ads(q1, q2)
    g1, _, t1 = ff_from_ads(q1)
    g2, _, t2 = ff_from_ads(q2)
    reference = r_check(FockSpace(2, n_layers=2), 1, g1, g2, t1, t2)
    scale = (reference.conj() * matrix_ads).sum() / (
        reference.conj() * reference
    ).sum()
    resid = np.linalg.norm(matrix_ads - scale * reference) / np.linalg.norm(
        reference
    )
    assert resid < 1e-9

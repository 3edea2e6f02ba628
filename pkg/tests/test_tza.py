import numpy as np
import pytest

from rmatrixkit.sampling import random_sl2c
from rmatrixkit.tza import (
    admissible,
    dependence_residuals,
    exchange_residuals,
    six_product_residual,
    structure_tensor,
    triple_product_rank,
)


def _triple(rng):
    while True:
        t = tuple(random_sl2c(rng) for _ in range(3))
        if admissible(*t):
            return t


def test_exchange_relations(rng):
    worst = max(exchange_residuals(*_triple(rng)) for _ in range(10))
    assert worst < 1e-9


def test_dependence_relations(rng):
    worst = max(dependence_residuals(*_triple(rng)) for _ in range(10))
    assert worst < 1e-9


def test_rank_six(rng):
    for _ in range(5):
        assert triple_product_rank(*_triple(rng)) == 6


def test_six_product(rng):
    for _ in range(5):
        while True:
            pts = tuple(random_sl2c(rng) for _ in range(4))
            if all(
                admissible(pts[i], pts[j], pts[k])
                for i in range(4)
                for j in range(i + 1, 4)
                for k in range(j + 1, 4)
            ):
                break
        assert six_product_residual(*pts) < 1e-8


def test_structure_tensor_shape(rng):
    s = structure_tensor(*_triple(rng))
    assert s.shape == (2, 2, 2, 2, 2, 2)
    assert np.all(np.isfinite(s))

"""Seeded random samplers for parameter points used across the test suites.

All samplers take a ``numpy.random.Generator`` so that every randomized
verification is reproducible from a single integer seed.
"""

from __future__ import annotations

import numpy as np

from .correspondence import AdsPoint
from .freefermion import Sl2cPoint
from .quantum_affine import QgParams, params_to_sl2c
from .ssw import Couplings, GluedPoint, solve_gluing
from .superalgebra import OddParams

__all__ = [
    "random_phase",
    "random_complex",
    "random_sl2c",
    "random_qg_params",
    "random_couplings",
    "symmetric_glued_point",
    "random_odd_params",
    "random_ads_point",
    "detuned_ads_point",
]


def random_phase(rng: np.random.Generator) -> complex:
    return complex(np.exp(2j * np.pi * rng.uniform()))


def random_complex(
    rng: np.random.Generator, lo: float = 0.5, hi: float = 2.0
) -> complex:
    """A complex number with modulus in [lo, hi] and uniform phase."""
    return complex(rng.uniform(lo, hi) * random_phase(rng))


def random_sl2c(rng: np.random.Generator) -> Sl2cPoint:
    """A unimodular parameter point with well-conditioned entries."""
    while True:
        a = random_complex(rng)
        b = random_complex(rng)
        c = random_complex(rng)
        d = (1.0 + b * c) / a
        if abs(d) > 0.1:
            return Sl2cPoint(a, b, c, d)


def random_qg_params(
    rng: np.random.Generator, equal_xy: bool = False
) -> QgParams:
    """Quantum-group parameters away from degenerate values of mu."""
    mu = complex(rng.uniform(0.2, 1.8) + 1j * rng.uniform(-0.5, 0.5))
    x = random_complex(rng)
    y = x if equal_xy else random_complex(rng)
    return QgParams(mu, x, y)


def random_couplings(rng: np.random.Generator) -> Couplings:
    return Couplings(random_complex(rng), random_complex(rng))


def symmetric_glued_point(
    rng: np.random.Generator, couplings: Couplings
) -> GluedPoint:
    """A parameter point satisfying the symmetry condition, glued to couplings.

    Sampled forward: quantum-group parameters at z = i map to a point with
    a b = c d exactly; the gluing variable is the larger-modulus root of the
    gluing condition for the given couplings.
    """
    point = params_to_sl2c(random_qg_params(rng), 1j)
    v1, v2 = solve_gluing(point, couplings)
    return GluedPoint(point, v1 if abs(v1) >= abs(v2) else v2)


def random_odd_params(rng: np.random.Generator) -> OddParams:
    """Unit-determinant parameters for the odd-generator representation."""
    while True:
        fa = random_complex(rng)
        fb = random_complex(rng)
        fc = random_complex(rng)
        fd = (1.0 + fb * fc) / fa
        if abs(fd) > 0.1:
            return OddParams(fa, fb, fc, fd)


def random_ads_point(
    rng: np.random.Generator, g: complex | None = None
) -> AdsPoint:
    """A point on the mass shell: x- and g are drawn, x+ solves the shell.

    The larger-modulus root of x+ + 1/x+ = x- + 1/x- + i/g is selected; the
    frame parameter eta is free.  Pass g to put several points on the shell
    of a single coupling.
    """
    x_minus = complex(rng.uniform(1.5, 3.0) * random_phase(rng))
    if g is None:
        g = random_complex(rng)
    s = x_minus + 1.0 / x_minus + 1j / g
    roots = np.roots([1.0, -s, 1.0])
    x_plus = complex(roots[int(np.argmax(np.abs(roots)))])
    eta = random_complex(rng)
    return AdsPoint(x_plus, x_minus, eta, g)


def detuned_ads_point(q: AdsPoint, epsilon: complex) -> AdsPoint:
    """The point with x+ shifted off the mass shell by epsilon."""
    return AdsPoint(q.x_plus + epsilon, q.x_minus, q.eta, q.g)

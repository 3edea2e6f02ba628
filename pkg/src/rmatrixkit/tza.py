"""Tetrahedron Zamolodchikov algebra of the light-cone R-operators.

The light-cone operators ``R^+`` and ``R^-`` of
:func:`rmatrixkit.freefermion.r_pm` satisfy a cubic exchange algebra whose
structure constants form a tensor ``S`` acting on sign triples: reversing
the lattice order of a product ``R^a_23 R^b_13 R^c_12`` produces a linear
combination of products ``R^c'_12 R^b'_13 R^a'_23``.  The eight ordered
triple products span only a six-dimensional space; the two linear
dependence relations among them give a 16-parameter gauge freedom of the
structure tensor.  Index convention: ``+`` maps to 0 and ``-`` to 1, and
``S[al, be, ga, al', be', ga']`` is the coefficient of the reversed
product with signs (al', be', ga').
"""

from __future__ import annotations

import itertools

import numpy as np

from .freefermion import Sl2cPoint, r_pm
from .tensor import FockSpace, frobenius_residual, residual_to_zero

__all__ = [
    "structure_tensor",
    "dependence_coefficients",
    "exchange_residuals",
    "dependence_residuals",
    "triple_product_rank",
    "gauge_transform",
    "six_product_residual",
    "admissible",
]

_SIGNS = (+1, -1)


def _idx(sign: int) -> int:
    return 0 if sign > 0 else 1


def admissible(a1: Sl2cPoint, a2: Sl2cPoint, a3: Sl2cPoint, margin: float = 1e-3) -> bool:
    """True when the pairwise differences of a_i d_i keep the tensor finite."""
    prods = [p.a * p.d for p in (a1, a2, a3)]
    return all(
        abs(prods[i] - prods[j]) > margin
        for i in range(3)
        for j in range(i + 1, 3)
    )


def structure_tensor(a1: Sl2cPoint, a2: Sl2cPoint, a3: Sl2cPoint) -> np.ndarray:
    """The (2,)*6 exchange tensor for the parameter points (a1, a2, a3).

    All rows are Kronecker deltas except the alternating sign patterns
    (+,-,+) and (-,+,-), which mix with weight ratios built from the
    products a_i c_i and b_i d_i and from the cross ratios
    F^{jk}_i = (a_i d_i - a_j d_j) / (a_i d_i - a_k d_k).
    """
    S = np.zeros((2,) * 6, dtype=complex)
    for al, be, ga in itertools.product(range(2), repeat=3):
        if (al, be, ga) not in ((0, 1, 0), (1, 0, 1)):
            S[al, be, ga, al, be, ga] = 1.0

    points = (a1, a2, a3)

    def ad(i: int) -> complex:
        return points[i - 1].a * points[i - 1].d

    def f(i: int, j: int, k: int) -> complex:
        return (ad(i) - ad(j)) / (ad(i) - ad(k))

    f23_1 = f(1, 2, 3)
    f21_3 = f(3, 2, 1)
    bd = [p.b * p.d for p in points]
    ac = [p.a * p.c for p in points]

    # Rows for the two alternating patterns.
    plus_minus_plus = (0, 1, 0)
    minus_plus_minus = (1, 0, 1)
    mix = np.zeros((2,) * 3, dtype=complex)
    mix[0, 0, 1] += f23_1 * bd[2] / bd[1]
    mix[1, 1, 0] -= f23_1 * ac[2] / ac[1]
    mix[0, 1, 1] -= f21_3 * bd[0] / bd[1]
    mix[1, 0, 0] += f21_3 * ac[0] / ac[1]
    S[plus_minus_plus] = mix
    S[plus_minus_plus][1, 0, 1] = 1.0
    S[minus_plus_minus] = -mix
    S[minus_plus_minus][0, 1, 0] = 1.0
    return S


def dependence_coefficients(
    a1: Sl2cPoint, a2: Sl2cPoint, a3: Sl2cPoint
) -> tuple[np.ndarray, np.ndarray]:
    """Coefficient tensors of the two linear dependence relations.

    Each is a (2, 2, 2) array T with sum_{abc} T[a,b,c] R^a_12 R^b_13
    R^c_23 = 0.  The second tensor follows from the first by the formal
    exchanges a <-> c, b <-> d of the parameters; entries at negated sign
    triples are reciprocals.
    """

    def build(get) -> np.ndarray:
        a = [get(p) for p in (a1, a2, a3)]
        T = np.zeros((2, 2, 2), dtype=complex)
        (A1, B1, C1, D1), (A2, B2, C2, D2), (A3, B3, C3, D3) = a
        T[0, 0, 0] = A1 * B3 / (B1 * A3)
        T[1, 1, 0] = B1 * C2 / (A1 * D2)
        T[0, 1, 1] = D2 * A3 / (C2 * B3)
        T[0, 1, 0] = 1.0
        for al, be, ga in itertools.product(range(2), repeat=3):
            if T[al, be, ga] != 0:
                T[1 - al, 1 - be, 1 - ga] = 1.0 / T[al, be, ga]
        return T

    t1 = build(lambda p: (p.a, p.b, p.c, p.d))
    t2 = build(lambda p: (p.c, p.d, p.a, p.b))
    return t1, t2


def _light_cone_ops(
    space: FockSpace, a1: Sl2cPoint, a2: Sl2cPoint, a3: Sl2cPoint
) -> dict[tuple[int, int], list[np.ndarray]]:
    """R^{+,-} on each pair of the three sites; key (j, k), value [R^+, R^-]."""
    points = {1: a1, 2: a2, 3: a3}
    return {
        (j, k): [r_pm(space, j, k, points[j], points[k], s) for s in _SIGNS]
        for j, k in ((1, 2), (1, 3), (2, 3))
    }


def exchange_residuals(
    a1: Sl2cPoint,
    a2: Sl2cPoint,
    a3: Sl2cPoint,
    tensor: np.ndarray | None = None,
) -> float:
    """Worst residual of the eight exchange relations on three sites."""
    space = FockSpace(3)
    ops = _light_cone_ops(space, a1, a2, a3)
    S = structure_tensor(a1, a2, a3) if tensor is None else tensor
    worst = 0.0
    for al, be, ga in itertools.product(range(2), repeat=3):
        lhs = ops[(2, 3)][al] @ ops[(1, 3)][be] @ ops[(1, 2)][ga]
        rhs = np.zeros_like(lhs)
        for alb, beb, gab in itertools.product(range(2), repeat=3):
            coeff = S[al, be, ga, alb, beb, gab]
            if coeff != 0:
                rhs += coeff * ops[(1, 2)][gab] @ ops[(1, 3)][beb] @ ops[(2, 3)][alb]
        worst = max(worst, frobenius_residual(lhs, rhs))
    return worst


def dependence_residuals(a1: Sl2cPoint, a2: Sl2cPoint, a3: Sl2cPoint) -> float:
    """Worst residual of the two linear dependence relations."""
    space = FockSpace(3)
    ops = _light_cone_ops(space, a1, a2, a3)
    worst = 0.0
    refs = [
        ops[(1, 2)][al] @ ops[(1, 3)][be] @ ops[(2, 3)][ga]
        for al, be, ga in itertools.product(range(2), repeat=3)
    ]
    for T in dependence_coefficients(a1, a2, a3):
        total = np.zeros_like(refs[0])
        for (al, be, ga), ref in zip(itertools.product(range(2), repeat=3), refs):
            total += T[al, be, ga] * ref
        worst = max(worst, residual_to_zero(total, *refs))
    return worst


def triple_product_rank(a1: Sl2cPoint, a2: Sl2cPoint, a3: Sl2cPoint) -> int:
    """Rank of the span of the eight ordered triple products."""
    space = FockSpace(3)
    ops = _light_cone_ops(space, a1, a2, a3)
    rows = [
        (ops[(1, 2)][al] @ ops[(1, 3)][be] @ ops[(2, 3)][ga]).reshape(-1)
        for al, be, ga in itertools.product(range(2), repeat=3)
    ]
    return int(np.linalg.matrix_rank(np.vstack(rows), tol=1e-8))


def gauge_transform(
    S: np.ndarray,
    t1: np.ndarray,
    t2: np.ndarray,
    c1: np.ndarray,
    c2: np.ndarray,
) -> np.ndarray:
    """Shift the structure tensor along the dependence relations.

    ``c1`` and ``c2`` are free (2, 2, 2) coefficient arrays; the added
    term contracts them with the dependence tensors taken at reversed
    lower indices, which leaves all exchange relations intact.
    """
    extra = np.einsum("abc,zyx->abcxyz", c1, t1) + np.einsum(
        "abc,zyx->abcxyz", c2, t2
    )
    return S + extra


def six_product_residual(
    a1: Sl2cPoint, a2: Sl2cPoint, a3: Sl2cPoint, a4: Sl2cPoint
) -> float:
    """Residual of the quartic compatibility relation on four sites.

    Reordering a product of six light-cone operators on four sites in two
    inequivalent ways gives two quartic combinations of structure tensors
    whose difference annihilates every reversed six-fold product
    R_12 R_13 R_23 R_14 R_24 R_34.
    """
    S123 = structure_tensor(a1, a2, a3)
    S124 = structure_tensor(a1, a2, a4)
    S134 = structure_tensor(a1, a3, a4)
    S234 = structure_tensor(a2, a3, a4)
    # Index bookkeeping: lower-case letters are the free upper indices
    # (a..f), upper-case letters are the contracted primed and the free
    # double-primed sign indices.
    term1 = np.einsum(
        "defDEF,bcFGHI,aHEJKL,JGDMNO->abcdefMNKOLI",
        S123,
        S124,
        S134,
        S234,
        optimize=True,
    )
    term2 = np.einsum(
        "abdGHI,GceJKL,HKfMNO,ILOPQR->abcdefJMNPQR",
        S234,
        S134,
        S124,
        S123,
        optimize=True,
    )
    diff = term1 - term2

    space = FockSpace(4)
    points = {1: a1, 2: a2, 3: a3, 4: a4}
    ops = {
        (j, k): [r_pm(space, j, k, points[j], points[k], s) for s in _SIGNS]
        for j, k in ((1, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 4))
    }
    # Reversed products indexed by the sign tuple (a'', b'', c'', d'', e'', f'').
    dim = space.dim
    worst = 0.0
    prods = {}
    for signs in itertools.product(range(2), repeat=6):
        ab, bb, cb, db, eb, fb = signs
        prods[signs] = (
            ops[(1, 2)][fb]
            @ ops[(1, 3)][eb]
            @ ops[(2, 3)][db]
            @ ops[(1, 4)][cb]
            @ ops[(2, 4)][bb]
            @ ops[(3, 4)][ab]
        )
    refs = list(prods.values())
    for free in itertools.product(range(2), repeat=6):
        total = np.zeros((dim, dim), dtype=complex)
        for signs, mat in prods.items():
            coeff = diff[free + signs]
            if coeff != 0:
                total += coeff * mat
        worst = max(worst, residual_to_zero(total, *refs[:4]))
    return worst

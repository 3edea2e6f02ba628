"""Two-dimensional representations of the q=i affine quantum algebra.

This module realizes the deformed algebra generated by ``k_r, e_r, f_r,
h_r`` (r = 0, 1) on a single fermionic mode, builds the (twisted, graded)
coproducts on two sites, constructs the explicit intertwiner ``r0`` between
the coproduct and its opposite, and provides the change of variables that
identifies the intertwiner with the free-fermion R-matrix of
:mod:`rmatrixkit.freefermion`.

Conventions: single-site basis is (|0>, |1>), with number operator
``n = diag(0, 1)``, hole projector ``m = diag(1, 0)``, annihilator
``c = [[0, 1], [0, 0]]`` and grading ``F = m - n``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .freefermion import Sl2cPoint
from .tensor import SIGMA_MINUS, frobenius_residual, kron

__all__ = [
    "QgParams",
    "generators",
    "algebra_residuals",
    "coproduct",
    "opposite_coproduct",
    "intertwiner_r0",
    "intertwining_residuals",
    "intertwiner_space",
    "params_to_sl2c",
    "identification_residual",
    "phi_flip_residual",
    "CARTAN_MATRIX",
    "AFFINE_GENERATORS",
    "SUBALGEBRA_GENERATORS",
]

CARTAN_MATRIX = np.array([[2.0, -2.0], [-2.0, 2.0]])

_N = np.diag([0.0, 1.0]).astype(complex)
_M = np.diag([1.0, 0.0]).astype(complex)
_C = SIGMA_MINUS
_CDAG = SIGMA_MINUS.conj().T
_I2 = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class QgParams:
    """Labels (mu; x, y) of a two-dimensional module, with q = i.

    The Cartan eigenvalue is ``lam = i**(-1 - mu)`` and the normalization
    of the odd generators is ``phi = sqrt((lam - 1/lam) / (2i))``.
    """

    mu: complex
    x: complex
    y: complex

    @property
    def lam(self) -> complex:
        return np.exp(-0.5j * np.pi * (1.0 + self.mu))

    @property
    def phi(self) -> complex:
        lam = self.lam
        return np.sqrt((lam - 1.0 / lam) / 2j)


def generators(p: QgParams, phi_sign: int = 1) -> dict[str, np.ndarray]:
    """Single-site 2x2 matrices for all generators, plus the grading F.

    ``phi_sign`` flips the square-root branch of ``phi``; the two choices
    are related by conjugation with ``k0`` (see :func:`phi_flip_residual`).
    """
    lam = p.lam
    phi = phi_sign * p.phi
    nm = _N - _M
    g = {
        "k0": lam ** -1 * nm,
        "e0": -phi / p.x * _CDAG,
        "f0": phi * p.x * _C,
        "h0": p.mu * _I2 - _M + _N,
        "k1": lam * nm,
        "e1": phi / p.y * _C,
        "f1": -phi * p.y * _CDAG,
        "h1": -p.mu * _I2 + _M - _N,
        "F": _M - _N,
    }
    g["k0inv"] = lam * nm
    g["k1inv"] = lam ** -1 * nm
    return g


def algebra_residuals(p: QgParams) -> dict[str, float]:
    """Residuals of the defining relations in the representation ``p``.

    Checks: k anticommutes with e and f, [e_r, f_s] = delta_rs
    (k_r - 1/k_r)/(2i), the h-weights given by the affine Cartan matrix,
    the central squares k0^2 = lam^-2 and k1^2 = lam^2, and the
    nilpotency e_r^2 = f_r^2 = 0.
    """
    g = generators(p)
    lam = p.lam
    out: dict[str, float] = {}
    ks = [g["k0"], g["k1"]]
    kinvs = [g["k0inv"], g["k1inv"]]
    es = [g["e0"], g["e1"]]
    fs = [g["f0"], g["f1"]]
    hs = [g["h0"], g["h1"]]
    scale = max(1.0, abs(lam), abs(1.0 / lam))
    for r in range(2):
        for s in range(2):
            out[f"k{r}e{s}_anti"] = np.abs(ks[r] @ es[s] + es[s] @ ks[r]).max()
            out[f"k{r}f{s}_anti"] = np.abs(ks[r] @ fs[s] + fs[s] @ ks[r]).max()
            rhs = (r == s) * (ks[r] - kinvs[r]) / 2j
            out[f"e{r}f{s}_comm"] = (
                np.abs(es[r] @ fs[s] - fs[s] @ es[r] - rhs).max() / scale
            )
            out[f"h{r}e{s}_weight"] = np.abs(
                hs[r] @ es[s] - es[s] @ hs[r] - CARTAN_MATRIX[r, s] * es[s]
            ).max()
            out[f"h{r}f{s}_weight"] = np.abs(
                hs[r] @ fs[s] - fs[s] @ hs[r] + CARTAN_MATRIX[r, s] * fs[s]
            ).max()
        out[f"e{r}_nilpotent"] = np.abs(es[r] @ es[r]).max()
        out[f"f{r}_nilpotent"] = np.abs(fs[r] @ fs[r]).max()
    out["k0_square_central"] = np.abs(g["k0"] @ g["k0"] - lam ** -2 * _I2).max()
    out["k1_square_central"] = np.abs(g["k1"] @ g["k1"] - lam ** 2 * _I2).max()
    return out


# Coproducts written as sums of pure tensor factors.  Each generator maps
# to a list of (left factor, right factor) labels; labels refer to the
# single-site generator dictionary augmented with the central element Z.
_COPRODUCT_TERMS: dict[str, list[tuple[tuple[str, ...], tuple[str, ...]]]] = {
    "k0": [(("k0",), ("k0",))],
    "k1": [(("k1",), ("k1",))],
    "F": [(("F",), ("F",))],
    "h0": [(("h0",), ()), ((), ("h0",))],
    "h1": [(("h1",), ()), ((), ("h1",))],
    "e0": [(("e0",), ("Z",)), (("k0", "F"), ("e0",))],
    "f0": [(("f0",), ("k0inv", "Zinv")), (("F",), ("f0",))],
    "e1": [(("e1",), ()), (("Z", "k1", "F"), ("e1",))],
    "f1": [(("f1",), ("k1inv",)), (("Zinv", "F"), ("f1",))],
}


# Generators built from a single fermionic oscillator are odd; their
# embedding at the second site carries a Jordan-Wigner string F on the
# first site.
_ODD_LABELS = frozenset({"e0", "f0", "e1", "f1"})


def _embed(labels: tuple[str, ...], site: int, g: dict[str, np.ndarray], z: complex) -> np.ndarray:
    """Chain-operator realization of an ordered product of labels at a site."""
    total = np.eye(4, dtype=complex)
    for lab in labels:
        if lab == "Z":
            total = total * z
            continue
        if lab == "Zinv":
            total = total / z
            continue
        mat = g[lab]
        if site == 1:
            factor = kron(mat, _I2)
        elif lab in _ODD_LABELS:
            factor = kron(_M - _N, mat)
        else:
            factor = kron(_I2, mat)
        total = total @ factor
    return total


def coproduct(name: str, p1: QgParams, p2: QgParams, z: complex) -> np.ndarray:
    """4x4 matrix of Delta(J) on the two-site module (p1, p2)."""
    g1, g2 = generators(p1), generators(p2)
    total = np.zeros((4, 4), dtype=complex)
    for left, right in _COPRODUCT_TERMS[name]:
        total += _embed(left, 1, g1, z) @ _embed(right, 2, g2, z)
    return total


def opposite_coproduct(name: str, p1: QgParams, p2: QgParams, z: complex) -> np.ndarray:
    """4x4 matrix of the flipped coproduct sigma(Delta(J)) on (p1, p2)."""
    g1, g2 = generators(p1), generators(p2)
    total = np.zeros((4, 4), dtype=complex)
    for left, right in _COPRODUCT_TERMS[name]:
        total += _embed(right, 1, g1, z) @ _embed(left, 2, g2, z)
    return total


AFFINE_GENERATORS = ("k0", "e0", "f0", "h0", "k1", "e1", "f1", "h1", "F")
SUBALGEBRA_GENERATORS = ("k0", "e0", "f0", "h0")


def intertwiner_r0(p1: QgParams, p2: QgParams, z: complex) -> np.ndarray:
    """Explicit intertwiner between the coproduct and its opposite."""
    l1, l2 = p1.lam, p2.lam
    w1, w2 = p1.x * p1.y, p2.x * p2.y
    nn = kron(_N, _N)
    nm = kron(_N, _M)
    mn = kron(_M, _N)
    mm = kron(_M, _M)
    # Two-site hop operators built from the Jordan-Wigner chain modes:
    # c1 = c x I, c2 = F x c, so cdag2 c1 = (Fc) x cdag and cdag1 c2 = (cdag F) x c.
    cdag2_c1 = kron((_M - _N) @ _C, _CDAG)
    cdag1_c2 = kron(_CDAG @ (_M - _N), _C)
    # Branch-coherent square root of (lam1 - 1/lam1)(lam2 - 1/lam2): the
    # generators carry phi_r = sqrt((lam_r - 1/lam_r)/(2i)), and the
    # intertwining property holds only with the branch 2i phi_1 phi_2.
    hop = 2j * p1.phi * p2.phi * (
        p1.x * p2.y * l2 * cdag2_c1 + p2.x * p1.y * l1 * cdag1_c2
    )
    return (
        (w1 * l1 * l2 - w2) * nn
        + (w2 * l1 - w1 * l2) / z * nm
        + (w2 * l2 - w1 * l1) * z * mn
        + (w1 - w2 * l1 * l2) * mm
        - hop
    )


def intertwining_residuals(
    p1: QgParams, p2: QgParams, z: complex, names: tuple[str, ...] = AFFINE_GENERATORS
) -> dict[str, float]:
    """Residuals of Delta'(J) r0 = r0 Delta(J) for each generator J."""
    r = intertwiner_r0(p1, p2, z)
    scale = max(1.0, np.linalg.norm(r))
    out = {}
    for name in names:
        lhs = opposite_coproduct(name, p1, p2, z) @ r
        rhs = r @ coproduct(name, p1, p2, z)
        out[name] = np.linalg.norm(lhs - rhs) / scale
    return out


def intertwiner_space(
    p1: QgParams, p2: QgParams, z: complex, names: tuple[str, ...]
) -> tuple[int, np.ndarray]:
    """Dimension and basis of {X : Delta'(J) X = X Delta(J) for all J}.

    Returns ``(dim, basis)`` where ``basis`` has shape (dim, 4, 4); the
    basis vectors are right-singular vectors of the stacked constraints
    with singular value below 1e-10 times the largest one.
    """
    rows = []
    eye4 = np.eye(4)
    for name in names:
        lhs = opposite_coproduct(name, p1, p2, z)
        rhs = coproduct(name, p1, p2, z)
        # Row-major vectorization: vec(A X B) = (A kron B^T) vec(X).
        rows.append(kron(lhs, eye4) - kron(eye4, rhs.T))
    stacked = np.vstack(rows)
    _, sing, vh = np.linalg.svd(stacked)
    tol = 1e-10 * sing[0]
    null_mask = np.concatenate([sing, np.zeros(vh.shape[0] - len(sing))]) < tol
    basis = vh[null_mask].conj().reshape(-1, 4, 4)
    return basis.shape[0], basis


def params_to_sl2c(p: QgParams, z: complex) -> Sl2cPoint:
    """Free-fermion parameters (a, b, c, d) of the module labels (p, z).

    Square-root branches are combined so that a d - b c = 1 holds exactly:
    the three radicals sqrt(lam), sqrt(x y) and sqrt(lam - 1/lam) are each
    taken on the principal branch and reused across all four entries.
    """
    lam = p.lam
    sq_lam = np.sqrt(lam)
    sq_w = np.sqrt(p.x * p.y)
    sq_s = p.phi * np.sqrt(2j)
    a = sq_lam / (sq_w * sq_s)
    b = sq_w / (1j * z * sq_lam * sq_s)
    c = 1j * z / (sq_w * sq_lam * sq_s)
    d = sq_w * sq_lam / sq_s
    return Sl2cPoint(a, b, c, d)


def identification_residual(p1: QgParams, p2: QgParams, z: complex) -> float:
    """Residual of the similarity identification of r0 with R^f.

    The free-fermion operator R^0_{12}(A_1, A_2), with A_r obtained from
    :func:`params_to_sl2c`, equals the intertwiner conjugated with the
    diagonal operators G_r = m_r + sqrt(lam_r y_r / x_r) n_r and scaled by
    -1/sqrt((lam1 - 1/lam1)(lam2 - 1/lam2) x1 y1 x2 y2 lam1 lam2), with
    all radicals on branches consistent with :func:`params_to_sl2c`.
    """
    from .freefermion import r0 as free_r0
    from .tensor import FockSpace

    sp = FockSpace(2)
    a1 = params_to_sl2c(p1, z)
    a2 = params_to_sl2c(p2, z)
    lhs = free_r0(sp, 1, 2, a1, a2)

    def pieces(p: QgParams) -> tuple[complex, complex, complex]:
        return np.sqrt(p.lam), np.sqrt(p.x * p.y), p.phi * np.sqrt(2j)

    sq_lam1, sq_w1, sq_s1 = pieces(p1)
    sq_lam2, sq_w2, sq_s2 = pieces(p2)
    # sqrt(y_r lam_r / x_r) on the branch coherent with the radicals above.
    g1 = sq_w1 * sq_lam1 / p1.x
    g2 = sq_w2 * sq_lam2 / p2.x
    G = kron(_M + g1 * _N, _M + g2 * _N)
    Ginv = kron(_M + _N / g1, _M + _N / g2)
    pref = -1.0 / (sq_s1 * sq_s2 * sq_w1 * sq_w2 * sq_lam1 * sq_lam2)
    rhs = pref * Ginv @ intertwiner_r0(p1, p2, z) @ G
    return frobenius_residual(lhs, rhs)


def phi_flip_residual(p: QgParams) -> float:
    """Check that flipping the sign of phi is conjugation by k0."""
    g_plus = generators(p, phi_sign=1)
    g_minus = generators(p, phi_sign=-1)
    k0, k0inv = g_plus["k0"], g_plus["k0inv"]
    worst = 0.0
    for name in ("e0", "f0", "e1", "f1"):
        worst = max(
            worst,
            float(np.abs(g_minus[name] - k0 @ g_plus[name] @ k0inv).max()),
        )
    return worst

"""Centrally extended su(2|2) on two-layer fermionic sites.

The algebra carries six even generators (two commuting sl(2) triples), eight
odd generators parametrized by a unimodular 2x2 matrix of labels, and three
central charges.  Realized on a four-dimensional site built from an up-layer
and a down-layer fermionic oscillator, it acts by symmetry on the two-layer
R-matrix of :mod:`rmatrixkit.ssw` once that matrix is brought to its
nearest-neighbour gauge.  This module provides the generators, the gauge
operators, the gauged R-matrix, the label matrices driving the fermionic
invariance, the central-charge flow, and an independent reconstruction of the
S-matrix as the unique solution of the symmetry constraints.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .freefermion import Sl2cPoint
from .ssw import Couplings, GluedPoint, gluing_residual, ssw_r
from .tensor import (
    FockSpace,
    anticommutator,
    commutator,
    eye,
    fermion_mode,
    frobenius_residual,
    graded_permutation,
    number_ops,
    residual_to_zero,
)

__all__ = [
    "OddParams",
    "CentralCharges",
    "IDENTITY_LABELS",
    "super_generators",
    "check_super_algebra",
    "automorphism_residual",
    "gauge_u",
    "gauge_v",
    "symmetry_condition_residual",
    "r_check",
    "even_invariance_residuals",
    "rcheck_even_invariance_residuals",
    "braided_ybe_residual",
    "bc_matrices",
    "d_matrices",
    "check_fermionic_invariance",
    "central_charges_ff",
    "central_charge_flow",
    "derive_smatrix_from_symmetry",
    "hubbard_chain_hamiltonian",
    "eta_pairing_ladder",
    "ODD_NAMES",
    "EVEN_NAMES",
]

ODD_NAMES = ("Q11", "Q21", "Q12", "Q22", "S11", "S21", "S12", "S22")
EVEN_NAMES = ("L11", "L12", "L21", "R11", "R12", "R21")

UP, DOWN = 0, 1


@dataclass(frozen=True)
class OddParams:
    """Labels of the odd generators, assembled as a unimodular 2x2 matrix."""

    fa: complex
    fb: complex
    fc: complex
    fd: complex

    def __post_init__(self) -> None:
        det = self.fa * self.fd - self.fb * self.fc
        if abs(det - 1.0) > 1e-8:
            raise ValueError(f"label matrix must be unimodular, det = {det}")

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.fa, self.fb], [self.fc, self.fd]], dtype=complex)

    @classmethod
    def from_matrix(cls, m: np.ndarray) -> "OddParams":
        return cls(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    @property
    def charges(self) -> "CentralCharges":
        return CentralCharges(
            C=(self.fa * self.fd + self.fb * self.fc) / 2.0,
            P=self.fa * self.fb,
            K=self.fc * self.fd,
        )


@dataclass(frozen=True)
class CentralCharges:
    C: complex
    P: complex
    K: complex

    @property
    def shortening_residual(self) -> float:
        return abs(self.C**2 - self.P * self.K - 0.25)


IDENTITY_LABELS = OddParams(1.0, 0.0, 0.0, 1.0)


def super_generators(
    d: OddParams, space: FockSpace, site: int
) -> dict[str, np.ndarray]:
    """All sixteen generators plus the outer-automorphism charge B at a site.

    Keys: L11/L12/L21/L22 and R11/R12/R21/R22 (even), Q/S with upper then
    lower index (odd), and "B".  Odd generators embedded on a chain carry the
    Jordan-Wigner strings of the underlying mode operators.
    """
    if space.n_layers != 2:
        raise ValueError("superalgebra generators need a two-layer space")
    cu, cu_dag = fermion_mode(space, site, UP)
    cd, cd_dag = fermion_mode(space, site, DOWN)
    nu, mu = number_ops(space, site, UP)
    nd, md = number_ops(space, site, DOWN)
    dim = space.dim
    fa, fb, fc, fd = d.fa, d.fb, d.fc, d.fd
    gens = {
        "R11": 0.5 * (eye(dim) - nu - nd),
        "R12": cd @ cu,
        "R21": cu_dag @ cd_dag,
        "L11": 0.5 * (nu - nd),
        "L12": cu_dag @ cd,
        "L21": cd_dag @ cu,
        "Q11": (fa * md + fb * nd) @ cu_dag,
        "Q21": (fa * mu + fb * nu) @ cd_dag,
        "Q12": -(fb * mu + fa * nu) @ cd,
        "Q22": (fb * md + fa * nd) @ cu,
        "S11": (fd * md + fc * nd) @ cu,
        "S21": -(fc * mu + fd * nu) @ cd_dag,
        "S12": (fd * mu + fc * nu) @ cd,
        "S22": (fc * md + fd * nd) @ cu_dag,
        "B": nu @ nd + mu @ md,
    }
    gens["R22"] = -gens["R11"]
    gens["L22"] = -gens["L11"]
    return gens


def _indexed(gens: dict[str, np.ndarray], family: str) -> dict[tuple, np.ndarray]:
    return {
        (i, j): gens[f"{family}{i}{j}"] for i in (1, 2) for j in (1, 2)
    }


_EPS = {(1, 2): 1.0, (2, 1): -1.0, (1, 1): 0.0, (2, 2): 0.0}


def check_super_algebra(d: OddParams) -> float:
    """Max residual of every displayed (anti)commutation relation on one site."""
    space = FockSpace(1, n_layers=2)
    gens = super_generators(d, space, 1)
    L = _indexed(gens, "L")
    R = _indexed(gens, "R")
    Q = _indexed(gens, "Q")
    S = _indexed(gens, "S")
    ch = d.charges
    ident = eye(space.dim)
    idx = (1, 2)
    worst = ch.shortening_residual
    delta = lambda i, j: 1.0 if i == j else 0.0

    for a in idx:
        for b in idx:
            for c in idx:
                for e in idx:
                    worst = max(
                        worst,
                        # both sl(2) triples close among themselves
                        residual_to_zero(
                            commutator(L[a, b], L[c, e])
                            - delta(c, b) * L[a, e]
                            + delta(a, e) * L[c, b]
                        ),
                        residual_to_zero(
                            commutator(R[a, b], R[c, e])
                            - delta(c, b) * R[a, e]
                            + delta(a, e) * R[c, b]
                        ),
                        # mixed even-odd commutators
                        residual_to_zero(
                            commutator(L[a, b], Q[c, e])
                            - delta(c, b) * Q[a, e]
                            + 0.5 * delta(a, b) * Q[c, e]
                        ),
                        residual_to_zero(
                            commutator(L[a, b], S[c, e])
                            + delta(e, a) * S[c, b]
                            - 0.5 * delta(a, b) * S[c, e]
                        ),
                        residual_to_zero(
                            commutator(R[a, b], S[c, e])
                            - delta(c, b) * S[a, e]
                            + 0.5 * delta(a, b) * S[c, e]
                        ),
                        residual_to_zero(
                            commutator(R[a, b], Q[c, e])
                            + delta(a, e) * Q[c, b]
                            - 0.5 * delta(a, b) * Q[c, e]
                        ),
                        # anticommutators producing the central charges
                        residual_to_zero(
                            anticommutator(Q[a, b], Q[c, e])
                            - _EPS[a, c] * _EPS[b, e] * ch.P * ident
                        ),
                        residual_to_zero(
                            anticommutator(S[a, b], S[c, e])
                            - _EPS[a, c] * _EPS[b, e] * ch.K * ident
                        ),
                        residual_to_zero(
                            anticommutator(Q[a, b], S[c, e])
                            - delta(c, b) * L[a, e]
                            - delta(a, e) * R[c, b]
                            - delta(c, b) * delta(a, e) * ch.C * ident
                        ),
                    )
    # B commutes with the even part
    for name in EVEN_NAMES:
        worst = max(worst, residual_to_zero(commutator(gens["B"], gens[name])))
    return worst


def automorphism_residual(d: OddParams, phi: complex) -> float:
    """exp(i phi B) J(D) exp(-i phi B) = J(D E), E = diag(exp(-i phi), exp(i phi))."""
    space = FockSpace(1, n_layers=2)
    gens = super_generators(d, space, 1)
    twist = np.diag([np.exp(-1j * phi), np.exp(1j * phi)]).astype(complex)
    gens_t = super_generators(OddParams.from_matrix(d.matrix @ twist), space, 1)
    conj = np.diag(np.exp(1j * phi * np.diag(gens["B"])))
    conj_inv = np.diag(np.exp(-1j * phi * np.diag(gens["B"])))
    worst = 0.0
    for name in ODD_NAMES + EVEN_NAMES:
        worst = max(
            worst, frobenius_residual(conj @ gens[name] @ conj_inv, gens_t[name])
        )
    return worst


# ---------------------------------------------------------------------------
# gauge operators and the nearest-neighbour R-matrix
# ---------------------------------------------------------------------------


def gauge_u(space: FockSpace, site: int, point: Sl2cPoint, t: complex) -> np.ndarray:
    """Diagonal gauge operator with occupation weights (1, t, t, c/b)."""
    if t == 0:
        raise ValueError("gauge parameter t must be nonzero")
    if point.b == 0:
        raise ValueError("gauge operator needs b != 0")
    nu, mu = number_ops(space, site, UP)
    nd, md = number_ops(space, site, DOWN)
    return mu @ md + t * (mu @ nd + nu @ md) + (point.c / point.b) * nu @ nd


def gauge_v(space: FockSpace, site: int) -> np.ndarray:
    """Quarter-turn diagonal operator (m - i n) on both layers of a site."""
    nu, mu = number_ops(space, site, UP)
    nd, md = number_ops(space, site, DOWN)
    return (mu - 1j * nu) @ (md - 1j * nd)


def symmetry_condition_residual(point: Sl2cPoint) -> float:
    return abs(point.a * point.b - point.c * point.d)


def r_check(
    space: FockSpace,
    j: int,
    gj: GluedPoint,
    gk: GluedPoint,
    tj: complex = 1.0,
    tk: complex = 1.0,
    enforce_symmetry: bool = True,
) -> np.ndarray:
    """Nearest-neighbour gauged R-matrix acting on sites (j, j+1).

    Applies the permutation and the diagonal gauge, then conjugates by the
    quarter-turn operator of the even-numbered site of the bond, so that the
    result commutes with both sl(2) families summed over the two sites.
    """
    k = j + 1
    if enforce_symmetry:
        for g in (gj, gk):
            if symmetry_condition_residual(g.point) > 1e-9:
                raise ValueError("symmetry condition ab = cd violated")
    uj = gauge_u(space, j, gj.point, tj)
    uk = gauge_u(space, k, gk.point, tk)
    uj_inv = np.diag(1.0 / np.diag(uj))
    uk_inv = np.diag(1.0 / np.diag(uk))
    perm = graded_permutation(space, j, k)
    r_prime = perm @ uj_inv @ uk_inv @ ssw_r(space, j, k, gj, gk) @ uj @ uk
    even_site = k if j % 2 == 1 else j
    v = gauge_v(space, even_site)
    v_inv = np.diag(1.0 / np.diag(v))
    return v_inv @ r_prime @ v


def even_invariance_residuals(g1: GluedPoint, g2: GluedPoint) -> dict[str, float]:
    """Invariance of the raw two-layer R-matrix under the even generators.

    The full down-spin sl(2) and the Cartan of the up-spin sl(2) commute with
    the R-matrix unconditionally; the weighted anticommutators with the
    raising/lowering generators vanish exactly when ab = cd at both points.
    """
    space = FockSpace(2, n_layers=2)
    r = ssw_r(space, 1, 2, g1, g2)
    gens1 = super_generators(IDENTITY_LABELS, space, 1)
    gens2 = super_generators(IDENTITY_LABELS, space, 2)
    out = {
        name: residual_to_zero(commutator(r, gens1[name] + gens2[name]), r)
        for name in ("L11", "L12", "L21", "R11")
    }
    p1, p2 = g1.point, g2.point
    out["R12_anticom"] = residual_to_zero(
        anticommutator(
            r,
            (p1.b / p1.c) * gens1["R12"] - (p2.b / p2.c) * gens2["R12"],
        ),
        r,
    )
    out["R21_anticom"] = residual_to_zero(
        anticommutator(
            r,
            (p1.c / p1.b) * gens1["R21"] - (p2.c / p2.b) * gens2["R21"],
        ),
        r,
    )
    return out


def rcheck_even_invariance_residuals(
    g1: GluedPoint,
    g2: GluedPoint,
    t1: complex = 1.0,
    t2: complex = 1.0,
    enforce_symmetry: bool = True,
) -> dict[str, float]:
    """Commutators of the gauged R-matrix with all even two-site generators."""
    space = FockSpace(2, n_layers=2)
    r = r_check(space, 1, g1, g2, t1, t2, enforce_symmetry=enforce_symmetry)
    gens1 = super_generators(IDENTITY_LABELS, space, 1)
    gens2 = super_generators(IDENTITY_LABELS, space, 2)
    return {
        name: residual_to_zero(commutator(r, gens1[name] + gens2[name]), r)
        for name in EVEN_NAMES
    }


def braided_ybe_residual(
    g1: GluedPoint,
    g2: GluedPoint,
    g3: GluedPoint,
    enforce_symmetry: bool = True,
) -> float:
    """R12(A2,A3) R23(A1,A3) R12(A1,A2) = R23(A1,A2) R12(A1,A3) R23(A2,A3)."""
    space = FockSpace(3, n_layers=2)

    def rc(j, ga, gb):
        return r_check(space, j, ga, gb, enforce_symmetry=enforce_symmetry)

    lhs = rc(1, g2, g3) @ rc(2, g1, g3) @ rc(1, g1, g2)
    rhs = rc(2, g1, g2) @ rc(1, g1, g3) @ rc(2, g2, g3)
    return frobenius_residual(lhs, rhs)


# ---------------------------------------------------------------------------
# fermionic invariance and the central charges
# ---------------------------------------------------------------------------


def bc_matrices(
    g: GluedPoint, couplings: Couplings, t: complex = 1.0
) -> tuple[np.ndarray, np.ndarray]:
    """The unimodular label matrices attached to a glued point."""
    if gluing_residual(g, couplings) > 1e-8:
        raise ValueError("gluing condition violated")
    a, b, c, d = g.point.a, g.point.b, g.point.c, g.point.d
    if 0 in (b, c, t):
        raise ValueError("b, c and t must be nonzero")
    theta, xi = couplings.theta, couplings.xi
    v = g.v
    pref = np.sqrt(theta * xi) * np.exp(-0.25j * np.pi)
    bmat = pref * np.array(
        [
            [(theta / xi) * c * v / (a * d * t), (xi / theta) * t / (c * v)],
            [-1.0 / (b * t), -t / c],
        ],
        dtype=complex,
    )
    cmat = np.diag([c / a, a / c]).astype(complex)
    return bmat, cmat


def d_matrices(
    g1: GluedPoint,
    g2: GluedPoint,
    couplings: Couplings,
    t1: complex = 1.0,
    t2: complex = 1.0,
) -> tuple[OddParams, OddParams, OddParams, OddParams]:
    """Label matrices (D1, D2, D1', D2') on either side of the gauged R-matrix."""
    b1, c1 = bc_matrices(g1, couplings, t1)
    b2, c2 = bc_matrices(g2, couplings, t2)
    return (
        OddParams.from_matrix(c2 @ b1),
        OddParams.from_matrix(b2),
        OddParams.from_matrix(b1),
        OddParams.from_matrix(c1 @ b2),
    )


def check_fermionic_invariance(
    g1: GluedPoint,
    g2: GluedPoint,
    couplings: Couplings,
    t1: complex = 1.0,
    t2: complex = 1.0,
) -> dict[str, float]:
    """R [J1(D1) + J2(D2)] = [J1(D2') + J2(D1')] R for all eight odd generators."""
    space = FockSpace(2, n_layers=2)
    r = r_check(space, 1, g1, g2, t1, t2)
    d1, d2, d1p, d2p = d_matrices(g1, g2, couplings, t1, t2)
    in1 = super_generators(d1, space, 1)
    in2 = super_generators(d2, space, 2)
    out1 = super_generators(d2p, space, 1)
    out2 = super_generators(d1p, space, 2)
    return {
        name: residual_to_zero(
            r @ (in1[name] + in2[name]) - (out1[name] + out2[name]) @ r, r
        )
        for name in ODD_NAMES
    }


def central_charges_ff(
    g1: GluedPoint, g2: GluedPoint, couplings: Couplings
) -> tuple[CentralCharges, CentralCharges]:
    """Central charges of the incoming pair in free-fermion variables."""
    theta, xi = couplings.theta, couplings.xi
    p1, p2 = g1.point, g2.point
    c1 = CentralCharges(
        C=1j * theta**2 * g1.v / (p1.a * p1.d) - 0.5,
        P=(theta * xi / (1j * p1.a * p1.d)) * (p2.c / p2.a) ** 2,
        K=(theta * xi / (1j * p1.b * p1.c)) * (p2.a / p2.c) ** 2,
    )
    c2 = CentralCharges(
        C=1j * theta**2 * g2.v / (p2.a * p2.d) - 0.5,
        P=theta * xi / (1j * p2.a * p2.d),
        K=theta * xi / (1j * p2.b * p2.c),
    )
    return c1, c2


def central_charge_flow(
    g1: GluedPoint,
    g2: GluedPoint,
    couplings: Couplings,
    t1: complex = 1.0,
    t2: complex = 1.0,
) -> dict[str, float]:
    """Residuals of the nonlinear flow of the central charges across the R-matrix.

    Checks that the label-matrix charges match the closed-form free-fermion
    expressions, that each representation satisfies the shortening constraint,
    and that the outgoing charges obey C' = C, P' = K (P1+P2)/(K1+K2),
    K' = P (K1+K2)/(P1+P2).
    """
    d1, d2, d1p, d2p = d_matrices(g1, g2, couplings, t1, t2)
    ch = [d1.charges, d2.charges]
    chp = [d1p.charges, d2p.charges]
    ff1, ff2 = central_charges_ff(g1, g2, couplings)
    p_sum = ch[0].P + ch[1].P
    k_sum = ch[0].K + ch[1].K
    if p_sum == 0 or k_sum == 0:
        raise ValueError("degenerate kinematics: P1 + P2 = 0 or K1 + K2 = 0")
    out = {
        "closed_form": max(
            abs(ff1.C - ch[0].C),
            abs(ff1.P - ch[0].P),
            abs(ff1.K - ch[0].K),
            abs(ff2.C - ch[1].C),
            abs(ff2.P - ch[1].P),
            abs(ff2.K - ch[1].K),
        ),
        "shortening": max(c.shortening_residual for c in ch + chp),
        "flow": 0.0,
    }
    for before, after in zip(ch, chp):
        out["flow"] = max(
            out["flow"],
            abs(after.C - before.C),
            abs(after.P - before.K * p_sum / k_sum),
            abs(after.K - before.P * k_sum / p_sum),
        )
    return out


# ---------------------------------------------------------------------------
# derivation of the S-matrix from symmetry alone
# ---------------------------------------------------------------------------


def derive_smatrix_from_symmetry(
    d1: OddParams,
    d2: OddParams,
    d1p: OddParams,
    d2p: OddParams,
    gap: float = 1e6,
) -> np.ndarray:
    """Unique (up to scale) 16x16 matrix intertwining the symmetry action.

    Stacks the linear constraints X [J1(D1) + J2(D2)] - [J1(D2') + J2(D1')] X
    = 0 over all sixteen L/R/Q/S generators, then extracts the nullspace by
    singular value decomposition.  The outer charge B is excluded: it is not
    a symmetry of the gauged R-matrix (it generates the flow of the odd
    labels instead), and the sixteen generator constraints already pin the
    solution down to a line.  Raises if the nullspace is not one-dimensional
    (singular-value gap below ``gap``).
    """
    space = FockSpace(2, n_layers=2)
    in1 = super_generators(d1, space, 1)
    in2 = super_generators(d2, space, 2)
    out1 = super_generators(d2p, space, 1)
    out2 = super_generators(d1p, space, 2)
    dim = space.dim
    ident = eye(dim)
    rows = []
    names = ODD_NAMES + ("L11", "L12", "L21", "L22", "R11", "R12", "R21", "R22")
    for name in names:
        j_in = in1[name] + in2[name]
        j_out = out1[name] + out2[name]
        # row-major vec: vec(X J_in - J_out X) = (I (x) J_in^T - J_out (x) I) vec(X)
        rows.append(np.kron(ident, j_in.T) - np.kron(j_out, ident))
    system = np.vstack(rows)
    _, sing, vh = np.linalg.svd(system, full_matrices=False)
    null_mask = sing < 1e-8 * sing[0]
    n_null = int(np.count_nonzero(null_mask))
    if n_null != 1:
        raise ValueError(f"nullspace dimension is {n_null}, expected 1")
    if sing[-2] < gap * sing[-1] and sing[-1] > 0:
        raise ValueError("singular-value gap too small for a clean nullspace")
    return vh[-1].conj().reshape(dim, dim)


# ---------------------------------------------------------------------------
# odd-chain breaking of the charge-doublet sl(2)
# ---------------------------------------------------------------------------


def hubbard_chain_hamiltonian(n_sites: int, coupling: complex) -> np.ndarray:
    """Periodic two-layer chain: hopping plus on-site density-density coupling."""
    space = FockSpace(n_sites, n_layers=2)
    h = np.zeros((space.dim, space.dim), dtype=complex)
    for site in range(1, n_sites + 1):
        nxt = site % n_sites + 1
        for layer in (UP, DOWN):
            c_i, cdag_i = fermion_mode(space, site, layer)
            c_j, cdag_j = fermion_mode(space, nxt, layer)
            h += cdag_i @ c_j + cdag_j @ c_i
        nu, _ = number_ops(space, site, UP)
        nd, _ = number_ops(space, site, DOWN)
        h += coupling * (nu - 0.5 * eye(space.dim)) @ (nd - 0.5 * eye(space.dim))
    return h


def eta_pairing_ladder(n_sites: int, staggered: bool = True) -> np.ndarray:
    """Sum of on-site pair creators, with an optional alternating sign."""
    space = FockSpace(n_sites, n_layers=2)
    op = np.zeros((space.dim, space.dim), dtype=complex)
    for site in range(1, n_sites + 1):
        sign = (-1.0) ** site if staggered else 1.0
        _, cu_dag = fermion_mode(space, site, UP)
        _, cd_dag = fermion_mode(space, site, DOWN)
        op += sign * cu_dag @ cd_dag
    return op

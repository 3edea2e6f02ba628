"""Single-layer free-fermion R-matrices and the XX transfer matrix.

The spectral parameter is an SL(2,C) matrix A = [[a, b], [c, d]] with
ad - bc = 1 (the free fermion condition).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .tensor import (
    FockSpace,
    fermion_mode,
    frobenius_residual,
    number_ops,
    supertrace_aux,
)

DET_TOL = 1e-9


@dataclass(frozen=True)
class Sl2cPoint:
    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        if abs(det - 1.0) > 1e-6:
            raise ValueError(f"free fermion condition violated: ad-bc = {det}")

    @property
    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    def inverse(self) -> "Sl2cPoint":
        return Sl2cPoint(self.d, -self.b, -self.c, self.a)

    def sigma3_twist(self) -> "Sl2cPoint":
        """The point sigma3 . A . sigma3 (flips the off-diagonal signs)."""
        return Sl2cPoint(self.a, -self.b, -self.c, self.d)

    @staticmethod
    def from_matrix(M: np.ndarray) -> "Sl2cPoint":
        return Sl2cPoint(M[0, 0], M[0, 1], M[1, 0], M[1, 1])

    def __matmul__(self, other: "Sl2cPoint") -> "Sl2cPoint":
        return Sl2cPoint.from_matrix(self.matrix() @ other.matrix())


IDENTITY_POINT = Sl2cPoint(1.0, 0.0, 0.0, 1.0)


def xx_point(u: complex, sign: int = +1) -> Sl2cPoint:
    """Symmetric curve a = d = cos u, b = c = sign * i sin u.

    sign=+1 is the XX curve of the single-layer model; sign=-1 is the
    convention entering the Hubbard specialization.
    """
    return Sl2cPoint(np.cos(u), sign * 1j * np.sin(u), sign * 1j * np.sin(u), np.cos(u))


def xx_point_derivative(u: complex, sign: int = +1) -> tuple[complex, complex, complex, complex]:
    """Entrywise derivative (da, db, dc, dd)/du on the symmetric curve."""
    return (-np.sin(u), sign * 1j * np.cos(u), sign * 1j * np.cos(u), -np.sin(u))


def _r_f_coeffs(space: FockSpace, j: int, k: int, a, b, c, d, layer: int = 0) -> np.ndarray:
    cj, cjd = fermion_mode(space, j, layer)
    ck, ckd = fermion_mode(space, k, layer)
    nj, mj = cjd @ cj, cj @ cjd
    nk, mk = ckd @ ck, ck @ ckd
    return (
        -a * nj @ nk
        - 1j * b * nj @ mk
        - 1j * c * mj @ nk
        + d * mj @ mk
        + cjd @ ck
        + ckd @ cj
    )


def r_f(space: FockSpace, j: int, k: int, A: Sl2cPoint, layer: int = 0) -> np.ndarray:
    """The free-fermion R-matrix between sites j and k."""
    if j == k:
        raise ValueError("need two distinct sites")
    if abs(A.det - 1.0) > DET_TOL:
        raise ValueError(f"free fermion condition violated: ad-bc = {A.det}")
    return _r_f_coeffs(space, j, k, A.a, A.b, A.c, A.d, layer)


def r0(space: FockSpace, j: int, k: int, Aj: Sl2cPoint, Ak: Sl2cPoint, layer: int = 0) -> np.ndarray:
    """R0_{jk}(Aj, Ak) = R^f_{jk}(Ak Aj^-1)."""
    return r_f(space, j, k, Ak @ Aj.inverse(), layer)


def r1(space: FockSpace, j: int, k: int, Aj: Sl2cPoint, Ak: Sl2cPoint, layer: int = 0) -> np.ndarray:
    """R1_{jk}(Aj, Ak) = R^f_{jk}(Ak s3 Aj^-1 s3) (n_k - m_k)."""
    nk, mk = number_ops(space, k, layer)
    s3 = np.diag([1.0, -1.0]).astype(complex)
    M = Ak.matrix() @ s3 @ Aj.inverse().matrix() @ s3
    return r_f(space, j, k, Sl2cPoint.from_matrix(M), layer) @ (nk - mk)


def r_pm(space: FockSpace, j: int, k: int, Aj: Sl2cPoint, Ak: Sl2cPoint, sign: int, layer: int = 0) -> np.ndarray:
    """Light-cone operators R^+ (sign=+1) and R^- (sign=-1)."""
    if j == k:
        raise ValueError("need two distinct sites")
    cj, cjd = fermion_mode(space, j, layer)
    ck, ckd = fermion_mode(space, k, layer)
    nj, mj = cjd @ cj, cj @ cjd
    nk, mk = ckd @ ck, ck @ ckd
    if sign == +1:
        return (Ak.a * nj + 1j * Ak.c * mj) @ (-Aj.d * nk + 1j * Aj.b * mk) + cjd @ ck
    if sign == -1:
        return (Ak.b * nj + 1j * Ak.d * mj) @ (Aj.c * nk - 1j * Aj.a * mk) + ckd @ cj
    raise ValueError("sign must be +1 or -1")


def check_ybe_f(A: Sl2cPoint, C: Sl2cPoint) -> float:
    """Residual of the Yang-Baxter equation with B = C A enforced."""
    B = C @ A
    space = FockSpace(3)
    R12 = r_f(space, 1, 2, A)
    R13 = r_f(space, 1, 3, B)
    R23 = r_f(space, 2, 3, C)
    return frobenius_residual(R12 @ R13 @ R23, R23 @ R13 @ R12)


def check_ybe_r0(A1: Sl2cPoint, A2: Sl2cPoint, A3: Sl2cPoint) -> float:
    space = FockSpace(3)
    R12 = r0(space, 1, 2, A1, A2)
    R13 = r0(space, 1, 3, A1, A3)
    R23 = r0(space, 2, 3, A2, A3)
    return frobenius_residual(R12 @ R13 @ R23, R23 @ R13 @ R12)


def _r_f_derivative(space: FockSpace, j: int, k: int, u: complex, sign: int = +1) -> np.ndarray:
    da, db, dc, dd = xx_point_derivative(u, sign)
    cj, cjd = fermion_mode(space, j)
    ck, ckd = fermion_mode(space, k)
    nj, mj = cjd @ cj, cj @ cjd
    nk, mk = ckd @ ck, ck @ ckd
    return -da * nj @ nk - 1j * db * nj @ mk - 1j * dc * mj @ nk + dd * mj @ mk


def transfer_matrix(u: complex, n_sites: int, sign: int = +1) -> np.ndarray:
    """XX transfer matrix tau(u) = str_a(R_{aN} ... R_{a1}) on n_sites."""
    if n_sites < 2:
        raise ValueError("need at least two sites")
    space = FockSpace(n_sites + 1)
    aux = n_sites + 1
    A = xx_point(u, sign)
    M = space.identity()
    for site in range(n_sites, 0, -1):
        M = M @ r_f(space, aux, site, A)
    return supertrace_aux(M, space, aux)


def transfer_matrix_derivative(u: complex, n_sites: int, sign: int = +1) -> np.ndarray:
    """Analytic d tau / du along the symmetric curve."""
    space = FockSpace(n_sites + 1)
    aux = n_sites + 1
    A = xx_point(u, sign)
    factors = [r_f(space, aux, site, A) for site in range(n_sites, 0, -1)]
    derivs = [_r_f_derivative(space, aux, site, u, sign) for site in range(n_sites, 0, -1)]
    total = np.zeros((space.dim, space.dim), dtype=complex)
    for i in range(n_sites):
        M = space.identity()
        for pos, F in enumerate(factors):
            M = M @ (derivs[pos] if pos == i else F)
        total += M
    return supertrace_aux(total, space, aux)


def hamiltonian_from_transfer(n_sites: int, sign: int = +1) -> np.ndarray:
    """H = tau(u0)^-1 tau'(u0) at the permutation point u0 = 0."""
    tau0 = transfer_matrix(0.0, n_sites, sign)
    dtau = transfer_matrix_derivative(0.0, n_sites, sign)
    return np.linalg.solve(tau0, dtau)


def xx_hopping_hamiltonian(n_sites: int) -> np.ndarray:
    """Periodic hopping sum c^dag_i c_{i+1} + c^dag_{i+1} c_i."""
    space = FockSpace(n_sites)
    H = np.zeros((space.dim, space.dim), dtype=complex)
    for i in range(1, n_sites + 1):
        j = i % n_sites + 1
        ci, cid = fermion_mode(space, i)
        cj, cjd = fermion_mode(space, j)
        H += cid @ cj + cjd @ ci
    return H

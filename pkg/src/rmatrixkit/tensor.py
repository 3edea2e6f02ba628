"""Dense complex matrices on fermionic Fock spaces.

Everything downstream is built on top of the Jordan-Wigner mode matrices
constructed here.  Conventions that fix all signs in the package:

* a single mode has basis (|0>, |1>) with cdag|0> = |1>,
* modes are ordered site-major, with the "up" layer before the "down"
  layer on each site,
* the Jordan-Wigner string Z = diag(1, -1) sits on all modes *before*
  the target mode in that order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

SIGMA_MINUS = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
SIGMA3 = PAULI_Z


def kron(*mats: np.ndarray) -> np.ndarray:
    """Kronecker product of one or more matrices, row-major block order."""
    out = np.asarray(mats[0], dtype=complex)
    for m in mats[1:]:
        out = np.kron(out, np.asarray(m, dtype=complex))
    return out


def eye(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=complex)


@dataclass(frozen=True)
class FockSpace:
    """An N-site fermionic chain with one or two layers per site.

    Sites are 1-based.  Layers are 0 ("up") and, for two-layer spaces,
    1 ("down").
    """

    n_sites: int
    n_layers: int = 1

    def __post_init__(self):
        if self.n_sites < 1:
            raise ValueError("n_sites must be positive")
        if self.n_layers not in (1, 2):
            raise ValueError("n_layers must be 1 or 2")

    @property
    def n_modes(self) -> int:
        return self.n_sites * self.n_layers

    @property
    def dim(self) -> int:
        return 2 ** self.n_modes

    @property
    def mode_order(self) -> tuple[tuple[int, int], ...]:
        return tuple(
            (site, layer)
            for site in range(1, self.n_sites + 1)
            for layer in range(self.n_layers)
        )

    def mode_index(self, site: int, layer: int = 0) -> int:
        if not (1 <= site <= self.n_sites):
            raise ValueError(f"site {site} out of range 1..{self.n_sites}")
        if not (0 <= layer < self.n_layers):
            raise ValueError(f"layer {layer} out of range for {self.n_layers}-layer space")
        return (site - 1) * self.n_layers + layer

    def identity(self) -> np.ndarray:
        return eye(self.dim)

    def vacuum(self) -> np.ndarray:
        v = np.zeros(self.dim, dtype=complex)
        v[0] = 1.0
        return v


@lru_cache(maxsize=None)
def _mode_matrices(n_modes: int) -> tuple[np.ndarray, ...]:
    ops = []
    for k in range(n_modes):
        factors = [PAULI_Z] * k + [SIGMA_MINUS] + [np.eye(2)] * (n_modes - k - 1)
        ops.append(kron(*factors))
    return tuple(ops)


def fermion_mode(space: FockSpace, site: int, layer: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """Annihilation and creation matrices (c, cdag) for one mode."""
    c = _mode_matrices(space.n_modes)[space.mode_index(site, layer)]
    return c, c.conj().T


def number_ops(space: FockSpace, site: int, layer: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """The pair (n, m) = (cdag c, c cdag) for one mode."""
    c, cdag = fermion_mode(space, site, layer)
    return cdag @ c, c @ cdag


def graded_permutation(space: FockSpace, j: int, k: int) -> np.ndarray:
    """Graded permutation of sites j and k.

    For a two-layer space this is the product of the per-layer graded
    permutations.
    """
    if j == k:
        raise ValueError("graded permutation needs two distinct sites")
    out = space.identity()
    for layer in range(space.n_layers):
        cj, cjd = fermion_mode(space, j, layer)
        ck, ckd = fermion_mode(space, k, layer)
        nj, mj = cjd @ cj, cj @ cjd
        nk, mk = ckd @ ck, ck @ ckd
        out = out @ (-nj @ nk + mj @ mk + cjd @ ck + ckd @ cj)
    return out


def supertrace_mode(M: np.ndarray, space: FockSpace, site: int, layer: int = 0) -> np.ndarray:
    """Partial trace over one mode, weighted by (-1)^n on that mode."""
    if M.shape != (space.dim, space.dim):
        raise ValueError("matrix does not act on the given space")
    p = space.mode_index(site, layer)
    left = 2 ** p
    right = 2 ** (space.n_modes - p - 1)
    T = M.reshape(left, 2, right, left, 2, right)
    return (T[:, 0, :, :, 0, :] - T[:, 1, :, :, 1, :]).reshape(
        left * right, left * right
    )


def supertrace_aux(M: np.ndarray, space: FockSpace, aux_site: int) -> np.ndarray:
    """Supertrace over all modes of one site (the auxiliary space)."""
    if M.shape != (space.dim, space.dim):
        raise ValueError("matrix does not act on the given space")
    out = M
    n_modes = space.n_modes
    # trace the site's modes from the last one backwards so that earlier
    # mode positions stay valid
    positions = sorted(
        (space.mode_index(aux_site, layer) for layer in range(space.n_layers)),
        reverse=True,
    )
    for p in positions:
        left = 2 ** p
        right = 2 ** (n_modes - p - 1)
        T = out.reshape(left, 2, right, left, 2, right)
        out = (T[:, 0, :, :, 0, :] - T[:, 1, :, :, 1, :]).reshape(
            left * right, left * right
        )
        n_modes -= 1
    return out


def frobenius_residual(A: np.ndarray, B: np.ndarray) -> float:
    """Relative Frobenius distance ||A-B|| / max(1, ||A||, ||B||)."""
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    if A.shape != B.shape:
        raise ValueError(f"shape mismatch {A.shape} vs {B.shape}")
    return float(
        np.linalg.norm(A - B) / max(1.0, np.linalg.norm(A), np.linalg.norm(B))
    )


def residual_to_zero(A: np.ndarray, *refs: np.ndarray) -> float:
    """||A|| scaled by the magnitude of reference operators."""
    scale = max([1.0] + [float(np.linalg.norm(r)) for r in refs])
    return float(np.linalg.norm(A) / scale)


def equal_up_to_scalar(A: np.ndarray, B: np.ndarray, tol: float = 1e-9):
    """Return s with A = s*B within relative tolerance, else None.

    The scalar is read off at the largest-modulus entry of B.  Raises if
    B vanishes while A does not.
    """
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    if A.shape != B.shape:
        raise ValueError(f"shape mismatch {A.shape} vs {B.shape}")
    idx = np.unravel_index(np.argmax(np.abs(B)), B.shape)
    if abs(B[idx]) == 0.0:
        if np.linalg.norm(A) == 0.0:
            return 1.0 + 0.0j
        raise ValueError("cannot match a nonzero matrix against zero")
    s = A[idx] / B[idx]
    if frobenius_residual(A, s * B) <= tol:
        return s
    return None


def anticommutator(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    return A @ B + B @ A


def commutator(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    return A @ B - B @ A


def dump_matrix(M: np.ndarray) -> str:
    """Text dump: one row per line, entries as "re,im" separated by spaces."""
    M = np.atleast_2d(np.asarray(M, dtype=complex))
    lines = []
    for row in M:
        lines.append(" ".join(f"{z.real:.17g},{z.imag:.17g}" for z in row))
    return "\n".join(lines)


def parse_matrix(text: str) -> np.ndarray:
    rows = []
    for line in text.strip().splitlines():
        row = []
        for tok in line.split():
            re_s, im_s = tok.split(",")
            row.append(complex(float(re_s), float(im_s)))
        rows.append(row)
    return np.array(rows, dtype=complex)

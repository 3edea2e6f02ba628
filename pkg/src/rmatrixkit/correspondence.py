"""Dictionary between the two-layer free-fermion variables and string kinematics.

A glued free-fermion point maps to a kinematic point carrying the familiar
rapidities x^+, x^-, the momentum phase, the normalization eta and the global
coupling g, with the gluing constraint turning into the mass-shell relation
x^+ + 1/x^+ - x^- - 1/x^- = i/g.  This module implements the dictionary in
both directions, the explicit label matrices of the odd symmetry generators
in string variables, the fully explicit two-layer S-matrix in string
variables, and the bridge identities expressing the odd su(2|2) generators as
gauge conjugates of the quantum-affine raising/lowering operators.

Branch discipline: all square roots are expressed through three primitives
per point -- sqrt(x^+), sqrt(x^-) and sqrt(i*eta), each taken principal --
so every algebraic relation between the derived quantities holds exactly
rather than up to sign.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .freefermion import Sl2cPoint
from .quantum_affine import QgParams, params_to_sl2c
from .ssw import Couplings, GluedPoint, _layer_generators, solve_gluing, ssw_r
from .superalgebra import (
    OddParams,
    bc_matrices,
    gauge_u,
    gauge_v,
    r_check,
    super_generators,
)
from .tensor import (
    FockSpace,
    fermion_mode,
    frobenius_residual,
    graded_permutation,
    number_ops,
    residual_to_zero,
)

__all__ = [
    "AdsPoint",
    "ads_from_ff",
    "ff_from_ads",
    "d_matrices_ads",
    "layer_r_ads",
    "rcheck_ads",
    "bridge_single_site",
    "bridge_coproduct",
]

UP, DOWN = 0, 1


@dataclass(frozen=True)
class AdsPoint:
    """String-variable kinematics of one particle."""

    x_plus: complex
    x_minus: complex
    eta: complex
    g: complex

    @property
    def half_phase(self) -> complex:
        """e^{ip/2}, branch-coherent with the square-root primitives."""
        return np.sqrt(self.x_plus) / np.sqrt(self.x_minus)

    @property
    def p(self) -> complex:
        return -2j * np.log(self.half_phase)

    @property
    def t(self) -> complex:
        """The gauge parameter sqrt(x^+/eta) in the coherent branch."""
        return np.exp(0.25j * np.pi) * np.sqrt(self.x_plus) / np.sqrt(1j * self.eta)

    @property
    def mass_shell_residual(self) -> float:
        xp, xm = self.x_plus, self.x_minus
        return abs(xp + 1.0 / xp - xm - 1.0 / xm - 1j / self.g)


def ads_from_ff(glued: GluedPoint, couplings: Couplings, t: complex) -> AdsPoint:
    """String variables of a glued free-fermion point."""
    pt, v = glued.point, glued.v
    ratio = couplings.theta / couplings.xi
    return AdsPoint(
        x_plus=ratio * (pt.b * pt.c / (pt.a * pt.d)) * v,
        x_minus=ratio * v,
        eta=np.exp(-0.25j * np.pi) * ratio * pt.c * v / (t * pt.a * pt.d),
        g=couplings.theta * couplings.xi,
    )


def ff_from_ads(q: AdsPoint) -> tuple[GluedPoint, Couplings, complex]:
    """Free-fermion data reproducing a mass-shell point.

    Uses the symmetric coupling choice Theta = Xi = sqrt(g) and the gauge
    parameter t = sqrt(x^+/eta).  With sp = sqrt(x^+), sm = sqrt(x^-) and
    si = sqrt(i*eta) the entries are a = si*sm/(x^- - x^+), b = sp/si,
    c = si*sp/(x^- - x^+), d = sm/si, which satisfy ad - bc = 1 and the
    symmetry condition ab = cd identically in the primitives.
    """
    xp, xm = q.x_plus, q.x_minus
    if xp == xm:
        raise ValueError("coincident rapidities x^+ = x^-")
    sp, sm, si = np.sqrt(xp), np.sqrt(xm), np.sqrt(1j * q.eta)
    point = Sl2cPoint(
        a=si * sm / (xm - xp),
        b=sp / si,
        c=si * sp / (xm - xp),
        d=sm / si,
    )
    sg = np.sqrt(q.g)
    return GluedPoint(point, xm), Couplings(sg, sg), q.t


def d_matrices_ads(q1: AdsPoint, q2: AdsPoint) -> tuple[OddParams, OddParams]:
    """Label matrices (D1, D2) of the incoming pair in string variables.

    The outgoing pair is the formal index swap: ``d_matrices_ads(q2, q1)``
    returns (D2', D1').
    """
    half2 = q2.half_phase
    sg = np.sqrt(q1.g)
    xp1, xm1, eta1 = q1.x_plus, q1.x_minus, q1.eta
    d1 = sg * np.array(
        [
            [half2 * eta1, half2 * (1j / eta1) * (xp1 / xm1 - 1.0)],
            [-eta1 / (half2 * xp1), (xp1 / (1j * eta1 * half2)) * (1.0 - xm1 / xp1)],
        ],
        dtype=complex,
    )
    xp2, xm2, eta2 = q2.x_plus, q2.x_minus, q2.eta
    d2 = sg * np.array(
        [
            [eta2, (1j / eta2) * (xp2 / xm2 - 1.0)],
            [-eta2 / xp2, (xp2 / (1j * eta2)) * (1.0 - xm2 / xp2)],
        ],
        dtype=complex,
    )
    return OddParams.from_matrix(d1), OddParams.from_matrix(d2)


def layer_r_ads(
    space: FockSpace, j: int, k: int, q1: AdsPoint, q2: AdsPoint, sign: int, layer: int
) -> np.ndarray:
    """The light-cone layer factors of the S-matrix in string variables."""
    c1, c1dag = fermion_mode(space, j, layer)
    c2, c2dag = fermion_mode(space, k, layer)
    n1, m1 = number_ops(space, j, layer)
    n2, m2 = number_ops(space, k, layer)
    sp1, sm1 = np.sqrt(q1.x_plus), np.sqrt(q1.x_minus)
    sp2, sm2 = np.sqrt(q2.x_plus), np.sqrt(q2.x_minus)
    sh1, sh2 = np.sqrt(1j * q1.eta), np.sqrt(1j * q2.eta)
    if sign > 0:
        pref = -(sh2 / sh1) / (q2.x_minus - q2.x_plus)
        return (
            pref * (sm2 * n1 + 1j * sp2 * m1) @ (sm1 * n2 - 1j * sp1 * m2)
            + c1dag @ c2
        )
    pref = (sh1 / sh2) / (q1.x_minus - q1.x_plus)
    return (
        pref * (sp2 * n1 + 1j * sm2 * m1) @ (sp1 * n2 - 1j * sm1 * m2)
        + c2dag @ c1
    )


def rcheck_ads(q1: AdsPoint, q2: AdsPoint) -> np.ndarray:
    """The fully explicit two-layer S-matrix in string variables.

    Implements the closed-form expression including the overall rescaling
    factor, so the result is a specific normalization of the gauged two-layer
    R-matrix evaluated at the corresponding free-fermion points.
    """
    xp1, xm1, xp2, xm2 = q1.x_plus, q1.x_minus, q2.x_plus, q2.x_minus
    if xm1 == xp2 or xp1 * xp2 == xm1 * xm2:
        raise ValueError("kinematic pole")
    space = FockSpace(2, n_layers=2)
    r = {
        (s, layer): layer_r_ads(space, 1, 2, q1, q2, s, layer)
        for s in (+1, -1)
        for layer in (UP, DOWN)
    }
    sin1 = q1.half_phase - 1.0 / q1.half_phase
    sin2 = q2.half_phase - 1.0 / q2.half_phase
    core = (xm2 + xp1) / (xm1 - xp2) * (
        (xp2 * q1.eta / (xp1 * q2.eta)) * (sin2 / sin1) * r[+1, UP] @ r[+1, DOWN]
        + (xm1 * q2.eta / (xm2 * q1.eta)) * (sin1 / sin2) * r[-1, UP] @ r[-1, DOWN]
    ) + (xp2 + xm1) / (xm1 - xp2) * (
        r[+1, UP] @ r[-1, DOWN] + r[-1, UP] @ r[+1, DOWN]
    )
    g1, _, t1 = ff_from_ads(q1)
    g2, _, t2 = ff_from_ads(q2)
    u1 = gauge_u(space, 1, g1.point, t1)
    u2 = gauge_u(space, 2, g2.point, t2)
    u1_inv = np.diag(1.0 / np.diag(u1))
    u2_inv = np.diag(1.0 / np.diag(u2))
    v2 = gauge_v(space, 2)
    v2_inv = np.diag(1.0 / np.diag(v2))
    perm = graded_permutation(space, 1, 2)
    scale = (xm1 - xp1) * (xm2 - xp2) / (xp1 * xp2 - xm1 * xm2)
    return scale * v2_inv @ perm @ u1_inv @ u2_inv @ core @ u1 @ u2 @ v2


# ---------------------------------------------------------------------------
# bridge between the quantum-affine and superalgebra pictures
# ---------------------------------------------------------------------------


def _site_labels(q: QgParams) -> tuple[complex, complex, complex]:
    """(lam, phi, x) for a one-variable module (requires y = x)."""
    if q.y != q.x:
        raise ValueError("bridge identities use the one-variable module y = x")
    return q.lam, q.phi, q.x


def _glued_from_params(q: QgParams, z: complex, couplings: Couplings) -> GluedPoint:
    point = params_to_sl2c(q, z)
    roots = solve_gluing(point, couplings)
    return GluedPoint(point, max(roots, key=abs))


def _t_operator(
    space: FockSpace, site: int, point: Sl2cPoint, lam: complex, t: complex
) -> np.ndarray:
    """The diagonal conjugator t_r = G_up G_dn U_r."""
    op = gauge_u(space, site, point, t)
    sq_lam = np.sqrt(lam)
    for layer in (UP, DOWN):
        n, m = number_ops(space, site, layer)
        op = (m + sq_lam * n) @ op
    return op


def _xy_operators(
    space: FockSpace,
    site: int,
    couplings: Couplings,
    lam: complex,
    x: complex,
    v: complex,
) -> tuple[np.ndarray, np.ndarray]:
    """The diagonal sf-operators dressing the second-node generators."""
    nu, mu = number_ops(space, site, UP)
    nd, md = number_ops(space, site, DOWN)
    th2, xi2 = couplings.theta**2, couplings.xi**2
    cross = xi2 * lam / v * (mu @ nd + nu @ md)
    x_op = th2 * xi2 / x**2 * mu @ md + cross + x**2 * nu @ nd
    y_op = mu @ md / x**2 + cross + th2 * xi2 * x**2 * nu @ nd
    return x_op, y_op


def _diag_inv(op: np.ndarray) -> np.ndarray:
    return np.diag(1.0 / np.diag(op))


def _reference_sign(lhs: np.ndarray, rhs: np.ndarray) -> float:
    """Global +/-1 read off at the largest-modulus entry of ``lhs``.

    The bridge prefactors involve square roots of products of couplings and
    spectral parameters; their principal branches agree with the generator
    normalization only up to one overall sign per kinematic point, which this
    fixes at a single reference entry.
    """
    idx = np.unravel_index(np.argmax(np.abs(lhs)), lhs.shape)
    if abs(rhs[idx]) == 0.0:
        return 1.0
    return 1.0 if (lhs[idx] / rhs[idx]).real >= 0.0 else -1.0


# (superalgebra key, quantum-affine operator labels, layer, prefactor sign,
#  sf-dressing) for the single-site identities; the S family pairs with the
# first affine node and the Q family with the second.
_BRIDGE_TABLE = (
    ("S11", ("f0",), UP, +1.0, None),
    ("S21", ("e0", "k0inv"), DOWN, -1.0, None),
    ("S12", ("f0",), DOWN, +1.0, None),
    ("S22", ("e0", "k0inv"), UP, +1.0, None),
    ("Q11", ("f1",), UP, +1.0, "x"),
    ("Q12", ("e1", "k1inv"), DOWN, +1.0, "y"),
    ("Q21", ("f1",), DOWN, +1.0, "x"),
    ("Q22", ("e1", "k1inv"), UP, -1.0, "y"),
)


def bridge_single_site(
    q: QgParams, couplings: Couplings, t: complex = 1.0, z: complex = 1j
) -> dict[str, float]:
    """Odd generators as gauge conjugates of the affine ones, on one site.

    For the label matrix B of the glued point, each odd generator J(B) equals
    a prefactor times t^-1 (sf^-1) X (sf) t, where X is the matching product
    of quantum-affine generators of the corresponding layer and sf is the
    node-dependent diagonal dressing.  Returns the residual per generator.
    """
    lam, phi, x = _site_labels(q)
    glued = _glued_from_params(q, z, couplings)
    space = FockSpace(1, n_layers=2)
    bmat, _ = bc_matrices(glued, couplings, t)
    sup = super_generators(OddParams.from_matrix(bmat), space, 1)
    t_op = _t_operator(space, 1, glued.point, lam, t)
    t_inv = _diag_inv(t_op)
    x_op, y_op = _xy_operators(space, 1, couplings, lam, x, glued.v)
    dress = {"x": x_op, "y": y_op, None: space.identity()}
    root = np.sqrt(couplings.theta * couplings.xi)
    pref = {"S": np.sqrt(2.0) * root, "Q": np.sqrt(2.0) / root}
    out: dict[str, float] = {}
    global_sign = None
    for key, labels, layer, sign, sf_name in _BRIDGE_TABLE:
        gens = _layer_generators(space, 1, layer, lam, phi, x)
        op = space.identity()
        for label in labels:
            op = op @ gens[label]
        sf = dress[sf_name]
        sf_inv = _diag_inv(sf)
        rhs = sign * pref[key[0]] * t_inv @ sf_inv @ op @ sf @ t_op
        if global_sign is None:
            global_sign = _reference_sign(sup[key], rhs)
        out[key] = residual_to_zero(sup[key] - global_sign * rhs, sup[key])
    return out


def _single_site_sign(
    q: QgParams, couplings: Couplings, t: complex, z: complex
) -> float:
    """Branch sign of one site, read off the first single-site identity."""
    lam, phi, x = _site_labels(q)
    glued = _glued_from_params(q, z, couplings)
    space = FockSpace(1, n_layers=2)
    bmat, _ = bc_matrices(glued, couplings, t)
    sup = super_generators(OddParams.from_matrix(bmat), space, 1)
    t_op = _t_operator(space, 1, glued.point, lam, t)
    gens = _layer_generators(space, 1, UP, lam, phi, x)
    rhs = (
        np.sqrt(2.0)
        * np.sqrt(couplings.theta * couplings.xi)
        * _diag_inv(t_op)
        @ gens["f0"]
        @ t_op
    )
    return _reference_sign(sup["S11"], rhs)


def _layer_coproducts(
    space: FockSpace,
    layer: int,
    labels1: tuple[complex, complex, complex],
    labels2: tuple[complex, complex, complex],
    z: complex,
) -> dict[str, np.ndarray]:
    """Two-site coproducts of one layer's affine generators, with central z."""
    lam1, phi1, x1 = labels1
    lam2, phi2, x2 = labels2
    g1 = _layer_generators(space, 1, layer, lam1, phi1, x1)
    g2 = _layer_generators(space, 2, layer, lam2, phi2, x2)
    f1 = g1["F"]
    delta = {
        "k0": g1["k0"] @ g2["k0"],
        "k1": g1["k1"] @ g2["k1"],
        "e0": z * g1["e0"] + g1["k0"] @ f1 @ g2["e0"],
        "f0": g1["f0"] @ g2["k0inv"] / z + f1 @ g2["f0"],
        "e1": g1["e1"] + z * g1["k1"] @ f1 @ g2["e1"],
        "f1": g1["f1"] @ g2["k1inv"] + f1 @ g2["f1"] / z,
        "F": f1 @ g2["F"],
    }
    delta["k0inv"] = np.diag(1.0 / np.diag(delta["k0"]))
    delta["k1inv"] = np.diag(1.0 / np.diag(delta["k1"]))
    return delta


# coproduct identities: (superalgebra key, labels, layer, prefactor, dressing)
_BRIDGE_COPRODUCT_TABLE = (
    ("S11", ("f0",), UP, -1j, None),
    ("S12", ("f0",), DOWN, -1j, None),
    ("S21", ("e0", "k0inv"), DOWN, +1j, None),
    ("S22", ("e0", "k0inv"), UP, -1j, None),
    ("Q11", ("f1",), UP, 1.0, "x"),
    ("Q21", ("f1",), DOWN, 1.0, "x"),
    ("Q12", ("e1", "k1inv"), DOWN, -1.0, "y"),
    ("Q22", ("e1", "k1inv"), UP, 1.0, "y"),
)


def bridge_coproduct(
    q1: QgParams,
    q2: QgParams,
    couplings: Couplings,
    t1: complex = 1.0,
    t2: complex = 1.0,
    z: complex = 1j,
) -> dict[str, float]:
    """Two-site bridge: coproducts of affine generators give the odd sums.

    With T = t_1 t_2 V_2, X = x_1 x_2 and Y = y_1 y_2, each two-site odd
    generator sum J_1(D_1) + J_2(D_2) equals a prefactor times
    T^-1 (sf^-1) Delta(X) Delta(F) (sf) T over the matching layer.
    """
    labels1 = _site_labels(q1)
    labels2 = _site_labels(q2)
    # Resolve each site's square-root branch by flipping the sign of phi
    # wherever the single-site identity picks the negative branch; the flip
    # is an allowed convention (it is conjugation by the Cartan generator).
    s1 = _single_site_sign(q1, couplings, t1, z)
    s2 = _single_site_sign(q2, couplings, t2, z)
    labels1 = (labels1[0], s1 * labels1[1], labels1[2])
    labels2 = (labels2[0], s2 * labels2[1], labels2[2])
    glued1 = _glued_from_params(q1, z, couplings)
    glued2 = _glued_from_params(q2, z, couplings)
    space = FockSpace(2, n_layers=2)
    b1, c1 = bc_matrices(glued1, couplings, t1)
    b2, c2 = bc_matrices(glued2, couplings, t2)
    d1 = OddParams.from_matrix(c2 @ b1)
    d2 = OddParams.from_matrix(b2)
    sup1 = super_generators(d1, space, 1)
    sup2 = super_generators(d2, space, 2)

    t_total = (
        _t_operator(space, 1, glued1.point, labels1[0], t1)
        @ _t_operator(space, 2, glued2.point, labels2[0], t2)
        @ gauge_v(space, 2)
    )
    t_inv = _diag_inv(t_total)
    x1_op, y1_op = _xy_operators(space, 1, couplings, labels1[0], labels1[2], glued1.v)
    x2_op, y2_op = _xy_operators(space, 2, couplings, labels2[0], labels2[2], glued2.v)
    dress = {"x": x1_op @ x2_op, "y": y1_op @ y2_op, None: space.identity()}
    root = np.sqrt(couplings.theta * couplings.xi)
    pref_family = {"S": np.sqrt(2.0) * root, "Q": np.sqrt(2.0) / root}
    out: dict[str, float] = {}
    global_sign = None
    for key, labels, layer, phase, sf_name in _BRIDGE_COPRODUCT_TABLE:
        delta = _layer_coproducts(space, layer, labels1, labels2, z)
        op = space.identity()
        for label in labels:
            op = op @ delta[label]
        op = op @ delta["F"]
        sf = dress[sf_name]
        sf_inv = _diag_inv(sf)
        rhs = phase * pref_family[key[0]] * t_inv @ sf_inv @ op @ sf @ t_total
        lhs = sup1[key] + sup2[key]
        if global_sign is None:
            global_sign = _reference_sign(lhs, rhs)
        out[key] = residual_to_zero(lhs - global_sign * rhs, lhs)
    return out

"""Seeded randomized verification suites with deterministic JSON reports.

Each suite draws its parameter points from a ``numpy.random.Generator``
seeded with a 64-bit integer, evaluates a fixed set of checks, and records
the maximum residual per check.  Reports are bit-identical for identical
(suite, seed, trials, tolerance) apart from the wall-clock field.

Some checks assert that an identity *fails* away from its hypothesis
(selective violations).  Those are encoded as residuals too: 0.0 when the
expected violation is observed, 1.0 when the identity unexpectedly holds.
"""

from __future__ import annotations

import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import double_ff, sampling
from .correspondence import (
    AdsPoint,
    bridge_coproduct,
    bridge_single_site,
    ff_from_ads,
    rcheck_ads,
)
from .freefermion import check_ybe_f, check_ybe_r0, r_f
from .quantum_affine import (
    AFFINE_GENERATORS,
    SUBALGEBRA_GENERATORS,
    identification_residual,
    intertwiner_space,
    intertwining_residuals,
)
from .ssw import (
    GluedPoint,
    gluing_residual,
    hubbard_couplings,
    hubbard_hamiltonian_check,
    hubbard_point,
    ybe_residual,
)
from .superalgebra import (
    central_charge_flow,
    central_charges_ff,
    check_fermionic_invariance,
    d_matrices,
    derive_smatrix_from_symmetry,
    r_check,
    rcheck_even_invariance_residuals,
    symmetry_condition_residual,
)
from .tensor import FockSpace, eye
from .tza import (
    admissible,
    dependence_residuals,
    exchange_residuals,
    six_product_residual,
    triple_product_rank,
)

__all__ = [
    "SuiteReport",
    "CheckResult",
    "SUITE_NAMES",
    "run_suite",
    "report_json",
    "SuiteNumericalError",
]

#: Violation threshold for checks that assert an identity must fail.
_VIOLATION_FLOOR = 1e-3


class SuiteNumericalError(RuntimeError):
    """A residual came out non-finite; carries the offending seed."""

    def __init__(self, suite: str, seed: int, check: str):
        super().__init__(
            f"non-finite residual in suite {suite!r}, check {check!r}, "
            f"seed {seed}"
        )
        self.seed = seed


@dataclass(frozen=True)
class CheckResult:
    name: str
    max_residual: float
    passed: bool


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    seed: int
    trials: int
    tolerance: float
    checks: tuple[CheckResult, ...]
    elapsed_ms: float

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _n_threads() -> int:
    raw = os.environ.get("TZA_SMATRIX_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _max_over_trials(fn, seed: int, trials: int) -> dict[str, float]:
    """Run fn(rng) -> dict of residuals per trial; maximum per key.

    Each trial gets an independent generator derived from (seed, index) so
    that results do not depend on execution order or thread count.
    """
    def one(i: int) -> dict[str, float]:
        return fn(np.random.default_rng(np.random.SeedSequence([seed, i])))

    threads = _n_threads()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(one, range(trials)))
    else:
        results = [one(i) for i in range(trials)]
    out: dict[str, float] = {}
    for res in results:
        for key, val in res.items():
            out[key] = max(out.get(key, 0.0), float(val))
    return out


# ---------------------------------------------------------------------------
# Individual suites: each maps rng -> {check name: residual}.
# ---------------------------------------------------------------------------

def _ff_ybe_trial(rng: np.random.Generator) -> dict[str, float]:
    a1 = sampling.random_sl2c(rng)
    a2 = sampling.random_sl2c(rng)
    a3 = sampling.random_sl2c(rng)
    space = FockSpace(2)
    prod = r_f(space, 1, 2, a1) @ r_f(space, 2, 1, a1.inverse())
    inv = np.max(np.abs(prod - (a1.a * a1.d) * eye(4)))
    inv /= max(1.0, float(np.max(np.abs(prod))))
    return {
        "ybe_f": check_ybe_f(a1, a3),
        "ybe_r0": check_ybe_r0(a1, a2, a3),
        "inversion": float(inv),
    }


def _qg_trial(rng: np.random.Generator) -> dict[str, float]:
    p1 = sampling.random_qg_params(rng)
    p2 = sampling.random_qg_params(rng)
    z = sampling.random_complex(rng)
    dim_full, _ = intertwiner_space(p1, p2, z, AFFINE_GENERATORS)
    dim_sub, _ = intertwiner_space(p1, p2, z, SUBALGEBRA_GENERATORS)
    return {
        "intertwining": max(intertwining_residuals(p1, p2, z).values()),
        "full_space_dim_1": float(abs(dim_full - 1)),
        "subalgebra_dim_2": float(abs(dim_sub - 2)),
        "identification": identification_residual(p1, p2, z),
    }


def _tza_triple(rng: np.random.Generator):
    while True:
        triple = tuple(sampling.random_sl2c(rng) for _ in range(3))
        if admissible(*triple):
            return triple


def _tza_trial(rng: np.random.Generator) -> dict[str, float]:
    a1, a2, a3 = _tza_triple(rng)
    return {
        "exchange": exchange_residuals(a1, a2, a3),
        "dependence": dependence_residuals(a1, a2, a3),
        "rank_6": float(abs(triple_product_rank(a1, a2, a3) - 6)),
    }


def _tza_six_trial(rng: np.random.Generator) -> dict[str, float]:
    while True:
        pts = tuple(sampling.random_sl2c(rng) for _ in range(4))
        if all(
            admissible(pts[i], pts[j], pts[k])
            for i in range(4)
            for j in range(i + 1, 4)
            for k in range(j + 1, 4)
        ):
            break
    return {"six_product": six_product_residual(*pts)}


def _ssw_trial(rng: np.random.Generator) -> dict[str, float]:
    couplings = sampling.random_couplings(rng)
    g1, g2, g3 = (
        sampling.symmetric_glued_point(rng, couplings) for _ in range(3)
    )
    return {
        "ybe": ybe_residual(g1, g2, g3),
        "gluing": max(
            gluing_residual(g, couplings) for g in (g1, g2, g3)
        ),
    }


def _hubbard_trial(rng: np.random.Generator) -> dict[str, float]:
    U = complex(rng.uniform(0.5, 6.0))
    u = complex(rng.uniform(0.05, 1.4))
    gp = hubbard_point(u, U)
    couplings = hubbard_couplings(U)
    # sinh 2h = (U/4) sin 2u with e^{2h} = v/(something) is enforced inside
    # hubbard_point; certify via the gluing condition and the symmetry
    # condition a b = c d that the Hubbard curve satisfies.
    return {
        "gluing": gluing_residual(gp, couplings),
        "symmetry": symmetry_condition_residual(gp.point),
    }


def _hubbard_hamiltonian() -> dict[str, float]:
    res = hubbard_hamiltonian_check(3.0, u0=3e-6, step=3e-8)
    return {
        "hamiltonian_fit": float(np.real(res["fit_residual"])),
        "hamiltonian_ratio": float(np.real(res["ratio_error"])),
        "number_commutator": float(np.real(res["number_commutator"])),
    }


def _bosonic_trial(rng: np.random.Generator) -> dict[str, float]:
    couplings = sampling.random_couplings(rng)
    g1 = sampling.symmetric_glued_point(rng, couplings)
    g2 = sampling.symmetric_glued_point(rng, couplings)
    t1 = sampling.random_complex(rng)
    t2 = sampling.random_complex(rng)
    sym = max(
        rcheck_even_invariance_residuals(g1, g2, t1, t2).values()
    )
    # Away from the symmetry condition the invariance must fail: build a
    # generic (non-symmetric) pair and demand a large residual.
    bad = GluedPoint(sampling.random_sl2c(rng), g1.v)
    broken = max(
        rcheck_even_invariance_residuals(
            GluedPoint(bad.point, g1.v), g2, t1, t2, enforce_symmetry=False
        ).values()
    )
    return {
        "invariance_symmetric": sym,
        "violation_generic": 0.0 if broken > _VIOLATION_FLOOR else 1.0,
    }


def _fermionic_trial(rng: np.random.Generator) -> dict[str, float]:
    couplings = sampling.random_couplings(rng)
    g1 = sampling.symmetric_glued_point(rng, couplings)
    g2 = sampling.symmetric_glued_point(rng, couplings)
    worst = 0.0
    for _ in range(2):  # two independent gauge draws per configuration
        t1 = sampling.random_complex(rng)
        t2 = sampling.random_complex(rng)
        worst = max(
            worst,
            max(
                check_fermionic_invariance(
                    g1, g2, couplings, t1, t2
                ).values()
            ),
        )
    return {"fermionic_invariance": worst}


def _charge_flow_trial(rng: np.random.Generator) -> dict[str, float]:
    couplings = sampling.random_couplings(rng)
    g1 = sampling.symmetric_glued_point(rng, couplings)
    g2 = sampling.symmetric_glued_point(rng, couplings)
    t1 = sampling.random_complex(rng)
    t2 = sampling.random_complex(rng)
    flow = max(central_charge_flow(g1, g2, couplings, t1, t2).values())
    cc1, cc2 = central_charges_ff(g1, g2, couplings)
    shortening = max(
        abs(cc.C**2 - cc.P * cc.K - 0.25) for cc in (cc1, cc2)
    )
    return {"charge_flow": flow, "shortening": float(shortening)}


def _scalar_residual(candidate: np.ndarray, reference: np.ndarray) -> float:
    """Distance of candidate from the complex line spanned by reference."""
    scale = complex(
        (reference.conj() * candidate).sum()
        / (reference.conj() * reference).sum()
    )
    return float(
        np.linalg.norm(candidate - scale * reference)
        / np.linalg.norm(reference)
    )


def _derive_trial(rng: np.random.Generator) -> dict[str, float]:
    couplings = sampling.random_couplings(rng)
    g1 = sampling.symmetric_glued_point(rng, couplings)
    g2 = sampling.symmetric_glued_point(rng, couplings)
    t1 = sampling.random_complex(rng)
    t2 = sampling.random_complex(rng)
    d1, d2, d1p, d2p = d_matrices(g1, g2, couplings, t1, t2)
    derived = derive_smatrix_from_symmetry(d1, d2, d1p, d2p)
    space = FockSpace(2, n_layers=2)
    reference = r_check(space, 1, g1, g2, t1, t2)
    return {"derived_matches_rcheck": _scalar_residual(derived, reference)}


def _bridge_trial(rng: np.random.Generator) -> dict[str, float]:
    couplings = sampling.random_couplings(rng)
    q1 = sampling.random_qg_params(rng, equal_xy=True)
    q2 = sampling.random_qg_params(rng, equal_xy=True)
    t1 = sampling.random_complex(rng)
    t2 = sampling.random_complex(rng)
    single = max(bridge_single_site(q1, couplings, t1).values())
    pair = max(bridge_coproduct(q1, q2, couplings, t1, t2).values())
    return {"single_site": single, "coproduct": pair}


def _ads_trial(rng: np.random.Generator) -> dict[str, float]:
    q1 = sampling.random_ads_point(rng)
    q2 = sampling.random_ads_point(rng, g=q1.g)
    matrix_ads = rcheck_ads(q1, q2)
    g1, _, t1 = ff_from_ads(q1)
    g2, _, t2 = ff_from_ads(q2)
    space = FockSpace(2, n_layers=2)
    reference = r_check(space, 1, g1, g2, t1, t2)
    return {"equality_up_to_scalar": _scalar_residual(matrix_ads, reference)}


def _appendix_trial(rng: np.random.Generator) -> dict[str, float]:
    a_pts = [sampling.random_sl2c(rng) for _ in range(4)]
    rm = double_ff.matrix_r01(a_pts[0], a_pts[1], 0)
    rp = double_ff.matrix_r01(a_pts[0], a_pts[1], 1)
    iso = max(
        abs(double_ff.bilinear(x, y))
        for x in (rm, rp)
        for y in (rm, rp)
    ) / max(1.0, float(np.max(np.abs(rm))) ** 2)
    coeffs = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)))
    general = double_ff.build_general(coeffs, *a_pts)
    q1 = sampling.random_ads_point(rng)
    q2 = sampling.random_ads_point(rng, g=q1.g)
    s_on = double_ff.graded_s_from_ads(q1, q2)
    quad_on = double_ff.check_coefficient_quadratics(s_on)
    inst_on = double_ff.check_instance_quadratics(s_on)
    s_off = double_ff.graded_s_from_ads(q1, q2, x_plus_detuning=1e-3)
    quad_off = double_ff.check_coefficient_quadratics(s_off)
    inst_off = double_ff.check_instance_quadratics(s_off)
    return {
        "bilinear_isotropy": float(iso),
        "double_ff_general": double_ff.check_double_ff(general),
        "support": double_ff.support_violation(general),
        "quadratics_on_shell": max(
            max(quad_on.values()), max(inst_on.values())
        ),
        "instances_off_shell": max(inst_off.values()),
        "third_breaks_off_shell": (
            0.0 if quad_off["AE_BD"] > 1e-6 else 1.0
        ),
    }


# ---------------------------------------------------------------------------
# Suite registry and runner.
# ---------------------------------------------------------------------------

# name -> (per-trial function, default trials, default tolerance,
#          one-off checks run once regardless of trials)
_SUITES: dict = {
    "ff-ybe": (_ff_ybe_trial, 100, 1e-9, None),
    "qg-intertwiner": (_qg_trial, 25, 1e-9, None),
    "tza": (_tza_trial, 50, 1e-9, None),
    "tza-six": (_tza_six_trial, 25, 1e-8, None),
    "ssw-ybe": (_ssw_trial, 50, 1e-9, None),
    "hubbard": (_hubbard_trial, 50, 1e-5, _hubbard_hamiltonian),
    "bosonic-inv": (_bosonic_trial, 25, 1e-9, None),
    "fermionic-inv": (_fermionic_trial, 25, 1e-9, None),
    "charge-flow": (_charge_flow_trial, 50, 1e-9, None),
    "derive-smatrix": (_derive_trial, 10, 1e-9, None),
    "bridge": (_bridge_trial, 25, 1e-9, None),
    "ads-equality": (_ads_trial, 25, 1e-9, None),
    "appendix": (_appendix_trial, 25, 1e-9, None),
}

SUITE_NAMES: tuple[str, ...] = tuple(_SUITES) + ("all",)


def run_suite(
    name: str,
    seed: int = 1,
    trials: int | None = None,
    tol: float | None = None,
) -> SuiteReport:
    """Run one named suite (or 'all') and return its report.

    trials / tol default per suite; 'hubbard' uses 1e-5 because of its
    finite-difference steps, 'tza-six' uses 1e-8 for its longer products.
    For 'all', the overrides (when given) apply to every sub-suite and the
    reported trial count is the total.
    """
    start = time.perf_counter()
    if name == "all":
        checks: list[CheckResult] = []
        total = 0
        for sub in _SUITES:
            sub_report = run_suite(sub, seed=seed, trials=trials, tol=tol)
            total += sub_report.trials
            checks.extend(
                CheckResult(f"{sub}:{c.name}", c.max_residual, c.passed)
                for c in sub_report.checks
            )
        elapsed = (time.perf_counter() - start) * 1000.0
        return SuiteReport(
            "all", seed, total, tol if tol is not None else 1e-9,
            tuple(checks), elapsed,
        )
    if name not in _SUITES:
        raise KeyError(
            f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}"
        )
    fn, default_trials, default_tol, once = _SUITES[name]
    n = default_trials if trials is None else trials
    tolerance = default_tol if tol is None else tol
    residuals = _max_over_trials(fn, seed, n)
    if once is not None:
        residuals.update(once())
    checks = []
    for check_name, value in residuals.items():
        if not math.isfinite(value):
            raise SuiteNumericalError(name, seed, check_name)
        checks.append(CheckResult(check_name, value, value <= tolerance))
    elapsed = (time.perf_counter() - start) * 1000.0
    return SuiteReport(name, seed, n, tolerance, tuple(checks), elapsed)


def report_json(report: SuiteReport) -> str:
    """Serialize a report with stable key order.

    Everything except elapsed_ms is bit-identical for identical
    (suite, seed, trials, tolerance).
    """
    doc = {
        "suite": report.suite,
        "seed": report.seed,
        "trials": report.trials,
        "tolerance": report.tolerance,
        "checks": [
            {
                "name": c.name,
                "max_residual": c.max_residual,
                "pass": c.passed,
            }
            for c in report.checks
        ],
        "elapsed_ms": report.elapsed_ms,
    }
    return json.dumps(doc, indent=2)

import json

import numpy as np
import pytest
from fastapi.testclient import TestClient

from rmatrixkit.cli import main
from rmatrixkit.service import create_app
from rmatrixkit.suites import SUITE_NAMES, report_json, run_suite
from rmatrixkit.tensor import parse_matrix


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def _stable(doc: dict) -> dict:
    doc = dict(doc)
    doc.pop("elapsed_ms")
    return doc


def test_report_deterministic():
    r1 = json.loads(report_json(run_suite("ff-ybe", seed=42, trials=10)))
    r2 = json.loads(report_json(run_suite("ff-ybe", seed=42, trials=10)))
    assert _stable(r1) == _stable(r2)


def test_report_schema():
    doc = json.loads(report_json(run_suite("tza", trials=3)))
    assert set(doc) == {
        "suite", "seed", "trials", "tolerance", "checks", "elapsed_ms"
    }
    for check in doc["checks"]:
        assert set(check) == {"name", "max_residual", "pass"}
        assert np.isfinite(check["max_residual"])
        assert check["pass"] == (check["max_residual"] <= doc["tolerance"])


def test_unknown_suite_raises():
    with pytest.raises(KeyError):
        run_suite("nonexistent")


def test_thread_count_does_not_change_results(monkeypatch):
    base = _stable(json.loads(report_json(run_suite("appendix", trials=4))))
    monkeypatch.setenv("TZA_SMATRIX_THREADS", "4")
    threaded = _stable(
        json.loads(report_json(run_suite("appendix", trials=4)))
    )
    assert base == threaded


def test_service_health(client):
    resp = client.get("/health")
    assert resp.status_code == 200
    assert resp.json()["status"] == "ok"


def test_service_suite_endpoint(client):
    resp = client.post(
        "/suite", json={"name": "ff-ybe", "seed": 7, "trials": 5}
    )
    assert resp.status_code == 200
    doc = resp.json()
    assert doc["pass"] is True
    assert doc["suite"] == "ff-ybe"


def test_service_unknown_suite(client):
    resp = client.post("/suite", json={"name": "nope"})
    assert resp.status_code == 400


def test_service_dump_permutation(client):
    resp = client.post("/dump", json={"object": "permutation"})
    assert resp.status_code == 200
    m = parse_matrix(resp.json()["matrix"])
    expected = np.diag([1.0, 0.0, 0.0, -1.0]).astype(complex)
    expected[1, 2] = expected[2, 1] = 1.0
    assert np.array_equal(m, expected)


def test_cli_suite_exit_codes(capsys):
    assert main(["suite", "ff-ybe", "--trials", "3"]) == 0
    capsys.readouterr()
    # an impossible tolerance turns residuals into failures -> exit 1
    assert main(["suite", "ff-ybe", "--trials", "3", "--tol", "1e-30"]) == 1


def test_cli_json_deterministic(capsys):
    main(["suite", "bridge", "--trials", "2", "--json"])
    first = json.loads(capsys.readouterr().out)
    main(["suite", "bridge", "--trials", "2", "--json"])
    second = json.loads(capsys.readouterr().out)
    assert _stable(first) == _stable(second)


def test_cli_dump_deterministic(capsys):
    main(["dump", "tza", "--u", "0.3", "--u", "0.7", "--u", "1.1"])
    first = capsys.readouterr().out
    main(["dump", "tza", "--u", "0.3", "--u", "0.7", "--u", "1.1"])
    assert capsys.readouterr().out == first
    assert parse_matrix(first).shape == (8, 8)


def test_cli_dump_bad_input(capsys):
    assert main(["dump", "rcheck", "--u", "0.3"]) == 2


def test_cli_derive_matches_rcheck(capsys):
    from rmatrixkit.correspondence import ff_from_ads
    from rmatrixkit.sampling import random_ads_point
    from rmatrixkit.superalgebra import r_check
    from rmatrixkit.tensor import FockSpace

    rng = np.random.default_rng(3)
    q1 = random_ads_point(rng)
    q2 = random_ads_point(rng, g=q1.g)

    def flag(z):
        return f"{z.real},{z.imag}"

    code = main([
        "derive",
        f"--xp={flag(q1.x_plus)}", f"--xm={flag(q1.x_minus)}",
        f"--eta={flag(q1.eta)}",
        f"--xp2={flag(q2.x_plus)}", f"--xm2={flag(q2.x_minus)}",
        f"--eta2={flag(q2.eta)}", f"--g={flag(q1.g)}",
    ])
    assert code == 0
    derived = parse_matrix(capsys.readouterr().out)
    g1, couplings, t1 = ff_from_ads(q1)
    g2, _, t2 = ff_from_ads(q2)
    reference = r_check(FockSpace(2, n_layers=2), 1, g1, g2, t1, t2)
    scale = (reference.conj() * derived).sum() / (
        reference.conj() * reference
    ).sum()
    assert np.linalg.norm(derived - scale * reference) < 1e-8 * np.linalg.norm(
        reference
    )


def test_all_suite_names_run_quickly():
    for name in SUITE_NAMES:
        if name == "all":
            continue
        assert run_suite(name, trials=1).suite == name

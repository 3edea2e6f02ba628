"""Command-line harness.

The CLI is a thin HTTP client.  By default it talks to the service
in-process (no network); pass --server URL to talk to a remote instance.

Exit codes: 0 all checks pass; 1 a check failed; 2 usage or input error.
"""

from __future__ import annotations

import argparse
import sys

import httpx

from .suites import SUITE_NAMES


def _parse_complex(text: str) -> tuple[float, float]:
    try:
        re_part, im_part = text.split(",")
        return (float(re_part), float(im_part))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected 're,im', got {text!r}"
        ) from None


def _client(server: str | None) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server, timeout=600.0)
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

    from .service import create_app

    return TestClient(create_app())


def _print_report(doc: dict, as_json: bool) -> None:
    if as_json:
        import json

        print(json.dumps(doc, indent=2))
        return
    print(
        f"suite {doc['suite']}  seed {doc['seed']}  trials {doc['trials']}"
        f"  tolerance {doc['tolerance']:g}  ({doc['elapsed_ms']:.0f} ms)"
    )
    for check in doc["checks"]:
        status = "pass" if check["pass"] else "FAIL"
        print(f"  {status}  {check['name']:40s} {check['max_residual']:.3e}")


def _cmd_suite(args: argparse.Namespace) -> int:
    payload: dict = {"name": args.name, "seed": args.seed}
    if args.trials is not None:
        payload["trials"] = args.trials
    if args.tol is not None:
        payload["tol"] = args.tol
    with _client(args.server) as client:
        resp = client.post("/suite", json=payload)
    if resp.status_code == 422:
        print(resp.json()["detail"], file=sys.stderr)
        return 2
    if resp.status_code != 200:
        print(resp.json().get("detail", resp.text), file=sys.stderr)
        return 2
    doc = resp.json()
    _print_report(doc, args.json)
    return 0 if doc["pass"] else 1


def _cmd_dump(args: argparse.Namespace) -> int:
    payload = {"object": args.object, "u": args.u or []}
    if args.U is not None:
        payload["U"] = args.U
    with _client(args.server) as client:
        resp = client.post("/dump", json=payload)
    if resp.status_code != 200:
        print(resp.json().get("detail", resp.text), file=sys.stderr)
        return 2
    print(resp.json()["matrix"])
    return 0


def _cmd_derive(args: argparse.Namespace) -> int:
    payload = {
        "xp": args.xp,
        "xm": args.xm,
        "eta": args.eta,
        "xp2": args.xp2,
        "xm2": args.xm2,
        "eta2": args.eta2,
        "g": args.g,
    }
    with _client(args.server) as client:
        resp = client.post("/derive", json=payload)
    if resp.status_code != 200:
        print(resp.json().get("detail", resp.text), file=sys.stderr)
        return 2
    print(resp.json()["matrix"])
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rmatrixkit",
        description="Randomized verification suites and matrix dumps for "
        "free-fermion, glued two-layer, and derived S-matrices.",
    )
    parser.add_argument(
        "--server",
        default=None,
        help="base URL of a running service; default runs in-process",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_suite = sub.add_parser("suite", help="run a verification suite")
    p_suite.add_argument("name", choices=SUITE_NAMES)
    p_suite.add_argument("--seed", type=int, default=1)
    p_suite.add_argument("--trials", type=int, default=None)
    p_suite.add_argument("--tol", type=float, default=None)
    p_suite.add_argument("--json", action="store_true")
    p_suite.set_defaults(func=_cmd_suite)

    p_dump = sub.add_parser("dump", help="print a matrix as text")
    p_dump.add_argument(
        "object", choices=["permutation", "tza", "rcheck"]
    )
    p_dump.add_argument(
        "--u",
        type=float,
        action="append",
        help="spectral parameter; repeat for multiple points",
    )
    p_dump.add_argument("--U", type=float, default=None)
    p_dump.set_defaults(func=_cmd_dump)

    p_derive = sub.add_parser(
        "derive",
        help="derive the 16x16 S-matrix from symmetry at two "
        "mass-shell points",
    )
    for flag in ("--xp", "--xm", "--eta", "--xp2", "--xm2", "--eta2", "--g"):
        p_derive.add_argument(
            flag, type=_parse_complex, required=True, metavar="RE,IM"
        )
    p_derive.set_defaults(func=_cmd_derive)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

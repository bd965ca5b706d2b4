"""Command-line client for the compute and verification commands.

The CLI builds the same request models the HTTP service accepts and, by
default, runs them in process. With ``--server URL`` it posts the request to
a running service instead and renders the returned report, so it stays a
thin client either way.

Exit codes: 0 all checks passed, 1 a verification failed, 2 bad input
(schema violation, unknown name, unreadable file).
"""

from __future__ import annotations

import argparse
import json
import sys

from pydantic import ValidationError

from .errors import ProjFactorError
from .service.handlers import (
    handle_angle,
    handle_appendix,
    handle_factor,
    handle_principal,
    handle_quantum,
    handle_verify,
    report_json,
)
from .service.models import (
    AngleRequest,
    AppendixRequest,
    FactorRequest,
    InputDocument,
    PrincipalRequest,
    QuantumRequest,
    RandomSpec,
    ReportDocument,
    VerifyRequest,
)

_ENDPOINTS = {
    "factor": (FactorRequest, handle_factor, "/factor"),
    "angle": (AngleRequest, handle_angle, "/angle"),
    "principal": (PrincipalRequest, handle_principal, "/principal"),
    "verify": (VerifyRequest, handle_verify, "/verify"),
    "appendix": (AppendixRequest, handle_appendix, "/appendix"),
    "quantum": (QuantumRequest, handle_quantum, "/quantum"),
}


def _read_document(path: str | None) -> InputDocument:
    if path is None:
        raise ProjFactorError("this command needs an input document (--input PATH or '-')")
    if path == "-":
        raw = sys.stdin.read()
    else:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                raw = fh.read()
        except OSError as exc:
            raise ProjFactorError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ProjFactorError(f"input is not valid JSON: {exc}") from exc
    return InputDocument.model_validate(data)


def _dispatch(command: str, request, server: str | None) -> ReportDocument:
    _, handler, route = _ENDPOINTS[command]
    if server is None:
        return handler(request)
    import httpx

    response = httpx.post(server.rstrip("/") + route,
                          json=request.model_dump(mode="json"), timeout=600.0)
    if response.status_code != 200:
        raise ProjFactorError(f"server returned {response.status_code}: {response.text}")
    return ReportDocument.model_validate(response.json())


def _render_text(report: ReportDocument) -> str:
    lines = [f"command: {report.command}"]
    if report.seed is not None:
        lines.append(f"seed: {report.seed}")
    if report.field is not None:
        lines.append(f"field: {report.field}")
    for item in report.items:
        bits = [item.name]
        if item.path is not None:
            bits.append(f"path={item.path}")
        if item.value is not None:
            bits.append(f"value={item.value:.12g}")
        if item.target is not None:
            bits.append(f"target={item.target:.12g}")
        if item.residual is not None:
            bits.append(f"residual={item.residual:.3e}")
        if item.tolerance is not None:
            bits.append(f"tol={item.tolerance:.1e}")
        if item.passed is not None:
            bits.append("PASS" if item.passed else "FAIL")
        lines.append("  " + "  ".join(bits))
    s = report.summary
    lines.append(f"summary: {s.passed}/{s.total} checks passed"
                 + ("" if report.passed else " (FAILURES)"))
    return "\n".join(lines) + "\n"


def _emit(report: ReportDocument, fmt: str) -> int:
    if fmt == "structured":
        sys.stdout.write(report_json(report))
    else:
        sys.stdout.write(_render_text(report))
    return 0 if report.passed else 1


def _add_common(parser: argparse.ArgumentParser, *, document: bool = True) -> None:
    if document:
        parser.add_argument("--input", "-i", default=None,
                            help="input document path, or '-' for stdin")
    parser.add_argument("--format", choices=["text", "structured"], default="text",
                        help="human-readable text or canonical JSON")
    parser.add_argument("--server", default=None,
                        help="post the request to a running service instead")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="projfactor",
        description="projection factors, subspace angles and Pythagorean identity checks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("factor", help="projection factor between two named subspaces")
    _add_common(p)
    p.add_argument("--v", required=True, help="source subspace name")
    p.add_argument("--w", required=True, help="target subspace name")
    p.add_argument("--path", default="all",
                   choices=["svd", "det", "gram", "blade", "interior", "angle", "all"])
    p.add_argument("--tol", type=float, default=None, help="cross-path residual tolerance")

    p = sub.add_parser("angle", help="Grassmann and principal angles")
    _add_common(p)
    p.add_argument("--v", required=True)
    p.add_argument("--w", required=True)

    p = sub.add_parser("principal", help="principal vectors, angles and factors")
    _add_common(p)
    p.add_argument("--v", required=True)
    p.add_argument("--w", required=True)

    p = sub.add_parser("verify", help="run one Pythagorean identity verification")
    p.add_argument("theorem", choices=["line-partition", "subspace-coords",
                                       "binomial", "measure"])
    _add_common(p)
    p.add_argument("--random", nargs="+", type=int, default=None, metavar="N",
                   help="generate random objects: N [P [Q]]")
    p.add_argument("--field", choices=["real", "complex"], default="real",
                   help="field for randomly generated objects")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--line", default=None, help="name of a 1-dimensional subspace")
    p.add_argument("--partition", default=None)
    p.add_argument("--v", default=None)
    p.add_argument("--basis", default=None, help="named orthogonal basis (default canonical)")
    p.add_argument("--q", type=int, default=None, help="coordinate subspace dimension")
    p.add_argument("--set", dest="set_name", default=None,
                   help="parallelotope or sampled set name")

    p = sub.add_parser("appendix", help="randomized projection-factor identity suite")
    _add_common(p, document=False)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dims-up-to", type=int, default=8)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--field", choices=["real", "complex", "both"], default="both")

    p = sub.add_parser("quantum", help="outcome probabilities and fidelity")
    _add_common(p)
    p.add_argument("--state", required=True)
    p.add_argument("--observable", default=None)
    p.add_argument("--fidelity-with", dest="fidelity_with", default=None)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def _build_request(args: argparse.Namespace):
    cmd = args.command
    if cmd in ("factor", "angle", "principal"):
        doc = _read_document(args.input)
        if cmd == "factor":
            extra = {} if args.tol is None else {"tol": args.tol}
            return FactorRequest(document=doc, v=args.v, w=args.w, path=args.path, **extra)
        cls = AngleRequest if cmd == "angle" else PrincipalRequest
        return cls(document=doc, v=args.v, w=args.w)
    if cmd == "verify":
        doc = _read_document(args.input) if args.input else None
        random = None
        if args.random is not None:
            if not 1 <= len(args.random) <= 3:
                raise ProjFactorError("--random takes N [P [Q]]")
            n = args.random[0]
            p = args.random[1] if len(args.random) > 1 else None
            q = args.random[2] if len(args.random) > 2 else None
            random = RandomSpec(n=n, p=p, q=q)
        return VerifyRequest(
            theorem=args.theorem, document=doc, random=random, field=args.field,
            seed=args.seed, samples=args.samples, tol=args.tol, line=args.line,
            partition=args.partition, v=args.v, basis=args.basis, q=args.q,
            set_name=args.set_name,
        )
    if cmd == "appendix":
        extra = {} if args.tol is None else {"tol": args.tol}
        return AppendixRequest(trials=args.trials, seed=args.seed,
                               dims_up_to=args.dims_up_to, field=args.field, **extra)
    if cmd == "quantum":
        doc = _read_document(args.input)
        return QuantumRequest(document=doc, state=args.state, observable=args.observable,
                              fidelity_with=args.fidelity_with)
    raise ProjFactorError(f"unknown command {cmd!r}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "serve":
        import uvicorn

        uvicorn.run("projfactor.service.app:app", host=args.host, port=args.port)
        return 0
    try:
        request = _build_request(args)
        report = _dispatch(args.command, request, args.server)
    except (ProjFactorError, ValidationError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    return _emit(report, args.format)


if __name__ == "__main__":
    sys.exit(main())

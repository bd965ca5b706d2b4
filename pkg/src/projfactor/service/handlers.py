"""Command handlers shared by the HTTP endpoints and the CLI.

Each handler turns a validated request into a ReportDocument. Handlers are
pure given the request (randomness is seeded through the request), so two
identical requests produce byte-identical serialized reports.
"""

from __future__ import annotations

import json

import numpy as np

from ..errors import GradeError, InputError
from ..identities import run_identity_suite
from ..linalg import Field
from ..measure import Parallelotope, SampledSet
from ..projection import (
    FactorPath,
    applicable_paths,
    compute_factor,
    grassmann_angle,
    principal_decomposition,
)
from ..pythagoras import (
    CoordinateFamily,
    OrthogonalPartition,
    verify_binomial_identity,
    verify_line_partition,
    verify_measure_line,
    verify_measure_subspace_q,
    verify_subspace_coordinates,
)
from ..quantum import bures_angle, fidelity, probabilities, total_probability
from ..reporting import Check, worst_residuals
from ..sampling import (
    random_orthogonal_partition,
    random_spanning_edges,
    random_subspace,
    rng_from_seed,
)
from ..tolerances import CROSS_PATH_TOL, SUM_TOL
from .convert import (
    document_field,
    resolve_basis,
    resolve_observable,
    resolve_parallelotope,
    resolve_partition,
    resolve_sampled_set,
    resolve_state,
    resolve_subspace,
)
from .models import (
    AngleRequest,
    AppendixRequest,
    FactorRequest,
    PrincipalRequest,
    QuantumRequest,
    ReportDocument,
    ReportItem,
    ReportSummary,
    VerifyRequest,
)

_PATH_ALIASES = {
    "svd": FactorPath.SVD,
    "det": FactorPath.ORTHONORMAL_DET,
    "gram": FactorPath.GENERAL_BASIS_DET,
    "blade": FactorPath.BLADES,
    "interior": FactorPath.INTERIOR,
    "angle": FactorPath.GRASSMANN_ANGLE,
}


def _py(value):
    """Convert numpy scalars and containers into JSON-safe builtins."""
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, np.ndarray):
        return [_py(x) for x in value.tolist()]
    if isinstance(value, dict):
        return {k: _py(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_py(v) for v in value]
    return value


def _item_from_check(check: Check) -> ReportItem:
    return ReportItem(
        name=check.name,
        kind=check.kind,
        value=_py(check.value),
        target=_py(check.target),
        residual=_py(check.residual),
        tolerance=check.tolerance,
        passed=check.passed,
        details=_py(check.details),
    )


def _finish(command: str, items: list[ReportItem], *, seed: int | None = None,
            field: str | None = None) -> ReportDocument:
    gated = [i for i in items if i.passed is not None]
    n_passed = sum(1 for i in gated if i.passed)
    summary = ReportSummary(total=len(gated), passed=n_passed, failed=len(gated) - n_passed)
    return ReportDocument(command=command, seed=seed, field=field, items=items,
                          summary=summary, passed=n_passed == len(gated))


def report_json(report: ReportDocument) -> str:
    """Canonical serialization: sorted keys, fixed indentation."""
    return json.dumps(report.model_dump(mode="json"), sort_keys=True, indent=2) + "\n"


def handle_factor(req: FactorRequest) -> ReportDocument:
    doc = req.document
    v = resolve_subspace(doc, req.v)
    w = resolve_subspace(doc, req.w)
    if req.path == "all":
        paths = applicable_paths(v, w)
    else:
        paths = [_PATH_ALIASES[req.path]]
    items: list[ReportItem] = []
    values: dict[str, float] = {}
    for path in paths:
        try:
            rep = compute_factor(v, w, path)
        except GradeError as exc:
            raise InputError(str(exc)) from exc
        values[path.value] = rep.value
        items.append(ReportItem(name=f"factor[{req.v},{req.w}]", kind="factor",
                                value=rep.value, path=path.value))
    if len(values) > 1:
        names = sorted(values)
        worst = 0.0
        for i, a in enumerate(names):
            for b in names[i + 1 :]:
                resid = abs(values[a] - values[b])
                worst = max(worst, resid)
                items.append(ReportItem(
                    name=f"residual[{a},{b}]", kind="equality", value=resid,
                    target=0.0, residual=resid, tolerance=req.tol,
                    passed=resid <= req.tol))
    return _finish("factor", items, field=doc.field)


def handle_angle(req: AngleRequest) -> ReportDocument:
    doc = req.document
    v = resolve_subspace(doc, req.v)
    w = resolve_subspace(doc, req.w)
    items = [ReportItem(name=f"grassmann_angle[{req.v},{req.w}]", kind="angle",
                        value=grassmann_angle(v, w))]
    if not v.is_zero and not w.is_zero:
        dec = principal_decomposition(v, w)
        items.append(ReportItem(name="principal_angles", kind="angles",
                                details={"theta": _py(dec.theta)}))
    return _finish("angle", items, field=doc.field)


def handle_principal(req: PrincipalRequest) -> ReportDocument:
    doc = req.document
    v = resolve_subspace(doc, req.v)
    w = resolve_subspace(doc, req.w)
    if v.is_zero or w.is_zero:
        raise InputError("principal decomposition needs nonzero subspaces")
    dec = principal_decomposition(v, w)
    details = {
        "sigma": _py(dec.sigma),
        "theta": _py(dec.theta),
        "pi_principal": _py(dec.pi_principal),
        "e_vectors": _complex_columns(dec.e_vecs, v.field),
        "f_vectors": _complex_columns(dec.f_vecs, v.field),
    }
    items = [ReportItem(name=f"principal[{req.v},{req.w}]", kind="decomposition",
                        details=details)]
    return _finish("principal", items, field=doc.field)


def _complex_columns(cols: np.ndarray, field: Field):
    out = []
    for j in range(cols.shape[1]):
        col = cols[:, j]
        if field is Field.COMPLEX:
            out.append([[float(x.real), float(x.imag)] for x in col])
        else:
            out.append([float(x) for x in col])
    return out


def _verify_line_partition(req: VerifyRequest, tol: float):
    if req.random is not None:
        rng = rng_from_seed(req.seed)
        fld = Field.REAL if req.field == "real" else Field.COMPLEX
        line = random_subspace(rng, req.random.n, 1, fld)
        partition = OrthogonalPartition(random_orthogonal_partition(rng, req.random.n, fld))
        return [verify_line_partition(line, partition, tol)], fld
    doc = req.document
    if req.line is None or req.partition is None:
        raise InputError("line-partition needs 'line' and 'partition' names")
    line = resolve_subspace(doc, req.line)
    partition = resolve_partition(doc, req.partition)
    return [verify_line_partition(line, partition, tol)], document_field(doc)


def _verify_subspace_coords(req: VerifyRequest, tol: float):
    if req.random is not None:
        rng = rng_from_seed(req.seed)
        fld = Field.REAL if req.field == "real" else Field.COMPLEX
        n = req.random.n
        p = req.random.p or 1
        v = random_subspace(rng, n, p, fld)
        family = CoordinateFamily.canonical(n, p, fld)
        s = Parallelotope(random_spanning_edges(rng, v), fld)
        return verify_subspace_coordinates(v, family, s, tol), fld
    doc = req.document
    if req.v is None:
        raise InputError("subspace-coords needs a subspace name 'v'")
    v = resolve_subspace(doc, req.v)
    family = CoordinateFamily(resolve_basis(doc, req.basis), v.dim, document_field(doc))
    s = resolve_parallelotope(doc, req.set_name) if req.set_name else None
    return verify_subspace_coordinates(v, family, s, tol), document_field(doc)


def _verify_binomial(req: VerifyRequest, tol: float):
    if req.random is not None:
        rng = rng_from_seed(req.seed)
        fld = Field.REAL if req.field == "real" else Field.COMPLEX
        n = req.random.n
        p = req.random.p or 1
        q = req.random.q or p
        v = random_subspace(rng, n, p, fld)
        family = CoordinateFamily.canonical(n, q, fld)
        return [verify_binomial_identity(v, family, tol)], fld
    doc = req.document
    if req.v is None or req.q is None:
        raise InputError("binomial needs a subspace name 'v' and a dimension 'q'")
    v = resolve_subspace(doc, req.v)
    family = CoordinateFamily(resolve_basis(doc, req.basis), req.q, document_field(doc))
    return [verify_binomial_identity(v, family, tol)], document_field(doc)


def _verify_measure(req: VerifyRequest, tol: float):
    if req.random is not None:
        rng = rng_from_seed(req.seed)
        fld = Field.REAL if req.field == "real" else Field.COMPLEX
        n = req.random.n
        p = req.random.p or 1
        q = req.random.q
        if q is None or q == 0:
            line = random_subspace(rng, n, 1, fld)
            s = Parallelotope(random_spanning_edges(rng, line), fld)
            partition = OrthogonalPartition(random_orthogonal_partition(rng, n, fld))
            return [verify_measure_line(s, partition, tol)], fld
        v = random_subspace(rng, n, p, fld)
        s = Parallelotope(random_spanning_edges(rng, v), fld)
        family = CoordinateFamily.canonical(n, q, fld)
        return [verify_measure_subspace_q(s, v, family, tol)], fld
    doc = req.document
    if req.set_name is None:
        raise InputError("measure verification needs a set name")
    fld = document_field(doc)
    if req.partition is not None:
        partition = resolve_partition(doc, req.partition)
        if req.set_name in doc.parallelotopes:
            s = resolve_parallelotope(doc, req.set_name)
        else:
            s = resolve_sampled_set(doc, req.set_name)
            if req.samples:
                s = SampledSet(s.carrier, s.indicator, s.lows, s.highs, req.samples, s.seed)
        return [verify_measure_line(s, partition, tol)], fld
    if req.v is None or req.q is None:
        raise InputError("subspace measure verification needs 'v' and 'q'")
    v = resolve_subspace(doc, req.v)
    s = resolve_parallelotope(doc, req.set_name)
    family = CoordinateFamily(resolve_basis(doc, req.basis), req.q, fld)
    return [verify_measure_subspace_q(s, v, family, tol)], fld


def handle_verify(req: VerifyRequest) -> ReportDocument:
    default_tol = SUM_TOL if req.theorem == "line-partition" else CROSS_PATH_TOL
    tol = req.tol if req.tol is not None else default_tol
    dispatch = {
        "line-partition": _verify_line_partition,
        "subspace-coords": _verify_subspace_coords,
        "binomial": _verify_binomial,
        "measure": _verify_measure,
    }
    checks, fld = dispatch[req.theorem](req, tol)
    items = [_item_from_check(c) for c in checks]
    return _finish(f"verify:{req.theorem}", items, seed=req.seed, field=fld.value)


def handle_appendix(req: AppendixRequest) -> ReportDocument:
    fields = {
        "real": (Field.REAL,),
        "complex": (Field.COMPLEX,),
        "both": (Field.REAL, Field.COMPLEX),
    }[req.field]
    checks = run_identity_suite(req.trials, req.seed, fields, req.dims_up_to, req.tol)
    worst = worst_residuals(checks)
    failed_names = {c.name for c in checks if not c.passed}
    counts: dict[str, int] = {}
    for c in checks:
        counts[c.name] = counts.get(c.name, 0) + 1
    items = [
        ReportItem(name=name, kind="identity", residual=worst[name], tolerance=req.tol,
                   passed=name not in failed_names, details={"evaluations": counts[name]})
        for name in sorted(worst)
    ]
    return _finish("appendix", items, seed=req.seed, field=req.field)


def handle_quantum(req: QuantumRequest) -> ReportDocument:
    doc = req.document
    if document_field(doc) is not Field.COMPLEX:
        raise InputError("quantum commands need a complex document")
    state = resolve_state(doc, req.state)
    items: list[ReportItem] = []
    if req.observable is not None:
        obs = resolve_observable(doc, req.observable)
        probs = probabilities(state, obs)
        for value, prob in sorted(zip(obs.eigenvalues, probs)):
            items.append(ReportItem(name=f"probability[{value:g}]", kind="probability",
                                    value=prob))
        total = total_probability(state, obs)
        resid = abs(total - 1.0)
        items.append(ReportItem(name="total_probability", kind="equality", value=total,
                                target=1.0, residual=resid, tolerance=SUM_TOL,
                                passed=resid <= SUM_TOL))
    if req.fidelity_with is not None:
        other = resolve_state(doc, req.fidelity_with)
        f = fidelity(state.psi, other.psi)
        items.append(ReportItem(name=f"fidelity[{req.state},{req.fidelity_with}]",
                                kind="fidelity", value=f))
        items.append(ReportItem(name=f"bures_angle[{req.state},{req.fidelity_with}]",
                                kind="angle", value=bures_angle(state.psi, other.psi)))
    return _finish("quantum", items, field=doc.field)

"""Resolve names in an input document into core geometry objects."""

from __future__ import annotations

import numpy as np

from ..errors import InputError, ProjFactorError
from ..linalg import Field, Subspace
from ..measure import SHAPE_FACTORIES, Parallelotope, SampledSet
from ..pythagoras import OrthogonalPartition
from ..quantum import Observable, QuantumState
from .models import InputDocument


def document_field(doc: InputDocument) -> Field:
    return Field.REAL if doc.field == "real" else Field.COMPLEX


def entries_to_vector(entries, field: Field) -> np.ndarray:
    if field is Field.COMPLEX:
        return np.array([complex(e[0], e[1]) if isinstance(e, (tuple, list)) else complex(e)
                         for e in entries])
    return np.array([float(e) for e in entries])


def columns_to_matrix(columns, field: Field) -> np.ndarray:
    return np.column_stack([entries_to_vector(col, field) for col in columns])


def resolve_subspace(doc: InputDocument, name: str) -> Subspace:
    if name not in doc.subspaces:
        raise InputError(f"unknown subspace {name!r}")
    fld = document_field(doc)
    return Subspace(columns_to_matrix(doc.subspaces[name], fld), fld)


def resolve_basis(doc: InputDocument, name: str | None) -> np.ndarray:
    fld = document_field(doc)
    if name is None:
        return np.eye(doc.ambient_dim, dtype=fld.dtype)
    if name not in doc.bases:
        raise InputError(f"unknown basis {name!r}")
    return columns_to_matrix(doc.bases[name], fld)


def resolve_partition(doc: InputDocument, name: str) -> OrthogonalPartition:
    if name not in doc.partitions:
        raise InputError(f"unknown partition {name!r}")
    parts = [resolve_subspace(doc, ref) for ref in doc.partitions[name]]
    try:
        return OrthogonalPartition(parts)
    except (ValueError, ProjFactorError) as exc:
        raise InputError(f"partition {name!r} is invalid: {exc}") from exc


def resolve_parallelotope(doc: InputDocument, name: str) -> Parallelotope:
    if name not in doc.parallelotopes:
        raise InputError(f"unknown parallelotope {name!r}")
    fld = document_field(doc)
    return Parallelotope(columns_to_matrix(doc.parallelotopes[name].edges, fld), fld)


def resolve_sampled_set(doc: InputDocument, name: str) -> SampledSet:
    if name not in doc.sampled_sets:
        raise InputError(f"unknown sampled set {name!r}")
    spec = doc.sampled_sets[name]
    carrier = resolve_subspace(doc, spec.carrier)
    factory = SHAPE_FACTORIES[spec.shape]
    try:
        indicator = factory(**spec.params)
    except TypeError as exc:
        raise InputError(f"bad parameters for shape {spec.shape!r}: {exc}") from exc
    lows = np.array([b[0] for b in spec.box])
    highs = np.array([b[1] for b in spec.box])
    return SampledSet(carrier, indicator, lows, highs, spec.samples, spec.seed)


def resolve_state(doc: InputDocument, name: str) -> QuantumState:
    if name not in doc.states:
        raise InputError(f"unknown state {name!r}")
    return QuantumState(entries_to_vector(doc.states[name], Field.COMPLEX))


def resolve_observable(doc: InputDocument, name: str) -> Observable:
    if name not in doc.observables:
        raise InputError(f"unknown observable {name!r}")
    spec = doc.observables[name]
    parts = [resolve_subspace(doc, ref) for ref in spec.eigenspaces]
    try:
        partition = OrthogonalPartition(parts)
        return Observable(partition, tuple(spec.eigenvalues))
    except (ValueError, ProjFactorError) as exc:
        raise InputError(f"observable {name!r} is invalid: {exc}") from exc

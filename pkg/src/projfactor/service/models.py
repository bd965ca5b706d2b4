"""Pydantic request/response schemas for the HTTP service and the CLI.

The input document is one JSON object naming every geometric object a
command can refer to. Scalars are plain numbers in real mode; complex mode
additionally accepts two-element [re, im] arrays.
"""

from __future__ import annotations

from typing import Any, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field as PydanticField, model_validator

from ..tolerances import CROSS_PATH_TOL, DEFAULT_SAMPLE_COUNT

Entry = Union[float, tuple[float, float]]

FieldName = Literal["real", "complex"]


class ParallelotopeSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")
    edges: list[list[Entry]] = PydanticField(min_length=1)


class SampledSetSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")
    carrier: str
    shape: Literal["ball", "box", "star", "segments"]
    params: dict[str, Any] = {}
    box: list[tuple[float, float]] = PydanticField(min_length=1)
    samples: int = DEFAULT_SAMPLE_COUNT
    seed: int = 0


class ObservableSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")
    eigenvalues: list[float] = PydanticField(min_length=1)
    eigenspaces: list[str] = PydanticField(min_length=1)


class InputDocument(BaseModel):
    """Named subspaces, partitions, sets and states over one ambient space."""

    model_config = ConfigDict(extra="forbid")

    field: FieldName
    ambient_dim: int = PydanticField(gt=0)
    subspaces: dict[str, list[list[Entry]]] = {}
    bases: dict[str, list[list[Entry]]] = {}
    partitions: dict[str, list[str]] = {}
    parallelotopes: dict[str, ParallelotopeSpec] = {}
    sampled_sets: dict[str, SampledSetSpec] = {}
    states: dict[str, list[Entry]] = {}
    observables: dict[str, ObservableSpec] = {}

    @model_validator(mode="after")
    def _check_entries(self):
        def check_vector(owner: str, vec: list[Entry]):
            if len(vec) != self.ambient_dim:
                raise ValueError(
                    f"{owner}: vector has {len(vec)} entries, expected {self.ambient_dim}"
                )
            if self.field == "real":
                for e in vec:
                    if isinstance(e, tuple):
                        raise ValueError(f"{owner}: complex entry in a real document")

        for name, cols in self.subspaces.items():
            for col in cols:
                check_vector(f"subspaces[{name}]", col)
        for name, cols in self.bases.items():
            if len(cols) != self.ambient_dim:
                raise ValueError(f"bases[{name}]: need {self.ambient_dim} vectors")
            for col in cols:
                check_vector(f"bases[{name}]", col)
        for name, spec in self.parallelotopes.items():
            for col in spec.edges:
                check_vector(f"parallelotopes[{name}]", col)
        for name, vec in self.states.items():
            check_vector(f"states[{name}]", vec)
        for name, names in self.partitions.items():
            for ref in names:
                if ref not in self.subspaces:
                    raise ValueError(f"partitions[{name}]: unknown subspace {ref!r}")
        for name, spec in self.observables.items():
            for ref in spec.eigenspaces:
                if ref not in self.subspaces:
                    raise ValueError(f"observables[{name}]: unknown subspace {ref!r}")
        for name, spec in self.sampled_sets.items():
            if spec.carrier not in self.subspaces:
                raise ValueError(f"sampled_sets[{name}]: unknown subspace {spec.carrier!r}")
        return self


class FactorRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    document: InputDocument
    v: str
    w: str
    path: Literal["svd", "det", "gram", "blade", "interior", "angle", "all"] = "all"
    tol: float = CROSS_PATH_TOL


class AngleRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    document: InputDocument
    v: str
    w: str


class PrincipalRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    document: InputDocument
    v: str
    w: str


class RandomSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")
    n: int = PydanticField(gt=0)
    p: Optional[int] = PydanticField(default=None, gt=0)
    q: Optional[int] = PydanticField(default=None, ge=0)


class VerifyRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    theorem: Literal["line-partition", "subspace-coords", "binomial", "measure"]
    document: Optional[InputDocument] = None
    random: Optional[RandomSpec] = None
    field: FieldName = "real"
    seed: int = 0
    samples: Optional[int] = None
    tol: Optional[float] = None
    line: Optional[str] = None
    partition: Optional[str] = None
    v: Optional[str] = None
    basis: Optional[str] = None
    q: Optional[int] = None
    set_name: Optional[str] = None

    @model_validator(mode="after")
    def _need_source(self):
        if self.document is None and self.random is None:
            raise ValueError("either a document or a random spec is required")
        return self


class AppendixRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    trials: int = PydanticField(default=100, ge=0)
    seed: int = 0
    dims_up_to: int = PydanticField(default=8, ge=2, le=16)
    tol: float = CROSS_PATH_TOL
    field: Literal["real", "complex", "both"] = "both"


class QuantumRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    document: InputDocument
    state: str
    observable: Optional[str] = None
    fidelity_with: Optional[str] = None

    @model_validator(mode="after")
    def _need_target(self):
        if self.observable is None and self.fidelity_with is None:
            raise ValueError("need an observable or a second state")
        return self


class ReportItem(BaseModel):
    name: str
    kind: str = "value"
    value: Optional[float] = None
    target: Optional[float] = None
    residual: Optional[float] = None
    tolerance: Optional[float] = None
    passed: Optional[bool] = None
    path: Optional[str] = None
    details: dict[str, Any] = {}


class ReportSummary(BaseModel):
    total: int
    passed: int
    failed: int


class ReportDocument(BaseModel):
    """Deterministic result of one command: echo, items, summary."""

    command: str
    seed: Optional[int] = None
    field: Optional[str] = None
    items: list[ReportItem]
    summary: ReportSummary
    passed: bool

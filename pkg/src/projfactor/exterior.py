"""Blade algebra: wedge products, blade inner products, interior products.

A blade stores its list of factor vectors rather than expanded coordinates,
so inner products and norms reduce to Gram determinants. Expansion over
canonical-basis multi-indices happens only where a result is not guaranteed
to stay decomposable (the interior product).

Multi-indices are 0-based tuples in strictly increasing order, enumerated
lexicographically everywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Iterator

import numpy as np

from .errors import DependentBasisError, DimensionMismatchError, FieldMismatchError, GradeError
from .linalg import Field, Subspace, coerce, det, infer_field


def multi_indices(n: int, q: int) -> Iterator[tuple[int, ...]]:
    """All strictly increasing q-tuples over range(n), in lexicographic order."""
    return combinations(range(n), q)


class Blade:
    """A decomposable p-vector v_1 ^ ... ^ v_p, stored as factor columns.

    Grade 0 represents the scalar 1. Dependent factors are legal and give the
    zero p-vector (norm 0).
    """

    __slots__ = ("field", "factors")

    def __init__(self, factors, field: Field | None = None, *, ambient_dim: int | None = None):
        if isinstance(factors, np.ndarray) and factors.ndim == 2:
            cols = factors
        else:
            vecs = [np.asarray(v) for v in factors]
            if vecs:
                cols = np.column_stack(vecs)
            else:
                if ambient_dim is None:
                    raise ValueError("a grade-0 blade needs an explicit ambient_dim")
                cols = np.zeros((ambient_dim, 0))
        if field is None:
            field = infer_field(cols)
        cols = coerce(cols, field).copy()
        if cols.shape[1] > cols.shape[0]:
            raise GradeError(
                f"grade {cols.shape[1]} exceeds ambient dimension {cols.shape[0]}"
            )
        cols.setflags(write=False)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "factors", cols)

    def __setattr__(self, name, value):
        raise AttributeError("Blade is immutable")

    @classmethod
    def scalar_one(cls, ambient_dim: int, field: Field) -> "Blade":
        return cls(np.zeros((ambient_dim, 0), dtype=field.dtype), field)

    @classmethod
    def canonical(cls, ambient_dim: int, index: tuple[int, ...], field: Field) -> "Blade":
        """Basis blade e_{i_1} ^ ... ^ e_{i_q} for a 0-based multi-index."""
        cols = np.zeros((ambient_dim, len(index)), dtype=field.dtype)
        for pos, i in enumerate(index):
            cols[i, pos] = 1.0
        return cls(cols, field)

    @property
    def grade(self) -> int:
        return self.factors.shape[1]

    @property
    def ambient_dim(self) -> int:
        return self.factors.shape[0]

    def span(self) -> Subspace:
        return Subspace(self.factors, self.field)

    def __repr__(self) -> str:
        return f"Blade(field={self.field.value}, ambient_dim={self.ambient_dim}, grade={self.grade})"


def _check_blades(nu: Blade, omega: Blade) -> None:
    if nu.ambient_dim != omega.ambient_dim:
        raise DimensionMismatchError("blades live in different ambient spaces")
    if nu.field is not omega.field:
        raise FieldMismatchError("blades over different fields")


def blade_inner(nu: Blade, omega: Blade):
    """Inner product of equal-grade blades: det of the factor cross-Gram."""
    _check_blades(nu, omega)
    if nu.grade != omega.grade:
        raise GradeError(f"grades differ: {nu.grade} vs {omega.grade}")
    return det(nu.factors.conj().T @ omega.factors)


def blade_norm(nu: Blade) -> float:
    """Norm sqrt(det Gram); the spanned parallelotope's volume in the real case."""
    g = det(nu.factors.conj().T @ nu.factors)
    return math.sqrt(max(g.real if isinstance(g, complex) else g, 0.0))


def wedge(nu: Blade, omega: Blade) -> Blade:
    """Exterior product, represented by concatenating factor lists."""
    _check_blades(nu, omega)
    if nu.grade + omega.grade > nu.ambient_dim:
        raise GradeError(
            f"grade {nu.grade + omega.grade} exceeds ambient dimension {nu.ambient_dim}"
        )
    return Blade(np.hstack([nu.factors, omega.factors]), nu.field)


def blade_project(nu: Blade, w: Subspace) -> Blade:
    """Project every factor onto ``w``; the result can degenerate to norm 0."""
    if nu.ambient_dim != w.ambient_dim:
        raise DimensionMismatchError("blade and subspace ambient dimensions differ")
    if nu.field is not w.field:
        raise FieldMismatchError("blade and subspace over different fields")
    q = w.ortho
    return Blade(q @ (q.conj().T @ nu.factors), nu.field)


@dataclass(frozen=True)
class Multivector:
    """A homogeneous q-vector expanded over canonical-basis multi-indices."""

    ambient_dim: int
    grade: int
    field: Field
    coeffs: dict = dc_field(default_factory=dict)

    def coefficient(self, index: tuple[int, ...]):
        return self.coeffs.get(tuple(index), 0.0)

    def norm(self) -> float:
        return math.sqrt(sum(abs(c) ** 2 for c in self.coeffs.values()))

    def inner(self, other: "Multivector"):
        """Inner product, conjugate-linear in self."""
        if self.grade != other.grade:
            raise GradeError("grades differ")
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatchError("ambient dimensions differ")
        total = sum(
            np.conj(c) * other.coeffs.get(idx, 0.0) for idx, c in self.coeffs.items()
        )
        return complex(total) if self.field.is_complex else float(np.real(total))


def expand(nu: Blade) -> Multivector:
    """Coordinates of a blade over canonical-basis blades.

    The coefficient at multi-index I is the determinant of the factor rows
    selected by I.
    """
    n, p = nu.factors.shape
    coeffs = {}
    for idx in multi_indices(n, p):
        c = det(nu.factors[list(idx), :]) if p else 1.0
        if c != 0.0:
            coeffs[idx] = c
    return Multivector(n, p, nu.field, coeffs)


def interior(nu: Blade, omega: Blade) -> Multivector:
    """Interior product: the (q-p)-vector adjoint to wedging with ``nu``.

    Defined by <interior(nu, omega), mu> = <omega, nu ^ mu> for every
    (q-p)-blade mu; the coefficient over a canonical basis blade e_K is
    therefore <nu ^ e_K, omega>.
    """
    _check_blades(nu, omega)
    p, q = nu.grade, omega.grade
    if p > q:
        raise GradeError(f"cannot contract grade {p} out of grade {q}")
    n = nu.ambient_dim
    coeffs = {}
    for idx in multi_indices(n, q - p):
        e_k = Blade.canonical(n, idx, nu.field)
        joined = np.hstack([nu.factors, e_k.factors])
        c = det(joined.conj().T @ omega.factors)
        if c != 0.0:
            coeffs[idx] = c
    return Multivector(n, q - p, nu.field, coeffs)


def unit_blade(s: Subspace) -> Blade:
    """A norm-1 blade spanning the top exterior power of a nonzero subspace."""
    if s.is_zero:
        raise DependentBasisError("the zero subspace has no unit blade")
    return Blade(s.ortho, s.field)

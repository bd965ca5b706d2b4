"""Orthogonal partitions, coordinate subspaces and Pythagorean identity checks.

The identities verified here relate measures of a set in a subspace to the
measures of its orthogonal projections:

  * lines against an orthogonal partition of the ambient space: the squared
    1-d measures add up in the real case, the unsquared 2-d measures in the
    complex case;
  * a p-dimensional subspace against the p-dimensional coordinate subspaces
    of an orthogonal basis: same squaring rule;
  * projections on q-dimensional coordinate subspaces with q != p: the sums
    equal binomial coefficients instead of 1, giving a scaled identity.
"""

from __future__ import annotations

import math
from itertools import combinations
from typing import Iterator

import numpy as np

from .errors import DimensionMismatchError, FieldMismatchError, ZeroSubspaceError
from .linalg import Field, Subspace, as_columns, coerce, check_same_ambient
from .measure import (
    Parallelotope,
    SampledSet,
    monte_carlo_measure,
    parallelotope_measure,
    project_parallelotope,
    projected_set_measure,
)
from .projection import line_factor, projection_factor
from .reporting import Check, relative_check
from .tolerances import CROSS_PATH_TOL, MC_SIGMAS, SUM_TOL


class OrthogonalPartition:
    """Mutually orthogonal subspaces summing to the whole ambient space."""

    __slots__ = ("parts",)

    def __init__(self, parts, *, tol: float = 1e-10):
        parts = list(parts)
        if not parts:
            raise ValueError("a partition needs at least one part")
        first = parts[0]
        total = 0
        for p in parts:
            check_same_ambient(first, p)
            total += p.dim
        if total != first.ambient_dim:
            raise DimensionMismatchError(
                f"part dimensions sum to {total}, expected {first.ambient_dim}"
            )
        for i in range(len(parts)):
            for j in range(i + 1, len(parts)):
                cross = parts[i].ortho.conj().T @ parts[j].ortho
                if cross.size and float(np.max(np.abs(cross))) > tol:
                    raise ValueError(f"parts {i} and {j} are not orthogonal")
        object.__setattr__(self, "parts", tuple(parts))

    def __setattr__(self, name, value):
        raise AttributeError("OrthogonalPartition is immutable")

    @property
    def field(self) -> Field:
        return self.parts[0].field

    @property
    def ambient_dim(self) -> int:
        return self.parts[0].ambient_dim

    def __len__(self) -> int:
        return len(self.parts)


class CoordinateFamily:
    """All C(n, q) coordinate subspaces of an orthogonal basis, in lex order.

    The basis may be orthogonal without being normalized; members are built
    from the normalized vectors.
    """

    __slots__ = ("basis", "q", "field", "_unit")

    def __init__(self, basis, q: int, field: Field | None = None, *, tol: float = 1e-10):
        cols = as_columns(basis, field)
        if field is None:
            field = Field.COMPLEX if np.iscomplexobj(cols) else Field.REAL
        cols = coerce(cols, field)
        n = cols.shape[0]
        if cols.shape[1] != n:
            raise DimensionMismatchError(f"need {n} basis vectors, got {cols.shape[1]}")
        if not 1 <= q <= n:
            raise ValueError(f"member dimension {q} out of range 1..{n}")
        norms = np.linalg.norm(cols, axis=0)
        if np.any(norms == 0.0):
            raise ZeroSubspaceError("basis vectors must be nonzero")
        unit = cols / norms
        g = np.abs(unit.conj().T @ unit) - np.eye(n)
        if float(np.max(g)) > tol:
            raise ValueError("basis vectors are not orthogonal")
        object.__setattr__(self, "basis", cols)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "_unit", unit)

    def __setattr__(self, name, value):
        raise AttributeError("CoordinateFamily is immutable")

    @property
    def ambient_dim(self) -> int:
        return self.basis.shape[0]

    def __len__(self) -> int:
        return math.comb(self.ambient_dim, self.q)

    def members(self) -> Iterator[tuple[tuple[int, ...], Subspace]]:
        """(multi-index, subspace) pairs in lexicographic index order."""
        for idx in combinations(range(self.ambient_dim), self.q):
            yield idx, Subspace.from_orthonormal(self._unit[:, list(idx)], self.field)

    @classmethod
    def canonical(cls, n: int, q: int, field: Field) -> "CoordinateFamily":
        return cls(np.eye(n, dtype=field.dtype), q, field)


def _factor_power(field: Field) -> int:
    """Exponent on factors and measures in the Pythagorean sums."""
    return 2 if field is Field.REAL else 1


def _index_label(idx: tuple[int, ...]) -> str:
    return "(" + ",".join(str(i + 1) for i in idx) + ")"


def verify_line_partition(line: Subspace, partition: OrthogonalPartition,
                          tol: float = SUM_TOL) -> Check:
    """Sum of line projection factors over a partition against 1.

    Real case: sum of squared factors; complex case: plain sum (the factors
    of complex lines are already squared cosines).
    """
    check_same_ambient(line, partition.parts[0])
    if line.dim != 1:
        raise DimensionMismatchError("needs a one-dimensional subspace")
    mode = "real_line" if line.field is Field.REAL else "complex_line"
    vec = line.basis[:, 0]
    terms = [line_factor(vec, part, mode) for part in partition.parts]
    power = 1 if line.field is Field.COMPLEX else 2
    total = float(sum(t**power for t in terms))
    check = relative_check("line_partition_sum", total, 1.0, tol, terms=terms)
    return check


def verify_measure_line(s, partition: OrthogonalPartition, tol: float = SUM_TOL) -> Check:
    """Pythagorean identity for a measurable set in a line.

    Real: |S|^2 equals the sum of squared projected measures. Complex (the
    carrier is a complex line, a real plane): |S| equals the plain sum.
    Parallelotopes are measured exactly; sampled sets go through the Monte
    Carlo oracle and are accepted within MC_SIGMAS standard errors.
    """
    if isinstance(s, Parallelotope):
        power = _factor_power(s.field)
        needed = 1 if s.field is Field.REAL else 2
        if s.n_edges != needed:
            raise DimensionMismatchError(
                f"a {s.field.value} line set needs {needed} edge(s), got {s.n_edges}"
            )
        total_measure = parallelotope_measure(s)
        if total_measure == 0.0:
            return Check("line_measure_sum", 0.0, 0.0, 0.0, tol, True, "equality",
                         {"degenerate": True})
        if s.field is Field.COMPLEX:
            g = s.edges.conj().T @ s.edges
            scale = float(np.prod(np.linalg.norm(s.edges, axis=0) ** 2))
            if abs(np.linalg.det(g)) > 1e-10 * scale:
                raise DimensionMismatchError("edges do not lie in a single complex line")
        parts = [parallelotope_measure(project_parallelotope(s, part))
                 for part in partition.parts]
        total = sum(m**power for m in parts)
        return relative_check("line_measure_sum", total, total_measure**power, tol,
                              projected_measures=parts)
    if isinstance(s, SampledSet):
        if s.carrier.dim != 1:
            raise DimensionMismatchError("the set must be carried by a line")
        base = monte_carlo_measure(s)
        power = _factor_power(s.carrier.field)
        estimates = [projected_set_measure(s, part) for part in partition.parts]
        total = float(sum(e.value**power for e in estimates))
        target = base.value**power
        # shared samples correlate both sides, so the difference is nearly
        # deterministic; the spread still covers independent re-estimates
        rel_se = base.std_error / max(base.value, 1e-300)
        spread = max(tol, MC_SIGMAS * power * rel_se)
        residual = abs(total - target) / max(target, 1e-300)
        return Check("line_measure_sum_mc", total, target, residual, spread,
                     residual <= spread, "estimate",
                     {"std_error": base.std_error, "terms": [e.value for e in estimates]})
    raise TypeError(f"unsupported set type {type(s).__name__}")


def _check_set_in_subspace(s: Parallelotope, v: Subspace) -> None:
    expected = v.dim if v.field is Field.REAL else 2 * v.dim
    if s.n_edges != expected:
        raise DimensionMismatchError(
            f"the set needs {expected} edges to span the subspace's real dimension"
        )
    for j in range(s.n_edges):
        if not v.contains(s.edges[:, j]):
            raise DimensionMismatchError("a parallelotope edge sticks out of the subspace")


def verify_subspace_coordinates(v: Subspace, family: CoordinateFamily,
                                s: Parallelotope | None = None,
                                tol: float = CROSS_PATH_TOL) -> list[Check]:
    """Factor sum over same-dimension coordinate subspaces, optionally with measures."""
    if family.q != v.dim:
        raise DimensionMismatchError(
            f"family dimension {family.q} must match subspace dimension {v.dim}"
        )
    if family.field is not v.field:
        raise FieldMismatchError("field mismatch between subspace and family")
    power = _factor_power(v.field)
    terms = {}
    for idx, member in family.members():
        terms[idx] = projection_factor(v, member)
    total = float(sum(t**power for t in terms.values()))
    checks = [relative_check(
        "coordinate_factor_sum", total, 1.0, tol,
        terms={_index_label(i): t for i, t in terms.items()},
    )]
    if s is not None:
        _check_set_in_subspace(s, v)
        base = parallelotope_measure(s)
        if base == 0.0:
            raise ZeroSubspaceError("the parallelotope is degenerate")
        measures = {}
        for idx, member in family.members():
            measures[idx] = parallelotope_measure(project_parallelotope(s, member))
        total_m = float(sum(m**power for m in measures.values()))
        checks.append(relative_check(
            "coordinate_measure_sum", total_m, base**power, tol,
            measures={_index_label(i): m for i, m in measures.items()},
        ))
    return checks


def verify_binomial_identity(v: Subspace, family: CoordinateFamily,
                             tol: float = CROSS_PATH_TOL) -> Check:
    """Coordinate-subspace factor sums against their binomial coefficient.

    With p = dim V, q the family dimension and n the ambient dimension:
    p <= q sums factor(V, V_I) over q-dimensional members to C(n-p, n-q);
    p > q sums factor(V_I, V) to C(p, q). Real sums square the factors.
    """
    if family.field is not v.field:
        raise FieldMismatchError("field mismatch between subspace and family")
    n, p, q = family.ambient_dim, v.dim, family.q
    power = _factor_power(v.field)
    if p <= q:
        target = float(math.comb(n - p, n - q))
        terms = [projection_factor(v, member) for _, member in family.members()]
        name = "binomial_sum_low"
    else:
        target = float(math.comb(p, q))
        terms = [projection_factor(member, v) for _, member in family.members()]
        name = "binomial_sum_high"
    total = float(sum(t**power for t in terms))
    return relative_check(name, total, target, tol, p=p, q=q, n=n)


def verify_measure_subspace_q(s: Parallelotope, v: Subspace, family: CoordinateFamily,
                              tol: float = CROSS_PATH_TOL) -> Check:
    """Scaled measure identity over q-dimensional coordinate subspaces, q >= p.

    |S|^2 = C(n-p, n-q)^-1 * sum |S_I|^2 in the real case; unsquared measures
    in the complex one. Only q >= p yields an identity of this shape.
    """
    n, p, q = family.ambient_dim, v.dim, family.q
    if q < p:
        raise ValueError("projections on lower-dimensional coordinate subspaces "
                         "do not satisfy a Pythagorean identity")
    if family.field is not v.field:
        raise FieldMismatchError("field mismatch between subspace and family")
    _check_set_in_subspace(s, v)
    base = parallelotope_measure(s)
    if base == 0.0:
        raise ZeroSubspaceError("the parallelotope is degenerate")
    power = _factor_power(v.field)
    coeff = float(math.comb(n - p, n - q))
    measures = [parallelotope_measure(project_parallelotope(s, member))
                for _, member in family.members()]
    total = float(sum(m**power for m in measures)) / coeff
    return relative_check("scaled_measure_sum", total, base**power, tol,
                          coefficient=coeff, p=p, q=q, n=n)

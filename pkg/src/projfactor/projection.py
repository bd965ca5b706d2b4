"""Projection factors between subspaces, by every formula path, plus angles.

The projection factor of V on W is the ratio by which the orthogonal
projection onto W contracts Lebesgue measure on V (squared areas per complex
dimension in the complex case). It is computable through several routes that
must agree:

  * product of principal projection factors (SVD of the orthonormal cross
    matrix),
  * determinant formulas in orthonormal bases,
  * determinant formulas in arbitrary bases (Gram matrices),
  * blade inner products (equal dimensions),
  * interior products (any dimensions),
  * cosine of the Grassmann angle.

Conventions for the zero subspace: factor(0, W) = 1 and factor(V, 0) = 0
for nonzero V; the Grassmann angle is 0 and pi/2 respectively.
"""

from __future__ import annotations

import math

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (
    DependentBasisError,
    DimensionMismatchError,
    FieldMismatchError,
    GradeError,
    ZeroSubspaceError,
)
from .exterior import Blade, blade_norm, blade_inner, interior, unit_blade, wedge
from .linalg import (
    Field,
    Subspace,
    as_columns,
    check_same_ambient,
    coerce,
    complete_orthonormal,
    det,
    infer_field,
    svd,
)
from .tolerances import DEGENERACY_SNAP, DEPENDENCE_RTOL, SIGMA_SNAP


class FactorPath(str, Enum):
    """Which formula route produced a projection factor."""

    SVD = "svd"
    ORTHONORMAL_DET = "orthonormal_det"
    GENERAL_BASIS_DET = "general_basis_det"
    BLADES = "blades"
    INTERIOR = "interior"
    GRASSMANN_ANGLE = "grassmann_angle"


@dataclass(frozen=True)
class FactorReport:
    value: float
    path: FactorPath
    field: Field


@dataclass(frozen=True)
class PrincipalDecomposition:
    """Principal vectors and angles of a nonzero subspace pair.

    sigma[i] = <e_i, f_i> = cos(theta[i]) are the singular values of the
    orthonormal cross matrix; pi_principal[i] is sigma[i] in the real case
    and sigma[i]**2 in the complex case. Holds m = min(dim V, dim W) of each.
    """

    field: Field
    sigma: np.ndarray
    e_vecs: np.ndarray
    f_vecs: np.ndarray
    theta: np.ndarray
    pi_principal: np.ndarray

    @property
    def m(self) -> int:
        return len(self.sigma)


def _clamp01(x: float) -> float:
    return min(1.0, max(0.0, float(x)))


def _real_part(x) -> float:
    return float(x.real) if isinstance(x, complex) else float(x)


def principal_decomposition(v: Subspace, w: Subspace) -> PrincipalDecomposition:
    """Singular value decomposition of the projection between two subspaces."""
    check_same_ambient(v, w)
    if v.is_zero or w.is_zero:
        raise ZeroSubspaceError("principal vectors are undefined for the zero subspace")
    qv, qw = v.ortho, w.ortho
    m = min(v.dim, w.dim)
    cross = qw.conj().T @ qv
    u_c, sigma, v_c = svd(cross)
    sigma = np.clip(sigma[:m], 0.0, 1.0)
    # cosines within a few ulps of 1 are intersections; snapping them keeps
    # complement factors exact where 1 - sigma**2 would be pure roundoff
    sigma[sigma > 1.0 - SIGMA_SNAP] = 1.0
    e_vecs = qv @ v_c[:, :m]
    f_vecs = qw @ u_c[:, :m]
    theta = np.arccos(sigma)
    pi = sigma.copy() if v.field is Field.REAL else sigma**2
    return PrincipalDecomposition(v.field, sigma, e_vecs, f_vecs, theta, pi)


def principal_basis(v: Subspace, w: Subspace) -> np.ndarray:
    """Full orthonormal basis of V made of principal vectors w.r.t. W.

    When dim V exceeds dim W the singular values run out; the remaining
    columns complete the basis inside V (directions orthogonal to W's image).
    """
    check_same_ambient(v, w)
    if v.is_zero or w.is_zero:
        raise ZeroSubspaceError("principal vectors are undefined for the zero subspace")
    qv, qw = v.ortho, w.ortho
    cross = qw.conj().T @ qv
    _, _, v_c = svd(cross)
    if v_c.shape[1] < v.dim:
        v_c = complete_orthonormal(v_c, v.dim)
    return qv @ v_c


def projection_factor(v: Subspace, w: Subspace) -> float:
    """Measure-contraction factor of the orthogonal projection of V onto W.

    Product of the principal projection factors; 0 when dim V > dim W, with
    the zero-subspace conventions factor({0}, W) = 1 and factor(V, {0}) = 0.
    """
    check_same_ambient(v, w)
    if v.is_zero:
        return 1.0
    if w.is_zero:
        return 0.0
    if v.dim > w.dim:
        return 0.0
    dec = principal_decomposition(v, w)
    return _clamp01(float(np.prod(dec.pi_principal)))


def factor_orthonormal_det(v: Subspace, w: Subspace) -> float:
    """Determinant formula in orthonormal bases.

    With P the matrix of the projection V -> W in orthonormal bases:
    sqrt(det(P^T P)) in the real case, det(P^H P) in the complex case, and
    |det P| (resp. |det P|^2) when the dimensions agree.
    """
    check_same_ambient(v, w)
    if v.is_zero or w.is_zero:
        raise ZeroSubspaceError("the determinant path needs nonzero subspaces")
    if v.dim > w.dim:
        return 0.0  # det(P*P) vanishes identically: rank(P) <= dim W < dim V
    p = w.ortho.conj().T @ v.ortho
    if v.dim == w.dim:
        d = abs(det(p))
        return _clamp01(d if v.field is Field.REAL else d * d)
    g = _real_part(det(p.conj().T @ p))
    g = max(g, 0.0)
    return _clamp01(math.sqrt(g) if v.field is Field.REAL else g)


def factor_general_bases(basis_v, basis_w, field: Field | None = None) -> float:
    """Determinant formula for arbitrary (not necessarily orthonormal) bases.

    Builds the Gram matrices A = <w_i, w_j>, B = <w_i, v_j>, D = <v_i, v_j>
    and evaluates sqrt(det(B^T A^-1 B) / det D) in the real case, or
    det(B^H A^-1 B) / det D in the complex case; equal dimensions use the
    shortcut |det B| / sqrt(det A det D) and its square.
    """
    vc = as_columns(basis_v, field)
    wc = as_columns(basis_w, field)
    if field is None:
        field = infer_field(vc)
    vc, wc = coerce(vc, field), coerce(wc, field)
    if vc.shape[0] != wc.shape[0]:
        raise DimensionMismatchError("ambient dimensions differ")
    if vc.shape[1] == 0 or wc.shape[1] == 0:
        raise ZeroSubspaceError("the general-bases path needs nonzero subspaces")
    a = wc.conj().T @ wc
    b = wc.conj().T @ vc
    d = vc.conj().T @ vc
    det_a = _real_part(det(a))
    det_d = _real_part(det(d))
    scale_a = float(np.prod(np.linalg.norm(wc, axis=0) ** 2))
    scale_d = float(np.prod(np.linalg.norm(vc, axis=0) ** 2))
    if det_a <= DEPENDENCE_RTOL * scale_a or det_d <= DEPENDENCE_RTOL * scale_d:
        raise DependentBasisError("a spanning list is numerically dependent")
    if vc.shape[1] > wc.shape[1]:
        return 0.0  # det(B* A^-1 B) vanishes identically: rank(B) <= dim W < dim V
    if vc.shape[1] == wc.shape[1]:
        ratio = abs(det(b)) / math.sqrt(det_a * det_d)
        return _clamp01(ratio if field is Field.REAL else ratio * ratio)
    core = _real_part(det(b.conj().T @ np.linalg.solve(a, b)))
    core = max(core, 0.0) / det_d
    return _clamp01(math.sqrt(core) if field is Field.REAL else core)


def factor_blades(nu: Blade, omega: Blade) -> float:
    """Blade formula |<nu, omega>| / (|nu| |omega|), squared in the complex case.

    Valid for blades spanning subspaces of equal dimension.
    """
    n1, n2 = blade_norm(nu), blade_norm(omega)
    if n1 == 0.0 or n2 == 0.0:
        raise DependentBasisError("projection factors need nonzero blades")
    ratio = abs(blade_inner(nu, omega)) / (n1 * n2)
    return _clamp01(ratio if nu.field is Field.REAL else ratio * ratio)


def factor_interior(nu: Blade, omega: Blade) -> float:
    """Interior-product formula |nu _| omega| / (|nu| |omega|), squared if complex.

    Applies whenever grade(nu) <= grade(omega).
    """
    n1, n2 = blade_norm(nu), blade_norm(omega)
    if n1 == 0.0 or n2 == 0.0:
        raise DependentBasisError("projection factors need nonzero blades")
    ratio = interior(nu, omega).norm() / (n1 * n2)
    return _clamp01(ratio if nu.field is Field.REAL else ratio * ratio)


def grassmann_angle(v: Subspace, w: Subspace) -> float:
    """Angle in [0, pi/2] between V and W in the exterior power.

    arccos of the product of principal-angle cosines when dim V <= dim W,
    pi/2 otherwise; 0 for the zero V and pi/2 for the zero W (nonzero V).
    """
    check_same_ambient(v, w)
    if v.is_zero:
        return 0.0
    if w.is_zero or v.dim > w.dim:
        return math.pi / 2.0
    dec = principal_decomposition(v, w)
    return math.acos(_clamp01(float(np.prod(dec.sigma))))


def factor_via_grassmann_angle(v: Subspace, w: Subspace) -> float:
    """cos of the Grassmann angle in the real case, cos^2 in the complex case."""
    c = math.cos(grassmann_angle(v, w))
    return _clamp01(c if v.field is Field.REAL else c * c)


def compute_factor(v: Subspace, w: Subspace, path: FactorPath) -> FactorReport:
    """Dispatch a single formula path, building blades from the stored bases."""
    if path is FactorPath.SVD:
        value = projection_factor(v, w)
    elif path is FactorPath.ORTHONORMAL_DET:
        value = factor_orthonormal_det(v, w)
    elif path is FactorPath.GENERAL_BASIS_DET:
        value = factor_general_bases(v.basis, w.basis, v.field)
    elif path is FactorPath.BLADES:
        if v.dim != w.dim:
            raise GradeError("the blade path needs equal dimensions")
        value = factor_blades(Blade(v.basis, v.field), Blade(w.basis, w.field))
    elif path is FactorPath.INTERIOR:
        if v.dim > w.dim:
            raise GradeError("the interior path needs dim V <= dim W")
        value = factor_interior(Blade(v.basis, v.field), Blade(w.basis, w.field))
    elif path is FactorPath.GRASSMANN_ANGLE:
        value = factor_via_grassmann_angle(v, w)
    else:  # pragma: no cover
        raise ValueError(f"unknown path {path}")
    return FactorReport(value, path, v.field)


def applicable_paths(v: Subspace, w: Subspace) -> list[FactorPath]:
    """Every formula path defined for this dimension pair."""
    paths = [FactorPath.SVD, FactorPath.ORTHONORMAL_DET, FactorPath.GENERAL_BASIS_DET,
             FactorPath.GRASSMANN_ANGLE]
    if v.dim == w.dim:
        paths.append(FactorPath.BLADES)
    if v.dim <= w.dim:
        paths.append(FactorPath.INTERIOR)
    return paths


def line_factor(v, w: Subspace, mode: str = "real_line") -> float:
    """Projection factor of the line of ``v`` onto ``w``.

    mode "real_line": |Pv| / |v| for the real span of v (valid over either
    field). mode "complex_line": |Pv|^2 / |v|^2 for the complex line C v,
    which requires complex arithmetic.
    """
    if mode not in ("real_line", "complex_line"):
        raise ValueError(f"unknown line mode {mode!r}")
    vec = coerce(v, w.field)
    nv = float(np.linalg.norm(vec))
    if nv == 0.0:
        raise ZeroSubspaceError("the zero vector spans no line")
    if mode == "complex_line" and w.field is Field.REAL:
        raise FieldMismatchError("complex lines need a complex ambient space")
    ratio = float(np.linalg.norm(w.project(vec))) / nv
    ratio = _clamp01(ratio)
    return ratio if mode == "real_line" else ratio * ratio


def euclidean_angle(v, w) -> float:
    """Usual angle in [0, pi] between vectors viewed as real ones."""
    v, w = np.asarray(v), np.asarray(w)
    c = float(np.vdot(v, w).real) / (float(np.linalg.norm(v)) * float(np.linalg.norm(w)))
    return math.acos(min(1.0, max(-1.0, c)))


def hermitian_angle(v, w) -> float:
    """Angle in [0, pi/2] with cosine |<v, w>| / (|v| |w|)."""
    v, w = np.asarray(v), np.asarray(w)
    c = abs(np.vdot(v, w)) / (float(np.linalg.norm(v)) * float(np.linalg.norm(w)))
    return math.acos(_clamp01(c))


@dataclass(frozen=True)
class ComplementFactor:
    """factor(V, W-perp) by three routes that must agree."""

    principal: float
    determinant: float
    exterior: float


def complement_factor(v: Subspace, w: Subspace) -> ComplementFactor:
    """Projection factor of V onto the orthogonal complement of W.

    principal: product of sqrt(1 - pi_i^2) (real) or (1 - pi_i) (complex)
    over the principal projection factors of V and W.
    determinant: det(1 - B B^H) style formula in orthonormal bases.
    exterior: norm ratio of the wedge of spanning blades (0 when the combined
    grade exceeds the ambient dimension, i.e. the wedge vanishes identically).
    """
    check_same_ambient(v, w)
    if v.is_zero or w.is_zero:
        raise ZeroSubspaceError("complement factors need nonzero subspaces")
    dec = principal_decomposition(v, w)
    if v.field is Field.REAL:
        principal = float(np.prod(np.sqrt(np.clip(1.0 - dec.sigma**2, 0.0, 1.0))))
    else:
        principal = float(np.prod(1.0 - dec.pi_principal))

    b = w.ortho.conj().T @ v.ortho
    core = np.eye(w.dim, dtype=b.dtype) - b @ b.conj().T
    g = max(_real_part(det(core)), 0.0)
    if g <= DEGENERACY_SNAP:
        g = 0.0  # below the determinant noise floor: the subspaces intersect
    determinant = _clamp01(math.sqrt(g) if v.field is Field.REAL else g)

    if v.dim + w.dim > v.ambient_dim:
        exterior = 0.0
    else:
        squared = blade_norm(wedge(unit_blade(v), unit_blade(w))) ** 2
        if squared <= DEGENERACY_SNAP:
            squared = 0.0
        exterior = _clamp01(math.sqrt(squared) if v.field is Field.REAL else squared)
    return ComplementFactor(_clamp01(principal), determinant, exterior)


def complement_factor_general_bases(basis_v, basis_w, field: Field | None = None) -> float:
    """factor(V, W-perp) from Gram matrices of arbitrary bases.

    sqrt(det(A - B D^-1 B^H) / det A) in the real case and the unsquared
    ratio in the complex case, with A, B, D as in factor_general_bases. The
    Schur complement determinant is evaluated as det(Gram of the stacked
    bases) / det D, which is the same quantity without the solve and keeps
    the noise floor at the eps level for degenerate configurations.
    """
    vc = as_columns(basis_v, field)
    wc = as_columns(basis_w, field)
    if field is None:
        field = infer_field(vc)
    vc, wc = coerce(vc, field), coerce(wc, field)
    a = wc.conj().T @ wc
    d = vc.conj().T @ vc
    det_a = _real_part(det(a))
    det_d = _real_part(det(d))
    scale_a = float(np.prod(np.linalg.norm(wc, axis=0) ** 2))
    scale_d = float(np.prod(np.linalg.norm(vc, axis=0) ** 2))
    if det_a <= DEPENDENCE_RTOL * scale_a or det_d <= DEPENDENCE_RTOL * scale_d:
        raise DependentBasisError("a spanning list is numerically dependent")
    stacked = np.hstack([wc, vc])
    det_union = max(_real_part(det(stacked.conj().T @ stacked)), 0.0)
    if det_union <= DEGENERACY_SNAP * scale_a * scale_d:
        det_union = 0.0
    ratio = det_union / (det_a * det_d)
    return _clamp01(math.sqrt(ratio) if field is Field.REAL else ratio)


def project_subspace(v: Subspace, w: Subspace) -> Subspace:
    """Image P(V) of V under the orthogonal projection onto W.

    The image can have lower dimension; near-zero or dependent projected
    directions are dropped at the dependence tolerance.
    """
    check_same_ambient(v, w)
    if v.is_zero or w.is_zero:
        return Subspace.zero(v.ambient_dim, v.field)
    q = w.ortho
    projected = q @ (q.conj().T @ v.ortho)
    kept: list[np.ndarray] = []
    scale = max(float(np.max(np.linalg.norm(projected, axis=0))), 1.0) if projected.size else 1.0
    for j in range(projected.shape[1]):
        r = projected[:, j].copy()
        for _ in range(2):
            for u in kept:
                r -= u * np.vdot(u, r)
        rn = float(np.linalg.norm(r))
        if rn > DEPENDENCE_RTOL * scale:
            kept.append(r / rn)
    if not kept:
        return Subspace.zero(v.ambient_dim, v.field)
    return Subspace.from_orthonormal(np.column_stack(kept), v.field)


def complement_within(part: Subspace, whole: Subspace) -> Subspace:
    """Vectors of ``whole`` orthogonal to ``part`` (the relative complement)."""
    check_same_ambient(part, whole)
    pq = part.ortho
    kept: list[np.ndarray] = []
    for j in range(whole.dim):
        r = whole.ortho[:, j].copy()
        for _ in range(2):
            r -= pq @ (pq.conj().T @ r)
            for u in kept:
                r -= u * np.vdot(u, r)
        rn = float(np.linalg.norm(r))
        if rn > 1e-8:
            kept.append(r / rn)
    if not kept:
        return Subspace.zero(whole.ambient_dim, whole.field)
    return Subspace.from_orthonormal(np.column_stack(kept), whole.field)


def intersection(v: Subspace, w: Subspace, tol: float = 1e-8) -> Subspace:
    """Common subspace, read off from principal vectors with cosine within tol of 1."""
    check_same_ambient(v, w)
    if v.is_zero or w.is_zero:
        return Subspace.zero(v.ambient_dim, v.field)
    dec = principal_decomposition(v, w)
    cols = [dec.e_vecs[:, i] for i in range(dec.m) if dec.sigma[i] >= 1.0 - tol]
    if not cols:
        return Subspace.zero(v.ambient_dim, v.field)
    return Subspace.from_orthonormal(np.column_stack(cols), v.field)

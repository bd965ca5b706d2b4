"""Field-generic dense linear algebra over real and complex inner product spaces.

Vectors are 1-d numpy arrays and bases are 2-d arrays whose *columns* are the
vectors. The inner product is conjugate-linear in the FIRST argument:
``inner(v, w) == v.conj() @ w``. Every formula in the package assumes this
convention; both conventions give the same absolute values and projection
factors, so only bookkeeping depends on the choice.
"""

from __future__ import annotations

import math
import threading

from enum import Enum

import numpy as np

from .errors import (
    ConvergenceError,
    DependentBasisError,
    DimensionMismatchError,
    FieldMismatchError,
)
from .tolerances import DEPENDENCE_RTOL, JACOBI_MAX_SWEEPS, JACOBI_RTOL


class Field(str, Enum):
    """Scalar field of a computation: real or complex arithmetic."""

    REAL = "real"
    COMPLEX = "complex"

    @property
    def dtype(self) -> type:
        return np.float64 if self is Field.REAL else np.complex128

    @property
    def is_complex(self) -> bool:
        return self is Field.COMPLEX


def infer_field(a: np.ndarray) -> Field:
    return Field.COMPLEX if np.iscomplexobj(a) else Field.REAL


def coerce(a, field: Field) -> np.ndarray:
    """Return ``a`` as an array of the field's dtype.

    Coercing a genuinely complex array to the real field raises; real data is
    always safe to promote to complex (imaginary parts stay exactly zero).
    """
    arr = np.asarray(a)
    if field is Field.REAL and np.iscomplexobj(arr):
        if np.any(arr.imag != 0.0):
            raise FieldMismatchError("complex entries cannot be coerced to the real field")
        arr = arr.real
    return np.asarray(arr, dtype=field.dtype)


def as_columns(vectors, field: Field | None = None) -> np.ndarray:
    """Normalize a list of vectors or a matrix into an (n, k) column array."""
    if isinstance(vectors, np.ndarray) and vectors.ndim == 2:
        cols = vectors
    else:
        vecs = [np.asarray(v) for v in vectors]
        if not vecs:
            raise ValueError("empty vector list needs an explicit ambient dimension")
        cols = np.column_stack(vecs)
    if field is None:
        field = infer_field(cols)
    return coerce(cols, field)


def _check_pair(v: np.ndarray, w: np.ndarray) -> None:
    if v.shape != w.shape:
        raise DimensionMismatchError(f"ambient dimensions differ: {v.shape} vs {w.shape}")
    if np.iscomplexobj(v) != np.iscomplexobj(w):
        raise FieldMismatchError("cannot mix real and complex vectors")


def inner(v, w):
    """Inner product, conjugate-linear in the first argument."""
    v = np.asarray(v)
    w = np.asarray(w)
    _check_pair(v, w)
    out = np.vdot(v, w)
    return complex(out) if np.iscomplexobj(v) else float(out)


def re_inner(v, w) -> float:
    """Real part of the inner product, i.e. the underlying real inner product."""
    value = inner(v, w)
    return value.real if isinstance(value, complex) else value


def norm(v) -> float:
    return float(np.linalg.norm(np.asarray(v)))


def gram(vectors, field: Field | None = None) -> np.ndarray:
    """Gram matrix G[i, j] = <v_i, v_j>; Hermitian positive semidefinite."""
    cols = as_columns(vectors, field)
    return cols.conj().T @ cols


def cross_gram(vs, ws, field: Field | None = None) -> np.ndarray:
    """Matrix of pairwise products G[i, j] = <v_i, w_j>."""
    a = as_columns(vs, field)
    b = as_columns(ws, field)
    if a.shape[0] != b.shape[0]:
        raise DimensionMismatchError("ambient dimensions differ")
    if np.iscomplexobj(a) != np.iscomplexobj(b):
        raise FieldMismatchError("cannot mix real and complex vectors")
    return a.conj().T @ b


def det(m):
    """Determinant of a square matrix (LU with partial pivoting)."""
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatchError(f"determinant needs a square matrix, got {m.shape}")
    out = np.linalg.det(m)
    return complex(out) if np.iscomplexobj(m) else float(out)


def orthonormalize(basis, *, rtol: float = DEPENDENCE_RTOL) -> np.ndarray:
    """Modified Gram-Schmidt with one re-orthogonalization pass.

    Accepts a Subspace, a column matrix or a list of vectors, and returns a
    column matrix of orthonormal vectors with the same span. A residual below
    ``rtol`` times the largest input norm marks the vector as dependent and
    raises DependentBasisError.
    """
    if isinstance(basis, Subspace):
        cols = basis.basis
    else:
        cols = as_columns(basis)
    n, k = cols.shape
    if k == 0:
        return cols.copy()
    scale = float(np.max(np.linalg.norm(cols, axis=0)))
    out = np.zeros((n, k), dtype=cols.dtype)
    for j in range(k):
        r = cols[:, j].copy()
        for _ in range(2):  # second pass keeps orthogonality at the eps level
            for i in range(j):
                r -= out[:, i] * np.vdot(out[:, i], r)
        rn = float(np.linalg.norm(r))
        if rn <= rtol * scale:
            raise DependentBasisError(
                f"vector {j} is dependent on its predecessors (residual {rn:.3e})"
            )
        out[:, j] = r / rn
    return out


def complete_orthonormal(cols: np.ndarray, ambient_dim: int | None = None) -> np.ndarray:
    """Extend orthonormal columns to a full orthonormal basis of the ambient space.

    Greedily picks the canonical vector with the largest residual each round,
    which is always well conditioned.
    """
    n = cols.shape[0] if ambient_dim is None else ambient_dim
    if cols.shape[0] != n:
        raise DimensionMismatchError("ambient dimension disagrees with the columns")
    out = cols.copy()
    while out.shape[1] < n:
        eye = np.eye(n, dtype=out.dtype)
        residuals = eye - out @ (out.conj().T @ eye)
        lengths = np.linalg.norm(residuals, axis=0)
        pick = int(np.argmax(lengths))
        r = residuals[:, pick]
        r = r - out @ (out.conj().T @ r)  # second pass
        out = np.column_stack([out, r / np.linalg.norm(r)])
    return out


def _jacobi_rotation(alpha: float, beta: float, gamma) -> np.ndarray:
    """Unitary 2x2 that orthogonalizes a column pair with Gram [[a, g], [g*, b]]."""
    g = abs(gamma)
    phase = gamma / g
    zeta = (beta - alpha) / (2.0 * g)
    if zeta >= 0.0:
        t = 1.0 / (zeta + math.sqrt(1.0 + zeta * zeta))
    else:
        t = -1.0 / (-zeta + math.sqrt(1.0 + zeta * zeta))
    c = 1.0 / math.sqrt(1.0 + t * t)
    s = t * c
    conj_phase = np.conj(phase)
    return np.array([[c, s], [-s * conj_phase, c * conj_phase]])


def svd(m) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Economy SVD by one-sided Jacobi iteration.

    Returns (u, sigma, v) with ``m == u @ np.diag(sigma) @ v.conj().T``,
    sigma descending and nonnegative, and u, v with orthonormal columns.
    Column pairs are rotated until every pair satisfies the relative
    orthogonality threshold JACOBI_RTOL; more than JACOBI_MAX_SWEEPS sweeps
    raises ConvergenceError.
    """
    a = np.atleast_2d(np.asarray(m))
    a = coerce(a, infer_field(a))
    rows, cols = a.shape
    if rows < cols:
        u, sigma, v = svd(a.conj().T)
        return v, sigma, u

    k = cols
    work = a.copy()
    v = np.eye(k, dtype=a.dtype)
    fro = float(np.linalg.norm(a))
    if fro == 0.0:
        return np.eye(rows, k, dtype=a.dtype), np.zeros(k), v

    converged = False
    for _ in range(JACOBI_MAX_SWEEPS):
        rotated = False
        for i in range(k - 1):
            for j in range(i + 1, k):
                wi = work[:, i]
                wj = work[:, j]
                alpha = float(np.vdot(wi, wi).real)
                beta = float(np.vdot(wj, wj).real)
                gamma = np.vdot(wi, wj)
                if abs(gamma) <= JACOBI_RTOL * math.sqrt(alpha * beta):
                    continue
                rot = _jacobi_rotation(alpha, beta, gamma)
                work[:, [i, j]] = work[:, [i, j]] @ rot
                v[:, [i, j]] = v[:, [i, j]] @ rot
                rotated = True
        if not rotated:
            converged = True
            break
    if not converged:
        raise ConvergenceError(
            f"one-sided Jacobi SVD did not converge in {JACOBI_MAX_SWEEPS} sweeps"
        )

    norms = np.linalg.norm(work, axis=0)
    order = np.argsort(-norms, kind="stable")
    sigma = norms[order]
    v = v[:, order]
    u = np.zeros((rows, k), dtype=a.dtype)
    tiny = fro * 1e-13
    pending = []
    for pos, col in enumerate(order):
        if norms[col] > tiny:
            u[:, pos] = work[:, col] / norms[col]
        else:
            pending.append(pos)
    if pending:
        present = [p for p in range(k) if p not in pending]
        filled = complete_orthonormal(u[:, present], rows)
        for offset, pos in enumerate(pending):
            u[:, pos] = filled[:, len(present) + offset]
    return u, sigma, v


class Subspace:
    """A subspace of R^n or C^n spanned by independent columns.

    The orthonormal basis is computed lazily and cached under a lock; values
    are otherwise immutable, so instances are safe to share between threads.
    A zero-column basis represents the zero subspace {0}.
    """

    __slots__ = ("field", "basis", "_ortho", "_lock")

    def __init__(self, basis, field: Field | None = None, *, _ortho=None):
        if isinstance(basis, np.ndarray) and basis.ndim == 2:
            cols = basis
        else:
            cols = as_columns(basis, field)
        if field is None:
            field = infer_field(cols)
        cols = coerce(cols, field).copy()
        if cols.ndim != 2:
            raise DimensionMismatchError("basis must be a 2-d column array")
        n, k = cols.shape
        if n < 1:
            raise DimensionMismatchError("ambient dimension must be positive")
        if k > n:
            raise DependentBasisError(f"{k} vectors cannot be independent in dimension {n}")
        if not np.all(np.isfinite(cols)):
            raise ValueError("basis entries must be finite")
        cols.setflags(write=False)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "basis", cols)
        object.__setattr__(self, "_ortho", _ortho)
        object.__setattr__(self, "_lock", threading.Lock())

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def span(cls, vectors, field: Field | None = None, *, ambient_dim: int | None = None):
        if isinstance(vectors, np.ndarray) and vectors.ndim == 2:
            return cls(vectors, field)
        vecs = [np.asarray(v) for v in vectors]
        if not vecs:
            if ambient_dim is None:
                raise ValueError("an empty span needs an explicit ambient_dim")
            return cls.zero(ambient_dim, field or Field.REAL)
        return cls(np.column_stack(vecs), field)

    @classmethod
    def zero(cls, ambient_dim: int, field: Field):
        return cls(np.zeros((ambient_dim, 0), dtype=field.dtype), field)

    @classmethod
    def full(cls, ambient_dim: int, field: Field):
        return cls.from_orthonormal(np.eye(ambient_dim, dtype=field.dtype), field)

    @classmethod
    def from_orthonormal(cls, columns, field: Field | None = None):
        """Wrap columns already known to be orthonormal, pre-filling the cache."""
        cols = as_columns(columns, field) if not isinstance(columns, np.ndarray) else columns
        if field is None:
            field = infer_field(cols)
        cols = coerce(cols, field)
        frozen = cols.copy()
        frozen.setflags(write=False)
        return cls(frozen, field, _ortho=frozen)

    @property
    def ambient_dim(self) -> int:
        return self.basis.shape[0]

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @property
    def is_zero(self) -> bool:
        return self.dim == 0

    @property
    def ortho(self) -> np.ndarray:
        """Orthonormal basis columns, computed once on first access."""
        if self._ortho is None:
            with self._lock:
                if self._ortho is None:
                    q = orthonormalize(self.basis)
                    q.setflags(write=False)
                    object.__setattr__(self, "_ortho", q)
        return self._ortho

    def project(self, v) -> np.ndarray:
        v = coerce(v, self.field)
        if v.shape != (self.ambient_dim,):
            raise DimensionMismatchError(
                f"vector of shape {v.shape} cannot be projected in dimension {self.ambient_dim}"
            )
        q = self.ortho
        return q @ (q.conj().T @ v)

    def contains(self, v, tol: float = 1e-10) -> bool:
        v = coerce(v, self.field)
        scale = max(float(np.linalg.norm(v)), 1.0)
        return float(np.linalg.norm(v - self.project(v))) <= tol * scale

    def contains_subspace(self, other: "Subspace", tol: float = 1e-10) -> bool:
        return all(self.contains(other.ortho[:, j], tol) for j in range(other.dim))

    def same_space_as(self, other: "Subspace", tol: float = 1e-10) -> bool:
        return (
            self.dim == other.dim
            and self.ambient_dim == other.ambient_dim
            and self.contains_subspace(other, tol)
        )

    def __repr__(self) -> str:
        return f"Subspace(field={self.field.value}, ambient_dim={self.ambient_dim}, dim={self.dim})"


def check_same_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatchError(
            f"ambient dimensions differ: {a.ambient_dim} vs {b.ambient_dim}"
        )
    if a.field is not b.field:
        raise FieldMismatchError(f"fields differ: {a.field.value} vs {b.field.value}")


def project(v, w: Subspace) -> np.ndarray:
    """Orthogonal projection of ``v`` onto the subspace ``w``."""
    return w.project(v)


def orthogonal_complement(s: Subspace) -> Subspace:
    """Complement obtained by completing an ambient orthonormal basis."""
    full = complete_orthonormal(s.ortho, s.ambient_dim)
    return Subspace.from_orthonormal(full[:, s.dim :], s.field)


def realify_vector(v) -> np.ndarray:
    """C^n -> R^(2n), interleaving real and imaginary parts of each entry."""
    v = np.asarray(v)
    if not np.iscomplexobj(v):
        return np.asarray(v, dtype=np.float64).copy()
    out = np.empty(2 * v.shape[0])
    out[0::2] = v.real
    out[1::2] = v.imag
    return out


def realify_columns(cols: np.ndarray) -> np.ndarray:
    """Apply realify_vector to every column."""
    cols = np.asarray(cols)
    if not np.iscomplexobj(cols):
        return np.asarray(cols, dtype=np.float64).copy()
    out = np.empty((2 * cols.shape[0], cols.shape[1]))
    out[0::2, :] = cols.real
    out[1::2, :] = cols.imag
    return out


def realify_subspace(s: Subspace) -> Subspace:
    """View a complex k-dim subspace as a real 2k-dim one.

    Each complex basis vector b contributes the pair (b, i*b); the real inner
    product of realified vectors equals Re<.,.> of the originals, so
    orthogonal projections are preserved.
    """
    if s.field is Field.REAL:
        return s
    cols = np.empty((s.basis.shape[0], 2 * s.dim), dtype=np.complex128)
    cols[:, 0::2] = s.basis
    cols[:, 1::2] = 1j * s.basis
    return Subspace(realify_columns(cols), Field.REAL)


def realified_frame(s: Subspace) -> np.ndarray:
    """Real orthonormal frame of the subspace viewed as a real space.

    Real field: the orthonormal basis itself. Complex field: the interleaved
    realification of (q_1, i q_1, q_2, i q_2, ...), which is orthonormal for
    the real inner product whenever the q_j are Hermitian-orthonormal.
    """
    if s.field is Field.REAL:
        return s.ortho
    q = s.ortho
    cols = np.empty((q.shape[0], 2 * q.shape[1]), dtype=np.complex128)
    cols[:, 0::2] = q
    cols[:, 1::2] = 1j * q
    return realify_columns(cols)


def realify(obj):
    """Realify a vector or a subspace; real inputs pass through unchanged."""
    if isinstance(obj, Subspace):
        return realify_subspace(obj)
    return realify_vector(obj)

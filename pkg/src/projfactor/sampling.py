"""Seeded random instances for the verification drivers and the CLI.

Entries are i.i.d. uniform in [-1, 1] (both components in the complex case);
near-dependent draws are rejected so downstream determinant formulas stay
well conditioned. All generators take an explicit numpy Generator, so every
caller controls reproducibility.
"""

from __future__ import annotations

import numpy as np

from .errors import DependentBasisError
from .linalg import Field, Subspace, orthonormalize

# Rejection threshold for near-dependent random spans, far above the rank
# tolerance so accepted instances keep a few safe orders of magnitude.
_REJECT_RTOL = 1e-3


def rng_from_seed(seed: int | None) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_entries(rng: np.random.Generator, shape, field: Field) -> np.ndarray:
    if field is Field.COMPLEX:
        return rng.uniform(-1.0, 1.0, shape) + 1j * rng.uniform(-1.0, 1.0, shape)
    return rng.uniform(-1.0, 1.0, shape)


def random_vector(rng: np.random.Generator, n: int, field: Field, *, unit: bool = False) -> np.ndarray:
    while True:
        v = random_entries(rng, n, field)
        length = float(np.linalg.norm(v))
        if length > 1e-2:
            return v / length if unit else v


def random_subspace(rng: np.random.Generator, n: int, k: int, field: Field) -> Subspace:
    """Random k-dimensional subspace of dimension-n space, rejecting near-dependence."""
    if k == 0:
        return Subspace.zero(n, field)
    while True:
        cols = random_entries(rng, (n, k), field)
        try:
            orthonormalize(cols, rtol=_REJECT_RTOL)
        except DependentBasisError:
            continue
        return Subspace(cols, field)


def random_orthonormal_frame(rng: np.random.Generator, n: int, field: Field) -> np.ndarray:
    return orthonormalize(random_subspace(rng, n, n, field).basis)


def random_subspace_of(rng: np.random.Generator, parent: Subspace, k: int) -> Subspace:
    """Random k-dimensional subspace contained in ``parent``."""
    if k > parent.dim:
        raise ValueError(f"cannot draw dimension {k} inside dimension {parent.dim}")
    if k == 0:
        return Subspace.zero(parent.ambient_dim, parent.field)
    while True:
        coeffs = random_entries(rng, (parent.dim, k), parent.field)
        try:
            orthonormalize(coeffs, rtol=_REJECT_RTOL)
        except DependentBasisError:
            continue
        return Subspace(parent.ortho @ coeffs, parent.field)


def random_partition_dims(rng: np.random.Generator, n: int, parts: int | None = None) -> list[int]:
    """A random composition of n into a given (or random) number of parts."""
    if parts is None:
        parts = int(rng.integers(2, n + 1)) if n >= 2 else 1
    if not 1 <= parts <= n:
        raise ValueError(f"cannot split dimension {n} into {parts} nonzero parts")
    cuts = sorted(rng.choice(np.arange(1, n), size=parts - 1, replace=False).tolist())
    edges = [0, *cuts, n]
    return [edges[i + 1] - edges[i] for i in range(parts)]


def random_orthogonal_partition(rng: np.random.Generator, n: int, field: Field,
                                parts: int | None = None) -> list[Subspace]:
    """Mutually orthogonal subspaces whose dimensions sum to n."""
    frame = random_orthonormal_frame(rng, n, field)
    dims = random_partition_dims(rng, n, parts)
    out, start = [], 0
    for d in dims:
        out.append(Subspace.from_orthonormal(frame[:, start : start + d], field))
        start += d
    return out


def random_spanning_edges(rng: np.random.Generator, carrier: Subspace) -> np.ndarray:
    """Edges of a full-real-dimensional parallelotope inside ``carrier``.

    Real carrier of dimension k: k edges. Complex carrier: 2k edges spanning
    the underlying real space, drawn with complex coefficients and rejected
    on near real-dependence.
    """
    k = carrier.dim
    count = k if carrier.field is Field.REAL else 2 * k
    while True:
        coeffs = random_entries(rng, (k, count), carrier.field)
        edges = carrier.ortho @ coeffs
        g = (edges.conj().T @ edges).real
        hadamard = float(np.prod(np.diag(g)))
        if hadamard > 0 and np.linalg.det(g) / hadamard > 1e-6:
            return edges

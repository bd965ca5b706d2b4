"""Independent Lebesgue-measure computations used as ground truth.

Parallelotopes get the exact Gram-determinant volume. Arbitrary bounded sets
are represented by an indicator over coordinates of their carrier subspace
and measured by seeded Monte Carlo; projected measures reuse the same sample
stream scaled by the Jacobian of the restricted projection, which correlates
the Monte Carlo error of a set and its projections. A deterministic grid
counter provides a low-dimensional estimate that shares nothing with either
path.

Parallelotopes span their edges with REAL coefficients in either field, so
their k-dimensional volume is sqrt(det Re<e_i, e_j>). Carrier coordinates of
a complex subspace are taken over the realified frame (q_1, i q_1, q_2, ...).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .errors import DimensionMismatchError, FieldMismatchError
from .linalg import Field, Subspace, coerce, realified_frame, svd
from .tolerances import DEFAULT_SAMPLE_COUNT, MIN_SAMPLE_COUNT

_MC_BLOCK = 1 << 16


class MeasureEstimate(NamedTuple):
    value: float
    std_error: float


@dataclass(frozen=True)
class Parallelotope:
    """Span {sum t_i e_i : t_i in [0, 1]} of the edge columns.

    The affine base point is irrelevant for measures and is not stored.
    """

    edges: np.ndarray
    field: Field

    def __post_init__(self):
        edges = coerce(self.edges, self.field)
        if edges.ndim != 2:
            raise DimensionMismatchError("edges must be a column matrix")
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_vectors(cls, vectors, field: Field | None = None) -> "Parallelotope":
        cols = np.column_stack([np.asarray(v) for v in vectors])
        if field is None:
            field = Field.COMPLEX if np.iscomplexobj(cols) else Field.REAL
        return cls(cols, field)

    @property
    def n_edges(self) -> int:
        return self.edges.shape[1]


def parallelotope_measure(p: Parallelotope) -> float:
    """k-volume sqrt(det of the real Gram matrix); 0 for dependent edges."""
    g = (p.edges.conj().T @ p.edges).real
    return math.sqrt(max(float(np.linalg.det(g)), 0.0))


def project_parallelotope(p: Parallelotope, w: Subspace) -> Parallelotope:
    """Edge-wise orthogonal projection."""
    if p.edges.shape[0] != w.ambient_dim:
        raise DimensionMismatchError("parallelotope and subspace ambient dimensions differ")
    if p.field is not w.field:
        raise FieldMismatchError("parallelotope and subspace over different fields")
    q = w.ortho
    return Parallelotope(q @ (q.conj().T @ p.edges), p.field)


@dataclass(frozen=True)
class SampledSet:
    """A bounded measurable set inside a carrier subspace.

    ``indicator`` receives an (m, d) array of points in carrier coordinates
    (d = real dimension of the carrier) and returns a boolean mask. The box
    [lows, highs] must contain the set. Drawing is deterministic in ``seed``.
    """

    carrier: Subspace
    indicator: Callable[[np.ndarray], np.ndarray]
    lows: np.ndarray
    highs: np.ndarray
    sample_count: int = DEFAULT_SAMPLE_COUNT
    seed: int = 0

    def __post_init__(self):
        lows = np.asarray(self.lows, dtype=np.float64)
        highs = np.asarray(self.highs, dtype=np.float64)
        d = self.real_dim
        if lows.shape != (d,) or highs.shape != (d,):
            raise DimensionMismatchError(
                f"bounding box must have {d} coordinates for this carrier"
            )
        if np.any(highs <= lows):
            raise ValueError("bounding box has non-positive extent")
        if self.sample_count < MIN_SAMPLE_COUNT:
            raise ValueError(f"sample_count must be at least {MIN_SAMPLE_COUNT}")
        object.__setattr__(self, "lows", lows)
        object.__setattr__(self, "highs", highs)

    @property
    def real_dim(self) -> int:
        k = self.carrier.dim
        return k if self.carrier.field is Field.REAL else 2 * k

    @property
    def box_volume(self) -> float:
        return float(np.prod(self.highs - self.lows))


def _sample_blocks(s: SampledSet):
    """Per-block uniform samples with streams split from the seed."""
    remaining = s.sample_count
    n_blocks = (remaining + _MC_BLOCK - 1) // _MC_BLOCK
    streams = np.random.SeedSequence(s.seed).spawn(n_blocks)
    for stream in streams:
        count = min(_MC_BLOCK, remaining)
        remaining -= count
        rng = np.random.default_rng(stream)
        yield rng.uniform(s.lows, s.highs, size=(count, s.real_dim))


def _hit_fraction(s: SampledSet) -> float:
    hits = 0
    for block in _sample_blocks(s):
        mask = np.asarray(s.indicator(block), dtype=bool)
        hits += int(np.count_nonzero(mask))
    return hits / s.sample_count


def monte_carlo_measure(s: SampledSet) -> MeasureEstimate:
    """Box volume times hit fraction, with the binomial standard error."""
    frac = _hit_fraction(s)
    vol = s.box_volume
    se = vol * math.sqrt(max(frac * (1.0 - frac), 0.0) / s.sample_count)
    return MeasureEstimate(vol * frac, se)


def restriction_matrix(carrier: Subspace, w: Subspace) -> np.ndarray:
    """Matrix of the projection restricted to the carrier, in real frames.

    Rows are coordinates over an orthonormal real frame of P(carrier)
    obtained by orthonormalizing the projected carrier frame; columns are
    carrier coordinates. Square d x d; singular when the projection collapses
    the carrier.
    """
    if carrier.ambient_dim != w.ambient_dim:
        raise DimensionMismatchError("carrier and subspace ambient dimensions differ")
    if carrier.field is not w.field:
        raise FieldMismatchError("carrier and subspace over different fields")
    frame = realified_frame(carrier)
    wf = realified_frame(w)
    projected = wf @ (wf.T @ frame)
    d = frame.shape[1]
    # orthonormal basis of the image, tolerating rank collapse
    image: list[np.ndarray] = []
    for j in range(d):
        r = projected[:, j].copy()
        for _ in range(2):
            for u in image:
                r -= u * (u @ r)
        rn = float(np.linalg.norm(r))
        if rn > 1e-12:
            image.append(r / rn)
    if not image:
        return np.zeros((d, d))
    u_cols = np.column_stack(image)
    t = u_cols.T @ projected
    if t.shape[0] < d:
        t = np.vstack([t, np.zeros((d - t.shape[0], d))])
    return t


def projection_jacobian(carrier: Subspace, w: Subspace) -> float:
    """Volume scale of the restricted projection: the product of its singular values."""
    t = restriction_matrix(carrier, w)
    _, sigma, _ = svd(t)
    return float(np.prod(sigma))


def projected_set_measure(s: SampledSet, w: Subspace) -> MeasureEstimate:
    """Measure of the orthogonal projection of the set onto ``w``.

    Pushes the shared sample stream through the restricted projection: the
    estimate is the Jacobian of that linear map times the Monte Carlo measure
    of the set itself. Returns 0 when the projection collapses the carrier
    to a lower dimension.
    """
    t = restriction_matrix(s.carrier, w)
    _, sigma, _ = svd(t)
    if sigma.size and float(np.min(sigma)) <= 1e-12:
        return MeasureEstimate(0.0, 0.0)
    jac = float(np.prod(sigma))
    base = monte_carlo_measure(s)
    return MeasureEstimate(jac * base.value, jac * base.std_error)


def grid_measure(s: SampledSet, resolution: int = 512) -> float:
    """Deterministic midpoint-grid count; only for carriers of real dimension <= 2."""
    d = s.real_dim
    if d > 2:
        raise ValueError("grid counting is limited to real dimension <= 2")
    axes = [
        s.lows[i] + (s.highs[i] - s.lows[i]) * (np.arange(resolution) + 0.5) / resolution
        for i in range(d)
    ]
    if d == 1:
        pts = axes[0][:, None]
    else:
        xs, ys = np.meshgrid(axes[0], axes[1], indexing="ij")
        pts = np.column_stack([xs.ravel(), ys.ravel()])
    cell = s.box_volume / resolution**d
    mask = np.asarray(s.indicator(pts), dtype=bool)
    return cell * int(np.count_nonzero(mask))


def grid_projected_measure(s: SampledSet, w: Subspace, resolution: int = 512) -> float:
    """Grid-count the projected set directly in image coordinates.

    Rasterizes over the image of the bounding box and pulls each grid point
    back through the inverse of the restricted projection, sharing nothing
    with the Monte Carlo or factor paths. Real dimension <= 2 only.
    """
    d = s.real_dim
    if d > 2:
        raise ValueError("grid counting is limited to real dimension <= 2")
    t = restriction_matrix(s.carrier, w)
    _, sigma, _ = svd(t)
    if sigma.size and float(np.min(sigma)) <= 1e-12:
        return 0.0
    corners = np.array(
        [[s.lows[i] if bit & (1 << i) else s.highs[i] for i in range(d)]
         for bit in range(1 << d)]
    )
    images = corners @ t.T
    lo, hi = images.min(axis=0), images.max(axis=0)
    axes = [lo[i] + (hi[i] - lo[i]) * (np.arange(resolution) + 0.5) / resolution for i in range(d)]
    if d == 1:
        pts = axes[0][:, None]
    else:
        xs, ys = np.meshgrid(axes[0], axes[1], indexing="ij")
        pts = np.column_stack([xs.ravel(), ys.ravel()])
    pulled = np.linalg.solve(t, pts.T).T
    inside_box = np.all((pulled >= s.lows) & (pulled <= s.highs), axis=1)
    mask = np.zeros(len(pts), dtype=bool)
    if np.any(inside_box):
        mask[inside_box] = np.asarray(s.indicator(pulled[inside_box]), dtype=bool)
    cell = float(np.prod(hi - lo)) / resolution**d
    return cell * int(np.count_nonzero(mask))


# Named indicator shapes shared by tests, the service and the CLI.

def ball_indicator(radius: float, center=None) -> Callable[[np.ndarray], np.ndarray]:
    def indicator(points: np.ndarray) -> np.ndarray:
        delta = points if center is None else points - np.asarray(center)
        return np.einsum("ij,ij->i", delta, delta) <= radius * radius
    return indicator


def box_indicator(lows, highs) -> Callable[[np.ndarray], np.ndarray]:
    lows_a, highs_a = np.asarray(lows), np.asarray(highs)
    def indicator(points: np.ndarray) -> np.ndarray:
        return np.all((points >= lows_a) & (points <= highs_a), axis=1)
    return indicator


def star_indicator(mean_radius: float = 0.6, amplitude: float = 0.25, lobes: int = 5):
    """A wavy star-shaped planar region, irregular enough to stand in for fractal-ish sets."""
    def indicator(points: np.ndarray) -> np.ndarray:
        r = np.hypot(points[:, 0], points[:, 1])
        phi = np.arctan2(points[:, 1], points[:, 0])
        return r <= mean_radius + amplitude * np.cos(lobes * phi)
    return indicator


def segments_indicator(intervals) -> Callable[[np.ndarray], np.ndarray]:
    """Union of 1-d intervals [(a, b), ...] in carrier coordinates."""
    pairs = [(float(a), float(b)) for a, b in intervals]
    def indicator(points: np.ndarray) -> np.ndarray:
        x = points[:, 0]
        out = np.zeros(len(x), dtype=bool)
        for a, b in pairs:
            out |= (x >= a) & (x <= b)
        return out
    return indicator


SHAPE_FACTORIES = {
    "ball": ball_indicator,
    "box": box_indicator,
    "star": star_indicator,
    "segments": segments_indicator,
}

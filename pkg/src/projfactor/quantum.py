"""Quantum reading of projection factors: Born probabilities and fidelity.

States are rays: any nonzero complex vector represents its complex line, and
all formulas divide by the squared norm explicitly, so normalization never
matters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, FieldMismatchError, ZeroSubspaceError
from .linalg import Field, coerce
from .pythagoras import OrthogonalPartition


@dataclass(frozen=True)
class QuantumState:
    """A pure state as a nonzero complex vector with ray semantics."""

    psi: np.ndarray

    def __post_init__(self):
        psi = coerce(self.psi, Field.COMPLEX)
        if psi.ndim != 1:
            raise DimensionMismatchError("a state is a single vector")
        if float(np.linalg.norm(psi)) == 0.0:
            raise ZeroSubspaceError("the zero vector is not a state")
        object.__setattr__(self, "psi", psi)

    @property
    def dim(self) -> int:
        return self.psi.shape[0]


@dataclass(frozen=True)
class Observable:
    """Eigenspace decomposition of the ambient space with distinct eigenvalues."""

    eigenspaces: OrthogonalPartition
    eigenvalues: tuple

    def __post_init__(self):
        if self.eigenspaces.field is not Field.COMPLEX:
            raise FieldMismatchError("observables need complex eigenspaces")
        values = tuple(float(x) for x in self.eigenvalues)
        if len(values) != len(self.eigenspaces):
            raise DimensionMismatchError("one eigenvalue per eigenspace")
        if len(set(values)) != len(values):
            raise ValueError("eigenvalues must be distinct")
        object.__setattr__(self, "eigenvalues", values)

    def __len__(self) -> int:
        return len(self.eigenvalues)


def born_probability(state: QuantumState, obs: Observable, eigenvalue_index: int) -> float:
    """Probability of the indexed outcome: |P psi|^2 / |psi|^2.

    This is the projection factor of the state's complex line onto the
    eigenspace.
    """
    if not 0 <= eigenvalue_index < len(obs):
        raise IndexError(f"eigenvalue index {eigenvalue_index} out of range")
    part = obs.eigenspaces.parts[eigenvalue_index]
    if part.ambient_dim != state.dim:
        raise DimensionMismatchError("state and observable dimensions differ")
    psi = state.psi
    num = float(np.linalg.norm(part.project(psi))) ** 2
    return min(1.0, num / float(np.linalg.norm(psi)) ** 2)


def probabilities(state: QuantumState, obs: Observable) -> list[float]:
    return [born_probability(state, obs, i) for i in range(len(obs))]


def total_probability(state: QuantumState, obs: Observable) -> float:
    return float(sum(probabilities(state, obs)))


def fidelity(psi, phi) -> float:
    """|<psi, phi>|^2 / (|psi|^2 |phi|^2) for pure states."""
    a = coerce(psi, Field.COMPLEX)
    b = coerce(phi, Field.COMPLEX)
    if a.shape != b.shape:
        raise DimensionMismatchError("states live in different spaces")
    na, nb = float(np.linalg.norm(a)), float(np.linalg.norm(b))
    if na == 0.0 or nb == 0.0:
        raise ZeroSubspaceError("the zero vector is not a state")
    return min(1.0, (abs(np.vdot(a, b)) / (na * nb)) ** 2)


def bures_angle(psi, phi) -> float:
    """arccos of the root fidelity, in [0, pi/2]; the angle between the rays."""
    return math.acos(math.sqrt(fidelity(psi, phi)))

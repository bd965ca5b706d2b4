"""Small result records shared by the verification drivers, the service and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Check:
    """One verified quantity: a value against a target at a tolerance.

    ``kind`` is "equality" (residual = |value - target|), "inequality"
    (residual = violation, 0 when satisfied), "estimate" (stochastic, the
    tolerance is already scaled to standard errors) or "convention".
    """

    name: str
    value: float
    target: float | None
    residual: float
    tolerance: float
    passed: bool
    kind: str = "equality"
    details: dict[str, Any] = field(default_factory=dict)


def equality_check(name: str, value: float, target: float, tolerance: float, **details) -> Check:
    residual = abs(value - target)
    return Check(name, value, target, residual, tolerance, residual <= tolerance, "equality", details)


def relative_check(name: str, value: float, target: float, tolerance: float, **details) -> Check:
    """Equality with the residual scaled by the target when it is not tiny."""
    scale = max(abs(target), 1.0)
    residual = abs(value - target) / scale
    return Check(name, value, target, residual, tolerance, residual <= tolerance, "equality", details)


def inequality_check(name: str, value: float, bound: float, tolerance: float, *, upper=True, **details) -> Check:
    violation = max(0.0, value - bound) if upper else max(0.0, bound - value)
    return Check(name, value, bound, violation, tolerance, violation <= tolerance, "inequality", details)


def all_passed(checks) -> bool:
    return all(c.passed for c in checks)


def worst_residuals(checks) -> dict[str, float]:
    """Largest residual seen per check name."""
    worst: dict[str, float] = {}
    for c in checks:
        worst[c.name] = max(worst.get(c.name, 0.0), c.residual)
    return worst

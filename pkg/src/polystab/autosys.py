"""The Lane-Emden equation as the autonomous system

    dw/dt = q,    dq/dt = -2 G(w, q),

obtained from ``theta = B xi**(2/(1-n)) w`` and ``xi = xi_s exp(-t)``.
"""

from __future__ import annotations

from typing import NamedTuple

from .domain import (
    AutonomousState,
    CriticalPoint,
    DomainError,
    PointKind,
    PolytropeConfig,
)

__all__ = [
    "VectorFieldValue",
    "power",
    "g1",
    "vector_field",
    "xn_power_term",
    "critical_points",
    "residual",
]


class VectorFieldValue(NamedTuple):
    dw: float
    dq: float


def power(config: PolytropeConfig, w: float, exponent: float) -> float:
    """``w**exponent`` restricted to the real branch.

    Negative ``w`` is only allowed when ``exponent`` is an integer.
    """
    if w < 0 and not float(exponent).is_integer():
        raise DomainError(f"w = {w} < 0 with non-integer exponent {exponent} (n = {config.n})")
    return w ** exponent


def g1(config: PolytropeConfig, w: float, q: float) -> float:
    n, B = config.n, config.B
    return 0.5 * (
        -(n - 5.0) / (n - 1.0) * q
        + 2.0 * (3.0 - n) / (n - 1.0) ** 2 * w
        + B ** (n - 1.0) * power(config, w, n)
    )


def vector_field(config: PolytropeConfig, s: AutonomousState) -> VectorFieldValue:
    return VectorFieldValue(s.q, -2.0 * g1(config, s.w, s.q))


def xn_power_term(n: float) -> float:
    """Value of ``B**(n-1) w0**(n-1)`` at the nontrivial equilibrium, ``2(n-3)/(n-1)**2``."""
    return 2.0 * (n - 3.0) / (n - 1.0) ** 2


def critical_points(config: PolytropeConfig) -> tuple[CriticalPoint, ...]:
    """Equilibria of the autonomous system.

    X0 is always the origin. Xn is returned for every ``n > 1`` with its
    closed-form power term; its coordinate is populated only for ``n > 3``.
    At ``n = 3`` exactly the two coincide and only X0 is returned, flagged
    ``coincident``.
    """
    config.require_analysis_range()
    n, B = config.n, config.B
    pt = xn_power_term(n)
    if pt == 0.0:
        return (CriticalPoint(PointKind.X0, 0.0, 0.0, coincident=True),)
    x0 = CriticalPoint(PointKind.X0, 0.0, 0.0)
    w0 = pt ** (1.0 / (n - 1.0)) / B if pt > 0 else None
    return (x0, CriticalPoint(PointKind.XN, w0, pt))


def residual(config: PolytropeConfig, p: CriticalPoint) -> float:
    """``|G(w0, 0)|``; zero up to rounding for points from :func:`critical_points`."""
    if p.w0 is None:
        raise DomainError(f"{p.kind.value} has no real coordinate at n = {config.n}")
    return abs(g1(config, p.w0, 0.0))

"""Lyapunov candidate built with the variable-gradient method.

    V(w, q) = q**2 / 2 - (n-3)/(n-1)**2 w**2 + B**(n-1)/(n+1) w**(n+1)

Along the flow ``dV/dt = (n-5)/(n-1) q**2``. A failed candidate says nothing
about instability, so the verdicts here are one-sided.
"""

from __future__ import annotations

from .autosys import power, vector_field
from .domain import (
    AutonomousState,
    CriticalPoint,
    LyapunovAssessment,
    PolytropeConfig,
    StabilityVerdict,
)

__all__ = [
    "ZERO_TOL",
    "v",
    "grad_v",
    "v_dot",
    "hessian_eigenvalues",
    "v_dot_coefficient",
    "classify_lyapunov",
]

ZERO_TOL = 1e-9


def v(config: PolytropeConfig, w: float, q: float) -> float:
    n, B = config.n, config.B
    return 0.5 * q * q - (n - 3.0) / (n - 1.0) ** 2 * w * w + B ** (n - 1.0) / (n + 1.0) * power(config, w, n + 1.0)


def grad_v(config: PolytropeConfig, w: float, q: float) -> tuple[float, float]:
    n, B = config.n, config.B
    return (-2.0 * (n - 3.0) / (n - 1.0) ** 2 * w + B ** (n - 1.0) * power(config, w, n), q)


def v_dot(config: PolytropeConfig, w: float, q: float) -> float:
    """``grad V . f`` evaluated directly, without the closed-form simplification."""
    gw, gq = grad_v(config, w, q)
    f = vector_field(config, AutonomousState(w, q))
    return gw * f.dw + gq * f.dq


def hessian_eigenvalues(config: PolytropeConfig, power_term: float) -> tuple[float, float]:
    """Diagonal entries of the (diagonal) Hessian of V at ``B**(n-1) w**(n-1) = power_term``."""
    n = config.n
    return (-2.0 * (n - 3.0) / (n - 1.0) ** 2 + n * power_term, 1.0)


def v_dot_coefficient(config: PolytropeConfig) -> float:
    n = config.n
    return (n - 5.0) / (n - 1.0)


def classify_lyapunov(config: PolytropeConfig, point: CriticalPoint) -> LyapunovAssessment:
    """Asymptotic stability when V has a strict local minimum and decreases.

    Returns only ASYMPTOTICALLY_STABLE or INCONCLUSIVE; the result is local
    and no basin estimate is attempted.
    """
    config.require_analysis_range()
    lam = hessian_eigenvalues(config, point.power_term)
    is_min = min(lam) > ZERO_TOL
    coeff = v_dot_coefficient(config)
    if is_min and coeff < -ZERO_TOL:
        verdict = StabilityVerdict.ASYMPTOTICALLY_STABLE
    else:
        verdict = StabilityVerdict.INCONCLUSIVE
    return LyapunovAssessment(lam, is_min, coeff, verdict)

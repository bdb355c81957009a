"""KCC invariants and Jacobi stability of the one-dimensional path equation

    d2w/dt2 + 2 G(w, dw/dt) = 0.

With one coordinate ``x = w`` and ``y = dw/dt`` the geometric objects reduce
to scalars:

    N      = dG/dy                       (nonlinear connection)
    G_yy   = dN/dy                       (Berwald connection)
    P      = -2 dG/dx - 2 G G_yy + y dN/dx + N N + dN/dt
    P_xy   = (dP/dy - dP/dy) / 3 = 0     (torsion, antisymmetric in one index)

Jacobi stability requires the deviation curvature ``P`` to be strictly negative.
"""

from __future__ import annotations

from dataclasses import dataclass

from .autosys import g1, power
from .domain import (
    CriticalPoint,
    DomainError,
    JacobiAssessment,
    PolytropeConfig,
    StabilityVerdict,
)

__all__ = [
    "ZERO_TOL",
    "KccInvariants",
    "nonlinear_connection",
    "berwald_connection",
    "torsion",
    "deviation_curvature",
    "kcc_invariants",
    "deviation_curvature_profile",
    "deviation_curvature_physical",
    "jacobi_condition_physical",
    "classify_jacobi",
]

ZERO_TOL = 1e-9


@dataclass(frozen=True)
class KccInvariants:
    nonlinear_connection: float
    berwald: float
    deviation_curvature: float
    torsion: float = 0.0


def nonlinear_connection(config: PolytropeConfig) -> float:
    n = config.n
    return -(n - 5.0) / (2.0 * (n - 1.0))


def berwald_connection(config: PolytropeConfig) -> float:
    # N does not depend on y
    return 0.0


def torsion(config: PolytropeConfig) -> float:
    return 0.0


def deviation_curvature(config: PolytropeConfig, power_term: float) -> float:
    """``1/4 - n B**(n-1) w**(n-1)`` expressed through ``power_term``."""
    return 0.25 - config.n * power_term


def kcc_invariants(config: PolytropeConfig, w: float, q: float) -> KccInvariants:
    """Invariants at ``(w, q)`` assembled term by term from the partials of G."""
    n, B = config.n, config.B
    dg_dx = 0.5 * (2.0 * (3.0 - n) / (n - 1.0) ** 2 + n * B ** (n - 1.0) * power(config, w, n - 1.0))
    nc = nonlinear_connection(config)
    bw = berwald_connection(config)
    dn_dx = 0.0
    dn_dt = 0.0
    p11 = -2.0 * dg_dx - 2.0 * g1(config, w, q) * bw + q * dn_dx + nc * nc + dn_dt
    return KccInvariants(nc, bw, p11, torsion(config))


def deviation_curvature_profile(n: float, xi: float, theta: float) -> float:
    """Deviation curvature in Lane-Emden variables, ``1/4 - n xi**2 theta**(n-1)``."""
    if theta < 0 and not float(n).is_integer():
        raise DomainError(f"theta = {theta} < 0 with non-integer n = {n}")
    return 0.25 - n * xi * xi * theta ** (n - 1.0)


def deviation_curvature_physical(n: float, u: float, v: float) -> float:
    """Deviation curvature in homology variables, ``1/4 - n u v``."""
    return 0.25 - n * u * v


def jacobi_condition_physical(n: float, density_ratio: float, energy_ratio: float) -> bool:
    """Local Jacobi stability from ``rho / mean rho`` and ``E_i / |E_g|``.

    With ``u = 3 rho / mean rho`` and ``v = (3/2) |E_g| / E_i`` the curvature is
    ``1/4 - (9 n / 2) (rho / mean rho) (|E_g| / E_i)``, so it is negative exactly
    when ``E_i / |E_g| < 18 n rho / mean rho``.
    """
    if density_ratio <= 0 or energy_ratio <= 0:
        raise DomainError("density and energy ratios must be positive")
    return energy_ratio < 18.0 * n * density_ratio


def classify_jacobi(config: PolytropeConfig, point: CriticalPoint) -> JacobiAssessment:
    """Sign of the deviation curvature at an equilibrium.

    In one dimension the deviation tensor is its own eigenvalue. Values
    within ``ZERO_TOL`` of zero are inconclusive.
    """
    config.require_analysis_range()
    p11 = deviation_curvature(config, point.power_term)
    if abs(p11) <= ZERO_TOL:
        verdict = StabilityVerdict.INCONCLUSIVE
    elif p11 < 0:
        verdict = StabilityVerdict.STABLE
    else:
        verdict = StabilityVerdict.UNSTABLE
    return JacobiAssessment(p11, verdict)

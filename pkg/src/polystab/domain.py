"""Value types, constants and classification vocabulary shared by the analyses."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

__all__ = [
    "BOUNDARY_TOL",
    "DomainError",
    "InvalidConfigError",
    "PolytropeConfig",
    "AutonomousState",
    "PhysicalState",
    "MilneState",
    "PointKind",
    "CriticalPoint",
    "StabilityClassification",
    "StabilityVerdict",
    "LinearAssessment",
    "JacobiAssessment",
    "LyapunovAssessment",
    "StabilityReport",
    "critical_index_nstar",
    "regime_boundaries",
    "nearest_boundary",
    "regime_label",
]

#: |n - boundary| at or below this is treated as sitting on the boundary.
BOUNDARY_TOL = 1e-9


class DomainError(ValueError):
    """A formula was evaluated outside its real domain."""


class InvalidConfigError(ValueError):
    """The polytropic index or scale constant is unusable for the request."""


def critical_index_nstar() -> float:
    """Index at which the nontrivial equilibrium turns from node to spiral.

    This is the positive root of ``7 n**2 - 22 n - 1``, i.e. ``(11 + 8 sqrt 2) / 7``.
    """
    return (11.0 + 8.0 * math.sqrt(2.0)) / 7.0


def regime_boundaries() -> tuple[float, float, float]:
    return (3.0, critical_index_nstar(), 5.0)


def nearest_boundary(n: float, tol: float = BOUNDARY_TOL) -> Optional[float]:
    """Return the regime boundary within ``tol`` of ``n``, or None."""
    for b in regime_boundaries():
        if abs(n - b) <= tol:
            return b
    return None


_BOUNDARY_NAMES = {3.0: "3", 5.0: "5"}


def boundary_name(b: float) -> str:
    return _BOUNDARY_NAMES.get(b, "(11+8*sqrt(2))/7")


def regime_label(n: float) -> str:
    """Human label of the open index range containing ``n``."""
    if nearest_boundary(n) is not None:
        return f"n = {boundary_name(nearest_boundary(n))}"
    nstar = critical_index_nstar()
    if n <= 1.0:
        return "n <= 1"
    if n < 3.0:
        return "1 < n < 3"
    if n < nstar:
        return "3 < n < (11+8*sqrt(2))/7"
    if n < 5.0:
        return "(11+8*sqrt(2))/7 < n < 5"
    return "5 < n"


@dataclass(frozen=True)
class PolytropeConfig:
    """Polytropic index ``n`` and the scale constant ``B`` of the w-transform.

    Construction accepts any finite ``n >= 0`` so that the physical integrator
    can run the classical ``n = 0`` and ``n = 1`` cases; the phase-space analysis
    calls :meth:`require_analysis_range`, which insists on ``n > 1``.
    """

    n: float
    B: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.n) and math.isfinite(self.B)):
            raise InvalidConfigError(f"n and B must be finite, got n={self.n}, B={self.B}")
        if self.B <= 0:
            raise InvalidConfigError(f"B must be positive, got {self.B}")
        if self.n < 0:
            raise InvalidConfigError(f"n must be non-negative, got {self.n}")

    def require_analysis_range(self) -> None:
        if not self.n > 1.0:
            raise InvalidConfigError(
                f"stability analysis needs n > 1 (the w-transform is singular at n = 1), got n={self.n}"
            )

    @property
    def is_integer_index(self) -> bool:
        return float(self.n).is_integer()


@dataclass(frozen=True)
class AutonomousState:
    """Point ``(w, q = dw/dt)`` of the transformed system at log-radius ``t``."""

    w: float
    q: float
    t: float = 0.0

    def __post_init__(self):
        if not all(math.isfinite(x) for x in (self.w, self.q, self.t)):
            raise DomainError(f"non-finite autonomous state {self}")


@dataclass(frozen=True)
class PhysicalState:
    """Point ``(xi, theta, theta')`` on a Lane-Emden profile."""

    xi: float
    theta: float
    dtheta: float

    def __post_init__(self):
        if self.xi < 0:
            raise DomainError(f"xi must be non-negative, got {self.xi}")
        if self.xi == 0 and (self.theta != 1.0 or self.dtheta != 0.0):
            raise DomainError("a regular profile has theta(0) = 1 and theta'(0) = 0")


@dataclass(frozen=True)
class MilneState:
    """Homology invariants: ``u = 3 rho / mean rho``, ``v = (3/2) |E_g| / E_i``."""

    u: float
    v: float


class PointKind(Enum):
    X0 = "X0"
    XN = "Xn"


@dataclass(frozen=True)
class CriticalPoint:
    """Equilibrium on the ``q = 0`` line.

    ``power_term`` holds ``B**(n-1) * w0**(n-1)``, which stays real even for
    ``1 < n < 3`` where the nontrivial root ``w0`` is complex and therefore
    ``None``. ``coincident`` marks X0 at ``n = 3``, where Xn merges into it.
    """

    kind: PointKind
    w0: Optional[float]
    power_term: float
    coincident: bool = False

    q0 = 0.0

    @property
    def formal(self) -> bool:
        """True when the point has no real phase-space coordinate."""
        return self.w0 is None


class StabilityClassification(Enum):
    NODAL_SINK = "nodal sink"
    NODAL_SOURCE = "nodal source"
    SADDLE_POINT = "saddle point"
    SPIRAL_SINK = "spiral sink"
    SPIRAL_SOURCE = "spiral source"
    BOUNDARY = "boundary"


class StabilityVerdict(Enum):
    STABLE = "stable"
    ASYMPTOTICALLY_STABLE = "asymptotically stable"
    UNSTABLE = "unstable"
    INCONCLUSIVE = "inconclusive"

    @property
    def table_word(self) -> str:
        # the comparison table does not distinguish asymptotic stability
        if self is StabilityVerdict.ASYMPTOTICALLY_STABLE:
            return "stable"
        return self.value


@dataclass(frozen=True)
class LinearAssessment:
    classification: StabilityClassification
    verdict: StabilityVerdict
    eigenvalues: tuple[complex, complex]
    formal: bool = False


@dataclass(frozen=True)
class JacobiAssessment:
    deviation_curvature: float
    verdict: StabilityVerdict


@dataclass(frozen=True)
class LyapunovAssessment:
    hessian_eigenvalues: tuple[float, float]
    is_local_minimum: bool
    vdot_coefficient: float
    verdict: StabilityVerdict


@dataclass(frozen=True)
class StabilityReport:
    point: CriticalPoint
    linear: LinearAssessment
    jacobi: JacobiAssessment
    lyapunov: LyapunovAssessment

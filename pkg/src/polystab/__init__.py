"""Linear, Jacobi (KCC) and Lyapunov stability of the Lane-Emden equation."""

from .autosys import critical_points, g1, residual, vector_field
from .domain import (
    AutonomousState,
    CriticalPoint,
    DomainError,
    InvalidConfigError,
    MilneState,
    PhysicalState,
    PointKind,
    PolytropeConfig,
    StabilityClassification,
    StabilityReport,
    StabilityVerdict,
    critical_index_nstar,
)
from .integrate import (
    Profile,
    ProfilePoint,
    Trajectory,
    closed_form,
    integrate_autonomous,
    integrate_physical,
    series_start,
    to_autonomous,
    to_milne,
    to_physical,
)
from .kcc import classify_jacobi, deviation_curvature
from .linstab import classify_linear, eigenvalues_closed_form, eigenvalues_numeric, jacobian
from .lyapunov import classify_lyapunov

__version__ = "0.1.0"

"""Numerical Lane-Emden profiles, the (w, t) transform, homology variables
and trajectories of the autonomous system.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Iterator, Optional

from .autosys import vector_field
from .domain import (
    AutonomousState,
    DomainError,
    MilneState,
    PhysicalState,
    PolytropeConfig,
)
from .dopri import DormandPrince45, StepSizeUnderflow

__all__ = [
    "XI_START",
    "DEFAULT_XI_MAX",
    "IntegrationError",
    "ProfilePoint",
    "Profile",
    "Trajectory",
    "series_start",
    "closed_form",
    "integrate_physical",
    "to_autonomous",
    "to_physical",
    "to_milne",
    "integrate_autonomous",
]

logger = logging.getLogger(__name__)

XI_START = 1e-4
DEFAULT_XI_MAX = 50.0


class IntegrationError(RuntimeError):
    """Integration stopped early; ``partial`` holds what was computed so far."""

    def __init__(self, msg: str, partial=None):
        super().__init__(msg)
        self.partial = partial


@dataclass(frozen=True)
class ProfilePoint:
    xi: float
    theta: float
    dtheta: float
    u: float
    v: float
    p11: float

    @property
    def state(self) -> PhysicalState:
        return PhysicalState(self.xi, self.theta, self.dtheta)


@dataclass(frozen=True)
class Profile:
    config: PolytropeConfig
    points: tuple[ProfilePoint, ...]
    surface: Optional[float]
    truncated: bool

    @property
    def last(self) -> ProfilePoint:
        return self.points[-1]


@dataclass(frozen=True)
class Trajectory:
    """Accepted states of one autonomous-system integration.

    ``partial`` is set when the run stopped before ``t_end``; ``reason`` says why.
    """

    config: PolytropeConfig
    states: tuple[AutonomousState, ...]
    partial: bool = False
    reason: str = ""

    def __len__(self) -> int:
        return len(self.states)

    def __iter__(self) -> Iterator[AutonomousState]:
        return iter(self.states)

    def __getitem__(self, i):
        return self.states[i]


def series_start(config: PolytropeConfig, xi0: float) -> PhysicalState:
    """Regular solution near the centre from its Maclaurin series.

    ``theta = 1 - xi**2/6 + n xi**4/120``, ``theta' = -xi/3 + n xi**3/30``.
    """
    if not 0 < xi0 <= 1e-2:
        raise ValueError(f"series start needs 0 < xi0 <= 1e-2, got {xi0}")
    n = config.n
    x2 = xi0 * xi0
    theta = 1.0 - x2 / 6.0 + n * x2 * x2 / 120.0
    dtheta = -xi0 / 3.0 + n * xi0 * x2 / 30.0
    return PhysicalState(xi0, theta, dtheta)


def closed_form(n: float, xi: float) -> Optional[PhysicalState]:
    """Exact solutions for ``n`` in {0, 1, 5}; None for any other index."""
    if n == 0:
        return PhysicalState(xi, 1.0 - xi * xi / 6.0, -xi / 3.0)
    if n == 1:
        if xi == 0:
            return PhysicalState(0.0, 1.0, 0.0)
        s, c = math.sin(xi), math.cos(xi)
        return PhysicalState(xi, s / xi, (xi * c - s) / (xi * xi))
    if n == 5:
        a = 1.0 + xi * xi / 3.0
        return PhysicalState(xi, a ** -0.5, -xi / 3.0 * a ** -1.5)
    return None


def to_milne(s: PhysicalState, n: float) -> MilneState:
    """``u = -xi theta**n / theta'`` and ``v = -xi theta' / theta``."""
    if s.theta <= 0:
        raise DomainError(f"homology variables need theta > 0, got {s.theta}")
    if s.dtheta == 0:
        raise DomainError("homology variables need theta' != 0")
    return MilneState(-s.xi * s.theta ** n / s.dtheta, -s.xi * s.dtheta / s.theta)


def _profile_point(n: float, xi: float, theta: float, dtheta: float) -> ProfilePoint:
    if theta > 0 and dtheta != 0:
        m = to_milne(PhysicalState(xi, theta, dtheta), n)
        u, v = m.u, m.v
    else:
        u = v = math.nan
    if theta > 0 or n >= 1:
        p11 = 0.25 - n * xi * xi * theta ** (n - 1.0)
    else:
        p11 = math.nan
    return ProfilePoint(xi, theta, dtheta, u, v, p11)


class _SurfaceCrossing(Exception):
    pass


def integrate_physical(
    config: PolytropeConfig,
    xi_max: float = DEFAULT_XI_MAX,
    tol: float = 1e-10,
    max_step: float = math.inf,
) -> Profile:
    """Integrate the Lane-Emden equation outward from the centre.

    Starts from the series at ``XI_START`` and takes adaptive Dormand-Prince
    steps in ``xi``. A trial step that would evaluate ``theta < 0`` is
    abandoned and the rest of the profile is integrated with ``theta`` as the
    independent variable (``theta`` decreases monotonically), ending exactly on
    ``theta = 0``. Without a zero before ``xi_max`` the profile is truncated.
    """
    if not xi_max > XI_START:
        raise ValueError(f"xi_max must exceed {XI_START}, got {xi_max}")
    if not 1e-14 <= tol <= 1e-4:
        raise ValueError(f"tol must lie in [1e-14, 1e-4], got {tol}")
    n = config.n

    def rhs_xi(xi, y):
        theta, dtheta = y
        if theta < 0:
            raise _SurfaceCrossing
        return (dtheta, -2.0 * dtheta / xi - theta ** n)

    def rhs_theta(theta, y):
        xi, dtheta = y
        return (1.0 / dtheta, -2.0 / xi - theta ** n / dtheta)

    s0 = series_start(config, XI_START)
    points = [_profile_point(n, s0.xi, s0.theta, s0.dtheta)]

    def partial():
        return Profile(config, tuple(points), None, False)

    stepper = DormandPrince45(rhs_xi, s0.xi, (s0.theta, s0.dtheta), xi_max, tol, tol, max_step=max_step)
    crossed = False
    while not stepper.finished:
        try:
            stepper.step()
        except _SurfaceCrossing:
            crossed = True
            break
        except StepSizeUnderflow as exc:
            raise IntegrationError(str(exc), partial()) from exc
        points.append(_profile_point(n, stepper.t, *stepper.y))

    if not crossed:
        return Profile(config, tuple(points), None, True)

    xi_k, theta_k, dtheta_k = stepper.t, stepper.y[0], stepper.y[1]
    if not dtheta_k < 0:
        raise IntegrationError("theta' must be negative to switch to theta as variable", partial())
    inner = DormandPrince45(rhs_theta, theta_k, (xi_k, dtheta_k), 0.0, tol, tol, max_step=max_step)
    while not inner.finished:
        try:
            inner.step()
        except StepSizeUnderflow as exc:
            raise IntegrationError(str(exc), partial()) from exc
        xi, dtheta = inner.y
        if xi > xi_max:
            return _finish_truncated(config, points, tol, xi_max, max_step, rhs_xi)
        points.append(_profile_point(n, xi, inner.t, dtheta))
    return Profile(config, tuple(points), points[-1].xi, False)


def _finish_truncated(config, points, tol, xi_max, max_step, rhs_xi) -> Profile:
    # zero lies beyond xi_max: step in xi up to xi_max, shrinking trial steps that overshoot
    last = points[-1]
    stepper = DormandPrince45(
        rhs_xi, last.xi, (last.theta, last.dtheta), xi_max, tol, tol,
        max_step=max_step, retry_on=(_SurfaceCrossing,),
    )
    while not stepper.finished:
        try:
            stepper.step()
        except StepSizeUnderflow as exc:
            raise IntegrationError(str(exc), Profile(config, tuple(points), None, False)) from exc
        points.append(_profile_point(config.n, stepper.t, *stepper.y))
    return Profile(config, tuple(points), None, True)


def _transform_exponent(config: PolytropeConfig) -> float:
    config.require_analysis_range()
    return 2.0 / (config.n - 1.0)


def to_autonomous(config: PolytropeConfig, s: PhysicalState, xi_s: float) -> AutonomousState:
    """Map ``(xi, theta, theta')`` to ``(w, q, t)`` with ``t = ln(xi_s / xi)``.

    ``w = theta xi**a / B`` with ``a = 2/(n-1)`` and ``q = dw/dt = -xi dw/dxi``.
    """
    a = _transform_exponent(config)
    if s.xi <= 0:
        raise DomainError("the (w, t) transform is singular at xi = 0")
    B = config.B
    xa = s.xi ** a
    w = s.theta * xa / B
    dw_dxi = (s.dtheta * xa + s.theta * a * xa / s.xi) / B
    return AutonomousState(w, -s.xi * dw_dxi, math.log(xi_s / s.xi))


def to_physical(config: PolytropeConfig, s: AutonomousState, xi_s: float) -> PhysicalState:
    """Inverse of :func:`to_autonomous`."""
    a = _transform_exponent(config)
    B = config.B
    xi = xi_s * math.exp(-s.t)
    xma = xi ** -a
    dw_dxi = -s.q / xi
    theta = B * xma * s.w
    dtheta = B * (xma * dw_dxi - a * xma / xi * s.w)
    return PhysicalState(xi, theta, dtheta)


def integrate_autonomous(
    config: PolytropeConfig,
    initial: AutonomousState,
    t_end: float,
    tol: float = 1e-10,
    max_step: float = math.inf,
) -> Trajectory:
    """Adaptive trajectory of ``(w, q)`` from ``initial.t`` to ``t_end``.

    For non-integer ``n`` the field is undefined at ``w < 0``; trial steps
    that stray there are shrunk, and if the trajectory itself leaves the
    domain the run stops with a partial trajectory.
    """
    config.require_analysis_range()

    def rhs(t, y):
        f = vector_field(config, AutonomousState(y[0], y[1], t))
        return (f.dw, f.dq)

    states = [initial]
    if initial.t == t_end:
        return Trajectory(config, tuple(states))
    try:
        stepper = DormandPrince45(rhs, initial.t, (initial.w, initial.q), t_end, tol, tol,
                                  max_step=max_step, retry_on=(DomainError,))
    except DomainError as exc:
        return Trajectory(config, tuple(states), True, str(exc))
    while not stepper.finished:
        try:
            stepper.step()
        except StepSizeUnderflow as exc:
            reason = f"left the real domain near t = {exc.t}" if not config.is_integer_index else str(exc)
            logger.warning("trajectory stopped early: %s", reason)
            return Trajectory(config, tuple(states), True, reason)
        states.append(AutonomousState(stepper.y[0], stepper.y[1], stepper.t))
    return Trajectory(config, tuple(states))

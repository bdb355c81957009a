"""Computations behind the command-line subcommands.

Each function returns plain data; rendering lives in :mod:`polystab.cli.formats`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ..autosys import critical_points
from ..domain import (
    AutonomousState,
    CriticalPoint,
    PointKind,
    PolytropeConfig,
    StabilityReport,
    StabilityVerdict,
    critical_index_nstar,
)
from ..integrate import Trajectory, integrate_autonomous
from ..kcc import classify_jacobi
from ..linstab import classify_linear
from ..lyapunov import classify_lyapunov

__all__ = [
    "DEFAULT_SAMPLES",
    "REFERENCE_TABLE",
    "AGGREGATION_RULE",
    "TABLE_NOTES",
    "TableRow",
    "analyze",
    "cmd_table",
    "regimes",
    "PhasePortrait",
    "cmd_phase",
]


def analyze(config: PolytropeConfig) -> list[StabilityReport]:
    """Linear, Jacobi and Lyapunov verdicts for every equilibrium."""
    return [
        StabilityReport(
            point,
            classify_linear(config, point),
            classify_jacobi(config, point),
            classify_lyapunov(config, point),
        )
        for point in critical_points(config)
    ]


def regimes() -> list[tuple[str, float, float]]:
    """The four open index ranges as ``(label, low, high)``."""
    nstar = critical_index_nstar()
    return [
        ("1 < n < 3", 1.0, 3.0),
        ("3 < n < (11+8*sqrt(2))/7", 3.0, nstar),
        ("(11+8*sqrt(2))/7 < n < 5", nstar, 5.0),
        ("5 < n", 5.0, math.inf),
    ]


DEFAULT_SAMPLES = (2.0, 3.1, 3.5, 6.0)
_SWEEP_MARGIN = 0.05
_SWEEP_TOP = 10.0

#: Verdict words per regime as (linear, Jacobi, Lyapunov).
REFERENCE_TABLE = (
    ("unstable", "unstable", "inconclusive"),
    ("stable", "unstable", "stable"),
    ("stable", "stable", "stable"),
    ("unstable", "stable", "inconclusive"),
)

AGGREGATION_RULE = (
    "each row reports the verdicts of the nontrivial equilibrium Xn; for 1 < n < 3 "
    "Xn is formal (complex coordinate, real power term). X0 verdicts are listed separately. "
    "This reading of the summary table is an interpretation."
)

TABLE_NOTES = (
    AGGREGATION_RULE,
    "For 1 < n < 3 the point-wise analysis finds X0 a linearly stable nodal sink with a "
    "Lyapunov certificate, while the summary row reads 'unstable / unstable / inconclusive'; "
    "that row matches Xn, not X0. The discrepancy is reported, not resolved.",
)


@dataclass(frozen=True)
class TableRow:
    regime_label: str
    samples: tuple[float, ...]
    linear: StabilityVerdict
    jacobi: StabilityVerdict
    lyapunov: StabilityVerdict
    x0_linear: StabilityVerdict
    x0_jacobi: StabilityVerdict
    x0_lyapunov: StabilityVerdict

    @property
    def words(self) -> tuple[str, str, str]:
        return (self.linear.table_word, self.jacobi.table_word, self.lyapunov.table_word)


class RegimeInconsistency(RuntimeError):
    """Samples inside one regime produced different verdicts."""


def _regime_samples(low: float, high: float, default: float, k: int) -> tuple[float, ...]:
    if k == 1:
        return (default,)
    top = min(high, _SWEEP_TOP + _SWEEP_MARGIN)
    a, b = low + _SWEEP_MARGIN, top - _SWEEP_MARGIN
    return tuple(a + (b - a) * i / (k - 1) for i in range(k))


def _single(values, label, what):
    distinct = set(values)
    if len(distinct) != 1:
        raise RegimeInconsistency(f"{what} verdicts differ inside regime {label}: {sorted(v.value for v in distinct)}")
    return distinct.pop()


def cmd_table(samples_per_regime: int = 1) -> list[TableRow]:
    """Rebuild the four-row comparison table.

    With one sample per regime the representative indices 2, 3.1, 3.5 and 6
    are used; otherwise ``samples_per_regime`` evenly spaced indices kept 0.05
    away from the regime edges (the last regime is swept up to n = 10).
    """
    if samples_per_regime < 1:
        raise ValueError("samples_per_regime must be at least 1")
    rows = []
    for (label, low, high), default in zip(regimes(), DEFAULT_SAMPLES):
        samples = _regime_samples(low, high, default, samples_per_regime)
        xn, x0 = [], []
        for n in samples:
            by_kind = {r.point.kind: r for r in analyze(PolytropeConfig(n))}
            xn.append(by_kind[PointKind.XN])
            x0.append(by_kind[PointKind.X0])
        rows.append(
            TableRow(
                label,
                samples,
                _single([r.linear.verdict for r in xn], label, "linear"),
                _single([r.jacobi.verdict for r in xn], label, "Jacobi"),
                _single([r.lyapunov.verdict for r in xn], label, "Lyapunov"),
                _single([r.linear.verdict for r in x0], label, "X0 linear"),
                _single([r.jacobi.verdict for r in x0], label, "X0 Jacobi"),
                _single([r.lyapunov.verdict for r in x0], label, "X0 Lyapunov"),
            )
        )
    return rows


@dataclass(frozen=True)
class PhasePortrait:
    config: PolytropeConfig
    centre: CriticalPoint
    points: tuple[CriticalPoint, ...]
    trajectories: tuple[Trajectory, ...] = field(default_factory=tuple)

    def distance(self, s: AutonomousState) -> float:
        return math.hypot(s.w - self.centre.w0, s.q)

    def distance_ratios(self) -> list[float]:
        """Final over initial distance to the centre, per trajectory."""
        return [self.distance(tr[-1]) / self.distance(tr[0]) for tr in self.trajectories]


def _initial_conditions(w0: float, grid: int, radius: float) -> list[tuple[float, float]]:
    if grid == 1:
        return [(w0 + radius, 0.0)]
    offsets = [-radius + 2 * radius * i / (grid - 1) for i in range(grid)]
    return [(w0 + dw, dq) for dw in offsets for dq in offsets if (dw, dq) != (0.0, 0.0)]


def cmd_phase(
    config: PolytropeConfig,
    grid: int = 8,
    t_end: float = 30.0,
    tol: float = 1e-10,
    radius: float = 1e-2,
) -> PhasePortrait:
    """Trajectories from a ``grid x grid`` lattice of half-width ``radius``.

    The lattice is centred on Xn when it has a real coordinate, else on X0.
    Points with ``w < 0`` are dropped for non-integer ``n``.
    """
    if grid < 1:
        raise ValueError("grid must be at least 1")
    points = critical_points(config)
    real_xn = [p for p in points if p.kind is PointKind.XN and not p.formal]
    centre = real_xn[0] if real_xn else points[0]
    trajectories = tuple(
        integrate_autonomous(config, AutonomousState(w, q, 0.0), t_end, tol)
        for w, q in _initial_conditions(centre.w0, grid, radius)
        if w >= 0 or config.is_integer_index
    )
    return PhasePortrait(config, centre, points, trajectories)

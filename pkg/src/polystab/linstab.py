"""Linearisation about the equilibria: Jacobian, eigenvalues, classification."""

from __future__ import annotations

import math
from typing import NamedTuple

from .domain import (
    CriticalPoint,
    LinearAssessment,
    PolytropeConfig,
    StabilityClassification as SC,
    StabilityVerdict as SV,
    nearest_boundary,
)

__all__ = [
    "ZERO_TOL",
    "Jacobian2",
    "jacobian",
    "eigenvalues_closed_form",
    "eigenvalues_numeric",
    "classify_eigenvalues",
    "classify_linear",
]

#: Real parts with magnitude at or below this count as zero.
ZERO_TOL = 1e-9


class Jacobian2(NamedTuple):
    a11: float
    a12: float
    a21: float
    a22: float

    @property
    def trace(self) -> float:
        return self.a11 + self.a22

    @property
    def det(self) -> float:
        return self.a11 * self.a22 - self.a12 * self.a21


def jacobian(config: PolytropeConfig, power_term: float) -> Jacobian2:
    """Jacobian of ``(q, -2G)`` with ``power_term = B**(n-1) w**(n-1)``."""
    n = config.n
    return Jacobian2(
        0.0,
        1.0,
        2.0 * (n - 3.0) / (n - 1.0) ** 2 - n * power_term,
        (n - 5.0) / (n - 1.0),
    )


def eigenvalues_closed_form(config: PolytropeConfig, power_term: float) -> tuple[complex, complex]:
    """``(lambda_+, lambda_-)`` from the trace and ``1 - 4 n power_term``.

    A negative discriminant gives a conjugate pair with ``lambda_+`` carrying
    the positive imaginary part.
    """
    n = config.n
    centre = (n - 5.0) / (2.0 * (n - 1.0))
    disc = 1.0 - 4.0 * n * power_term
    if disc >= 0:
        r = 0.5 * math.sqrt(disc)
        return complex(centre + r), complex(centre - r)
    r = 0.5 * math.sqrt(-disc)
    return complex(centre, r), complex(centre, -r)


def _sort_key(z: complex):
    return (-z.real, -z.imag)


def eigenvalues_numeric(j: Jacobian2) -> tuple[complex, complex]:
    """Roots of ``lambda**2 - tr lambda + det`` for an arbitrary 2x2 matrix.

    Uses the cancellation-free form of the quadratic formula. Sorted by
    descending real part, then descending imaginary part.
    """
    tr, det = j.trace, j.det
    disc = tr * tr - 4.0 * det
    if disc < 0:
        r = 0.5 * math.sqrt(-disc)
        roots = [complex(0.5 * tr, r), complex(0.5 * tr, -r)]
    else:
        # b = -tr for the monic polynomial
        q = 0.5 * (tr + math.copysign(math.sqrt(disc), tr))
        if q == 0.0:
            roots = [0j, 0j]
        else:
            roots = [complex(q), complex(det / q)]
    return tuple(sorted(roots, key=_sort_key))


def classify_eigenvalues(eigs: tuple[complex, complex], tol: float = ZERO_TOL) -> tuple[SC, SV]:
    """Phase-portrait type of a planar equilibrium from its eigenvalue pair."""
    a, b = eigs
    if a.imag != 0.0 or b.imag != 0.0:
        re = a.real
        if re < -tol:
            return SC.SPIRAL_SINK, SV.STABLE
        if re > tol:
            return SC.SPIRAL_SOURCE, SV.UNSTABLE
        return SC.BOUNDARY, SV.INCONCLUSIVE
    lo, hi = sorted((a.real, b.real))
    if lo == hi or abs(lo) <= tol or abs(hi) <= tol:
        return SC.BOUNDARY, SV.INCONCLUSIVE
    if hi < 0:
        return SC.NODAL_SINK, SV.STABLE
    if lo > 0:
        return SC.NODAL_SOURCE, SV.UNSTABLE
    return SC.SADDLE_POINT, SV.UNSTABLE


def classify_linear(config: PolytropeConfig, point: CriticalPoint) -> LinearAssessment:
    """Linear stability of ``point``.

    The type is read off the eigenvalues. Indices within the boundary
    tolerance of 3, (11+8 sqrt 2)/7 or 5 are reported as BOUNDARY without
    choosing a side.
    """
    config.require_analysis_range()
    eigs = eigenvalues_closed_form(config, point.power_term)
    if nearest_boundary(config.n) is not None:
        cls, verdict = SC.BOUNDARY, SV.INCONCLUSIVE
    else:
        cls, verdict = classify_eigenvalues(eigs)
    return LinearAssessment(cls, verdict, eigs, formal=point.formal)


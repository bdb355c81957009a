import math

import pytest

from polystab.domain import (
    AutonomousState,
    CriticalPoint,
    DomainError,
    InvalidConfigError,
    PhysicalState,
    PointKind,
    PolytropeConfig,
    StabilityVerdict,
    critical_index_nstar,
    nearest_boundary,
    regime_boundaries,
    regime_label,
)


def test_nstar_decimal_value():
    # printed as 3.187672... (truncated)
    assert 3.187672 <= critical_index_nstar() < 3.187673


def test_nstar_is_root_of_discriminant():
    x = critical_index_nstar()
    assert abs(7 * x * x - 22 * x - 1) <= 1e-12


def test_boundaries_strictly_ordered():
    a, b, c = regime_boundaries()
    assert 3.0 == a < b < c == 5.0


@pytest.mark.parametrize("n,expected", [(3.0, 3.0), (5.0 + 5e-10, 5.0), (3.5, None), (3.0 + 2e-9, None)])
def test_nearest_boundary(n, expected):
    assert nearest_boundary(n) == expected


def test_nearest_boundary_nstar():
    assert nearest_boundary(critical_index_nstar() - 1e-10) == critical_index_nstar()


@pytest.mark.parametrize("n,label", [(2, "1 < n < 3"), (3.1, "3 < n < (11+8*sqrt(2))/7"), (4, "(11+8*sqrt(2))/7 < n < 5"), (6, "5 < n")])
def test_regime_label(n, label):
    assert regime_label(n) == label


@pytest.mark.parametrize("kwargs", [dict(n=2, B=0), dict(n=2, B=-1), dict(n=-0.5), dict(n=math.inf), dict(n=2, B=math.nan)])
def test_config_rejects(kwargs):
    with pytest.raises(InvalidConfigError):
        PolytropeConfig(**kwargs)


@pytest.mark.parametrize("n", [0.0, 0.5, 1.0])
def test_analysis_range_needs_n_above_one(n):
    cfg = PolytropeConfig(n)
    with pytest.raises(InvalidConfigError):
        cfg.require_analysis_range()


def test_default_b_is_one():
    assert PolytropeConfig(2).B == 1.0


def test_configs_are_immutable():
    cfg = PolytropeConfig(2)
    with pytest.raises(AttributeError):
        cfg.n = 3


def test_autonomous_state_must_be_finite():
    with pytest.raises(DomainError):
        AutonomousState(math.nan, 0.0)


def test_physical_state_centre_conditions():
    PhysicalState(0.0, 1.0, 0.0)
    with pytest.raises(DomainError):
        PhysicalState(0.0, 0.9, 0.0)
    with pytest.raises(DomainError):
        PhysicalState(-1.0, 1.0, 0.0)


def test_critical_point_formal_flag():
    assert CriticalPoint(PointKind.XN, None, -2.0).formal
    assert not CriticalPoint(PointKind.X0, 0.0, 0.0).formal
    assert CriticalPoint(PointKind.X0, 0.0, 0.0).q0 == 0.0


def test_table_words():
    assert StabilityVerdict.ASYMPTOTICALLY_STABLE.table_word == "stable"
    assert StabilityVerdict.INCONCLUSIVE.table_word == "inconclusive"

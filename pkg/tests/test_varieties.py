"""Variety catalog: lookup, membership, sampling, recorded spot values."""

from fractions import Fraction

import pytest

from periodmaps.algebra import MPoly, parse_poly
from periodmaps.catalog import catalog_get
from periodmaps.errors import UnknownVarietyError
from periodmaps.varieties import (
    available_periods, checksum_cases, gamma_get, membership,
    sample_on_variety)


def test_available_periods_inventory():
    assert available_periods("lv3") == (2, 3, 4, 5)
    assert available_periods("lv4") == (2,)
    assert available_periods("toda3") == (3,)
    assert available_periods("euler") == (3,)
    assert available_periods("moebius2d") == (2, 3, 4, 5, 6)
    assert available_periods("qrt") == (3, 4, 5)
    assert available_periods("lyness5") == ()


def test_unknown_variety_reports_what_exists():
    with pytest.raises(UnknownVarietyError) as err:
        gamma_get("lv3", 7)
    assert err.value.available == (2, 3, 4, 5)


def test_lv3_period2_membership_examples():
    g = gamma_get("lv3", 2)
    # (1-x)(1-y)(1-z) = -1 here, so s + 1 vanishes
    ok, res = membership(g, (2.0, 3.0, 1.5))
    assert ok
    assert res[0] <= 1e-12
    ok, res = membership(g, (2.0, 3.0, 4.0))
    assert not ok
    assert abs(res[0] - 5.0) < 1e-12


def test_moebius_period6_generator_text():
    m = catalog_get("moebius2d", a=2, b=Fraction(1, 3))
    g = gamma_get("moebius2d", 6, m=m)
    want = parse_poly("1 - h + h^2 + 3*a*b*h", ("h", "a", "b")).subs_values(
        {"a": Fraction(2), "b": Fraction(1, 3)})
    assert g.gammas[0] == want


def test_euler_generator_is_in_coordinates():
    m = catalog_get("euler", alpha=Fraction(1, 3), beta=Fraction(1, 5),
                    gamma=Fraction(-2, 7))
    g = gamma_get("euler", 3, m=m)
    assert g.in_coordinates
    assert set(g.gammas[0].used_vars()) <= {"x", "y", "z"}


def test_sampler_is_deterministic_per_seed():
    g = gamma_get("lv3", 3)
    p1 = sample_on_variety(g, 11)
    p2 = sample_on_variety(g, 11)
    p3 = sample_on_variety(g, 12)
    assert p1 == p2
    assert p1 != p3
    ok, _ = membership(g, p1)
    assert ok


def test_sampled_points_lie_on_every_catalogued_variety():
    cases = [("lv3", 2, None), ("lv3", 3, None), ("lv3", 4, None),
             ("lv3", 5, None), ("lv4", 2, None), ("toda3", 3, None),
             ("euler", 3, {"alpha": Fraction(1, 3), "beta": Fraction(1, 5),
                           "gamma": Fraction(-2, 7)}),
             ("moebius2d", 4, {"a": 2, "b": Fraction(1, 3)})]
    for name, period, params in cases:
        g = gamma_get(name, period, params=params)
        for seed in range(3):
            p = sample_on_variety(g, seed)
            ok, res = membership(g, p)
            assert ok, (name, period, seed, res)


def test_gamma5_checksums_match_recorded_values():
    cases = checksum_cases("lv3", 5)
    assert len(cases) >= 5
    g = gamma_get("lv3", 5)
    gamma = g.gammas[0]
    order = tuple(gamma.vars)
    for point, value in cases:
        got = gamma.eval_exact([point[v] for v in order])
        assert got == value


def test_qrt_generator_lives_on_the_pencil():
    m = catalog_get("qrt", qp=(1, 2, 0, 3, 1, 2), qpp=(0, 1, 1, 0, 2, 1))
    g = gamma_get("qrt", 3, m=m)
    assert set(g.gammas[0].used_vars()) <= {"h"}
    # degree in h bounded by the total degree of the parameter polynomial
    assert 1 <= g.gammas[0].degree("h") <= 2


def test_membership_uses_invariant_values():
    g = gamma_get("moebius2d", 2, params={"a": 2, "b": Fraction(1, 3)})
    # h = y(1 + bx) = -1 puts the point on the period-2 variety
    x = 1.5
    y = -1.0 / (1 + (1.0 / 3.0) * x)
    ok, res = membership(g, (x, y))
    assert ok and res[0] <= 1e-12

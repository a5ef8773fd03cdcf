"""Map construction, exact steps, and conservation of attached invariants."""

import random
from fractions import Fraction

import pytest

from periodmaps.catalog import (
    MAP_NAMES, apply_exact, apply_map, catalog_get, descriptor,
    invariants_eval, lv_cyclic_apply)
from periodmaps.errors import (
    DegenerateParameterError, MissingParameterError, PoleError,
    UnknownMapError)

QP = (1, 2, 0, 3, 1, 2)
QPP = (0, 1, 1, 0, 2, 1)

NEEDED = {
    "lyness2": {"a": 7},
    "moebius2d": {"a": 2, "b": Fraction(1, 3)},
    "euler": {"I": 2, "J": 3, "K": 5},
    "qrt": {"qp": QP, "qpp": QPP},
}


def _get(name):
    return catalog_get(name, params=NEEDED.get(name))


def test_every_catalog_map_constructs_and_describes():
    import json
    for name in MAP_NAMES:
        m = _get(name)
        d = descriptor(m)
        json.dumps(d)
        assert d["name"] == name
        assert d["d"] == len(d["vars"])
        assert d["implicit"] == (m.components is None)


def test_unknown_map_and_missing_parameter():
    with pytest.raises(UnknownMapError):
        catalog_get("noSuchMap")
    with pytest.raises(MissingParameterError):
        catalog_get("lyness2")
    with pytest.raises(MissingParameterError):
        catalog_get("moebius2d", a=1)


def test_degenerate_moebius_parameters_rejected():
    with pytest.raises(DegenerateParameterError):
        catalog_get("moebius2d", a=2, b=Fraction(1, 2))


def test_lyness2_exact_two_cycle():
    m = _get("lyness2")
    p = (Fraction(5),)
    q = apply_exact(m, p)
    assert q == (Fraction(7, 5),)
    assert apply_exact(m, q) == p


def test_lv3_step_conserves_invariants_exactly_bulk():
    m = _get("lv3")
    rng = random.Random("catalog-lv3")
    checked = 0
    while checked < 150:
        pt = tuple(Fraction(rng.randint(-30, 30), rng.randint(1, 9))
                   for _ in range(3))
        if any(c == 0 for c in pt):
            continue
        try:
            img = apply_exact(m, pt)
            for h in m.invariants:
                assert h.eval_exact(pt) == h.eval_exact(img)
        except (ZeroDivisionError, PoleError):
            continue
        checked += 1


def test_toda3_step_conserves_invariants_exactly_bulk():
    m = _get("toda3")
    rng = random.Random("catalog-toda")
    checked = 0
    while checked < 60:
        pt = tuple(Fraction(rng.randint(-20, 20), rng.randint(1, 6))
                   for _ in range(6))
        if any(c == 0 for c in pt):
            continue
        try:
            img = apply_exact(m, pt)
            for h in m.invariants:
                assert h.eval_exact(pt) == h.eval_exact(img)
        except (ZeroDivisionError, PoleError):
            continue
        checked += 1


def test_lv4_exact_step_satisfies_defining_relation():
    m = _get("lv4")
    rng = random.Random("catalog-lv4")
    checked = 0
    while checked < 25:
        pt = tuple(Fraction(rng.randint(-15, 15), rng.randint(1, 5))
                   for _ in range(4))
        if any(c == 0 for c in pt):
            continue
        try:
            img = m.exact_apply(pt) if m.exact_apply else apply_map(
                m, [complex(c) for c in pt])
        except Exception:
            continue
        # X_j (1 - X_{j-1}) = x_j (1 - x_{j+1}) cyclically
        for j in range(4):
            lhs = img[j] * (1 - img[(j - 1) % 4])
            rhs = complex(pt[j]) * (1 - complex(pt[(j + 1) % 4]))
            assert abs(lhs - rhs) <= 1e-7 * (1 + abs(rhs))
        checked += 1


def test_lv_cyclic_apply_returns_both_branches_generically():
    images = lv_cyclic_apply((0.3 + 0.1j, -0.7, 1.4, 0.2 - 0.5j))
    assert 1 <= len(images) <= 2
    for img in images:
        for j in range(4):
            lhs = img[j] * (1 - img[(j - 1) % 4])
            rhs = (0.3 + 0.1j, -0.7, 1.4, 0.2 - 0.5j)[j] * \
                (1 - (0.3 + 0.1j, -0.7, 1.4, 0.2 - 0.5j)[(j + 1) % 4])
            assert abs(lhs - rhs) < 1e-8


def test_euler_inertia_invariants_conserved():
    m = _get("euler")
    assert m.invariant_names == ("h1", "h2")
    pt = (Fraction(1, 2), Fraction(-1, 3), Fraction(2, 5))
    img = apply_exact(m, pt)
    for h in m.invariants:
        assert h.eval_exact(pt) == h.eval_exact(img)


def test_euler_generic_alpha_ratio_invariants_conserved():
    m = catalog_get("euler", alpha=Fraction(1, 3), beta=Fraction(1, 5),
                    gamma=Fraction(-2, 7))
    pt = (Fraction(3, 4), Fraction(1, 2), Fraction(-2, 3))
    img = apply_exact(m, pt)
    for h in m.invariants:
        assert h.eval_exact(pt) == h.eval_exact(img)


def test_numeric_and_exact_steps_agree():
    m = _get("lv3")
    pt = (Fraction(1, 2), Fraction(3, 4), Fraction(-5, 3))
    exact = apply_exact(m, pt)
    numeric = apply_map(m, [complex(c) for c in pt])
    for a, b in zip(numeric, exact):
        assert abs(a - complex(b)) < 1e-12


def test_qrt_invariant_is_conserved_exactly():
    m = _get("qrt")
    pt = (Fraction(1, 3), Fraction(2, 5))
    img = apply_exact(m, pt)
    H = m.invariants[0]
    assert H.eval_exact(pt) == H.eval_exact(img)


def test_invariants_eval_matches_components():
    m = _get("lv3")
    pt = (1.5, -0.25, 2.0)
    vals = invariants_eval(m, pt)
    assert abs(vals[0] - (1.5 * -0.25 * 2.0)) < 1e-12

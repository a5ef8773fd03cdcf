"""Symmetric biquadratic correspondences: branches, composition, generators."""

from fractions import Fraction

import pytest

from periodmaps.algebra import MPoly, parse_poly
from periodmaps.biquad import (
    GAMMA3, GAMMAS, coerce_params, compose, follow, from_3dlv,
    from_3dlv_symbolic, gamma_biquad, s_poly, s_value, sample_on_gamma,
    solve_branches)
from periodmaps.errors import DegenerateParameterError

Q = tuple(Fraction(c) for c in (1, -2, 3, 1, 2, -1))


def test_s_poly_is_symmetric():
    direct = s_poly(Q, "X", "x")
    swapped = s_poly(Q, "x", "X").with_vars(("X", "x"))
    assert direct == swapped


def test_solve_branches_satisfy_the_correspondence():
    for x in (0.4, -1.3 + 0.2j, 2.75):
        for X in solve_branches(Q, x):
            assert abs(s_value(Q, X, x)) < 1e-7


def test_coerce_params_guards():
    with pytest.raises(DegenerateParameterError):
        coerce_params((1, 2, 3))
    with pytest.raises(DegenerateParameterError):
        coerce_params((0, 0, 0, 0, 0, 0))


def test_follow_does_not_backtrack():
    orbit = follow(Q, 0.8, 6)
    for k in range(2, len(orbit)):
        # each step satisfies the correspondence with its predecessor
        assert abs(s_value(Q, orbit[k], orbit[k - 1])) < 1e-6


def test_compose_gives_the_two_step_parameters():
    q2 = compose(Q)
    orbit = follow(Q, Fraction(5, 7), 4)
    for k in range(len(orbit) - 2):
        assert abs(s_value(q2, orbit[k + 2], orbit[k])) < 1e-6


@pytest.mark.parametrize("n", [3, 4, 5])
def test_sample_on_gamma_lands_on_the_generator(n):
    for seed in range(4):
        q = sample_on_gamma(n, seed)
        assert q == sample_on_gamma(n, seed)
        val = gamma_biquad(n, q)
        bound = 1e-7 * (1 + float(GAMMAS[n].max_abs_coeff()))
        if n in (3, 4):
            assert val == 0
        else:
            assert abs(complex(val)) <= bound


@pytest.mark.parametrize("n", [3, 4])
def test_orbits_on_gamma_close_up(n):
    for seed in range(5):
        q = sample_on_gamma(n, seed)
        orbit = follow(q, 0.31 + 0.07j, n)
        assert abs(orbit[n] - orbit[0]) < 1e-6, (n, seed)


def test_3dlv_identification_symbolic_identity():
    # gamma^(3) of the identified parameters is -s times the period-3
    # generator of the three-dimensional Lotka-Volterra variety
    subs = dict(zip(("a", "b", "c", "d", "e", "f"), from_3dlv_symbolic()))
    lhs = GAMMA3.subs_poly(subs)
    r, s = MPoly.var("r"), MPoly.var("s")
    rhs = -s * (r ** 2 + s ** 2 - r * s + r + s + 1)
    assert lhs == rhs


def test_3dlv_numeric_matches_symbolic():
    sym = from_3dlv_symbolic()
    for (rv, sv) in ((Fraction(2), Fraction(3)), (Fraction(-1, 2), Fraction(5, 3))):
        num = from_3dlv(rv, sv)
        for p, c in zip(sym, num):
            assert p.subs_values({"r": rv, "s": sv}).constant_term() == c


def test_gamma4_on_composed_parameters_of_gamma3():
    # a one-step correspondence of period 3 composes to one of period 3
    # again; its gamma^(3) value stays zero
    q = sample_on_gamma(3, 1)
    q2 = compose(q)
    assert gamma_biquad(3, q2) == 0

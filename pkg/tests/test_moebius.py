"""Parameter dynamics of the one-dimensional Moebius family."""

import cmath
from fractions import Fraction

import pytest

from periodmaps.algebra import MPoly, equal_up_to_scale, parse_poly, roots
from periodmaps.elim import fixtures_for
from periodmaps.errors import DegenerateParameterError
from periodmaps.moebius import (
    MoebiusParams, derive_gamma, initial_state, mu_pair, param_step,
    recurrence_F)

GAMMA_TEXTS = {
    2: "1 + h",
    3: "1 + h + h^2 + a*b*h",
    4: "1 + h^2 + 2*a*b*h",
    5: "1 + h + h^2 + h^3 + h^4 + a*b*h*(3 + (4 + a*b)*h + 3*h^2)",
    6: "1 - h + h^2 + 3*a*b*h",
}


@pytest.mark.parametrize("n", sorted(GAMMA_TEXTS))
def test_derive_gamma_closed_forms(n):
    want = parse_poly(GAMMA_TEXTS[n], ("a", "b", "h"))
    assert derive_gamma(n) == want


@pytest.mark.parametrize("n", sorted(GAMMA_TEXTS))
def test_recurrence_matches_recorded_polynomial(n):
    fix = fixtures_for("moebius2d", n)[0]
    rec = recurrence_F(n)
    assert equal_up_to_scale(rec.F, fix.F)
    assert rec.period == n and rec.source == "moebius2d"


def test_recurrence_with_numeric_parameters():
    fix = fixtures_for("moebius2d", 4)[0]
    rec = recurrence_F(4, a=1, b=2)
    want = fix.F.subs_values({"a": Fraction(1), "b": Fraction(2)})
    assert equal_up_to_scale(rec.F, want)
    assert set(rec.F.used_vars()) <= {"x", "X"}


def test_recurrence_rejects_half_specified_parameters():
    with pytest.raises(ValueError):
        recurrence_F(3, a=1)
    with pytest.raises(DegenerateParameterError):
        recurrence_F(3, a=2, b=Fraction(1, 2))


def test_scalar_orbit_is_periodic_on_the_parameter_variety():
    # with gamma(a, b, h) = 0 the scalar map x -> h(x + a)/(1 + bx)
    # closes up after n steps
    for n in (3, 4, 6):
        gamma = derive_gamma(n).subs_values(
            {"a": Fraction(1), "b": Fraction(2)})
        dense = [c.constant_term() for c in gamma.as_univariate("h")]
        for h in roots([complex(c) for c in reversed(dense)], tol=1e-10):
            x = 0.37 + 0.11j
            for _ in range(n):
                x = h * (x + 1) / (1 + 2 * x)
            assert abs(x - (0.37 + 0.11j)) < 1e-8, (n, h)


def test_param_step_composes_the_map():
    # the initial state is the one-step triple; each param_step adds a step
    base = MoebiusParams.numeric(2, Fraction(1, 3), Fraction(5, 7))
    s = initial_state(base)
    for _ in range(2):
        s = param_step(base, s)
    a, b, h = (Fraction(2), Fraction(1, 3), Fraction(5, 7))
    x = Fraction(4, 9)
    y = x
    for _ in range(3):
        y = h * (y + a) / (1 + b * y)
    an = s.a_n.eval_exact([])
    bn = s.b_n.eval_exact([])
    hn = s.h_n.eval_exact([])
    assert y == hn * (x + an) / (1 + bn * x)


def test_mu_pair_sum_and_product():
    mu1, mu2 = mu_pair(2, Fraction(1, 3))
    ab = 2 / 3
    assert abs(mu1 * mu2 - 1) < 1e-12
    assert abs(mu1 + mu2 - (1 + ab)) < 1e-12


def test_degenerate_parameter_guards():
    with pytest.raises(DegenerateParameterError):
        MoebiusParams.numeric(2, Fraction(1, 2), 1)
    with pytest.raises(DegenerateParameterError):
        MoebiusParams.numeric(2, 3, 0)

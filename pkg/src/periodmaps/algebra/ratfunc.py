"""Rational functions: reduced numerator/denominator pairs of MPoly."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence, Union

from ..errors import PoleError
from .gcd import poly_gcd
from .poly import MPoly, exact_divide

POLE_REL = 1e-12


class RatFunc:
    """num/den with gcd-reduced, content-normalized representation.

    The denominator has integer coefficients with content 1 and positive
    leading coefficient (graded lex); the numerator carries the same joint
    rescaling, so values are unchanged.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: MPoly, den: MPoly = None, reduce: bool = True):
        if den is None:
            den = MPoly.const(1)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num = MPoly.zero()
            self.den = MPoly.const(1)
            return
        num, den = MPoly.align(num, den)
        if reduce:
            g = poly_gcd(num, den)
            if g.total_degree() > 0:
                num = exact_divide(num, g)
                den = exact_divide(den, g)
        cd = den.content()
        scale = 1 / cd
        if den.leading_coeff() < 0:
            scale = -scale
        num = num * scale
        den = den * scale
        cn = num.content()
        if cn and cn.denominator != 1:
            # joint rescale so the numerator is integer too
            num = num * cn.denominator
            den = den * cn.denominator
        self.num, self.den = MPoly.align(num, den)

    def with_vars(self, variables) -> "RatFunc":
        r = RatFunc.__new__(RatFunc)
        r.num = self.num.with_vars(variables)
        r.den = self.den.with_vars(variables)
        return r

    @classmethod
    def const(cls, c) -> "RatFunc":
        return cls(MPoly.const(Fraction(c)))

    @classmethod
    def var(cls, name: str) -> "RatFunc":
        return cls(MPoly.var(name))

    @classmethod
    def of(cls, value) -> "RatFunc":
        if isinstance(value, RatFunc):
            return value
        if isinstance(value, MPoly):
            return cls(value)
        return cls.const(value)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.total_degree() == 0

    def __add__(self, other):
        other = RatFunc.of(other)
        return RatFunc(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        return self + (-RatFunc.of(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = RatFunc.of(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = RatFunc.of(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RatFunc.of(other) / self

    def __eq__(self, other):
        if not isinstance(other, (RatFunc, MPoly, int, Fraction)):
            return NotImplemented
        other = RatFunc.of(other)
        return (self.num * other.den) == (other.num * self.den)

    def __hash__(self):
        return hash((self.num, self.den))

    def eval(self, point: Sequence[complex]) -> complex:
        nv = self.num.eval(point)
        dv = self.den.eval(point)
        if abs(dv) <= POLE_REL * (1 + abs(nv)):
            raise PoleError("denominator vanishes at evaluation point")
        return nv / dv

    def eval_at(self, bindings: Mapping[str, complex]) -> complex:
        nv = self.num.eval([bindings.get(v, 0j) for v in self.num.vars])
        dv = self.den.eval([bindings.get(v, 0j) for v in self.den.vars])
        if abs(dv) <= POLE_REL * (1 + abs(nv)):
            raise PoleError("denominator vanishes at evaluation point")
        return nv / dv

    def eval_exact(self, point: Sequence) -> Fraction:
        nv = self.num.eval_exact(point)
        dv = self.den.eval_exact(point)
        if dv == 0:
            raise PoleError("denominator vanishes at evaluation point")
        return nv / dv

    def __str__(self):
        if self.is_polynomial() and self.den == MPoly.const(1):
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self):
        return f"RatFunc({self})"


def compose_poly(p: MPoly, substitutions: Mapping[str, RatFunc]) -> RatFunc:
    """p with rational functions substituted for (a subset of) its variables.

    Variables without a substitution entry pass through unchanged.  The
    result uses the common-denominator expansion prod den_i^deg_i, then
    reduces.
    """
    num, den = compose_parts(p, substitutions)
    return RatFunc(num, den)


def compose_parts(p: MPoly, substitutions: Mapping[str, RatFunc]):
    """(numerator, denominator) of the composition, without reduction.

    The pair may share a factor; use this when only the zero set of the
    numerator matters and the gcd would be expensive.
    """
    subs = {v: RatFunc.of(r) for v, r in substitutions.items() if v in p.vars}
    degs = {v: p.degree(v) for v in subs}
    den = MPoly.const(1)
    for v, r in subs.items():
        den = den * r.den ** degs[v]
    num = MPoly.zero()
    for exps, c in p.sorted_terms():
        term = MPoly.const(c)
        for v, e in zip(p.vars, exps):
            if v in subs:
                r = subs[v]
                term = term * r.num ** e * r.den ** (degs[v] - e)
            elif e:
                term = term * MPoly.var(v) ** e
        num = num + term
    return num, den

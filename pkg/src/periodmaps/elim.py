"""Recurrence derivation by iterated resultants, plus the fixture suite.

Given the cleared map relations together with the numerator of a composed
variety generator, eliminating the unwanted coordinates leaves polynomial
constraints between one coordinate and its image.  Resultants introduce
extraneous factors; those are filtered out numerically against true
on-variety transitions and removed by exact division.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import (MPoly, divides, exact_divide, parse_poly, poly_gcd,
                      resultant, squarefree_part)
from .errors import EliminationError, NothingToEliminateError

TRANSITION_TOL = 1e-8
MIN_TRANSITIONS = 8


@dataclass(frozen=True)
class EliminationProblem:
    relations: Tuple[MPoly, ...]
    eliminate: Tuple[str, ...]
    keep: Tuple[str, ...]

    def __post_init__(self):
        if not 1 <= len(self.eliminate) <= 2:
            raise EliminationError("supported: one or two eliminated variables")
        if set(self.eliminate) & set(self.keep):
            raise EliminationError("eliminate and keep overlap")
        allowed = set(self.eliminate) | set(self.keep)
        for rel in self.relations:
            bad = set(rel.used_vars()) - allowed
            if bad:
                raise EliminationError(
                    f"relation uses undeclared variables {sorted(bad)}")


Transition = Dict[str, complex]


def _eval_at(p: MPoly, t: Transition) -> complex:
    return p.eval([complex(t.get(v, 0)) for v in p.vars])


def _vanishes(p: MPoly, transitions: Sequence[Transition],
              tol: float) -> bool:
    scale = 1 + float(p.max_abs_coeff())
    return all(abs(_eval_at(p, t)) <= tol * scale for t in transitions)


def _strip_var_monomials(p: MPoly) -> MPoly:
    for v in p.used_vars():
        mv = MPoly.var(v).with_vars(p.vars)
        while p.degree(v) and divides(mv, p):
            p = exact_divide(p, mv)
    return p


def _normalize(p: MPoly) -> MPoly:
    p = p.primitive()
    c0 = p.constant_term()
    if c0 < 0 or (c0 == 0 and p.leading_coeff() < 0):
        p = -p
    return p


def _eliminate_once(polys: List[MPoly], v: str) -> List[MPoly]:
    with_v = [p for p in polys if p.degree(v)]
    without = [p for p in polys if not p.degree(v)]
    if not with_v:
        raise NothingToEliminateError(f"no relation involves {v!r}")
    if len(with_v) == 1:
        # only one constraint left in v: its coefficients with respect to
        # v are the polynomial consequences free of v
        coeffs = [c for c in with_v[0].as_univariate(v) if not c.is_zero()]
        g = coeffs[0]
        for c in coeffs[1:]:
            g = poly_gcd(g, c)
        if g.total_degree() == 0:
            raise EliminationError(
                f"single remaining relation in {v!r} has trivial content")
        return without + [g]
    pivot = min(with_v, key=lambda p: p.degree(v))
    out = list(without)
    for other in with_v:
        if other is pivot:
            continue
        R = resultant(pivot, other, v)
        if R.is_zero():
            raise EliminationError(
                f"resultant in {v!r} collapsed to zero; "
                "reorder the relations or the elimination variables")
        out.append(R)
    return out


def _rational_sqrt(c: Fraction) -> Optional[Fraction]:
    if c < 0:
        return None
    ns = math.isqrt(c.numerator)
    ds = math.isqrt(c.denominator)
    if ns * ns == c.numerator and ds * ds == c.denominator:
        return Fraction(ns, ds)
    return None


def _poly_sqrt(p: MPoly) -> Optional[MPoly]:
    """q with q^2 == p, or None if p is not a perfect square."""
    if p.is_zero():
        return p
    if p.total_degree() == 0:
        r = _rational_sqrt(p.constant_term())
        return None if r is None else MPoly.const(r)
    v = next(v for v in p.used_vars() if p.degree(v))
    g = poly_gcd(p, p.derivative(v))
    sq = g * g
    if sq.is_zero():
        return None
    p_a, sq_a = MPoly.align(p, sq)
    lp, ls = p_a.leading_coeff(), sq_a.leading_coeff()
    scale = lp / ls
    if sq_a * scale != p_a:
        return None
    r = _rational_sqrt(scale)
    return None if r is None else g * r


def _split_quadratic(p: MPoly, main: str):
    """(f1, f2) with f1*f2 proportional to p, for a square discriminant."""
    C, B, A = (c for c in p.as_univariate(main))   # ascending order
    disc = B * B - 4 * A * C
    s = _poly_sqrt(disc)
    if s is None:
        return None
    Y = MPoly.var(main)
    f1 = (2 * A * Y + B - s).primitive()
    f2 = (2 * A * Y + B + s).primitive()
    prod, target = MPoly.align(f1 * f2, p)
    if prod * target.leading_coeff() != target * prod.leading_coeff():
        return None
    return f1, f2


def _filter_factors(p: MPoly, spurious: Sequence[MPoly],
                    transitions: Optional[Sequence[Transition]],
                    tol: float) -> MPoly:
    p = _strip_var_monomials(p)
    main = next((v for v in p.used_vars() if v.isupper()),
                None) or next(iter(p.used_vars()))
    p = squarefree_part(p, main)
    if transitions:
        for cand in spurious:
            cand = _strip_var_monomials(cand.primitive())
            if cand.total_degree() == 0:
                continue
            if _vanishes(cand, transitions, tol):
                continue        # vanishing factors are genuine, keep them
            while (divides(cand, p)
                   and p.total_degree() > cand.total_degree()):
                q = exact_divide(p, cand)
                if not _vanishes(q, transitions, tol):
                    break
                p = q
        if p.degree(main) == 2:
            # a rational branch split separates the route the sampled
            # transitions actually took from its algebraic partner
            split = _split_quadratic(p, main)
            if split:
                keepers = [f for f in split
                           if _vanishes(f, transitions, tol)]
                if len(keepers) == 1:
                    p = _strip_var_monomials(keepers[0])
    return _normalize(p)


def eliminate(prob: EliminationProblem,
              transitions: Optional[Sequence[Transition]] = None,
              tol: float = TRANSITION_TOL,
              extra_spurious: Sequence[MPoly] = ()) -> List[MPoly]:
    """Polynomial consequences of the relations in the keep variables.

    With transitions supplied (true (x, X) samples on the variety, at
    least eight), extraneous resultant factors are divided out and every
    returned factor is required to vanish on all of them.
    """
    if transitions is not None and len(transitions) < MIN_TRANSITIONS:
        raise EliminationError(
            f"need at least {MIN_TRANSITIONS} transition samples for filtering")
    orders = [tuple(prob.eliminate)]
    if len(prob.eliminate) == 2:
        orders.append(tuple(reversed(prob.eliminate)))
    last_exc = None
    for order in orders:
        polys = [p.with_vars(tuple(sorted(set(p.used_vars())
                 | set(prob.eliminate) | set(prob.keep))))
                 for p in prob.relations]
        try:
            for v in order:
                polys = _eliminate_once(polys, v)
            break
        except (EliminationError, NothingToEliminateError) as exc:
            last_exc = exc
            polys = None
    if polys is None:
        raise last_exc
    spurious = list(extra_spurious)
    for rel in prob.relations:
        for v in prob.eliminate:
            if rel.degree(v):
                lead = rel.as_univariate(v)[-1]
                spurious.append(lead)
    results = []
    for p in polys:
        got = _filter_factors(p, spurious, transitions, tol)
        if got.total_degree() == 0:
            continue
        if transitions and not _vanishes(got, transitions, tol):
            raise EliminationError(
                "no factor surviving filtering vanishes on the transitions",
                witnesses=(got, list(transitions)))
        if not any(got == r for r in results):
            results.append(got)
    if not results:
        raise EliminationError("elimination left no nontrivial factor")
    return results


# ---------------------------------------------------------------- fixtures

@dataclass(frozen=True)
class Fixture:
    map_name: str
    period: int
    index: int
    F: MPoly

    def __post_init__(self):
        if self.F.is_zero():
            raise EliminationError("fixture polynomial is zero")


def _load_fixtures() -> dict:
    with resources.files("periodmaps.data").joinpath(
            "fixtures.json").open("r", encoding="utf-8") as fh:
        return json.load(fh)


_FIXTURES = _load_fixtures()


def make_transitions(map_name: str, period: int, count: int = 12,
                     params: dict = None, base_seed: int = 0,
                     **kw) -> List[Transition]:
    """True (x, X) transition samples on the (map, period) variety.

    Keys are the map coordinates plus their upper-case images; for
    parameterized maps the parameter values ride along so fixtures with
    parameter symbols evaluate directly.
    """
    from .catalog import apply_map, catalog_get
    from .varieties import gamma_get, sample_on_variety
    from .errors import (PoleError, SamplingError, BranchSelectionError,
                         SingularSystemError)
    m = catalog_get(map_name, params=params, **kw)
    g = gamma_get(map_name, period, m=m)
    out = []
    seed = base_seed
    while len(out) < count and seed < base_seed + 8 * count + 64:
        try:
            p = sample_on_variety(g, seed)
            q = apply_map(m, p)
        except (SamplingError, PoleError, BranchSelectionError,
                SingularSystemError):
            seed += 1
            continue
        seed += 1
        t = dict(zip(m.varnames, p))
        t.update({v.upper(): c for v, c in zip(m.varnames, q)})
        for k, val in m.params.items():
            if isinstance(val, (int, Fraction)):
                t.setdefault(k, complex(Fraction(val)))
        out.append(t)
    if len(out) < count:
        raise EliminationError(
            f"could not collect {count} transitions for ({map_name}, {period})")
    return out


def _lv4_chain_consistency(names: Sequence[str], cap: str) -> MPoly:
    """Consistency quadratic of the cyclic implicit chain, in cap = X_1."""
    vp = {n: MPoly.var(n) for n in names}
    d = len(names)
    rhs = [vp[names[j]] * (1 - vp[names[(j + 1) % d]]) for j in range(d)]
    a, b = MPoly.const(1), MPoly.zero()
    c, e = MPoly.zero(), MPoly.const(1)
    for j in range(1, d):
        a, b, c, e = rhs[j] * c, rhs[j] * e, c - a, e - b
    t = MPoly.var(cap)
    return t * ((c - a) * t + (e - b)) - rhs[0] * (c * t + e)


def _lv3_polys():
    x, y, z = MPoly.var("x"), MPoly.var("y"), MPoly.var("z")
    A = 1 - y + y * z
    B = 1 - z + z * x
    C = 1 - x + x * y
    return x, y, z, A, B, C


def standard_problems(map_name: str, period: int) -> List[EliminationProblem]:
    """The elimination setups that reproduce the recorded fixtures."""
    from .varieties import gamma_get
    if map_name == "example":
        if period != 3:
            raise EliminationError("the worked example is the period-3 case")
        rel = parse_poly("X - x*y", ("x", "y", "X"))
        gam = parse_poly("(1+x)^2*y^2 + (1+x)*y + 1", ("x", "y"))
        return [EliminationProblem((rel, gam), eliminate=("y",),
                                   keep=("x", "X"))]
    if map_name == "lv3":
        g = gamma_get("lv3", period)
        gam = g.composed_numerators()[0]
        x, y, z, A, B, C = _lv3_polys()
        relX = MPoly.var("X") * B - x * A
        relY = MPoly.var("Y") * C - y * B
        if period == 2:
            return [
                EliminationProblem((relX, gam), eliminate=("y", "z"),
                                   keep=("x", "X")),
                EliminationProblem((relY, gam), eliminate=("z", "x"),
                                   keep=("y", "Y")),
            ]
        return [
            EliminationProblem((relX, gam), eliminate=("z",),
                               keep=("x", "y", "X")),
            EliminationProblem((relY, gam), eliminate=("z",),
                               keep=("x", "y", "Y")),
        ]
    if map_name == "lv4":
        if period != 2:
            raise EliminationError("only the period-2 variety is catalogued")
        g = gamma_get("lv4", period)
        gam = g.composed_numerators()[0]
        P1 = _lv4_chain_consistency(("x", "y", "z", "u"), "X")
        P3 = _lv4_chain_consistency(("z", "u", "x", "y"), "Z")
        y, z = MPoly.var("y"), MPoly.var("z")
        R2 = MPoly.var("Y") * (1 - MPoly.var("X")) - y * (1 - z)
        return [
            EliminationProblem((P1, gam), eliminate=("u", "y"),
                               keep=("x", "z", "X")),
            EliminationProblem((P1, R2, gam), eliminate=("X", "u"),
                               keep=("x", "y", "z", "Y")),
            EliminationProblem((P3, gam), eliminate=("u", "y"),
                               keep=("x", "z", "Z")),
        ]
    if map_name == "toda3":
        if period != 3:
            raise EliminationError("only the period-3 variety is catalogued")
        names = ("x", "y", "z", "u", "v", "w")
        x, y, z, u, v, w = (MPoly.var(n) for n in names)
        A = z * u + z * x + w * u
        B = y * w + y * z + v * w
        C = x * v + x * y + u * v
        t1 = x + y + z + u + v + w
        t2 = (x * y + y * z + z * x + u * v + v * w + w * u
              + x * v + y * w + z * u)
        comps = {"X": (y, A, B), "Y": (z, C, A), "U": (u, B, A),
                 "V": (v, A, C)}
        probs = []
        for cap, (mul, num, den) in comps.items():
            rel = MPoly.var(cap) * den - mul * num
            probs.append(EliminationProblem(
                (rel, t1, t2), eliminate=("z", "w"),
                keep=("x", "y", "u", "v", cap)))
        return probs
    if map_name == "moebius2d":
        from .moebius import derive_gamma
        gamma = derive_gamma(period)
        hsub = MPoly.var("y") * (1 + MPoly.var("b") * MPoly.var("x"))
        gam = gamma.subs_poly({"h": hsub})
        rel = (MPoly.var("X")
               - (MPoly.var("x") + MPoly.var("a")) * MPoly.var("y"))
        return [EliminationProblem((rel, gam), eliminate=("y",),
                                   keep=("x", "X", "a", "b"))]
    raise EliminationError(
        f"no standard elimination recorded for ({map_name}, {period})")


def derive(map_name: str, period: int,
           transitions: Optional[Sequence[Transition]] = None,
           tol: float = TRANSITION_TOL) -> List[MPoly]:
    """Run the standard eliminations; one result polynomial per setup."""
    out = []
    for prob in standard_problems(map_name, period):
        got = eliminate(prob, transitions=transitions, tol=tol)
        out.extend(got)
    return out


def fixtures_for(map_name: str, period: int) -> List[Fixture]:
    entries = _FIXTURES.get(map_name, {}).get(str(period))
    if not entries:
        raise EliminationError(
            f"no fixtures recorded for ({map_name}, {period})")
    out = []
    for e in entries:
        F = parse_poly(e["F"], tuple(e["vars"]))
        out.append(Fixture(map_name, period, e["index"], F))
    return out


_DEFAULT_PARAMS = {
    "moebius2d": {"a": Fraction(2), "b": Fraction(1, 3)},
    "euler": {"alpha": Fraction(1, 3), "beta": Fraction(1, 5),
              "gamma": Fraction(-2, 7)},
}


def default_transitions(map_name: str, period: int,
                        count: int = 12) -> List[Transition]:
    if map_name == "example":
        # the worked example is the parameter-free member of the
        # two-dimensional Moebius-reduction family
        return make_transitions("moebius2d", period, count=count,
                                params={"a": Fraction(0), "b": Fraction(1)})
    params = _DEFAULT_PARAMS.get(map_name)
    return make_transitions(map_name, period, count=count, params=params)


def _fixture_residual(fix: Fixture, t: Transition) -> float:
    if "q" in fix.F.vars and "q" not in t:
        import cmath
        al, be, ga = (t[k] for k in ("alpha", "beta", "gamma"))
        x, y = t["x"], t["y"]
        q = cmath.sqrt((1 - al * ga * y * y) * (1 - be * ga * x * x))
        best = None
        for sq in (q, -q):
            tt = dict(t)
            tt["q"] = sq
            r = abs(_eval_at(fix.F, tt))
            best = r if best is None else min(best, r)
        return best
    return abs(_eval_at(fix.F, t))


def check_fixture(fix: Fixture, tol: float = TRANSITION_TOL,
                  transitions: Optional[Sequence[Transition]] = None) -> dict:
    """Behavioral + (where the engine covers it) symbolic fixture verdict.

    Behavioral: the recorded polynomial vanishes on true on-variety
    transitions of the owning map.  Symbolic: the standard elimination
    reproduces it up to scale.  A behavioral failure is flagged as a
    suspected transcription or source typo, never silently repaired.
    """
    from .algebra import equal_up_to_scale
    if transitions is None:
        transitions = default_transitions(fix.map_name, fix.period)
    scale = 1 + float(fix.F.max_abs_coeff())
    worst = max(_fixture_residual(fix, t) for t in transitions)
    behavioral = worst <= tol * scale
    symbolic = None
    if "q" not in fix.F.vars:
        try:
            derived = derive(fix.map_name, fix.period,
                             transitions=transitions, tol=tol)
        except EliminationError:
            derived = []
        if derived:
            symbolic = any(equal_up_to_scale(r, fix.F) for r in derived)
    verdict = {
        "map": fix.map_name, "period": fix.period, "index": fix.index,
        "behavioral": behavioral, "max_residual": worst,
        "symbolic": symbolic,
    }
    if not behavioral:
        verdict["note"] = ("fixture does not vanish on true transitions; "
                           "suspected transcription or source typo")
    return verdict

"""Catalog of invariant-variety generators, membership tests, and sampling.

Each catalog entry is a list of polynomials gamma in the invariant symbols
of one map (or directly in its coordinates, for the rigid-body map).  The
zero set of gamma(H(x)) collects the points whose orbit is periodic with
the stated period.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Dict, Optional, Sequence, Tuple

from .algebra import (MPoly, RatFunc, compose_parts, compose_poly,
                      parse_poly, root_sort_key, roots_of_poly)
from .catalog import IntegrableMap, catalog_get
from .errors import (PoleError, RootFindingError, SamplingError,
                     UnknownVarietyError)

GRID_DENOM = 8
GRID_SPAN = 24          # numerators drawn from [-24, 24], i.e. [-3, 3]
MIN_COORD = 1e-3        # keep draws away from poles and fixed strata
MEMBER_TOL = 1e-9


def _load_catalog() -> dict:
    with resources.files("periodmaps.data").joinpath(
            "varieties.json").open("r", encoding="utf-8") as fh:
        return json.load(fh)


_CATALOG = _load_catalog()


@dataclass(frozen=True)
class VarietyGenerator:
    map_name: str
    period: int
    gammas: Tuple[MPoly, ...]               # in the invariant symbols
    substitution: Dict[str, RatFunc]        # symbol -> H_i(x)
    owner: IntegrableMap = field(repr=False)
    in_coordinates: bool = False

    def __post_init__(self):
        if not self.gammas:
            raise UnknownVarietyError("a variety needs at least one generator")
        for g in self.gammas:
            for v in g.used_vars():
                if v not in self.substitution:
                    raise UnknownVarietyError(
                        f"no substitution for invariant symbol {v!r}")

    @property
    def l(self) -> int:
        return len(self.gammas)

    def composed(self) -> Tuple[RatFunc, ...]:
        """The generators as rational functions of the map coordinates."""
        return tuple(compose_poly(g, self.substitution).with_vars(
            self.owner.varnames) for g in self.gammas)

    def composed_numerators(self) -> Tuple[MPoly, ...]:
        """Unreduced numerators of the composed generators, cached.

        The gcd step of full reduction is prohibitive for the widest
        entries; the zero set of the raw numerator is all sampling needs.
        """
        cached = getattr(self, "_num_cache", None)
        if cached is None:
            cached = tuple(
                compose_parts(g, self.substitution)[0].with_vars(
                    self.owner.varnames) for g in self.gammas)
            object.__setattr__(self, "_num_cache", cached)
        return cached

    def to_json(self) -> dict:
        return {"map": self.map_name, "period": self.period,
                "gammas": [str(g) for g in self.gammas],
                "symbols": sorted({v for g in self.gammas
                                   for v in g.used_vars()})}


def available_periods(map_name: str) -> Tuple[int, ...]:
    entry = _CATALOG.get(map_name)
    if entry is None:
        return ()
    return tuple(sorted(int(k) for k in entry["periods"]))


def _subs_params(text: str, symbols, params: dict) -> MPoly:
    p = parse_poly(text, tuple(symbols) + tuple(params))
    return p.subs_values({k: Fraction(v) for k, v in params.items()})


def gamma_get(map_name: str, period: int,
              m: Optional[IntegrableMap] = None,
              params: dict = None, **kw) -> VarietyGenerator:
    """Variety generator for (map_name, period), parameters substituted."""
    entry = _CATALOG.get(map_name)
    periods = available_periods(map_name)
    if entry is None or str(period) not in entry["periods"]:
        raise UnknownVarietyError(
            f"no variety for ({map_name}, {period})", available=periods)
    if m is None:
        m = catalog_get(map_name, params=params, **kw)
    elif m.name != map_name:
        raise UnknownVarietyError(
            f"map {m.name!r} does not own the {map_name!r} varieties")
    symbols = tuple(entry["symbols"])
    texts = entry["periods"][str(period)]

    if "pencil" in entry:
        # generators live on the parameter pencil q' + h q''
        h = MPoly.var("h")
        subs = {}
        for name, ap, app in zip(entry["pencil"], m.params["qp"],
                                 m.params["qpp"]):
            subs[name] = (MPoly.const(Fraction(ap))
                          + Fraction(app) * h).with_vars(("h",))
        gammas = tuple(
            parse_poly(t, tuple(entry["pencil"])).subs_poly(subs)
            .with_vars(("h",)) for t in texts)
    elif "parameters" in entry:
        pvals = {k: m.params[k] for k in entry["parameters"]}
        gammas = tuple(_subs_params(t, symbols, pvals).with_vars(symbols)
                       for t in texts)
    else:
        gammas = tuple(parse_poly(t, symbols).with_vars(symbols)
                       for t in texts)

    if entry.get("coordinates"):
        subs = {v: RatFunc.var(v).with_vars(m.varnames) for v in m.varnames}
        return VarietyGenerator(map_name, period, gammas, subs, m,
                                in_coordinates=True)
    subs = dict(zip(m.invariant_names, m.invariants))
    return VarietyGenerator(map_name, period, gammas, subs, m)


def membership(g: VarietyGenerator, p: Sequence[complex],
               tol: float = MEMBER_TOL):
    """(verdict, residuals): does p lie on the variety within tol?"""
    point = [complex(c) for c in p]
    if g.in_coordinates:
        values = point
        order = g.owner.varnames
    else:
        values = [H.eval(point) for H in g.owner.invariants]
        order = g.owner.invariant_names
    residuals = []
    ok = True
    for gamma in g.gammas:
        val = gamma.with_vars(order).eval(values)
        residuals.append(abs(val))
        if abs(val) > tol * (1 + gamma.max_abs_coeff()):
            ok = False
    return ok, residuals


# --------------------------------------------------------------- sampling

def _draw_coord(rng: random.Random) -> complex:
    while True:
        re = Fraction(rng.randint(-GRID_SPAN, GRID_SPAN), GRID_DENOM)
        im = Fraction(rng.randint(-GRID_SPAN, GRID_SPAN), GRID_DENOM)
        z = complex(re, im)
        if abs(z) >= MIN_COORD:
            return z


def _polish_root(coeffs, z: complex) -> complex:
    """Newton refinement with a step-size stopping rule.

    The residual rule inside the generic root finder is too loose here:
    the composed numerators carry enormous coefficients, so a root that
    clears the residual bound can still be several digits short.
    coeffs are the dense univariate coefficients, lowest degree first.
    """
    def val_der(w):
        p = dp = 0j
        for c in reversed(coeffs):
            dp = dp * w + p
            p = p * w + c
        return p, dp

    best = z
    best_res = abs(val_der(z)[0])
    for _ in range(16):
        p, dp = val_der(z)
        if dp == 0:
            break
        z2 = z - p / dp
        res2 = abs(val_der(z2)[0])
        if res2 < best_res:
            best, best_res = z2, res2
        if abs(z2 - z) <= 1e-15 * (1 + abs(z2)):
            z = z2
            break
        z = z2
    return best


def _solve_last(g: VarietyGenerator, num: MPoly, drawn, last: str,
                tol: float):
    point = dict(zip(g.owner.varnames[:-1], drawn))
    try:
        cands = roots_of_poly(num, last, point, tol=1e-8)
    except (RootFindingError, ValueError):
        return None
    coeffs = [c.eval([point.get(v, 0j) for v in c.vars])
              for c in num.as_univariate(last)]
    cands = [_polish_root(coeffs, r) for r in cands]
    for r in sorted(cands, key=root_sort_key):
        if abs(r) < 1e-6:
            continue
        full = tuple(drawn) + (r,)
        try:
            ok, _ = membership(g, full, tol=tol)
        except PoleError:
            continue
        if ok:
            return full
    return None


def _solve_toda(g: VarietyGenerator, t2sub: MPoly, drawn, tol: float):
    point = dict(zip(("x", "y", "z", "u"), drawn))
    try:
        cands = roots_of_poly(t2sub, "v", point, tol=1e-8)
    except (RootFindingError, ValueError):
        return None
    for v in sorted(cands, key=root_sort_key):
        w = -(sum(drawn) + v)
        if abs(v) < 1e-6 or abs(w) < 1e-6:
            continue
        full = tuple(drawn) + (v, w)
        try:
            ok, _ = membership(g, full, tol=tol)
        except PoleError:
            continue
        if ok:
            return full
    return None


def sample_on_variety(g: VarietyGenerator, seed: int,
                      tol: float = MEMBER_TOL):
    """Seeded point on the variety; deterministic in (generator, seed).

    All but l coordinates are drawn from a rational grid in the complex
    square [-3, 3] x [-3, 3]; the remaining ones solve gamma(H(x)) = 0.
    """
    if g.l > 2:
        raise SamplingError("sampling supports at most two generators")
    rng = random.Random(f"variety:{g.map_name}:{g.period}:{seed}")
    names = g.owner.varnames

    if g.map_name == "toda3":
        # t1 = 0 fixes w linearly; t2 = 0 is then quadratic in v
        t1 = g.substitution["t1"].num
        t2 = g.substitution["t2"].num
        chain = -(t1 - MPoly.var("w").with_vars(names))
        t2sub = t2.subs_poly({"w": chain})
        for _ in range(32):
            drawn = tuple(_draw_coord(rng) for _ in range(4))
            got = _solve_toda(g, t2sub, drawn, tol)
            if got is not None:
                return got
        raise SamplingError(
            f"no admissible draw for ({g.map_name}, {g.period}, seed {seed})")

    if g.l != 1:
        raise SamplingError(
            f"no sequential solve path for {g.map_name} with {g.l} generators")
    num = g.composed_numerators()[0]
    last = names[-1]
    if num.degree(last) == 0:
        raise SamplingError(
            f"generator does not involve the solve coordinate {last!r}")
    for _ in range(32):
        drawn = tuple(_draw_coord(rng) for _ in range(len(names) - 1))
        got = _solve_last(g, num, drawn, last, tol)
        if got is not None:
            return got
    raise SamplingError(
        f"no admissible draw for ({g.map_name}, {g.period}, seed {seed})")


def checksum_cases(map_name: str, period: int):
    """Transcription-time spot values recorded alongside the bulky entries."""
    entry = _CATALOG.get(map_name, {})
    raw = entry.get("checksums", {}).get(str(period), [])
    out = []
    for case in raw:
        point = {k: Fraction(v) for k, v in case["point"].items()}
        out.append((point, Fraction(case["value"])))
    return out

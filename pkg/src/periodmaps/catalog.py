"""The concrete integrable maps: components, invariants, parameters.

Explicit maps carry RatFunc components over their coordinate variables.
Two families are implicit: the 4d Lotka-Volterra map (solved through a
cyclic Moebius chain plus a quadratic consistency condition) and the
discrete Euler top in Hirota-Kimura form (a linear 3x3 solve per step).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from .algebra import MPoly, RatFunc
from .errors import (BranchSelectionError, DegenerateParameterError,
                     MissingParameterError, NonFiniteError, PoleError,
                     SingularSystemError, UnknownMapError)

Point = Tuple[complex, ...]

MAP_NAMES = ("lyness2", "lyness5", "lyness8", "lv3", "lv4", "toda3",
             "euler", "moebius2d", "qrt")


def as_point(coords: Sequence[complex]) -> Point:
    pt = tuple(complex(c) for c in coords)
    for c in pt:
        if not (math.isfinite(c.real) and math.isfinite(c.imag)):
            raise NonFiniteError("point has a non-finite coordinate")
    return pt


@dataclass(frozen=True)
class IntegrableMap:
    name: str
    varnames: Tuple[str, ...]
    params: dict
    components: Optional[Tuple[RatFunc, ...]]
    invariants: Tuple[RatFunc, ...]
    invariant_names: Tuple[str, ...]
    numeric_apply: Optional[Callable] = None
    exact_apply: Optional[Callable] = None

    @property
    def d(self) -> int:
        return len(self.varnames)

    def __repr__(self):
        return f"IntegrableMap({self.name}, d={self.d})"


def _rf(num: MPoly, den: MPoly = None, vars=None) -> RatFunc:
    r = RatFunc(num, den if den is not None else MPoly.const(1))
    return r.with_vars(vars) if vars is not None else r


def _vars(names):
    return tuple(MPoly.var(n) for n in names)


# ---------------------------------------------------------------- builders

def _build_lyness2(a: Fraction):
    x, = _vars("x")
    comp = _rf(MPoly.const(a), x, vars=("x",))
    return ("x",), (comp,), (), ()


def _build_lyness5():
    x, y = _vars(("x", "y"))
    vs = ("x", "y")
    return vs, (_rf(1 + x, y, vars=vs), _rf(x, vars=vs)), (), ()


def _build_lyness8():
    x, y, z = _vars(("x", "y", "z"))
    vs = ("x", "y", "z")
    return vs, (_rf(1 + x + y, z, vars=vs), _rf(x, vars=vs), _rf(y, vars=vs)), (), ()


def _lv3_polys():
    x, y, z = _vars(("x", "y", "z"))
    A = 1 - y + y * z
    B = 1 - z + z * x
    C = 1 - x + x * y
    return x, y, z, A, B, C


def _build_lv3():
    x, y, z, A, B, C = _lv3_polys()
    vs = ("x", "y", "z")
    comps = (_rf(x * A, B, vars=vs), _rf(y * B, C, vars=vs), _rf(z * C, A, vars=vs))
    r = _rf(x * y * z, vars=vs)
    s = _rf((1 - x) * (1 - y) * (1 - z), vars=vs)
    return vs, comps, (r, s), ("r", "s")


def _lv_invariant_polys(d: int):
    """Invariants of the d-dimensional cyclic Lotka-Volterra map."""
    names = tuple("x%d" % (j + 1) for j in range(d)) if d > 4 else \
        ("x", "y", "z", "u")[:d]
    xs = _vars(names)
    f = [xs[j] * (1 - xs[(j - 1) % d]) for j in range(d)]
    invs = []
    inames = []
    for k in range(1, d // 2 + 1):
        total = MPoly.zero()
        for combo in _nonadjacent_subsets(d, k):
            term = MPoly.const(1)
            for j in combo:
                term = term * f[j]
            total = total + term
        invs.append(_rf(total, vars=names))
        inames.append("h%d" % k)
    prod = MPoly.const(1)
    for v in xs:
        prod = prod * v
    invs.append(_rf(prod, vars=names))
    inames.append("r")
    return names, tuple(invs), tuple(inames)


def _nonadjacent_subsets(d: int, k: int):
    """k-element subsets of Z/d with no two cyclically adjacent members."""
    out = []

    def rec(start, chosen):
        if len(chosen) == k:
            if not (0 in chosen and (d - 1) in chosen):
                out.append(tuple(chosen))
            return
        for j in range(start, d):
            if chosen and j == chosen[-1] + 1:
                continue
            rec(j + 1, chosen + [j])

    rec(0, [])
    return out


def lv_cyclic_apply(x: Point, tol: float = 1e-9):
    """Both solution branches of X_j(1-X_{j-1}) = x_j(1-x_{j+1}), cyclic.

    Propagates X_1 = t through the Moebius chain and solves the quadratic
    consistency condition; returns a list of candidate image points.
    """
    d = len(x)
    rhs = [x[j] * (1 - x[(j + 1) % d]) for j in range(d)]
    # X_j as a Moebius function (a t + b)/(c t + e) of t = X_1
    a, b, c, e = 1 + 0j, 0j, 0j, 1 + 0j
    for j in range(1, d):
        # X_j = rhs[j] / (1 - X_{j-1})
        a, b, c, e = rhs[j] * c, rhs[j] * e, c - a, e - b
    # consistency: t (1 - X_{d-1 -> back to j=0}) = rhs[0]
    # i.e. t((c - a) t + (e - b)) = rhs[0] (c t + e)
    coeffs = [c - a, e - b - rhs[0] * c, -rhs[0] * e]
    if abs(coeffs[0]) <= 1e-14 * (1 + max(abs(v) for v in coeffs)):
        if abs(coeffs[1]) == 0:
            raise SingularSystemError("degenerate consistency condition")
        ts = [-coeffs[2] / coeffs[1]]
    else:
        ts = [complex(t) for t in np.roots(np.array(coeffs, dtype=complex))]
    images = []
    for t in ts:
        img = [t]
        ok = True
        for j in range(1, d):
            den = 1 - img[-1]
            if abs(den) <= 1e-13 * (1 + abs(rhs[j])):
                ok = False
                break
            img.append(rhs[j] / den)
        if ok:
            images.append(tuple(img))
    if not images:
        raise PoleError("all consistency branches hit a pole")
    return images


def _make_lv4_apply(invariants):
    def apply_fn(p: Point, tol: float = 1e-6) -> Point:
        candidates = lv_cyclic_apply(p)
        base = [inv.eval(p) for inv in invariants]
        best = None
        best_drift = None
        for img in candidates:
            try:
                vals = [inv.eval(img) for inv in invariants]
            except PoleError:
                continue
            drift = max(abs(v - b) / (1 + abs(b)) for v, b in zip(vals, base))
            if best_drift is None or drift < best_drift:
                best, best_drift = img, drift
        if best is None or best_drift > tol:
            raise BranchSelectionError(
                f"no consistency root conserves the invariants (drift {best_drift})")
        return best

    return apply_fn


def _build_lv4():
    names, invs, inames = _lv_invariant_polys(4)
    return names, None, invs, inames, _make_lv4_apply(invs), None


def _build_toda3():
    names = ("x", "y", "z", "u", "v", "w")
    x, y, z, u, v, w = _vars(names)
    A = z * u + z * x + w * u
    B = y * w + y * z + v * w
    C = x * v + x * y + u * v
    comps = (
        _rf(y * A, B, vars=names), _rf(z * C, A, vars=names),
        _rf(x * B, C, vars=names), _rf(u * B, A, vars=names),
        _rf(v * A, C, vars=names), _rf(w * C, B, vars=names))
    invs = (
        _rf(x + y + z + u + v + w, vars=names),
        _rf(x * y + y * z + z * x + u * v + v * w + w * u
            + x * v + y * w + z * u, vars=names),
        _rf(x * y * z, vars=names),
        _rf(u * v * w, vars=names))
    return names, comps, invs, ("t1", "t2", "t3", "t3p")


def _euler_alpha_from_inertia(I: Fraction, J: Fraction, K: Fraction):
    if 0 in (I, J, K):
        raise DegenerateParameterError("moments of inertia must be nonzero")
    return (J - K) / (2 * I), (K - I) / (2 * J), (I - J) / (2 * K)


def _euler_inertia_from_alpha(al: Fraction, be: Fraction, ga: Fraction):
    """Reconstruct (I, J, K) with I = 1, if the compatibility relation holds."""
    if al + be + ga + 4 * al * be * ga != 0:
        return None
    if 1 - 2 * be == 0:
        return None
    I = Fraction(1)
    J = (1 + 2 * al) / (1 - 2 * be)
    K = 1 + 2 * be * J
    if I - J != 2 * ga * K:
        return None
    return I, J, K


def _make_euler_apply(al, be, ga):
    alc, bec, gac = complex(al), complex(be), complex(ga)

    def apply_fn(p: Point, tol: float = 1e-9) -> Point:
        x, y, z = p
        A = np.array([[1, -alc * z, -alc * y],
                      [-bec * z, 1, -bec * x],
                      [-gac * y, -gac * x, 1]], dtype=complex)
        rhs = np.array([x, y, z], dtype=complex)
        det = np.linalg.det(A)
        if abs(det) <= 1e-12 * (1 + float(np.abs(A).max()) ** 3):
            raise SingularSystemError("Euler step linear system is singular")
        sol = np.linalg.solve(A, rhs)
        return as_point(sol)

    def exact_fn(p):
        x, y, z = p
        rows = [[Fraction(1), -al * z, -al * y],
                [-be * z, Fraction(1), -be * x],
                [-ga * y, -ga * x, Fraction(1)]]
        det = _det3(rows)
        if det == 0:
            raise SingularSystemError("Euler step linear system is singular")
        sols = []
        rhs = [x, y, z]
        for col in range(3):
            mod = [row[:] for row in rows]
            for r in range(3):
                mod[r][col] = rhs[r]
            sols.append(_det3(mod) / det)
        return tuple(sols)

    return apply_fn, exact_fn


def _det3(m):
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def _build_euler(params):
    if all(k in params for k in ("I", "J", "K")):
        I, J, K = params["I"], params["J"], params["K"]
        al, be, ga = _euler_alpha_from_inertia(I, J, K)
    elif all(k in params for k in ("alpha", "beta", "gamma")):
        al, be, ga = params["alpha"], params["beta"], params["gamma"]
        ijk = _euler_inertia_from_alpha(al, be, ga)
        I = J = K = None
        if ijk is not None:
            I, J, K = ijk
    else:
        raise MissingParameterError(
            "euler needs either I,J,K or alpha,beta,gamma")
    names = ("x", "y", "z")
    x, y, z = _vars(names)
    if I is not None:
        den = 1 - be * ga * x ** 2
        invs = (
            _rf(I * x ** 2 + J * y ** 2 + K * z ** 2, den, vars=names),
            _rf(I ** 2 * x ** 2 + J ** 2 * y ** 2 + K ** 2 * z ** 2, den,
                vars=names))
    else:
        invs = (
            _rf(1 - be * ga * x ** 2, 1 - ga * al * y ** 2, vars=names),
            _rf(1 - ga * al * y ** 2, 1 - al * be * z ** 2, vars=names))
    apply_fn, exact_fn = _make_euler_apply(al, be, ga)
    full = dict(params)
    full.update(alpha=al, beta=be, gamma=ga)
    if I is not None:
        full.update(I=I, J=J, K=K)
    return names, None, invs, ("h1", "h2"), apply_fn, exact_fn, full


def _build_moebius2d(a: Fraction, b: Fraction):
    if a * b == 1:
        raise DegenerateParameterError(
            "moebius2d with a*b = 1 collapses to a constant map")
    names = ("x", "y")
    x, y = _vars(names)
    comps = (_rf((x + a) * y, vars=names),
             _rf(y * (1 + b * x), 1 + b * y * (x + a), vars=names))
    H = _rf(y * (1 + b * x), vars=names)
    return names, comps, (H,), ("h",)


def _coerce_six(q) -> Tuple[Fraction, ...]:
    q = tuple(Fraction(c) for c in q)
    if len(q) != 6:
        raise MissingParameterError("expected six rational parameters")
    return q


def _build_qrt(qp, qpp):
    from .qrt import qrt_component_y, qrt_invariant_ratfunc
    qp = _coerce_six(qp)
    qpp = _coerce_six(qpp)
    names = ("x", "y")
    comp_y = qrt_component_y(qp, qpp).with_vars(names)
    if comp_y.den.is_zero():
        raise DegenerateParameterError("QRT map denominator is identically zero")
    comps = (_rf(MPoly.var("y"), vars=names), comp_y)
    H = qrt_invariant_ratfunc(qp, qpp).with_vars(names)
    return names, comps, (H,), ("h",)


# ---------------------------------------------------------------- registry

_REQUIRED = {
    "lyness2": ("a",),
    "moebius2d": ("a", "b"),
    "qrt": ("qp", "qpp"),
}

_verified = set()


def catalog_get(name: str, params: dict = None, **kw) -> IntegrableMap:
    """Construct a catalog map with its invariants attached and checked."""
    if name not in MAP_NAMES:
        raise UnknownMapError(f"unknown map {name!r}; known: {MAP_NAMES}")
    bound = dict(params or {})
    bound.update(kw)
    for req in _REQUIRED.get(name, ()):
        if req not in bound:
            raise MissingParameterError(f"{name} requires parameter {req!r}")
    norm = {}
    for k, v in bound.items():
        if k in ("qp", "qpp"):
            norm[k] = _coerce_six(v)
        else:
            norm[k] = Fraction(v)
    numeric_apply = exact_apply = None
    if name == "lyness2":
        vs, comps, invs, inames = _build_lyness2(norm["a"])
    elif name == "lyness5":
        vs, comps, invs, inames = _build_lyness5()
    elif name == "lyness8":
        vs, comps, invs, inames = _build_lyness8()
    elif name == "lv3":
        vs, comps, invs, inames = _build_lv3()
    elif name == "lv4":
        vs, comps, invs, inames, numeric_apply, exact_apply = _build_lv4()
    elif name == "toda3":
        vs, comps, invs, inames = _build_toda3()
    elif name == "euler":
        vs, comps, invs, inames, numeric_apply, exact_apply, norm = \
            _build_euler(norm)
    elif name == "moebius2d":
        vs, comps, invs, inames = _build_moebius2d(norm["a"], norm["b"])
    else:
        vs, comps, invs, inames = _build_qrt(norm["qp"], norm["qpp"])
    m = IntegrableMap(name=name, varnames=vs, params=norm,
                      components=comps, invariants=invs,
                      invariant_names=inames,
                      numeric_apply=numeric_apply, exact_apply=exact_apply)
    _verify_invariants(m)
    return m


def _param_signature(m: IntegrableMap):
    return (m.name, tuple(sorted((k, str(v)) for k, v in m.params.items())))


def _verify_invariants(m: IntegrableMap, npoints: int = 20):
    """Build-time conservation check of every attached invariant."""
    if not m.invariants:
        return
    sig = _param_signature(m)
    if sig in _verified:
        return
    rng = random.Random(f"catalog:{sig}")
    checked = 0
    attempts = 0
    while checked < npoints and attempts < 40 * npoints:
        attempts += 1
        pt = tuple(Fraction(rng.randint(-40, 40), rng.randint(1, 12))
                   for _ in range(m.d))
        if any(c == 0 for c in pt):
            continue
        try:
            if m.components is not None:
                img = tuple(c.eval_exact(pt) for c in m.components)
                before = [h.eval_exact(pt) for h in m.invariants]
                after = [h.eval_exact(img) for h in m.invariants]
                if any(x != y for x, y in zip(before, after)):
                    raise AssertionError(
                        f"invariant not conserved exactly for {m.name} at {pt}")
            elif m.exact_apply is not None:
                img = m.exact_apply(pt)
                before = [h.eval_exact(pt) for h in m.invariants]
                after = [h.eval_exact(img) for h in m.invariants]
                if any(x != y for x, y in zip(before, after)):
                    raise AssertionError(
                        f"invariant not conserved exactly for {m.name} at {pt}")
            else:
                fpt = as_point([complex(c) for c in pt])
                img = m.numeric_apply(fpt)
                before = [h.eval(fpt) for h in m.invariants]
                after = [h.eval(img) for h in m.invariants]
                if any(abs(x - y) > 1e-8 * (1 + abs(x))
                       for x, y in zip(before, after)):
                    raise AssertionError(
                        f"invariant drift too large for {m.name} at {pt}")
        except (PoleError, ZeroDivisionError, SingularSystemError,
                BranchSelectionError):
            continue
        checked += 1
    if checked < npoints:
        raise AssertionError(
            f"could not find {npoints} regular points to verify {m.name}")
    _verified.add(sig)


# ---------------------------------------------------------------- operations

def apply_map(m: IntegrableMap, p: Sequence[complex]) -> Point:
    """One step of the map at a numeric point."""
    pt = as_point(p)
    if len(pt) != m.d:
        raise NonFiniteError(f"point dimension {len(pt)} != map dimension {m.d}")
    if m.components is not None:
        return as_point(tuple(c.eval(pt) for c in m.components))
    return as_point(m.numeric_apply(pt))


def apply_exact(m: IntegrableMap, p: Sequence) -> tuple:
    """One exact step (explicit components or exact implicit solver)."""
    pt = tuple(Fraction(c) for c in p)
    if m.components is not None:
        return tuple(c.eval_exact(pt) for c in m.components)
    if m.exact_apply is not None:
        return m.exact_apply(pt)
    raise UnknownMapError(f"{m.name} has no exact step")


def invariants_eval(m: IntegrableMap, p: Sequence[complex]):
    pt = as_point(p)
    return [h.eval(pt) for h in m.invariants]


def descriptor(m: IntegrableMap) -> dict:
    """JSON-serializable description of the map."""
    return {
        "name": m.name,
        "d": m.d,
        "vars": list(m.varnames),
        "params": {k: (str(v) if isinstance(v, Fraction)
                       else [str(c) for c in v])
                   for k, v in m.params.items()},
        "components": None if m.components is None
        else [str(c) for c in m.components],
        "invariants": {n: str(h)
                       for n, h in zip(m.invariant_names, m.invariants)},
        "implicit": m.components is None,
    }

"""Bivariate recurrence polynomials F(x, X) and branch-followed orbits.

A recurrence relation here is a polynomial constraint F(X, x) = 0 whose
(generally multivalued) solutions X are all periodic with one fixed period.
Branch policy: at every step past the first, take the root farthest from
the point two steps back, which excludes backtracking on a 2-valued
correspondence; ties break by the fixed root ordering.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import MPoly, roots_of_poly, root_sort_key
from .errors import BranchSelectionError, RootFindingError


@dataclass(frozen=True)
class RecurrenceRelation:
    F: MPoly           # polynomial in (x, X), possibly with extra parameters
    period: int
    source: str

    def __post_init__(self):
        if self.F.is_zero():
            raise ValueError("recurrence polynomial is identically zero")

    def roots_at(self, xval: complex, tol: float = 1e-9, extra: dict = None):
        point = {"x": complex(xval)}
        if extra:
            point.update(extra)
        return roots_of_poly(self.F, "X", point, tol=tol)

    def to_json(self) -> dict:
        return {"period": self.period, "source": self.source,
                "F": str(self.F), "vars": list(self.F.used_vars())}


def follow_orbit(rec: RecurrenceRelation, x0: complex, steps: int,
                 branch: int = 0, tol: float = 1e-9, extra: dict = None):
    """Iterate the recurrence, starting on the given first-step branch."""
    first = rec.roots_at(x0, tol=tol, extra=extra)
    if branch >= len(first):
        raise BranchSelectionError(
            f"requested branch {branch} of {len(first)} available roots")
    orbit = [complex(x0), first[branch]]
    while len(orbit) < steps + 1:
        prev, cur = orbit[-2], orbit[-1]
        try:
            cands = rec.roots_at(cur, tol=tol, extra=extra)
        except RootFindingError as exc:
            raise BranchSelectionError(
                f"root solve failed at step {len(orbit)}: {exc}") from exc
        cands = sorted(cands, key=root_sort_key)
        nxt = max(cands, key=lambda z: (abs(z - prev), root_sort_key(z)))
        orbit.append(nxt)
    return orbit

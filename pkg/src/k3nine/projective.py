"""Diagonal cyclic actions on projective space.

An action of order ``n`` multiplies coordinate ``x_i`` by ``zeta^{w_i}``.
A form is preserved up to the scalar ``zeta^c`` exactly when each of its
monomials has weight ``sum e_i w_i = c (mod n)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Sequence

from .exact import QPoly, squarefree_decomposition

NECESSARILY_SINGULAR = "necessarily singular (necessary screen)"
SCREEN_PASSED = "screen passed (necessary screen)"


@dataclass(frozen=True)
class DiagAction:
    order: int
    weights: tuple[int, ...]
    character: int = 0

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be positive")
        if len(self.weights) < 2:
            raise ValueError("need at least two homogeneous coordinates")
        object.__setattr__(self, "weights", tuple(w % self.order for w in self.weights))
        object.__setattr__(self, "character", self.character % self.order)

    @property
    def dim(self) -> int:
        return len(self.weights) - 1

    def weight(self, exps: Sequence[int]) -> int:
        return sum(e * w for e, w in zip(exps, self.weights)) % self.order


Monomial = tuple[int, ...]


@dataclass(frozen=True)
class Stratum:
    weight: int
    coords: tuple[int, ...]
    ambient_dim: int

    @property
    def dim(self) -> int:
        return len(self.coords) - 1

    def describe(self) -> str:
        if self.dim == 0:
            pt = ["0"] * (self.ambient_dim + 1)
            pt[self.coords[0]] = "1"
            return f"point ({','.join(pt)})"
        others = [i for i in range(self.ambient_dim + 1) if i not in self.coords]
        kind = {1: "line", 2: "plane"}.get(self.dim, f"{self.dim}-space")
        if not others:
            return "whole space"
        return f"{kind} {{{'='.join(f'x{i}' for i in others)}=0}}"

    def to_json(self) -> dict:
        return {"weight": self.weight, "coords": list(self.coords), "dim": self.dim, "locus": self.describe()}


def fixed_strata(act: DiagAction) -> list[Stratum]:
    """Eigenspaces of the action, one per distinct weight, in order of first coordinate."""
    groups: dict[int, list[int]] = {}
    for i, w in enumerate(act.weights):
        groups.setdefault(w, []).append(i)
    return [Stratum(w, tuple(c), act.dim) for w, c in groups.items()]


def all_monomials(nvars: int, degree: int) -> list[Monomial]:
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        exps = [0] * nvars
        for i in combo:
            exps[i] += 1
        out.append(tuple(exps))
    return sorted(out, reverse=True)


def invariant_monomials(act: DiagAction, degree: int) -> list[Monomial]:
    """Degree-``d`` monomials of weight ``c``, lexicographically from ``x0^d`` down."""
    if degree < 1:
        raise ValueError("degree must be at least 1")
    return [e for e in all_monomials(len(act.weights), degree) if act.weight(e) == act.character]


def format_monomial(exps: Monomial) -> str:
    parts = [f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(exps) if e]
    return "*".join(parts) or "1"


def coordinate_point_singularity_screen(monomials: Sequence[Monomial], dim: int) -> list[dict]:
    """Necessary smoothness test at each coordinate point ``e_i``.

    Every member is singular at ``e_i`` unless some monomial has exponent at
    least ``d - 1`` in ``x_i``; otherwise all partial derivatives vanish there.
    """
    if not monomials:
        raise ValueError("empty monomial family")
    degs = {sum(m) for m in monomials}
    if len(degs) != 1:
        raise ValueError("monomials must share one degree")
    (d,) = degs
    if d < 2:
        raise ValueError("degree must be at least 2")
    out = []
    for i in range(dim + 1):
        ok = any(m[i] >= d - 1 for m in monomials)
        out.append({"point": i, "verdict": SCREEN_PASSED if ok else NECESSARILY_SINGULAR})
    return out


def line_intersection_count(f: QPoly, degree: int) -> dict:
    """Roots of a binary form of the given degree, dehomogenized as ``f(t) = F(1, t)``.

    Missing top degree means a root at infinity of the chart, of multiplicity
    ``degree - deg f``.
    """
    if f.is_zero():
        raise ValueError("zero form")
    if f.degree > degree:
        raise ValueError("dehomogenized form exceeds the stated degree")
    mults = []
    if f.degree > 0:
        for s, m in squarefree_decomposition(f):
            mults.extend([m] * int(s.degree))
    inf_mult = degree - int(f.degree)
    if inf_mult:
        mults.append(inf_mult)
    return {
        "degree": degree,
        "multiplicities": sorted(mults, reverse=True),
        "distinct": len(mults),
        "squarefree": all(m == 1 for m in mults),
        "root_at_infinity": inf_mult,
    }

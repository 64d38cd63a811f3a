"""Holomorphic and topological Lefschetz constraints for cyclic actions.

A fixed point of an order-``n`` automorphism acting on the 2-form by
``zeta**k`` is locally ``diag(zeta**i, zeta**j)`` with ``i + j = k mod n``.
The holomorphic fixed-point identity

    1 + zeta**(-k) = sum a_ij / ((1 - zeta**i)(1 - zeta**j)) + alpha (1 + zeta)/(1 - zeta)**2

lives in Q(zeta_n); taking power-basis coordinates turns it into ``phi(n)``
rational linear equations in the unknown counts.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Mapping, Sequence

from .cyclotomic import CycNum, euler_phi, inverse, zeta_pow

ALPHA = "alpha"
DEFAULT_MAX_COUNT = 24
DEFAULT_ALPHA_RANGE = (0, 4)


class GeometricallyImpossible(ValueError):
    """Rank bookkeeping has no nonnegative integral solution."""


@dataclass(frozen=True, order=True)
class LocalType:
    order: int
    i: int
    j: int

    @property
    def on_curve(self) -> bool:
        return self.j % self.order == 0 or self.i % self.order == 0

    @property
    def name(self) -> str:
        return f"a_{self.i}_{self.j}"

    def __str__(self) -> str:
        return f"A({self.i},{self.j})"


@dataclass(frozen=True)
class LinearSystem:
    """Rational equations ``rows @ x == rhs`` in the named unknowns."""

    unknowns: tuple[str, ...]
    rows: tuple[tuple[Fraction, ...], ...]
    rhs: tuple[Fraction, ...]
    order: int = 0
    k: int = 0
    types: tuple[LocalType, ...] = ()

    def residual(self, values: Sequence) -> tuple[Fraction, ...]:
        return tuple(
            sum((c * v for c, v in zip(row, values)), Fraction(0)) - b
            for row, b in zip(self.rows, self.rhs)
        )

    def satisfied_by(self, values: Sequence) -> bool:
        return not any(self.residual(values))


@dataclass(frozen=True)
class Relations:
    """Reduced affine description of the rational solution set.

    Each relation is ``(coeffs, const)`` meaning ``sum coeffs[u] x_u == const``,
    with coprime integer coefficients and a positive pivot.
    """

    unknowns: tuple[str, ...]
    relations: tuple[tuple[tuple[int, ...], int], ...]
    consistent: bool = True
    pivots: tuple[str, ...] = ()

    def as_dicts(self) -> list[tuple[dict[str, int], int]]:
        return [
            ({u: c for u, c in zip(self.unknowns, coeffs) if c}, const)
            for coeffs, const in self.relations
        ]

    def holds(self, values: Sequence) -> bool:
        if not self.consistent:
            return False
        return all(sum(c * v for c, v in zip(coeffs, values)) == const for coeffs, const in self.relations)

    def format(self) -> list[str]:
        if not self.consistent:
            return ["inconsistent"]
        out = []
        for coeffs, const in self.relations:
            parts = []
            for u, c in zip(self.unknowns, coeffs):
                if c:
                    parts.append((c, u))
            # pivot first
            piv = next(p for p in self.pivots if dict(zip(self.unknowns, coeffs))[p])
            parts.sort(key=lambda cu: cu[1] != piv)
            text = ""
            for idx, (c, u) in enumerate(parts):
                mag = "" if abs(c) == 1 else f"{abs(c)}*"
                if idx == 0:
                    text = ("-" if c < 0 else "") + mag + u
                else:
                    text += (" - " if c < 0 else " + ") + mag + u
            out.append(f"{text} = {const}")
        return out


@dataclass(frozen=True)
class EigenRanks:
    r: int
    l: int
    s: int
    m: int

    def __post_init__(self):
        if self.r + 2 * self.l + 6 * self.s != 22:
            raise ValueError("r + 2l + 6s must equal 22")


@dataclass
class FixProfile:
    """Isolated-point counts per local type plus curve data of a fixed locus."""

    a: dict[LocalType, int]
    alpha: int
    k_sigma: int = 0
    g_sigma: int | None = None
    n_sigma: int = field(init=False)

    def __post_init__(self):
        if any(v < 0 for v in self.a.values()):
            raise ValueError("negative point count")
        self.n_sigma = sum(self.a.values())


def admissible_types(n: int, k: int, curve_points_allowed: bool = True, cube_isolated_only: bool = False) -> list[LocalType]:
    """Local types ``(i, j)``, ``1 <= i <= j <= n``, with ``i + j = k mod n``.

    ``cube_isolated_only`` keeps only types whose cube still acts with
    isolated fixed point, i.e. drops pairs with ``3i`` or ``3j`` divisible by n.
    """
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    out = []
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            if (i + j - k) % n:
                continue
            t = LocalType(n, i, j)
            if not curve_points_allowed and t.on_curve:
                continue
            if cube_isolated_only and ((3 * i) % n == 0 or (3 * j) % n == 0):
                continue
            out.append(t)
    return out


@lru_cache(maxsize=None)
def holo_term_point(n: int, i: int, j: int) -> CycNum:
    """``1 / ((1 - zeta**i)(1 - zeta**j))`` in Q(zeta_n)."""
    if i % n == 0 or j % n == 0:
        raise ValueError("point term undefined when zeta**i or zeta**j is 1")
    return inverse((1 - zeta_pow(n, i)) * (1 - zeta_pow(n, j)))


@lru_cache(maxsize=None)
def holo_term_curve(n: int) -> CycNum:
    """``(1 + zeta)/(1 - zeta)**2``, the per-unit contribution of alpha."""
    if n < 2:
        raise ValueError("curve term needs n >= 2")
    z = zeta_pow(n, 1)
    return (1 + z) * inverse((1 - z) * (1 - z))


def lhs_value(n: int, k: int) -> CycNum:
    return 1 + zeta_pow(n, -k)


def build_holo_system(n: int, k: int, types: Sequence[LocalType], with_curve_term: bool = False) -> LinearSystem:
    """Coordinate equations of the holomorphic identity.

    Types with a trivial eigenvalue sit on fixed curves and carry no unknown.
    """
    if not types:
        raise ValueError("no local types given")
    if with_curve_term and k != 1:
        raise ValueError("the curve term is only available for k = 1")
    isolated = sorted(t for t in types if not t.on_curve)
    terms = [holo_term_point(n, t.i, t.j) for t in isolated]
    names = [t.name for t in isolated]
    if with_curve_term:
        terms.append(holo_term_curve(n))
        names.append(ALPHA)
    lhs = lhs_value(n, k)
    dim = euler_phi(n)
    rows = tuple(tuple(term.coeffs[c] for term in terms) for c in range(dim))
    return LinearSystem(tuple(names), rows, lhs.coeffs, n, k, tuple(isolated))


def _integer_rows(system: LinearSystem) -> list[tuple[list[int], int]]:
    out = []
    for row, b in zip(system.rows, system.rhs):
        den = lcm(*(c.denominator for c in row), b.denominator)
        out.append(([int(c * den) for c in row], int(b * den)))
    return out


def default_bounds(system: LinearSystem) -> dict[str, tuple[int, int]]:
    return {u: (DEFAULT_ALPHA_RANGE if u == ALPHA else (0, DEFAULT_MAX_COUNT)) for u in system.unknowns}


def solve_nonneg_integer(system: LinearSystem, bounds: Mapping[str, tuple[int, int]] | None = None) -> list[tuple[int, ...]]:
    """All integer points in the bounding box satisfying every equation.

    Depth-first over the unknowns, narrowest range first, pruning a branch as
    soon as some equation can no longer be met by the remaining ranges.  An
    unknown that is the last one still open in some equation is solved for
    rather than looped over.  Results are sorted lexicographically.
    """
    box = default_bounds(system)
    if bounds:
        box.update(bounds)
    for u in system.unknowns:
        if u != ALPHA and box[u][0] < 0:
            raise ValueError(f"point count {u} cannot be negative")
    nvar = len(system.unknowns)
    order = sorted(range(nvar), key=lambda v: box[system.unknowns[v]][1] - box[system.unknowns[v]][0])
    ranges = [box[system.unknowns[v]] for v in order]
    eqs = [([coeffs[v] for v in order], b) for coeffs, b in _integer_rows(system)]

    # suffix extremes of sum_{v >= idx} c_v x_v for each equation
    suffix = []
    for coeffs, _ in eqs:
        lo_s, hi_s = [0] * (nvar + 1), [0] * (nvar + 1)
        for v in range(nvar - 1, -1, -1):
            a, b = coeffs[v] * ranges[v][0], coeffs[v] * ranges[v][1]
            lo_s[v] = lo_s[v + 1] + min(a, b)
            hi_s[v] = hi_s[v + 1] + max(a, b)
        suffix.append((lo_s, hi_s))

    # an equation whose last nonzero coefficient sits at depth d pins x_d
    pinned: dict[int, int] = {}
    for e, (coeffs, _) in enumerate(eqs):
        last = max((v for v in range(nvar) if coeffs[v]), default=None)
        if last is not None:
            pinned.setdefault(last, e)

    out: list[tuple[int, ...]] = []
    values = [0] * nvar
    partial = [0] * len(eqs)

    def feasible(depth: int) -> bool:
        for e, (coeffs, b) in enumerate(eqs):
            lo_s, hi_s = suffix[e]
            need = b - partial[e]
            if need < lo_s[depth] or need > hi_s[depth]:
                return False
        return True

    def candidates(depth: int) -> range:
        lo, hi = ranges[depth]
        e = pinned.get(depth)
        if e is None:
            return range(lo, hi + 1)
        c = eqs[e][0][depth]
        need = eqs[e][1] - partial[e]
        if need % c:
            return range(0)
        x = need // c
        return range(x, x + 1) if lo <= x <= hi else range(0)

    def walk(depth: int) -> None:
        if not feasible(depth):
            return
        if depth == nvar:
            sol = [0] * nvar
            for pos, v in enumerate(order):
                sol[v] = values[pos]
            out.append(tuple(sol))
            return
        for x in candidates(depth):
            values[depth] = x
            for e, (coeffs, _) in enumerate(eqs):
                partial[e] += coeffs[depth] * x
            walk(depth + 1)
            for e, (coeffs, _) in enumerate(eqs):
                partial[e] -= coeffs[depth] * x

    walk(0)
    return sorted(out)


def default_pivot_order(system: LinearSystem) -> list[str]:
    """Point unknowns from the highest local type down, then alpha."""
    points = [u for u in system.unknowns if u != ALPHA]
    return points[::-1] + [u for u in system.unknowns if u == ALPHA]


def solution_relations(system: LinearSystem, pivot_order: Sequence[str] | None = None) -> Relations:
    """Reduced row echelon form of the system, columns taken in ``pivot_order``."""
    order = list(pivot_order or default_pivot_order(system))
    if sorted(order) != sorted(system.unknowns):
        raise ValueError("pivot order must be a permutation of the unknowns")
    col = [system.unknowns.index(u) for u in order]
    m = [[row[c] for c in col] + [b] for row, b in zip(system.rows, system.rhs)]
    nrow, ncol = len(m), len(col)
    pivots = []
    r = 0
    for c in range(ncol):
        p = next((i for i in range(r, nrow) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        m[r] = [x / piv for x in m[r]]
        for i in range(nrow):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrow:
            break
    if any(all(x == 0 for x in row[:-1]) and row[-1] != 0 for row in m):
        return Relations(system.unknowns, (), consistent=False)
    rels = []
    for i in range(r):
        coeffs = [Fraction(0)] * len(system.unknowns)
        for c in range(ncol):
            coeffs[col[c]] = m[i][c]
        const = m[i][-1]
        den = lcm(*(x.denominator for x in coeffs), const.denominator)
        ints = [int(x * den) for x in coeffs]
        const_i = int(const * den)
        g = gcd(*ints, const_i)
        rels.append((tuple(x // g for x in ints), const_i // g))
    return Relations(system.unknowns, tuple(rels), True, tuple(order[c] for c in pivots))


def enumerate_relations(rel: Relations, bounds: Mapping[str, tuple[int, int]]) -> list[tuple[int, ...]]:
    """Integer points of the box on the affine set, parametrised by the free unknowns."""
    if not rel.consistent:
        return []
    free = [u for u in rel.unknowns if u not in rel.pivots]
    idx = {u: i for i, u in enumerate(rel.unknowns)}
    out = []
    for combo in itertools.product(*(range(bounds[u][0], bounds[u][1] + 1) for u in free)):
        vals = [0] * len(rel.unknowns)
        for u, x in zip(free, combo):
            vals[idx[u]] = x
        ok = True
        for pivot, (coeffs, const) in zip(rel.pivots, rel.relations):
            pc = coeffs[idx[pivot]]
            rest = const - sum(c * vals[i] for i, c in enumerate(coeffs) if rel.unknowns[i] != pivot)
            if rest % pc:
                ok = False
                break
            x = rest // pc
            lo, hi = bounds[pivot]
            if not lo <= x <= hi:
                ok = False
                break
            vals[idx[pivot]] = x
        if ok:
            out.append(tuple(vals))
    return sorted(out)


def check_identity(n: int, k: int, counts: Mapping[LocalType, int], alpha: int = 0) -> bool:
    """Evaluate the holomorphic identity directly in Q(zeta_n)."""
    rhs = CycNum(n)
    for t, a in counts.items():
        if a and not t.on_curve:
            rhs = rhs + holo_term_point(n, t.i, t.j) * a
    if alpha:
        if k != 1:
            raise ValueError("the curve term is only available for k = 1")
        rhs = rhs + holo_term_curve(n) * alpha
    return rhs == lhs_value(n, k)


def eigen_ranks_from_counts(n_sigma: int, alpha: int, m: int) -> EigenRanks:
    """Solve ``r - l = n_sigma + 2 alpha - 2`` and ``r + 2l = 22 - 2m``."""
    if m not in (3, 6, 9):
        raise ValueError("m must be 3, 6 or 9")
    diff = n_sigma + 2 * alpha - 2
    total = 22 - 2 * m
    three_l = total - diff
    if three_l % 3:
        raise GeometricallyImpossible(f"l = {three_l}/3 is not integral")
    l = three_l // 3
    r = diff + l
    if l < 0 or r < 1:
        raise GeometricallyImpossible(f"(r, l) = ({r}, {l}) is not admissible")
    return EigenRanks(r, l, m // 3, m)


def chi_fix_order3(m: int) -> int:
    """Euler characteristic of the fixed locus of the order-3 power."""
    if m not in (3, 6, 9):
        raise ValueError("m must be 3, 6 or 9")
    return 24 - 3 * m


def relations_to_json(rel: Relations, solutions: Sequence[Sequence[int]] = ()) -> dict:
    return {
        "unknowns": list(rel.unknowns),
        "consistent": rel.consistent,
        "relations": [[list(c), b] for c, b in rel.relations],
        "solutions": [list(s) for s in solutions],
    }

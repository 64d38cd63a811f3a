"""Enumeration of fixed loci of order-9 automorphisms from order-3 data.

For each order-3 case (points ``n``, fixed curve genera, ``m``) every way
sigma can act on the fixed curves of tau is tried: a curve is fixed
pointwise, preserved with ``f`` fixed points, or moved in a 3-cycle.  A fate
survives when the isolated-point counts solved from the holomorphic
identity are compatible with it (constraints C1-C5, C7).  Geometric input
that cannot be derived combinatorially enters as named, switchable axioms
(C6).

Constraints, checked in this order for every fate:

* C1 fixed curves have a genus allowed by AX-GENUS
* C2 3-cycles only among three curves of equal genus zero
* C3 the order-9 identity has a nonnegative solution for this alpha
* C5 ``a_3_7 + a_4_6`` equals the fixed points on preserved curves
* C4 ``a_2_8 + a_5_5 <= n`` and is congruent to ``n`` mod 3
* C7 the eigenspace ranks ``(r, l)`` are nonnegative integers, ``r >= 1``
* C6 axioms of the pack
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .lefschetz import (
    ALPHA,
    EigenRanks,
    GeometricallyImpossible,
    LocalType,
    admissible_types,
    build_holo_system,
    check_identity,
    eigen_ranks_from_counts,
    solve_nonneg_integer,
)

ISOLATED_TYPES = tuple(LocalType(9, i, 10 - i) for i in range(2, 6))
FIXED, INVARIANT, CYCLE = "fixed", "invariant", "cycle"


class UnknownCase(KeyError):
    pass


@dataclass(frozen=True)
class TauCase:
    id: str
    n: int
    curves: tuple[int, ...]
    m: int
    lattice: str = ""

    def __post_init__(self):
        if tuple(sorted(self.curves, reverse=True)) != self.curves:
            raise ValueError("curve genera must be listed in descending order")
        if self.n + self.m != 10:
            raise ValueError(f"case {self.id}: n + m must be 10")

    @property
    def k(self) -> int:
        return len(self.curves)

    @property
    def g(self) -> int:
        return max(self.curves)

    @property
    def euler_characteristic(self) -> int:
        return self.n + sum(2 - 2 * g for g in self.curves)


@dataclass(frozen=True, order=True)
class Fate:
    kind: str
    f: int | None = None

    def __str__(self) -> str:
        return f"{self.kind}({self.f})" if self.kind == INVARIANT else self.kind


@dataclass(frozen=True)
class Axiom:
    name: str
    statement: str


AXIOMS = {
    ax.name: ax
    for ax in (
        Axiom("AX-GENUS", "a curve fixed pointwise by sigma has genus 0 or 1"),
        Axiom("AX-F-RATIONAL", "in case F the fixed locus of sigma contains a rational curve"),
        Axiom(
            "AX-D-CONFIG",
            "in case D the special fiber of the invariant elliptic fibration is I0*, "
            "leaving four fates for (elliptic curve, rational curve): "
            "(3 points, fixed), (fixed, 2 points), (3 points, 2 points), (0 points, 2 points)",
        ),
        Axiom(
            "AX-H-CONFIG",
            "in case H the special fiber is I9*: two rational curves fixed, two rational "
            "curves with 2 fixed points each, 3 fixed points on the elliptic curve",
        ),
        Axiom(
            "AX-HYPER",
            "in cases B, E, F the curve of genus >= 2 is hyperelliptic, so an order-3 "
            "automorphism of it has 2, 3 or 4 fixed points",
        ),
    )
}

HYPERELLIPTIC_CASES = ("B", "E", "F")

D_CONFIGS = frozenset(
    [
        (Fate(INVARIANT, 3), Fate(FIXED)),
        (Fate(FIXED), Fate(INVARIANT, 2)),
        (Fate(INVARIANT, 3), Fate(INVARIANT, 2)),
        (Fate(INVARIANT, 0), Fate(INVARIANT, 2)),
    ]
)
H_CONFIG = (Fate(INVARIANT, 3), Fate(FIXED), Fate(FIXED), Fate(INVARIANT, 2), Fate(INVARIANT, 2))


@dataclass(frozen=True)
class AxiomPack:
    names: frozenset[str] = frozenset()

    def __post_init__(self):
        unknown = set(self.names) - set(AXIOMS)
        if unknown:
            raise ValueError(f"unknown axioms: {', '.join(sorted(unknown))}")

    @classmethod
    def full(cls) -> "AxiomPack":
        return cls(frozenset(AXIOMS))

    @classmethod
    def combinatorial(cls) -> "AxiomPack":
        return cls(frozenset())

    @classmethod
    def parse(cls, selector: str) -> "AxiomPack":
        """``full``, ``combinatorial``/``none``, or a comma-separated list of names."""
        sel = selector.strip()
        if sel == "full":
            return cls.full()
        if sel in ("combinatorial", "none", ""):
            return cls.combinatorial()
        return cls(frozenset(s.strip() for s in sel.split(",") if s.strip()))

    def without(self, *names: str) -> "AxiomPack":
        return AxiomPack(self.names - set(names))

    def __contains__(self, name: str) -> bool:
        return name in self.names

    def __le__(self, other: "AxiomPack") -> bool:
        return self.names <= other.names


@dataclass(frozen=True)
class SigmaRow:
    id: str
    case: str
    fate: tuple[Fate, ...]
    a: tuple[int, int, int, int]
    alpha: int
    k_sigma: int
    g_sigma: int | None
    ranks: EigenRanks

    @property
    def n_sigma(self) -> int:
        return sum(self.a)

    @property
    def r(self) -> int:
        return self.ranks.r

    @property
    def l(self) -> int:
        return self.ranks.l

    def key(self) -> tuple:
        """Content key used to compare against the reference table."""
        return (self.case, self.n_sigma, self.k_sigma, self.g_sigma, self.r, self.l, self.a)

    def counts(self) -> dict[LocalType, int]:
        return dict(zip(ISOLATED_TYPES, self.a))

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "case": self.case,
            "n_sigma": self.n_sigma,
            "k_sigma": self.k_sigma,
            "g_sigma": self.g_sigma,
            "r": self.r,
            "l": self.l,
            "a": list(self.a),
            "alpha": self.alpha,
            "fate": [str(f) for f in self.fate],
        }


@dataclass
class Candidate:
    """One fate of the tau-fixed curves and what became of it."""

    case: str
    fate: tuple[Fate, ...]
    alpha: int
    a: tuple[int, ...] | None = None
    rejected_by: str | None = None
    reason: str = ""
    row_id: str | None = None

    def describe(self, curves: Sequence[int]) -> str:
        parts = [f"g{g}:{f}" for g, f in zip(curves, self.fate)]
        return ", ".join(parts)


# ---------------------------------------------------------------------------
# building blocks


def rh_options(g: int, hyperelliptic: bool = False) -> set[int]:
    """Possible fixed-point counts of an order-3 automorphism of a genus-g curve.

    Riemann-Hurwitz gives ``f = g + 2 - 3 g'`` for quotient genus ``g'``.
    """
    if g < 0:
        raise ValueError("negative genus")
    opts = {g + 2 - 3 * q for q in range((g + 2) // 3 + 1)}
    if hyperelliptic and g >= 2:
        opts &= {2, 3, 4}
    return opts


def _group_fates(genus: int, size: int) -> list[tuple[Fate, ...]]:
    """Canonical fates for ``size`` curves of one genus: cycles, fixed, then invariant by f desc."""
    out = []
    max_cycles = size // 3 if genus == 0 else 0
    fs = sorted(rh_options(genus), reverse=True)
    for cycles in range(max_cycles + 1):
        rest = size - 3 * cycles
        for fixed in range(rest + 1):
            inv = rest - fixed
            for combo in itertools.combinations_with_replacement(fs, inv):
                out.append(
                    (Fate(CYCLE),) * (3 * cycles)
                    + (Fate(FIXED),) * fixed
                    + tuple(Fate(INVARIANT, f) for f in sorted(combo, reverse=True))
                )
    return out


def enumerate_fates(curves: Sequence[int]) -> list[tuple[Fate, ...]]:
    """All fates of the curve list, aligned with ``curves`` (descending genera)."""
    groups = [(g, len(list(grp))) for g, grp in itertools.groupby(curves)]
    per_group = [_group_fates(g, size) for g, size in groups]
    return [sum(choice, ()) for choice in itertools.product(*per_group)]


def fate_well_formed(curves: Sequence[int], fate: Sequence[Fate]) -> bool:
    if len(curves) != len(fate):
        return False
    cyc = Counter(g for g, f in zip(curves, fate) if f.kind == CYCLE)
    if any(g != 0 or c % 3 for g, c in cyc.items()):
        return False
    for g, f in zip(curves, fate):
        if f.kind == INVARIANT and f.f not in rh_options(g):
            return False
        if f.kind != INVARIANT and f.f is not None:
            return False
    return True


@lru_cache(maxsize=None)
def _order9_system():
    return build_holo_system(9, 1, admissible_types(9, 1), with_curve_term=True)


@lru_cache(maxsize=None)
def star_solutions(alpha: int) -> tuple[tuple[int, int, int, int], ...]:
    """Nonnegative ``(a_2_8, a_3_7, a_4_6, a_5_5)`` solving the order-9 identity at this alpha."""
    system = _order9_system()
    sols = solve_nonneg_integer(system, {ALPHA: (alpha, alpha)})
    return tuple(s[:4] for s in sols)


def _axiom_violation(tc: TauCase, fate: tuple[Fate, ...], pack: AxiomPack) -> str | None:
    if "AX-F-RATIONAL" in pack and tc.id == "F":
        if not any(g == 0 and f.kind == FIXED for g, f in zip(tc.curves, fate)):
            return "AX-F-RATIONAL"
    if "AX-D-CONFIG" in pack and tc.id == "D" and fate not in D_CONFIGS:
        return "AX-D-CONFIG"
    if "AX-H-CONFIG" in pack and tc.id == "H" and fate != H_CONFIG:
        return "AX-H-CONFIG"
    if "AX-HYPER" in pack and tc.id in HYPERELLIPTIC_CASES:
        for g, f in zip(tc.curves, fate):
            if f.kind == INVARIANT and g >= 2 and f.f not in rh_options(g, hyperelliptic=True):
                return "AX-HYPER"
    return None


def _evaluate(tc: TauCase, fate: tuple[Fate, ...], pack: AxiomPack) -> tuple[Candidate, EigenRanks | None]:
    fixed_genera = [g for g, f in zip(tc.curves, fate) if f.kind == FIXED]
    alpha = sum(1 - g for g in fixed_genera)
    cand = Candidate(tc.id, fate, alpha)

    if "AX-GENUS" in pack:
        bad = [g for g in fixed_genera if g > 1]
        if bad:
            cand.rejected_by, cand.reason = "C1", f"fixed curve of genus {bad[0]} excluded by AX-GENUS"
            return cand, None
    if not fate_well_formed(tc.curves, fate):
        cand.rejected_by, cand.reason = "C2", "malformed curve fate"
        return cand, None

    sols = star_solutions(alpha) if alpha >= 0 else ()
    if not sols:
        cand.rejected_by = "C3"
        cand.reason = f"no nonnegative solution of the order-9 identity with alpha={alpha}"
        return cand, None

    on_curves = sum(f.f for f in fate if f.kind == INVARIANT)
    c5 = [s for s in sols if s[1] + s[2] == on_curves]
    if not c5:
        a37 = 2 * alpha + 1
        a46 = on_curves - a37
        if a46 < 0:
            cand.reason = f"a_3_7={a37} but the preserved curves carry only {on_curves} fixed points"
        else:
            cand.reason = (
                f"a_3_7+a_4_6={on_curves} forces a_4_6={a46}, incompatible with "
                f"a_4_6+3a_2_8={8 * alpha + 4}"
            )
        cand.rejected_by = "C5"
        return cand, None

    c4 = [s for s in c5 if s[0] + s[3] <= tc.n and (s[0] + s[3] - tc.n) % 3 == 0]
    if not c4:
        s = c5[0]
        cand.a = s
        cand.rejected_by = "C4"
        cand.reason = f"a_2_8+a_5_5={s[0] + s[3]} is not <= n={tc.n} and congruent to it mod 3"
        return cand, None
    # a is pinned by alpha and C5, so at most one solution survives
    assert len(c4) == 1
    a = c4[0]
    cand.a = a

    try:
        ranks = eigen_ranks_from_counts(sum(a), alpha, tc.m)
    except GeometricallyImpossible as exc:
        cand.rejected_by, cand.reason = "C7", str(exc)
        return cand, None

    ax = _axiom_violation(tc, fate, pack)
    if ax is not None:
        cand.rejected_by = "C6"
        cand.reason = f"{ax}: {AXIOMS[ax].statement}"
        return cand, None
    return cand, ranks


def _row_sort_key(row: SigmaRow) -> tuple:
    g = -1 if row.g_sigma is None else row.g_sigma
    return (-row.k_sigma, -row.n_sigma, -g, tuple(-x for x in row.a), row.fate)


def run_case(tc: TauCase, pack: AxiomPack | None = None) -> tuple[list[SigmaRow], list[Candidate]]:
    """Rows and the full candidate trace for one case."""
    pack = AxiomPack.full() if pack is None else pack
    rows: list[SigmaRow] = []
    trace: list[Candidate] = []
    by_fate: dict[tuple[Fate, ...], Candidate] = {}
    for fate in enumerate_fates(tc.curves):
        cand, ranks = _evaluate(tc, fate, pack)
        trace.append(cand)
        if ranks is None:
            continue
        fixed = [g for g, f in zip(tc.curves, fate) if f.kind == FIXED]
        rows.append(
            SigmaRow(
                id="",
                case=tc.id,
                fate=fate,
                a=cand.a,
                alpha=cand.alpha,
                k_sigma=len(fixed),
                g_sigma=max(fixed) if fixed else None,
                ranks=ranks,
            )
        )
        by_fate[fate] = cand
    rows.sort(key=_row_sort_key)
    named = []
    for idx, row in enumerate(rows):
        rid = tc.id if len(rows) == 1 else f"{tc.id}{idx + 1}"
        named.append(SigmaRow(rid, *(getattr(row, f) for f in ("case", "fate", "a", "alpha", "k_sigma", "g_sigma", "ranks"))))
        by_fate[row.fate].row_id = rid
    return named, trace


def enumerate_case(tc: TauCase, pack: AxiomPack | None = None) -> list[SigmaRow]:
    return run_case(tc, pack)[0]


def classify_all(cases: Iterable[TauCase] | None = None, pack: AxiomPack | None = None) -> list[SigmaRow]:
    """Rows for every case, in case order."""
    if cases is None:
        from .dataset import load_tau_cases

        cases = load_tau_cases()
    out = []
    for tc in sorted(cases, key=lambda c: c.id):
        out.extend(enumerate_case(tc, pack))
    return out


def explain_row(row_id: str, cases: Iterable[TauCase] | None = None, pack: AxiomPack | None = None) -> list[str]:
    """Audit trail for the case containing ``row_id``."""
    if cases is None:
        from .dataset import load_tau_cases

        cases = load_tau_cases()
    by_id = {tc.id: tc for tc in cases}
    tc = by_id.get(row_id[:1])
    if tc is None:
        raise UnknownCase(row_id)
    rows, trace = run_case(tc, pack)
    if row_id not in {r.id for r in rows}:
        raise UnknownCase(row_id)
    lines = [f"case {tc.id}: n={tc.n}, curves of genus {list(tc.curves)}, m={tc.m}"]
    for cand in trace:
        head = f"  [{cand.describe(tc.curves)}] alpha={cand.alpha}"
        if cand.a is not None:
            head += f" a={cand.a}"
        if cand.rejected_by is None:
            lines.append(f"{head} -> accepted as {cand.row_id}")
        else:
            lines.append(f"{head} -> rejected by {cand.rejected_by}: {cand.reason}")
    return lines


def soundness_check(rows: Iterable[SigmaRow]) -> list[str]:
    """Row ids whose counts fail the identity evaluated directly in Q(zeta_9)."""
    return [row.id for row in rows if not check_identity(9, 1, row.counts(), row.alpha)]


def diff_against(rows: Sequence[SigmaRow], expected: Sequence[dict]) -> dict:
    """Content comparison with reference records; ordering is ignored."""

    def key(rec: dict) -> tuple:
        return (rec["case"], rec["n_sigma"], rec["k_sigma"], rec["g_sigma"], rec["r"], rec["l"], tuple(rec["a"]))

    want = Counter(key(rec) for rec in expected)
    got = Counter(r.key() for r in rows)
    missing = [rec["id"] for rec in expected if (want - got)[key(rec)] > 0]
    extra = [r.id for r in rows if (got - want)[r.key()] > 0]
    id_mismatch = []
    if not missing and not extra:
        by_key = {key(rec): rec["id"] for rec in expected}
        id_mismatch = [(r.id, by_key[r.key()]) for r in rows if by_key[r.key()] != r.id]
    match = not missing and not extra and not id_mismatch
    return {"match": match, "missing": missing, "extra": extra, "id_mismatch": id_mismatch}

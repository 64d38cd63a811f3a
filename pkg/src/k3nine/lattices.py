"""Integral lattices given by Gram matrices.

Expressions such as ``U(3)+A2^4`` or ``U+E6+E8`` are parsed into a small
tree and realised as block-diagonal Gram matrices.  Root lattices use the
negative definite convention.  Invariants are computed exactly: rank and
signature by rational congruence diagonalisation, determinant by
fraction-free elimination, discriminant group by Smith normal form.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Gram = list[list[int]]


class LatticeParseError(ValueError):
    pass


class UnsupportedAtom(ValueError):
    pass


class SingularMatrix(ValueError):
    pass


# ---------------------------------------------------------------------------
# expressions


@dataclass(frozen=True)
class Atom:
    kind: str  # "U", "A", "E"
    n: int = 0  # rank index for A_n / E_n
    scale: int = 1

    def __str__(self) -> str:
        base = "U" if self.kind == "U" else f"{self.kind}{self.n}"
        return base if self.scale == 1 else f"{base}({self.scale})"


@dataclass(frozen=True)
class LatticeExpr:
    """Direct sum of atoms, each with a repetition count."""

    terms: tuple[tuple[Atom, int], ...]

    def __str__(self) -> str:
        return "+".join(str(a) if k == 1 else f"{a}^{k}" for a, k in self.terms)

    def atoms(self) -> list[Atom]:
        return [a for a, k in self.terms for _ in range(k)]


_ATOM = re.compile(r"\s*(U|A_?(\d+)|E_?(\d+))\s*(?:\(\s*(-?\d+)\s*\))?\s*(?:\^\s*(\d+))?\s*$")


def parse_lattice(text: str) -> LatticeExpr:
    """Parse ``U``, ``U(3)``, ``A2``, ``E6``, ``E8`` joined by ``+`` with ``^k`` repeats."""
    if not text.strip():
        raise LatticeParseError("empty lattice expression")
    terms = []
    for chunk in text.replace("⊕", "+").split("+"):
        m = _ATOM.match(chunk)
        if m is None:
            raise LatticeParseError(f"cannot parse {chunk.strip()!r}")
        head, a_n, e_n, scale, power = m.groups()
        scale = int(scale) if scale is not None else 1
        power = int(power) if power is not None else 1
        if scale == 0 or power < 1:
            raise LatticeParseError(f"bad scale or exponent in {chunk.strip()!r}")
        if head == "U":
            atom = Atom("U", 0, scale)
        elif a_n is not None:
            atom = Atom("A", int(a_n), scale)
        else:
            atom = Atom("E", int(e_n), scale)
        _check_atom(atom)
        terms.append((atom, power))
    return LatticeExpr(tuple(terms))


def _check_atom(atom: Atom) -> None:
    if atom.kind == "A" and atom.n < 1:
        raise UnsupportedAtom(f"A_{atom.n}")
    if atom.kind == "E" and atom.n not in (6, 8):
        raise UnsupportedAtom(f"E_{atom.n} (only E6 and E8 are supported)")


# Dynkin edges, Bourbaki labelling shifted to 0-based
_E_EDGES = {
    6: [(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)],
    8: [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)],
}


def atom_gram(atom: Atom) -> Gram:
    _check_atom(atom)
    if atom.kind == "U":
        g = [[0, 1], [1, 0]]
    else:
        n = atom.n
        edges = [(i, i + 1) for i in range(n - 1)] if atom.kind == "A" else _E_EDGES[n]
        g = [[-2 if i == j else 0 for j in range(n)] for i in range(n)]
        for i, j in edges:
            g[i][j] = g[j][i] = 1
    return [[atom.scale * x for x in row] for row in g]


def block_sum(blocks: Sequence[Gram]) -> Gram:
    size = sum(len(b) for b in blocks)
    out = [[0] * size for _ in range(size)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[off + i][off + j] = x
        off += len(b)
    return out


def gram(expr: LatticeExpr | str) -> Gram:
    if isinstance(expr, str):
        expr = parse_lattice(expr)
    return block_sum([atom_gram(a) for a in expr.atoms()])


# ---------------------------------------------------------------------------
# invariants


def _check_square(g: Gram) -> int:
    n = len(g)
    if n == 0 or any(len(row) != n for row in g):
        raise ValueError("Gram matrix must be square and nonempty")
    return n


def _check_symmetric(g: Gram) -> int:
    n = _check_square(g)
    if any(g[i][j] != g[j][i] for i in range(n) for j in range(i)):
        raise ValueError("Gram matrix must be symmetric")
    return n


def determinant(g: Gram) -> int:
    """Bareiss fraction-free elimination."""
    n = _check_square(g)
    m = [list(row) for row in g]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            p = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if p is None:
                return 0
            m[k], m[p] = m[p], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def diagonalize(g: Gram) -> list[Fraction]:
    """Diagonal of a rational congruence ``P^T G P``.

    When every remaining diagonal entry vanishes but some ``g_ij`` does not,
    a hyperbolic step replaces ``e_i`` by ``e_i + e_j`` (norm ``2 g_ij``).
    """
    n = _check_symmetric(g)
    m = [[Fraction(x) for x in row] for row in g]
    diag = []
    size = n
    while size:
        k = next((i for i in range(size) if m[i][i] != 0), None)
        if k is None:
            pair = next(((i, j) for i in range(size) for j in range(i + 1, size) if m[i][j] != 0), None)
            if pair is None:
                diag.extend([Fraction(0)] * size)
                break
            i, j = pair
            # all diagonal entries vanish here, so e_i + e_j has norm 2 m_ij != 0
            for r in range(size):
                m[i][r] += m[j][r]
            for r in range(size):
                m[r][i] += m[r][j]
            k = i
        # move k to the front
        m[0], m[k] = m[k], m[0]
        for row in m:
            row[0], row[k] = row[k], row[0]
        p = m[0][0]
        diag.append(p)
        rest = [[m[i][j] - m[i][0] * m[0][j] / p for j in range(1, size)] for i in range(1, size)]
        m = rest
        size -= 1
    return diag


def rank(g: Gram) -> int:
    return sum(1 for d in diagonalize(g) if d != 0)


def signature(g: Gram) -> tuple[int, int]:
    d = diagonalize(g)
    return sum(1 for x in d if x > 0), sum(1 for x in d if x < 0)


def is_even(g: Gram) -> bool:
    return all(g[i][i] % 2 == 0 for i in range(len(g)))


def smith_normal_form(g: Gram) -> list[int]:
    """Invariant factors ``d_1 | d_2 | ... | d_n`` of a nonsingular integer matrix."""
    n = _check_square(g)
    m = [list(row) for row in g]
    factors = []
    for t in range(n):
        while True:
            entries = [(abs(m[i][j]), i, j) for i in range(t, n) for j in range(t, n) if m[i][j] != 0]
            if not entries:
                raise SingularMatrix("Smith normal form needs a nonsingular matrix")
            _, pi, pj = min(entries)
            m[t], m[pi] = m[pi], m[t]
            for row in m:
                row[t], row[pj] = row[pj], row[t]
            p = m[t][t]
            clean = True
            for i in range(t + 1, n):
                q = m[i][t] // p
                if q:
                    m[i] = [a - q * b for a, b in zip(m[i], m[t])]
                clean &= m[i][t] == 0
            for j in range(t + 1, n):
                q = m[t][j] // p
                if q:
                    for row in m:
                        row[j] -= q * row[t]
                clean &= m[t][j] == 0
            if not clean:
                continue
            # divisibility: fold any entry not divisible by the pivot into row t
            bad = next(((i, j) for i in range(t + 1, n) for j in range(t + 1, n) if m[i][j] % p), None)
            if bad is None:
                break
            m[t] = [a + b for a, b in zip(m[t], m[bad[0]])]
        factors.append(abs(m[t][t]))
    return factors


def discriminant_group(g: Gram) -> list[int]:
    """Orders of the cyclic summands ``Z/d`` with ``d > 1``."""
    return [d for d in smith_normal_form(g) if d > 1]


def invariants(expr: LatticeExpr | str) -> dict:
    if isinstance(expr, str):
        expr = parse_lattice(expr)
    g = gram(expr)
    det = determinant(g)
    p, q = signature(g)
    report = {
        "lattice": str(expr),
        "rank": rank(g),
        "signature": [p, q],
        "determinant": det,
        "even": is_even(g),
    }
    if det:
        snf = smith_normal_form(g)
        report["invariant_factors"] = snf
        report["discriminant_group"] = [d for d in snf if d > 1]
    else:
        report["invariant_factors"] = None
        report["discriminant_group"] = None
    return report


def verify_lattice_rows(rows: Sequence[dict]) -> list[dict]:
    """Check each ``{"case", "m", "lattice"}`` record against the expected invariants."""
    out = []
    for rec in rows:
        inv = invariants(rec["lattice"])
        r = inv["rank"]
        problems = []
        if r != 22 - 2 * rec["m"]:
            problems.append(f"rank {r} != 22 - 2*{rec['m']}")
        if inv["signature"] != [1, r - 1]:
            problems.append(f"signature {tuple(inv['signature'])} is not (1, {r - 1})")
        if not inv["even"]:
            problems.append("lattice is odd")
        if "determinant" in rec and inv["determinant"] != rec["determinant"]:
            problems.append(f"determinant {inv['determinant']} != {rec['determinant']}")
        out.append({"case": rec["case"], **inv, "ok": not problems, "problems": problems})
    return out

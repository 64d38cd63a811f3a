"""Singular fibers of elliptic surfaces ``y^2 = x^3 + a(t) x + b(t)``.

Places of the base are handled in Galois classes: each class is a monic
squarefree rational polynomial from a gcd-free basis of the squarefree
layers of ``a``, ``b`` and the discriminant, so all its roots share the
same valuations.  The place at infinity uses the K3 weights (8, 12, 24).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

from .exact import QPoly, coprime_refinement, squarefree_decomposition

log = logging.getLogger(__name__)

A_WEIGHT, B_WEIGHT, DELTA_WEIGHT = 8, 12, 24
INF = math.inf


class NotElliptic(ValueError):
    pass


class UnclassifiedFiber(ValueError):
    pass


class IncompatibleAction(ValueError):
    pass


@dataclass(frozen=True)
class WeierstrassModel:
    a: QPoly
    b: QPoly

    def __post_init__(self):
        if self.a.var != self.b.var and not (self.a.is_constant() or self.b.is_constant()):
            raise ValueError("a and b must use the same variable")
        if self.a.degree > A_WEIGHT or self.b.degree > B_WEIGHT:
            raise ValueError(f"degrees must satisfy deg a <= {A_WEIGHT}, deg b <= {B_WEIGHT}")
        if discriminant_raw(self.a, self.b).is_zero():
            raise NotElliptic("discriminant vanishes identically")

    @property
    def var(self) -> str:
        return self.b.var if not self.b.is_constant() else self.a.var


@dataclass
class PlaceClass:
    poly: QPoly | None  # None for the place at infinity
    v_a: float
    v_b: float
    v_delta: int
    kodaira: str
    euler: int
    count: int
    reduced: bool = False

    @property
    def label(self) -> str:
        return "inf" if self.poly is None else str(self.poly)

    def to_json(self) -> dict:
        def val(v):
            return "inf" if v == INF else int(v)

        return {
            "place": self.label,
            "count": self.count,
            "v_a": val(self.v_a),
            "v_b": val(self.v_b),
            "v_delta": self.v_delta,
            "kodaira": self.kodaira,
            "euler": self.euler,
            "non_minimal": self.reduced,
        }


@dataclass
class FibrationReport:
    places: list[PlaceClass]
    euler_total: int
    warnings: list[str] = field(default_factory=list)

    @property
    def k3(self) -> bool:
        return self.euler_total == 24 and not any(p.reduced for p in self.places)

    def census(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for p in self.places:
            out[p.kodaira] = out.get(p.kodaira, 0) + p.count
        return dict(sorted(out.items()))

    def fiber_at(self, label: str) -> str | None:
        return next((p.kodaira for p in self.places if p.label == label), None)

    def to_json(self) -> dict:
        return {
            "places": [p.to_json() for p in self.places],
            "census": self.census(),
            "euler_total": self.euler_total,
            "k3": self.k3,
            "warnings": list(self.warnings),
        }


def discriminant_raw(a: QPoly, b: QPoly) -> QPoly:
    return (a**3 * 4 + b**2 * 27) * -16


def discriminant(m: WeierstrassModel) -> QPoly:
    """``-16 (4 a^3 + 27 b^2)``."""
    return discriminant_raw(m.a, m.b)


def kodaira_type(v_a: float, v_b: float, v_delta: int) -> tuple[str, int]:
    """Fiber type and Euler number from minimal valuations (characteristic 0)."""
    if v_delta == 0:
        return "I0", 0
    if v_a == 0 and v_b == 0:
        return f"I{v_delta}", v_delta
    if v_a >= 1 and v_b == 1 and v_delta == 2:
        return "II", 2
    if v_a == 1 and v_b >= 2 and v_delta == 3:
        return "III", 3
    if v_a >= 2 and v_b == 2 and v_delta == 4:
        return "IV", 4
    if v_a >= 2 and v_b >= 3 and v_delta == 6:
        return "I0*", 6
    if v_a == 2 and v_b == 3 and v_delta > 6:
        return f"I{v_delta - 6}*", v_delta
    if v_a >= 3 and v_b == 4 and v_delta == 8:
        return "IV*", 8
    if v_a == 3 and v_b >= 5 and v_delta == 9:
        return "III*", 9
    if v_a >= 4 and v_b == 5 and v_delta == 10:
        return "II*", 10
    raise UnclassifiedFiber(f"valuations (v_a, v_b, v_delta) = ({v_a}, {v_b}, {v_delta})")


def _minimal(v_a, v_b, v_d):
    reduced = False
    while v_a >= 4 and v_b >= 6 and v_d >= 12:
        v_a, v_b, v_d = v_a - 4, v_b - 6, v_d - 12
        reduced = True
    return v_a, v_b, v_d, reduced


def analyze(m: WeierstrassModel) -> FibrationReport:
    """Singular fibers by place class, with the Euler-number total."""
    var = m.var
    a, b = m.a.with_var(var), m.b.with_var(var)
    delta = discriminant(m).with_var(var)
    layers = [p for p in (a, b, delta) if not p.is_constant()]
    basis = coprime_refinement(layers)
    places: list[PlaceClass] = []
    warnings: list[str] = []

    def record(poly, v_a, v_b, v_d, count):
        v_a, v_b, v_d, reduced = _minimal(v_a, v_b, v_d)
        if reduced:
            where = "inf" if poly is None else str(poly)
            warnings.append(f"non-minimal model at {where}; valuations reduced by (4, 6, 12)")
            log.warning(warnings[-1])
        if v_d == 0:
            return
        kod, e = kodaira_type(v_a, v_b, v_d)
        places.append(PlaceClass(poly, v_a, v_b, int(v_d), kod, e, count, reduced))

    for q in basis:
        record(q, a.valuation_at(q), b.valuation_at(q), delta.valuation_at(q), int(q.degree))

    v_a_inf = INF if a.is_zero() else A_WEIGHT - a.degree
    v_b_inf = INF if b.is_zero() else B_WEIGHT - b.degree
    record(None, v_a_inf, v_b_inf, DELTA_WEIGHT - delta.degree, 1)

    total = sum(p.euler * p.count for p in places)
    return FibrationReport(places, total, warnings)


def bisection_genus(f: QPoly) -> int | str:
    """Genus of ``y^2 = f(t)``, or ``"splits"`` when ``f`` is a constant times a square."""
    if f.is_zero():
        raise ValueError("bisection of the zero polynomial")
    s_deg = sum(int(s.degree) for s, mult in squarefree_decomposition(f) if mult % 2)
    if s_deg <= 0:
        return "splits"
    return (s_deg - 1) // 2


def _residue_classes(p: QPoly, d: int) -> set[int]:
    return {i % d for i, c in enumerate(p.coeffs) if c}


def invariant_fibers(m: WeierstrassModel, base_order: int) -> set[str] | str:
    """Base points fixed by ``t -> zeta_d t`` once the model is checked compatible."""
    if base_order < 1:
        raise ValueError("base order must be positive")
    if base_order == 1:
        return "all"
    for name, p in (("a", m.a), ("b", m.b)):
        if len(_residue_classes(p, base_order)) > 1:
            raise IncompatibleAction(f"{name} mixes exponent classes mod {base_order}")
    return {"0", "inf"}

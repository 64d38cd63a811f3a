"""Exact arithmetic in cyclotomic fields Q(zeta_n), power basis mod Phi_n."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable

from .exact import QPoly, Rat, poly_xgcd

__all__ = [
    "CycNum",
    "OrderMismatch",
    "euler_phi",
    "cyclotomic_polynomial",
    "zeta_pow",
    "inverse",
    "galois_conjugate",
    "rational_coordinates",
    "norm",
    "trace",
]


class OrderMismatch(ValueError):
    pass


def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int, var: str = "x") -> QPoly:
    """Phi_n as the quotient of x^n - 1 by Phi_d for the proper divisors d."""
    if n < 1:
        raise ValueError("cyclotomic polynomial needs n >= 1")
    p = QPoly.monomial(1, n, var) - 1
    for d in range(1, n):
        if n % d == 0:
            p = p.exact_div(cyclotomic_polynomial(d, var))
    return p


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[Fraction, ...], ...]:
    """Coordinates of zeta^k for phi(n) <= k < 2 phi(n) - 1, used to fold products."""
    dim = euler_phi(n)
    phi = cyclotomic_polynomial(n)
    out = []
    for k in range(dim, 2 * dim - 1):
        cs = (QPoly.monomial(1, k, "x") % phi).coeffs
        out.append(tuple(cs) + (Fraction(0),) * (dim - len(cs)))
    return tuple(out)


class CycNum:
    """Element of Q(zeta_n) as coordinates in 1, zeta, ..., zeta^(phi(n)-1)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Iterable = ()):
        if order < 1:
            raise ValueError("order must be positive")
        dim = euler_phi(order)
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > dim:
            # accept any representative and reduce it
            cs = list((QPoly(cs, "x") % cyclotomic_polynomial(order)).coeffs)
        cs += [Fraction(0)] * (dim - len(cs))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("CycNum is immutable")

    @classmethod
    def from_poly(cls, order: int, p: QPoly) -> "CycNum":
        return cls(order, (p.with_var("x") % cyclotomic_polynomial(order)).coeffs)

    @classmethod
    def rational(cls, order: int, r) -> "CycNum":
        return cls(order, [r])

    def to_poly(self) -> QPoly:
        return QPoly(self.coeffs, "x")

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def _coerce(self, other) -> "CycNum":
        if isinstance(other, CycNum):
            if other.order != self.order:
                raise OrderMismatch(f"Q(zeta_{self.order}) vs Q(zeta_{other.order})")
            return other
        if isinstance(other, (int, Fraction)):
            return CycNum.rational(self.order, other)
        raise TypeError(f"cannot combine CycNum with {type(other).__name__}")

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, CycNum):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.order, self.coeffs))

    def __add__(self, other) -> "CycNum":
        other = self._coerce(other)
        return CycNum(self.order, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> "CycNum":
        return CycNum(self.order, [-a for a in self.coeffs])

    def __sub__(self, other) -> "CycNum":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "CycNum":
        return self._coerce(other) - self

    def __mul__(self, other) -> "CycNum":
        other = self._coerce(other)
        dim = len(self.coeffs)
        prod = [Fraction(0)] * (2 * dim - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    if y:
                        prod[i + j] += x * y
        low = prod[:dim]
        for row, c in zip(_power_table(self.order), prod[dim:]):
            if c:
                low = [u + c * v for u, v in zip(low, row)]
        return CycNum(self.order, low)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "CycNum":
        return self * inverse(self._coerce(other))

    def __rtruediv__(self, other) -> "CycNum":
        return self._coerce(other) * inverse(self)

    def __pow__(self, k: int) -> "CycNum":
        if k < 0:
            return inverse(self) ** (-k)
        result = CycNum.rational(self.order, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __repr__(self) -> str:
        return f"CycNum({self.order}, [{', '.join(str(c) for c in self.coeffs)}])"

    def __str__(self) -> str:
        z = f"z{self.order}"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else (z if k == 1 else f"{z}^{k}")
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def zeta_pow(n: int, k: int) -> CycNum:
    """zeta_n ** k in the power basis (k taken mod n)."""
    return CycNum.from_poly(n, QPoly.monomial(1, k % n, "x"))


def inverse(a: CycNum) -> CycNum:
    if a.is_zero():
        raise ZeroDivisionError("inverse of zero in a cyclotomic field")
    g, s, _ = poly_xgcd(a.to_poly(), cyclotomic_polynomial(a.order))
    # Phi_n irreducible and a != 0, so g == 1
    assert g == 1
    return CycNum.from_poly(a.order, s)


def galois_conjugate(a: CycNum, k: int) -> CycNum:
    """Image of ``a`` under zeta -> zeta**k."""
    n = a.order
    if gcd(k, n) != 1:
        raise ValueError(f"k={k} is not coprime to n={n}")
    acc = CycNum(n)
    for i, c in enumerate(a.coeffs):
        if c:
            acc = acc + zeta_pow(n, i * k) * c
    return acc


def rational_coordinates(a: CycNum) -> tuple[Rat, ...]:
    return a.coeffs


def _units(n: int) -> list[int]:
    return [k for k in range(1, n + 1) if gcd(k, n) == 1]


def norm(a: CycNum) -> Fraction:
    """Product of all Galois conjugates; a rational number."""
    acc = CycNum.rational(a.order, 1)
    for k in _units(a.order):
        acc = acc * galois_conjugate(a, k)
    assert acc.is_rational()
    return acc.coeffs[0]


def trace(a: CycNum) -> Fraction:
    acc = CycNum(a.order)
    for k in _units(a.order):
        acc = acc + galois_conjugate(a, k)
    assert acc.is_rational()
    return acc.coeffs[0]


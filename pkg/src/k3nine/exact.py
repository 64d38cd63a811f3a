"""Exact rational arithmetic and univariate polynomials over Q.

Rationals are :class:`fractions.Fraction` (aliased ``Rat``).  :class:`QPoly`
is an immutable dense polynomial with rational coefficients in one named
variable.  Everything here is exact; the zero polynomial has degree
``-math.inf``.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence, Union

Rat = Fraction
Scalar = Union[int, Fraction]

__all__ = [
    "Rat",
    "QPoly",
    "PolyParseError",
    "VariableMismatch",
    "parse_poly",
    "poly_gcd",
    "poly_xgcd",
    "squarefree_decomposition",
    "squarefree_part",
    "coprime_refinement",
    "resultant",
]


class VariableMismatch(ValueError):
    pass


class PolyParseError(ValueError):
    pass


def _rat(c: Scalar) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"expected int or Fraction, got {type(c).__name__}")


class QPoly:
    """Dense univariate polynomial with :class:`Fraction` coefficients.

    ``coeffs[i]`` is the coefficient of ``var**i``; trailing zeros are
    stripped, so the zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable[Scalar] = (), var: str = "t"):
        cs = [_rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "var", var)

    def __setattr__(self, name, value):
        raise AttributeError("QPoly is immutable")

    # constructors

    @classmethod
    def const(cls, c: Scalar, var: str = "t") -> "QPoly":
        return cls([c], var)

    @classmethod
    def x(cls, var: str = "t") -> "QPoly":
        return cls([0, 1], var)

    @classmethod
    def monomial(cls, c: Scalar, k: int, var: str = "t") -> "QPoly":
        if k < 0:
            raise ValueError("negative exponent")
        return cls([0] * k + [c], var)

    # basic properties

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = QPoly.const(other, self.var)
        if not isinstance(other, QPoly):
            return NotImplemented
        if self.coeffs != other.coeffs:
            return False
        # constants compare equal regardless of the variable name
        return self.var == other.var or len(self.coeffs) <= 1

    def __hash__(self) -> int:
        return hash(self.coeffs) if len(self.coeffs) <= 1 else hash((self.coeffs, self.var))

    def _coerce(self, other) -> "QPoly":
        if isinstance(other, QPoly):
            if other.var != self.var and not (other.is_constant() or self.is_constant()):
                raise VariableMismatch(f"{self.var!r} vs {other.var!r}")
            return other
        return QPoly.const(_rat(other), self.var)

    def _var_with(self, other: "QPoly") -> str:
        return self.var if not self.is_constant() or other.is_constant() else other.var

    # ring operations

    def __neg__(self) -> "QPoly":
        return QPoly([-c for c in self.coeffs], self.var)

    def __add__(self, other) -> "QPoly":
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return QPoly([self[i] + other[i] for i in range(n)], self._var_with(other))

    __radd__ = __add__

    def __sub__(self, other) -> "QPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "QPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "QPoly":
        other = self._coerce(other)
        if not self.coeffs or not other.coeffs:
            return QPoly((), self._var_with(other))
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return QPoly(out, self._var_with(other))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "QPoly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = QPoly.const(1, self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: Scalar) -> "QPoly":
        c = _rat(c)
        return QPoly([c * a for a in self.coeffs], self.var)

    def __truediv__(self, c: Scalar) -> "QPoly":
        c = _rat(c)
        if c == 0:
            raise ZeroDivisionError("polynomial division by zero constant")
        return self.scale(1 / c)

    def __divmod__(self, other) -> tuple["QPoly", "QPoly"]:
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        var = self._var_with(other)
        rem = list(self.coeffs)
        dq = len(other.coeffs) - 1
        inv_lc = 1 / other.lc
        quo = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - dq - 1, -1, -1):
            c = rem[k + dq] * inv_lc
            quo[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return QPoly(quo, var), QPoly(rem[:dq], var)

    def __floordiv__(self, other) -> "QPoly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "QPoly":
        return divmod(self, other)[1]

    def exact_div(self, other) -> "QPoly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def divides(self, other: "QPoly") -> bool:
        """True when ``self`` divides ``other`` (zero divides only zero)."""
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    def pseudo_rem(self, other: "QPoly") -> "QPoly":
        other = self._coerce(other)
        if self.degree < other.degree:
            return self
        e = self.degree - other.degree + 1
        return (self.scale(other.lc**e)) % other

    def derivative(self) -> "QPoly":
        return QPoly([i * c for i, c in enumerate(self.coeffs)][1:], self.var)

    def monic(self) -> "QPoly":
        if self.is_zero():
            return self
        return self.scale(1 / self.lc)

    def __call__(self, x):
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, other: "QPoly") -> "QPoly":
        acc = QPoly((), other.var)
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def with_var(self, var: str) -> "QPoly":
        return QPoly(self.coeffs, var)

    def valuation_at(self, q: "QPoly"):
        """Largest ``e`` with ``q**e`` dividing ``self``; ``math.inf`` for zero."""
        if q.is_constant():
            raise ValueError("valuation at a constant polynomial")
        if self.is_zero():
            return math.inf
        e, p = 0, self
        while True:
            quo, rem = divmod(p, q)
            if rem:
                return e
            p, e = quo, e + 1

    # display

    def __repr__(self) -> str:
        return f"QPoly({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = str(a)
            else:
                mono = self.var if k == 1 else f"{self.var}^{k}"
                body = mono if a == 1 else f"{a}*{mono}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


# ---------------------------------------------------------------------------
# gcd machinery


def _check_var(p: QPoly, q: QPoly) -> None:
    if p.var != q.var and not (p.is_constant() or q.is_constant()):
        raise VariableMismatch(f"{p.var!r} vs {q.var!r}")


def poly_gcd(p: QPoly, q: QPoly) -> QPoly:
    """Monic gcd; ``gcd(0, 0) == 0``."""
    _check_var(p, q)
    var = p._var_with(q)
    a, b = p.with_var(var), q.with_var(var)
    while b:
        a, b = b, a % b
    return a.monic()


def poly_xgcd(p: QPoly, q: QPoly) -> tuple[QPoly, QPoly, QPoly]:
    """Return ``(g, s, t)`` with ``s*p + t*q == g`` and ``g`` monic."""
    _check_var(p, q)
    var = p._var_with(q)
    zero, one = QPoly((), var), QPoly.const(1, var)
    r0, r1 = p.with_var(var), q.with_var(var)
    s0, s1, t0, t1 = one, zero, zero, one
    while r1:
        quo, rem = divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quo * s1
        t0, t1 = t1, t0 - quo * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = 1 / r0.lc
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def squarefree_decomposition(p: QPoly) -> list[tuple[QPoly, int]]:
    """Yun's algorithm.

    Returns ``[(s_1, m_1), ...]`` with monic, squarefree, pairwise coprime
    ``s_i`` of positive degree and strictly increasing ``m_i`` such that
    ``p == p.lc * prod(s_i ** m_i)``.
    """
    if p.is_zero():
        raise ValueError("squarefree decomposition of the zero polynomial")
    f = p.monic()
    if f.degree == 0:
        return []
    df = f.derivative()
    a = poly_gcd(f, df)
    b = f.exact_div(a)
    c = df.exact_div(a)
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        if a.degree > 0:
            out.append((a, i))
        i += 1
    return out


def squarefree_part(p: QPoly) -> QPoly:
    """Monic product of the distinct irreducible factors of ``p``."""
    return reduce(lambda x, y: x * y, (s for s, _ in squarefree_decomposition(p)), QPoly.const(1, p.var))


def _sort_key(p: QPoly):
    return (p.degree, p.coeffs)


def coprime_refinement(ps: Sequence[QPoly]) -> list[QPoly]:
    """Gcd-free basis of ``ps``.

    The result consists of pairwise coprime, squarefree, monic polynomials of
    positive degree such that every input is a constant times a product of
    powers of basis elements.  Sorted by degree, then coefficients.
    """
    if not ps:
        return []
    var = ps[0].var
    for p in ps:
        if p.is_zero():
            raise ValueError("coprime refinement of the zero polynomial")
        _check_var(ps[0], p)
    basis: list[QPoly] = []
    for p in ps:
        for s, _ in squarefree_decomposition(p.with_var(var)):
            basis = _insert_coprime(basis, s)
    return sorted(basis, key=_sort_key)


def _insert_coprime(basis: list[QPoly], new: QPoly) -> list[QPoly]:
    # invariant: basis pairwise coprime squarefree monic
    pending = [new]
    basis = list(basis)
    while pending:
        u = pending.pop()
        if u.degree <= 0:
            continue
        for idx, v in enumerate(basis):
            g = poly_gcd(u, v)
            if g.degree > 0:
                del basis[idx]
                pending.extend([g, u.exact_div(g).monic(), v.exact_div(g).monic()])
                break
        else:
            basis.append(u)
    return basis


def resultant(p: QPoly, q: QPoly) -> Fraction:
    """Resultant by the subresultant pseudo-remainder sequence.

    Convention: ``res(p, q) = lc(p)**deg(q) * prod(q(x) for roots x of p)``.
    """
    _check_var(p, q)
    if p.is_zero() or q.is_zero():
        return Fraction(0)
    a, b = p, q
    s = 1
    if a.degree < b.degree:
        a, b = b, a
        if a.degree % 2 and b.degree % 2:
            s = -1
    if b.degree == 0:
        return s * b.lc ** a.degree
    g = h = Fraction(1)
    while b.degree > 0:
        delta = a.degree - b.degree
        if a.degree % 2 and b.degree % 2:
            s = -s
        r = a.pseudo_rem(b)
        a = b
        b = r.scale(1 / (g * h**delta))
        g = a.lc
        h = h ** (1 - delta) * g**delta
        if b.is_zero():
            return Fraction(0)
    h = h ** (1 - a.degree) * b.lc ** a.degree
    return s * h


# ---------------------------------------------------------------------------
# text grammar

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", num))
        elif name is not None:
            out.append(("name", name))
        elif op is not None:
            if op.isspace():
                pos = m.end()
                continue
            if op not in "+-*/^()":
                raise PolyParseError(f"unexpected character {op!r} at {m.start(3)}")
            out.append(("op", op))
        pos = m.end()
    out.append(("end", ""))
    return out


class _PolyParser:
    def __init__(self, text: str, var: str | None):
        self.toks = _tokenize(text)
        self.i = 0
        self.var = var

    def peek(self) -> tuple[str, str]:
        return self.toks[self.i]

    def take(self) -> tuple[str, str]:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str, value: str) -> None:
        tok = self.take()
        if tok != (kind, value):
            raise PolyParseError(f"expected {value!r}, found {tok[1] or 'end of input'!r}")

    def parse(self) -> QPoly:
        p = self.expr()
        if self.peek()[0] != "end":
            raise PolyParseError(f"unexpected token {self.peek()[1]!r}")
        return p.with_var(self.var or "t")

    def expr(self) -> QPoly:
        sign = 1
        while self.peek() in (("op", "+"), ("op", "-")):
            if self.take()[1] == "-":
                sign = -sign
        acc = self.term().scale(sign)
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> QPoly:
        acc = self.factor()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.factor()
            if op == "*":
                acc = acc * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    raise PolyParseError("division only by nonzero constants")
                acc = acc / rhs.lc
        return acc

    def factor(self) -> QPoly:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise PolyParseError("exponent must be a nonnegative integer literal")
            base = base ** int(val)
        return base

    def atom(self) -> QPoly:
        kind, val = self.take()
        var = self.var or "t"
        if kind == "num":
            return QPoly.const(int(val), var)
        if kind == "name":
            if self.var is None:
                self.var = val
            elif val != self.var:
                raise PolyParseError(f"second variable {val!r} (expected {self.var!r})")
            return QPoly.x(val)
        if (kind, val) == ("op", "("):
            p = self.expr()
            self.expect("op", ")")
            return p
        if (kind, val) == ("op", "-"):
            return -self.factor()
        raise PolyParseError(f"unexpected token {val or 'end of input'!r}")


def parse_poly(text: str, var: str | None = None) -> QPoly:
    """Parse ``text`` such as ``"t*(t^3-1)*(t^3-2)^2"`` or ``"5/7"``.

    A single variable symbol is allowed; if ``var`` is given the text must
    use that symbol.  Division is only permitted by nonzero constants.
    """
    if not text.strip():
        raise PolyParseError("empty polynomial")
    return _PolyParser(text, var).parse()

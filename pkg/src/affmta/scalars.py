"""Exact scalars: rationals and rational functions in the level symbol ``k``.

Rationals are plain :class:`fractions.Fraction` values.  A :class:`LevelScalar`
is an element of Q(k) kept in canonical form (gcd-reduced, monic denominator),
so equality is structural.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence, Union

Rat = Fraction
Poly = tuple  # tuple[Fraction, ...], lowest degree first, no trailing zeros

_ZERO: Poly = ()
_ONE: Poly = (Fraction(1),)


class PoleError(ZeroDivisionError):
    """Raised when a level scalar is evaluated at a pole."""


# --------------------------------------------------------------------------
# univariate polynomials over Q


def _trim(c: Sequence[Fraction]) -> Poly:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def p_add(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return _trim(out)


def p_neg(a: Poly) -> Poly:
    return tuple(-x for x in a)


def p_sub(a: Poly, b: Poly) -> Poly:
    return p_add(a, p_neg(b))


def p_mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return _ZERO
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def p_scale(a: Poly, s: Fraction) -> Poly:
    if s == 0:
        return _ZERO
    return tuple(x * s for x in a)


def p_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(rem) >= len(b) and rem:
        shift = len(rem) - len(b)
        factor = rem[-1] / lead
        q[shift] = factor
        for i, y in enumerate(b):
            rem[shift + i] -= factor * y
        rem = list(_trim(rem))
    return _trim(q), _trim(rem)


def p_monic(a: Poly) -> Poly:
    if not a:
        return a
    return p_scale(a, 1 / a[-1])


def p_gcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, p_divmod(a, b)[1]
    return p_monic(a)


def p_eval(a: Poly, v: Fraction) -> Fraction:
    acc = Fraction(0)
    for x in reversed(a):
        acc = acc * v + x
    return acc


def p_str(a: Poly, var: str = "k") -> str:
    if not a:
        return "0"
    parts = []
    for deg in range(len(a) - 1, -1, -1):
        c = a[deg]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if deg == 0:
            body = str(mag)
        else:
            mono = var if deg == 1 else f"{var}^{deg}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# --------------------------------------------------------------------------


class LevelScalar:
    """Element of Q(k) in canonical form."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Poly = _ZERO, den: Poly = _ONE, *, _canonical: bool = False):
        if not _canonical:
            num, den = _trim(Fraction(x) for x in num), _trim(Fraction(x) for x in den)
            if not den:
                raise ZeroDivisionError("zero denominator")
            if not num:
                den = _ONE
            elif len(den) > 1:
                g = p_gcd(num, den)
                if len(g) > 1:
                    num = p_divmod(num, g)[0]
                    den = p_divmod(den, g)[0]
            lead = den[-1]
            if lead != 1:
                num, den = p_scale(num, 1 / lead), p_scale(den, 1 / lead)
        self.num = num
        self.den = den
        self._hash = None

    # constructors ---------------------------------------------------------
    @classmethod
    def const(cls, v) -> "LevelScalar":
        v = Fraction(v)
        return cls((v,) if v else _ZERO, _ONE, _canonical=True)

    @classmethod
    def k(cls) -> "LevelScalar":
        return cls((Fraction(0), Fraction(1)), _ONE, _canonical=True)

    @staticmethod
    def coerce(x) -> "LevelScalar":
        if isinstance(x, LevelScalar):
            return x
        if isinstance(x, (int, Fraction)):
            return LevelScalar.const(x)
        raise TypeError(f"cannot coerce {x!r} to LevelScalar")

    # predicates -----------------------------------------------------------
    def is_constant(self) -> bool:
        return len(self.num) <= 1 and self.den == _ONE

    def to_rat(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self.num[0] if self.num else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.num)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        try:
            o = LevelScalar.coerce(other)
        except TypeError:
            return NotImplemented
        if self.den == _ONE and o.den == _ONE:
            return LevelScalar(p_add(self.num, o.num), _ONE, _canonical=True)
        if self.den == o.den:
            return LevelScalar(p_add(self.num, o.num), self.den)
        return LevelScalar(
            p_add(p_mul(self.num, o.den), p_mul(o.num, self.den)), p_mul(self.den, o.den)
        )

    __radd__ = __add__

    def __neg__(self):
        return LevelScalar(p_neg(self.num), self.den, _canonical=True)

    def __sub__(self, other):
        try:
            o = LevelScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return LevelScalar.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return LevelScalar()
            return LevelScalar(p_scale(self.num, Fraction(other)), self.den, _canonical=True)
        if not isinstance(other, LevelScalar):
            return NotImplemented
        if self.den == _ONE and other.den == _ONE:
            return LevelScalar(p_mul(self.num, other.num), _ONE, _canonical=True)
        return LevelScalar(p_mul(self.num, other.num), p_mul(self.den, other.den))

    __rmul__ = __mul__

    def inverse(self) -> "LevelScalar":
        if not self.num:
            raise ZeroDivisionError("division by the zero scalar")
        return LevelScalar(self.den, self.num)

    def __truediv__(self, other):
        try:
            o = LevelScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return LevelScalar.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = LevelScalar.const(1)
        for _ in range(n):
            out = out * self
        return out

    # comparison -----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LevelScalar.const(other)
        if not isinstance(other, LevelScalar):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.to_rat())
            else:
                self._hash = hash((self.num, self.den))
        return self._hash

    # evaluation -----------------------------------------------------------
    def specialize(self, v) -> Fraction:
        return specialize_level(self, v)

    def __repr__(self) -> str:
        return f"LevelScalar({self})"

    def __str__(self) -> str:
        n = p_str(self.num)
        if self.den == _ONE:
            return n
        return f"({n})/({p_str(self.den)})"


Scalar = Union[int, Fraction, LevelScalar]

K = LevelScalar.k()


def scalar_arith(a: Scalar, b: Scalar, op: str) -> LevelScalar:
    a, b = LevelScalar.coerce(a), LevelScalar.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def specialize_level(a: Scalar, v) -> Fraction:
    """Evaluate ``a`` at ``k = v`` after reduction; raises :class:`PoleError` at poles."""
    if isinstance(a, (int, Fraction)):
        return Fraction(a)
    v = Fraction(v)
    d = p_eval(a.den, v)
    if d == 0:
        raise PoleError(f"{a} has a pole at k = {v}")
    return p_eval(a.num, v) / d


def is_zero(x) -> bool:
    return not x


def to_rat_if_constant(x):
    if isinstance(x, LevelScalar) and x.is_constant():
        return x.to_rat()
    return x


def fmt_scalar(x) -> str:
    if isinstance(x, LevelScalar):
        if x.is_constant():
            return str(x.to_rat())
        return str(x)
    return str(Fraction(x))


# --------------------------------------------------------------------------
# text form

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(.))")


def _tokenize(text: str) -> list[str]:
    out = []
    for m in _TOKEN.finditer(text):
        tok = m.group(1) or m.group(2) or m.group(3)
        if tok and not tok.isspace():
            out.append(tok)
    return out


class _ScalarParser:
    def __init__(self, text: str, env: dict | None = None):
        self.toks = _tokenize(text)
        self.i = 0
        self.env = env or {}

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expect=None):
        tok = self.peek()
        if tok is None or (expect is not None and tok != expect):
            raise ValueError(f"expected {expect!r}, got {tok!r}")
        self.i += 1
        return tok

    def expr(self):
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
        val = self.term()
        if sign < 0:
            val = -val
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.power()
        while True:
            nxt = self.peek()
            if nxt in ("*", "/"):
                op = self.take()
                rhs = self.power()
                val = val * rhs if op == "*" else val / rhs
            elif nxt is not None and (nxt == "(" or nxt[0].isalnum() or nxt[0] == "_"):
                val = val * self.power()  # juxtaposition: 2n, 2(k + 1)
            else:
                return val

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            neg = False
            if self.peek() == "-":
                self.take()
                neg = True
            n = int(self.take())
            base = base ** (-n if neg else n)
        return base

    def atom(self):
        tok = self.take()
        if tok == "(":
            val = self.expr()
            self.take(")")
            return val
        if tok == "-":
            return -self.atom()
        if tok.isdigit():
            return LevelScalar.const(int(tok))
        if tok in self.env:
            return LevelScalar.coerce(self.env[tok])
        if tok == "k":
            return K
        raise ValueError(f"unexpected token {tok!r}")


def parse_scalar(text: str, env: dict | None = None) -> LevelScalar:
    """Parse e.g. ``(3*k^2 - 1/2)/(k + 2)``."""
    p = _ScalarParser(text, env)
    val = p.expr()
    if p.peek() is not None:
        raise ValueError(f"trailing input in scalar {text!r}")
    return val

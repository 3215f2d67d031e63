"""U(sl2) in the PBW basis f^a h^b e^c, and the Zhu algebra U(sl2)/<e^2>."""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import comb

from .scalars import K, LevelScalar, specialize_level

Mono = tuple  # (a, b, c) for f^a h^b e^c


class PbwElt:
    """Element of U(sl2); a map (a, b, c) -> coefficient, zeros dropped."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms: dict = {}
        for m, c in (terms or {}).items():
            if c:
                self.terms[tuple(m)] = c

    @classmethod
    def one(cls) -> "PbwElt":
        return cls({(0, 0, 0): 1})

    @classmethod
    def scalar(cls, c) -> "PbwElt":
        return cls({(0, 0, 0): c})

    @classmethod
    def mono(cls, a: int = 0, b: int = 0, c: int = 0, coeff=1) -> "PbwElt":
        return cls({(a, b, c): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def items(self):
        return self.terms.items()

    def coeff(self, m: Mono):
        return self.terms.get(tuple(m), 0)

    def _lift(self, other) -> "PbwElt":
        return other if isinstance(other, PbwElt) else PbwElt.scalar(other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        res = PbwElt()
        res.terms = out
        return res

    __radd__ = __add__

    def __neg__(self):
        res = PbwElt()
        res.terms = {m: -c for m, c in self.terms.items()}
        return res

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, s) -> "PbwElt":
        return PbwElt({m: c * s for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, PbwElt):
            return pbw_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        out = PbwElt.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, PbwElt):
            other = PbwElt.scalar(other)
        return (self - other).is_zero()

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def max_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def map_coeffs(self, fn) -> "PbwElt":
        return PbwElt({m: fn(c) for m, c in self.terms.items()})

    def __str__(self) -> str:
        return format_pbw(self)

    def __repr__(self) -> str:
        return f"PbwElt({format_pbw(self)!r})"


F_ = PbwElt.mono(1, 0, 0)
H_ = PbwElt.mono(0, 1, 0)
E_ = PbwElt.mono(0, 0, 1)
ONE = PbwElt.one()


def _add_into(acc: dict, m: Mono, c: int) -> None:
    v = acc.get(m, 0) + c
    if v:
        acc[m] = v
    else:
        acc.pop(m, None)


def _left_gen(g: str, poly: dict) -> dict:
    """Left-multiply an integer-coefficient PBW polynomial by a generator."""
    out: dict = {}
    for (a, b, c), coef in poly.items():
        if g == "f":
            _add_into(out, (a + 1, b, c), coef)
        elif g == "h":
            # h f^a = f^a (h - 2a)
            _add_into(out, (a, b + 1, c), coef)
            if a:
                _add_into(out, (a, b, c), -2 * a * coef)
        else:
            # e f^a = f^a e + a f^(a-1) (h - (a-1));  e h^b = (h-2)^b e
            for j in range(b + 1):
                _add_into(out, (a, j, c + 1), coef * comb(b, j) * (-2) ** (b - j))
            if a:
                _add_into(out, (a - 1, b + 1, c), a * coef)
                if a > 1:
                    _add_into(out, (a - 1, b, c), -a * (a - 1) * coef)
    return out


@lru_cache(maxsize=None)
def _mono_mul(m1: Mono, m2: Mono) -> tuple:
    a, b, c = m1
    poly = {m2: 1}
    for _ in range(c):
        poly = _left_gen("e", poly)
    for _ in range(b):
        poly = _left_gen("h", poly)
    for _ in range(a):
        poly = _left_gen("f", poly)
    return tuple(poly.items())


def pbw_mul(x: PbwElt, y: PbwElt) -> PbwElt:
    out: dict = {}
    for m1, c1 in x.terms.items():
        for m2, c2 in y.terms.items():
            c12 = c1 * c2
            for m, s in _mono_mul(m1, m2):
                v = out.get(m, 0) + c12 * s
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
    res = PbwElt()
    res.terms = out
    return res


def casimir() -> PbwElt:
    """Omega = 4fe + h^2 + 2h."""
    return PbwElt({(1, 0, 1): 4, (0, 2, 0): 1, (0, 1, 0): 2})


def transpose_tau(x: PbwElt) -> PbwElt:
    """Anti-automorphism e <-> f, h -> h.  tau(f^a h^b e^c) = f^c h^b e^a."""
    return PbwElt({(c, b, a): coef for (a, b, c), coef in x.terms.items()})


def pbw_from_word(letters: str) -> PbwElt:
    out = PbwElt.one()
    for ch in reversed(letters):
        out = {"e": E_, "f": F_, "h": H_}[ch] * out
    return out


# --------------------------------------------------------------------------
# lowest-weight witness module U / (U f + U (h + k))


def _module_act(g: str, vec: dict, level) -> dict:
    """Act by a generator on sum_n c_n e^n w, where f w = 0, h w = -level w."""
    out: dict = {}
    for n, c in vec.items():
        if g == "e":
            _add_into(out, n + 1, c)
        elif g == "h":
            _add_into(out, n, c * (2 * n - level))
        elif n:
            # f e^n w = n (level - n + 1) e^(n-1) w
            _add_into(out, n - 1, c * n * (level - n + 1))
    return out


def witness_action(x: PbwElt, level=K) -> dict:
    """x . w as a map n -> coefficient of e^n w."""
    out: dict = {}
    for (a, b, c), coef in x.terms.items():
        vec = {0: 1}
        for _ in range(c):
            vec = _module_act("e", vec, level)
        for _ in range(b):
            vec = _module_act("h", vec, level)
        for _ in range(a):
            vec = _module_act("f", vec, level)
        for n, v in vec.items():
            _add_into(out, n, coef * v)
    return out


def witness_phi(x: PbwElt, level=K):
    """Coefficient of the cyclic vector w in x . w."""
    return witness_action(x, level).get(0, 0)


# --------------------------------------------------------------------------
# Zhu algebra of L(1,0): U(sl2)/<e^2>, basis (1, e, f, h, ef)

ZHU_BASIS = ("1", "e", "f", "h", "ef")

_ZHU_RULES = {
    "ee": {},
    "ff": {},
    "eh": {"e": -1},
    "he": {"e": 1},
    "hf": {"f": -1},
    "fh": {"f": 1},
    "hh": {"ef": 2, "h": -1},
    "fe": {"ef": 1, "h": -1},
}


def zhu_rewrite(word: str) -> dict:
    """Reduce a word in e, f, h to the basis (1, e, f, h, ef) by the defining relations."""
    out: dict = {}
    stack = [(word, Fraction(1))]
    while stack:
        w, c = stack.pop()
        for i in range(len(w) - 1):
            rhs = _ZHU_RULES.get(w[i:i + 2])
            if rhs is not None:
                for r, rc in rhs.items():
                    stack.append((w[:i] + r + w[i + 2:], c * rc))
                break
        else:
            key = w or "1"
            if key not in ZHU_BASIS:
                raise AssertionError(f"irreducible word {w!r} outside the basis")
            _add_into(out, key, c)
    return out


class ZhuL10Elt:
    """Element of U(sl2)/<e^2> in the basis (1, e, f, h, ef)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        if isinstance(coeffs, dict):
            coeffs = tuple(coeffs.get(b, 0) for b in ZHU_BASIS)
        self.coeffs = tuple(Fraction(0) if c == 0 else c for c in (coeffs or (0,) * 5))

    @classmethod
    def basis(cls, name: str) -> "ZhuL10Elt":
        return cls({name: Fraction(1)})

    def as_dict(self) -> dict:
        return {b: c for b, c in zip(ZHU_BASIS, self.coeffs) if c}

    def __add__(self, other):
        return ZhuL10Elt(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        return ZhuL10Elt(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return ZhuL10Elt(tuple(-a for a in self.coeffs))

    def scale(self, s) -> "ZhuL10Elt":
        return ZhuL10Elt(tuple(a * s for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, ZhuL10Elt):
            return zhu_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ZhuL10Elt):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self) -> str:
        parts = []
        for b, c in zip(ZHU_BASIS, self.coeffs):
            if not c:
                continue
            if b == "1":
                parts.append(str(c))
            else:
                parts.append(b if c == 1 else ("-" + b if c == -1 else f"{c} {b}"))
        return " + ".join(parts).replace("+ -", "- ") or "0"

    def __repr__(self) -> str:
        return f"ZhuL10Elt({self})"


def _basis_word(name: str) -> str:
    return "" if name == "1" else name


@lru_cache(maxsize=None)
def zhu_table() -> dict:
    """Structure constants (x, y) -> {basis: coeff}, derived by rewriting."""
    return {(x, y): zhu_rewrite(_basis_word(x) + _basis_word(y)) for x in ZHU_BASIS for y in ZHU_BASIS}


def zhu_mul(x: ZhuL10Elt, y: ZhuL10Elt) -> ZhuL10Elt:
    table = zhu_table()
    acc = {b: Fraction(0) for b in ZHU_BASIS}
    for bx, cx in zip(ZHU_BASIS, x.coeffs):
        if not cx:
            continue
        for by, cy in zip(ZHU_BASIS, y.coeffs):
            if not cy:
                continue
            for b, c in table[(bx, by)].items():
                acc[b] += cx * cy * c
    return ZhuL10Elt(acc)


def zhu_closure() -> list[str]:
    """Close {1, e, f, h, ef} under products; return the spanning words reached."""
    seen = list(ZHU_BASIS)
    frontier = list(ZHU_BASIS)
    while frontier:
        new = []
        for x in frontier:
            for y in seen:
                for w in (_basis_word(x) + _basis_word(y), _basis_word(y) + _basis_word(x)):
                    for b in zhu_rewrite(w):
                        if b not in seen and b not in new:
                            new.append(b)
        seen.extend(new)
        frontier = new
    return seen


def zhu_project(x: PbwElt, level=1) -> ZhuL10Elt:
    """Image of x in U(sl2)/<e^2>; formal coefficients are specialized at ``level``."""
    acc = {b: Fraction(0) for b in ZHU_BASIS}
    for (a, b, c), coef in x.terms.items():
        coef = specialize_level(coef, level) if isinstance(coef, LevelScalar) else Fraction(coef)
        if not coef:
            continue
        for name, v in zhu_rewrite("f" * a + "h" * b + "e" * c).items():
            acc[name] += coef * v
    return ZhuL10Elt(acc)


def zhu_to_pbw(z: ZhuL10Elt) -> PbwElt:
    """Lift using the representatives 1, e, f, h, e*f."""
    reps = {"1": ONE, "e": E_, "f": F_, "h": H_, "ef": E_ * F_}
    out = PbwElt()
    for b, c in zip(ZHU_BASIS, z.coeffs):
        if c:
            out = out + reps[b].scale(c)
    return out


# --------------------------------------------------------------------------
# text form


def _mono_str(m: Mono) -> str:
    parts = []
    for sym, p in zip("fhe", m):
        if p == 1:
            parts.append(sym)
        elif p:
            parts.append(f"{sym}^{p}")
    return " ".join(parts)


def format_pbw(x: PbwElt) -> str:
    if x.is_zero():
        return "0"
    out = ""
    for m, c in sorted(x.terms.items(), key=lambda kv: (-sum(kv[0]), kv[0])):
        body = _mono_str(m)
        if isinstance(c, LevelScalar) and not c.is_constant():
            coef, neg = (f"({c})" if " " in str(c) else str(c)), False
        else:
            r = c.to_rat() if isinstance(c, LevelScalar) else Fraction(c)
            neg = r < 0
            mag = -r if neg else r
            coef = "" if (mag == 1 and body) else str(mag)
        piece = (coef + (" " if coef and body else "") + body) or "1"
        if not out:
            out = ("-" if neg else "") + piece
        else:
            out += (" - " if neg else " + ") + piece
    return out


def parse_pbw(text: str, env: dict | None = None) -> PbwElt:
    """Parse expressions such as ``4 f e + h^2 + 2 h`` or ``(h - k)(h + k + 2)``.

    Generators are noncommuting symbols; products are taken in U(sl2).
    """
    return _PbwParser(text, env).parse()


class _PbwParser:
    _TOK = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(.))")

    def __init__(self, text: str, env: dict | None = None):
        self.text = text
        self.toks = [next(g for g in m.groups() if g) for m in self._TOK.finditer(text)
                     if any(m.groups()) and not m.group(0).isspace()]
        self.i = 0
        self.env = env or {}

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expect=None):
        tok = self.peek()
        if tok is None or (expect is not None and tok != expect):
            raise ValueError(f"in {self.text!r}: expected {expect!r}, got {tok!r}")
        self.i += 1
        return tok

    def parse(self) -> PbwElt:
        v = self.expr()
        if self.peek() is not None:
            raise ValueError(f"in {self.text!r}: trailing {self.peek()!r}")
        return v

    def expr(self) -> PbwElt:
        neg = False
        if self.peek() in ("+", "-"):
            neg = self.take() == "-"
        v = self.term()
        if neg:
            v = -v
        while self.peek() in ("+", "-"):
            op = self.take()
            r = self.term()
            v = v + r if op == "+" else v - r
        return v

    def term(self) -> PbwElt:
        v = self.power()
        while True:
            tok = self.peek()
            if tok == "*":
                self.take()
                v = v * self.power()
            elif tok == "/":
                self.take()
                d = self.power()
                if any(m != (0, 0, 0) for m in d.terms):
                    raise ValueError("can only divide by scalars")
                v = v.scale(LevelScalar.coerce(d.coeff((0, 0, 0))).inverse())
            elif tok is not None and (tok.isdigit() or tok == "(" or tok[0].isalpha()):
                v = v * self.power()
            else:
                return v

    def power(self) -> PbwElt:
        base = self.atom()
        if self.peek() == "^":
            self.take()
            base = base ** int(self.take())
        return base

    def atom(self) -> PbwElt:
        tok = self.take()
        if tok == "(":
            v = self.expr()
            self.take(")")
            return v
        if tok.isdigit():
            return PbwElt.scalar(Fraction(int(tok)))
        if tok in ("e", "f", "h"):
            return {"e": E_, "f": F_, "h": H_}[tok]
        if tok in self.env:
            val = self.env[tok]
            return val if isinstance(val, PbwElt) else PbwElt.scalar(val)
        if tok == "k":
            return PbwElt.scalar(K)
        raise ValueError(f"in {self.text!r}: unexpected token {tok!r}")

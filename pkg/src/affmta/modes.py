"""Affine modes a(n) of sl2-hat, words in them, and exact brackets.

A :class:`ModeExpr` is a finite linear combination of words (tuples of
:class:`Mode`) with scalar coefficients.  The central element never appears:
it is replaced by the level at bracket time.  Coefficients may be
``Fraction`` (a numeric level) or :class:`LevelScalar` (formal level ``k``).
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple

from .scalars import K, LevelScalar, fmt_scalar, parse_scalar
from .sl2 import E, F, GEN_ORDER, H, Gen, bracket_basis, form_basis


class Mode(NamedTuple):
    gen: Gen
    index: int

    @property
    def degree(self) -> int:
        return -self.index

    def __str__(self) -> str:
        return f"{self.gen.value}({self.index})"


Word = tuple  # tuple[Mode, ...]
IDENTITY: Word = ()


def e(n: int) -> Mode:
    return Mode(E, n)


def h(n: int) -> Mode:
    return Mode(H, n)


def f(n: int) -> Mode:
    return Mode(F, n)


def mode_key(m: Mode) -> tuple[int, int]:
    return (m.index, GEN_ORDER[m.gen])


def word_key(w: Word) -> tuple:
    return (len(w), tuple(mode_key(m) for m in w))


def word_degree(w: Word) -> int:
    return -sum(m.index for m in w)


def word_weight(w: Word) -> int:
    return sum(m.gen.weight for m in w)


def word_str(w: Word) -> str:
    return "".join(str(m) for m in w) if w else "1"


class ModeExpr:
    """Finite linear combination of words; zero coefficients are never stored."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms: dict = {}
        if terms:
            for w, c in terms.items():
                if c:
                    self.terms[tuple(w)] = c

    # constructors ---------------------------------------------------------
    @classmethod
    def word(cls, *modes: Mode, coeff=1) -> "ModeExpr":
        return cls({tuple(modes): coeff})

    @classmethod
    def scalar(cls, c) -> "ModeExpr":
        return cls({IDENTITY: c})

    @classmethod
    def zero(cls) -> "ModeExpr":
        return cls()

    # container protocol ---------------------------------------------------
    def items(self):
        return self.terms.items()

    def __iter__(self) -> Iterator[Word]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def coeff(self, w: Word):
        return self.terms.get(tuple(w), 0)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    # arithmetic -----------------------------------------------------------
    def _accumulate(self, other: "ModeExpr", sign: int) -> "ModeExpr":
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = out.get(w, 0) + (c if sign > 0 else -c)
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        res = ModeExpr()
        res.terms = out
        return res

    def __add__(self, other):
        if not isinstance(other, ModeExpr):
            other = ModeExpr.scalar(other)
        return self._accumulate(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, ModeExpr):
            other = ModeExpr.scalar(other)
        return self._accumulate(other, -1)

    def __rsub__(self, other):
        return ModeExpr.scalar(other) - self

    def __neg__(self):
        res = ModeExpr()
        res.terms = {w: -c for w, c in self.terms.items()}
        return res

    def scale(self, s) -> "ModeExpr":
        if not s:
            return ModeExpr()
        res = ModeExpr()
        res.terms = {w: c * s for w, c in self.terms.items() if c * s}
        return res

    def __mul__(self, other):
        if isinstance(other, ModeExpr):
            return word_multiply(self, other)
        if isinstance(other, Mode):
            return word_multiply(self, ModeExpr.word(other))
        return self.scale(other)

    def __rmul__(self, other):
        if isinstance(other, Mode):
            return word_multiply(ModeExpr.word(other), self)
        return self.scale(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModeExpr):
            if other == 0:
                return self.is_zero()
            other = ModeExpr.scalar(other)
        return (self - other).is_zero()

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # structure ------------------------------------------------------------
    def degrees(self) -> set[int]:
        return {word_degree(w) for w in self.terms}

    def homogeneous_degree(self) -> int | None:
        degs = self.degrees()
        if not degs:
            return None
        if len(degs) != 1:
            raise ValueError(f"expression is not homogeneous: degrees {sorted(degs)}")
        return degs.pop()

    def graded_component(self, d: int) -> "ModeExpr":
        return ModeExpr({w: c for w, c in self.terms.items() if word_degree(w) == d})

    def map_words(self, fn) -> "ModeExpr":
        """Apply ``fn: word -> ModeExpr`` linearly."""
        out = ModeExpr()
        for w, c in self.terms.items():
            out = out + fn(w).scale(c)
        return out

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda kv: word_key(kv[0]))

    def __str__(self) -> str:
        return format_expr(self)

    def __repr__(self) -> str:
        return f"ModeExpr({format_expr(self)!r})"


# --------------------------------------------------------------------------
# brackets


def affine_bracket(x: Mode, y: Mode, level) -> ModeExpr:
    """[a(m), b(n)] = [a,b](m+n) + m delta_{m+n,0} (a|b) level."""
    out = {}
    for g, c in bracket_basis(x.gen, y.gen).items():
        out[(Mode(g, x.index + y.index),)] = c
    if x.index + y.index == 0 and x.index != 0:
        w = form_basis(x.gen, y.gen)
        if w:
            out[IDENTITY] = level * (x.index * w)
    return ModeExpr(out)


def ad_action(x: Mode, expr: ModeExpr, level) -> ModeExpr:
    """Leibniz extension of the bracket with ``x`` across every word."""
    out = ModeExpr()
    for w, c in expr.items():
        for i, m in enumerate(w):
            br = affine_bracket(x, m, level)
            if not br:
                continue
            pre, post = w[:i], w[i + 1:]
            for bw, bc in br.items():
                out = out + ModeExpr({pre + bw + post: c * bc})
    return out


def commutator(a: ModeExpr, b: ModeExpr, level) -> ModeExpr:
    """Leibniz expansion of [a, b] without reordering any word.

    For a word x1...xp: [x1...xp, b] = sum_i x1..x(i-1) [xi, b] x(i+1)..xp.
    """
    out = ModeExpr()
    for w, c in a.items():
        for i, m in enumerate(w):
            inner = ad_action(m, b, level)
            if not inner:
                continue
            pre = ModeExpr.word(*w[:i])
            post = ModeExpr.word(*w[i + 1:])
            out = out + (pre * inner * post).scale(c)
    return out


def word_multiply(a: ModeExpr, b: ModeExpr) -> ModeExpr:
    out: dict = {}
    for wa, ca in a.items():
        for wb, cb in b.items():
            w = wa + wb
            v = out.get(w, 0) + ca * cb
            if v:
                out[w] = v
            else:
                out.pop(w, None)
    res = ModeExpr()
    res.terms = out
    return res


def quadratic_field_mode(m: int, window: int) -> ModeExpr:
    """sum over j + l = m - 1 of :e(j)e(l):, truncated to |j|, |l| <= window."""
    if window < 0:
        raise ValueError("window must be >= 0")
    out = ModeExpr()
    for j in range(-window, window + 1):
        l = m - 1 - j
        if abs(l) > window:
            continue
        a, b = (j, l) if j <= l else (l, j)
        out = out + ModeExpr.word(e(a), e(b))
    return out


# --------------------------------------------------------------------------
# PBW normal ordering in U(sl2-hat) at a given level


@lru_cache(maxsize=None)
def _normal_word(w: Word, level) -> tuple:
    for i in range(len(w) - 1):
        if mode_key(w[i]) > mode_key(w[i + 1]):
            break
    else:
        return ((w, 1),)
    x, y = w[i], w[i + 1]
    pre, post = w[:i], w[i + 2:]
    acc: dict = {}

    def add(items, scale):
        for ww, cc in items:
            v = acc.get(ww, 0) + cc * scale
            if v:
                acc[ww] = v
            else:
                acc.pop(ww, None)

    add(_normal_word(pre + (y, x) + post, level), 1)
    for bw, bc in affine_bracket(x, y, level).items():
        add(_normal_word(pre + bw + post, level), bc)
    return tuple(acc.items())


def pbw_normal(expr: ModeExpr, level) -> ModeExpr:
    """Normal order every word: ascending index, ties broken f < h < e."""
    out: dict = {}
    for w, c in expr.items():
        for ww, cc in _normal_word(w, level):
            v = out.get(ww, 0) + c * cc
            if v:
                out[ww] = v
            else:
                out.pop(ww, None)
    res = ModeExpr()
    res.terms = out
    return res


def equal_in_enveloping(a: ModeExpr, b: ModeExpr, level) -> bool:
    return pbw_normal(a - b, level).is_zero()


# --------------------------------------------------------------------------
# text grammar

_TOK = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(𝟙)|(.))")


def _tokens(text: str) -> list[str]:
    out = []
    for m in _TOK.finditer(text):
        tok = next((g for g in m.groups() if g), None)
        if tok and not tok.isspace():
            out.append(tok)
    return out


class ExprParser:
    """Parser for mode expressions.

    Grammar (juxtaposition is multiplication)::

        expr   := ['-'] term (('+'|'-') term)*
        term   := factor (['*'] factor)*
        factor := INT ['/' INT] | 'k' | PARAM | gen '(' index ')'
                | '(' expr ')' | '[' expr ',' expr ']' | '1' | '𝟙'
        index  := integer arithmetic over bound parameters

    ``[X, Y]`` is the Leibniz-expanded commutator at ``level``.
    """

    def __init__(self, text: str, level=K, env: dict | None = None):
        self.text = text
        self.toks = _tokens(text)
        self.i = 0
        self.level = level
        self.env = dict(env or {})

    def peek(self, off: int = 0):
        j = self.i + off
        return self.toks[j] if j < len(self.toks) else None

    def take(self, expect=None):
        tok = self.peek()
        if tok is None or (expect is not None and tok != expect):
            raise ValueError(f"in {self.text!r}: expected {expect!r}, got {tok!r}")
        self.i += 1
        return tok

    def parse(self) -> ModeExpr:
        val = self.expr()
        if self.peek() is not None:
            raise ValueError(f"in {self.text!r}: trailing input at {self.peek()!r}")
        return val

    def expr(self) -> ModeExpr:
        neg = False
        if self.peek() in ("+", "-"):
            neg = self.take() == "-"
        val = self.term()
        if neg:
            val = -val
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def _starts_factor(self, tok) -> bool:
        return tok is not None and (tok.isdigit() or tok in ("(", "[", "𝟙", "*") or tok[0].isalpha() or tok[0] == "_")

    def term(self) -> ModeExpr:
        val = self.factor()
        while self._starts_factor(self.peek()):
            if self.peek() == "*":
                self.take()
            val = val * self.factor()
        return val

    def factor(self) -> ModeExpr:
        tok = self.take()
        if tok.isdigit():
            num = Fraction(int(tok))
            if self.peek() == "/" and self.peek(1) is not None and self.peek(1).isdigit():
                self.take()
                num = num / int(self.take())
            return ModeExpr.scalar(num)
        if tok == "𝟙":
            return ModeExpr.scalar(1)
        if tok == "(":
            val = self.expr()
            self.take(")")
            return val
        if tok == "[":
            a = self.expr()
            self.take(",")
            b = self.expr()
            self.take("]")
            return commutator(a, b, self.level)
        if tok in ("e", "h", "f") and self.peek() == "(":
            self.take("(")
            idx = self._index_expr()
            self.take(")")
            return ModeExpr.word(Mode(Gen(tok), idx))
        if tok in self.env:
            return ModeExpr.scalar(self.env[tok])
        if tok == "k":
            return ModeExpr.scalar(K)
        raise ValueError(f"in {self.text!r}: unexpected token {tok!r}")

    def _index_expr(self) -> int:
        start = self.i
        depth = 0
        while True:
            tok = self.peek()
            if tok is None:
                raise ValueError(f"in {self.text!r}: unterminated index")
            if tok == "(":
                depth += 1
            elif tok == ")":
                if depth == 0:
                    break
                depth -= 1
            self.i += 1
        body = " ".join(self.toks[start:self.i])
        val = parse_scalar(body, self.env)
        if not val.is_constant() or val.to_rat().denominator != 1:
            raise ValueError(f"in {self.text!r}: index {body!r} is not an integer")
        return int(val.to_rat())


def parse_expr(text: str, level=K, env: dict | None = None) -> ModeExpr:
    return ExprParser(text, level, env).parse()


def _scalar_prefix(c) -> str:
    s = fmt_scalar(c)
    if isinstance(c, LevelScalar) and not c.is_constant() and " " in s:
        return f"({s})"
    return s


def format_expr(x: ModeExpr) -> str:
    if x.is_zero():
        return "0"
    out = ""
    for w, c in x.sorted_items():
        neg = False
        if not isinstance(c, LevelScalar) or c.is_constant():
            r = c.to_rat() if isinstance(c, LevelScalar) else Fraction(c)
            neg = r < 0
            mag = -r if neg else r
            coef = "" if (mag == 1 and w) else str(mag)
        else:
            coef = _scalar_prefix(c)
        body = word_str(w) if w else ""
        piece = (coef + (" " if coef and body else "") + body) or "1"
        if not out:
            out = ("-" if neg else "") + piece
        else:
            out += (" - " if neg else " + ") + piece
    return out


def modes_in(expr: ModeExpr) -> Iterable[Mode]:
    for w in expr:
        yield from w

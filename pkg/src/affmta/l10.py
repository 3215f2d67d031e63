"""The quotient U(sl2^, 1) / <e(-1)e(-1)>: literal rule table and reduction.

Canonical span of the literal quotient: ONE, E(m), F(m), H(m) and H2(m), where
H2(m) is the common class of every h(a)h(b) with a + b = m (representative
h(0)h(m)).  The closed multiplication table on these symbols is

    e.e = f.f = 0
    E(a)H(b) = -E(a+b)         H(a)E(b) = E(a+b)
    H(a)F(b) = -F(a+b)         F(a)H(b) = F(a+b)
    H(a)H(b) = H2(a+b)
    E(a)F(b) = (H2 + H)(a+b)/2 F(a)E(b) = (H2 - H)(a+b)/2
    X(a)H2(b) = H2(b)X(a) = X(a+b) for X in {E, F, H},  H2(a)H2(b) = H2(a+b)

:func:`derive_literal_table` recomputes every entry from the letter rules alone.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .modes import Mode, ModeExpr, e, f, h
from .report import FAILED, VERIFIED, Case, Step, VerifyReport
from .scalars import LevelScalar, specialize_level
from .sl2 import Gen

ONE_SYM = ("1", 0)
KINDS = ("E", "F", "H", "H2")


def sym(kind: str, m: int = 0) -> tuple:
    if kind == "1":
        return ONE_SYM
    if kind not in KINDS:
        raise ValueError(f"unknown basis symbol kind {kind!r}")
    return (kind, int(m))


def sym_str(s: tuple) -> str:
    return "1" if s == ONE_SYM else f"{s[0]}({s[1]})"


def _sym_key(s: tuple) -> tuple:
    order = {"1": 0, "E": 1, "F": 2, "H": 3, "H2": 4}
    return (order[s[0]], s[1])


_MODE_KIND = {Gen.E: "E", Gen.F: "F", Gen.H: "H"}
_KIND_GEN = {v: k for k, v in _MODE_KIND.items()}


def _as_rat(c) -> Fraction:
    if isinstance(c, LevelScalar):
        return specialize_level(c, 1)
    return Fraction(c)


class LoopElt:
    """Element of the literal quotient: map basis symbol -> rational."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {s: Fraction(c) for s, c in (terms or {}).items() if c}

    @classmethod
    def basis(cls, s: tuple, c=1) -> "LoopElt":
        return cls({s: c})

    @classmethod
    def one(cls) -> "LoopElt":
        return cls({ONE_SYM: 1})

    def items(self):
        return self.terms.items()

    def coeff(self, s: tuple) -> Fraction:
        return self.terms.get(s, Fraction(0))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "LoopElt") -> "LoopElt":
        out = dict(self.terms)
        for s, c in other.terms.items():
            out[s] = out.get(s, 0) + c
        return LoopElt(out)

    def __neg__(self) -> "LoopElt":
        return LoopElt({s: -c for s, c in self.terms.items()})

    def __sub__(self, other: "LoopElt") -> "LoopElt":
        return self + (-other)

    def scale(self, c) -> "LoopElt":
        c = _as_rat(c)
        return LoopElt({s: c * v for s, v in self.terms.items()})

    def __mul__(self, other: "LoopElt") -> "LoopElt":
        out = LoopElt()
        for s1, c1 in self.terms.items():
            for s2, c2 in other.terms.items():
                out = out + sym_mul(s1, s2).scale(c1 * c2)
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, LoopElt):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda kv: _sym_key(kv[0]))

    def to_modeexpr(self) -> ModeExpr:
        """Representative words: H2(m) -> h(0)h(m)."""
        out = ModeExpr()
        for s, c in self.terms.items():
            if s == ONE_SYM:
                out = out + ModeExpr.scalar(c)
            elif s[0] == "H2":
                out = out + ModeExpr.word(h(0), h(s[1]), coeff=c)
            else:
                out = out + ModeExpr.word(Mode(_KIND_GEN[s[0]], s[1]), coeff=c)
        return out

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = ""
        for s, c in self.sorted_items():
            neg = c < 0
            mag = -c if neg else c
            body = sym_str(s)
            piece = body if mag == 1 else (str(mag) if s == ONE_SYM else f"{mag} {body}")
            if not out:
                out = ("-" if neg else "") + piece
            else:
                out += (" - " if neg else " + ") + piece
        return out

    __repr__ = __str__


# --------------------------------------------------------------------------
# the closed table


def _lit(*pairs) -> LoopElt:
    return LoopElt({s: c for s, c in pairs})


@lru_cache(maxsize=None)
def _sym_mul_cached(s1: tuple, s2: tuple) -> LoopElt:
    k1, a = s1
    k2, b = s2
    n = a + b
    half = Fraction(1, 2)
    if k1 == "1":
        return LoopElt.basis(s2)
    if k2 == "1":
        return LoopElt.basis(s1)
    if k1 == "H2" and k2 == "H2":
        return LoopElt.basis(("H2", n))
    if k1 == "H2" or k2 == "H2":
        x = k2 if k1 == "H2" else k1
        return LoopElt.basis((x, n))
    pair = k1 + k2
    if pair in ("EE", "FF"):
        return LoopElt()
    if pair == "EH":
        return _lit((("E", n), -1))
    if pair == "HE":
        return _lit((("E", n), 1))
    if pair == "HF":
        return _lit((("F", n), -1))
    if pair == "FH":
        return _lit((("F", n), 1))
    if pair == "HH":
        return _lit((("H2", n), 1))
    if pair == "EF":
        return _lit((("H2", n), half), (("H", n), half))
    if pair == "FE":
        return _lit((("H2", n), half), (("H", n), -half))
    raise AssertionError(pair)


def sym_mul(s1: tuple, s2: tuple) -> LoopElt:
    return _sym_mul_cached(s1, s2)


def literal_table_entry(s1: tuple, s2: tuple) -> LoopElt:
    return sym_mul(s1, s2)


# --------------------------------------------------------------------------
# reduction


def _pair_class(s1: tuple, s2: tuple) -> int:
    pair = s1[0] + s2[0]
    if pair in ("EE", "FF"):
        return 0
    if pair in ("EH", "HE", "HF", "FH"):
        return 1
    if pair in ("EF", "FE", "HH"):
        return 2
    return 3


def _choose(word: tuple, strategy: str) -> int:
    if strategy == "priority":
        best = None
        for i in range(len(word) - 1):
            cls = _pair_class(word[i], word[i + 1])
            if best is None or cls < best[0]:
                best = (cls, i)
        return best[1]
    if strategy == "rightmost":
        return len(word) - 2
    if strategy == "leftmost":
        return 0
    raise ValueError(f"unknown strategy {strategy!r}")


STRATEGIES = ("priority", "leftmost", "rightmost")


def _reduce_symword(word: tuple, strategy: str, trace: list | None) -> LoopElt:
    word = tuple(s for s in word if s != ONE_SYM)
    if not word:
        return LoopElt.one()
    if len(word) == 1:
        return LoopElt.basis(word[0])
    i = _choose(word, strategy)
    prod = sym_mul(word[i], word[i + 1])
    if trace is not None:
        trace.append(f"{sym_str(word[i])}*{sym_str(word[i + 1])} -> {prod}")
    out = LoopElt()
    for s, c in prod.items():
        out = out + _reduce_symword(word[:i] + (s,) + word[i + 2 :], strategy, trace).scale(c)
    return out


@lru_cache(maxsize=200_000)
def _reduce_symword_cached(word: tuple, strategy: str) -> LoopElt:
    return _reduce_symword(word, strategy, None)


def _word_syms(w) -> tuple:
    return tuple((_MODE_KIND[m.gen], m.index) for m in w)


def reduce_paper(x: ModeExpr, level=1, strategy: str = "priority", trace: list | None = None) -> LoopElt:
    """Canonical form of x in the literal quotient (level 1 only)."""
    if LevelScalar.coerce(level) != 1:
        raise ValueError(f"the L(1,0) quotient is only defined at level 1, got {level}")
    out = LoopElt()
    for w, c in x.items():
        syms = _word_syms(w)
        if trace is None:
            red = _reduce_symword_cached(syms, strategy)
        else:
            red = _reduce_symword(syms, strategy, trace)
        out = out + red.scale(_as_rat(c))
    return out


def loop_product(x: LoopElt, y: LoopElt) -> LoopElt:
    return x * y


# --------------------------------------------------------------------------
# independent derivation of the table from the letter rules
#
# Normal words: 1, single letters, and e(0)f(t).  Rules, read off verbatim:
#   e e = f f = 0, e(x)h(y) = -e(x+y), h(x)e(y) = e(x+y),
#   h(x)f(y) = -f(x+y), f(x)h(y) = f(x+y),
#   h(x)h(y) = 2e(0)f(x+y) - h(x+y)          (r = 0)
#   e(r)f(s) = e(0)f(r+s)                     (r-independence)
#   f(s)e(r) = (h(0)h(r+s) - h(r+s))/2 = e(0)f(r+s) - h(r+s)


def _letter_rule(a: tuple, b: tuple):
    (x, i), (y, j) = a, b
    n = i + j
    if x == y and x in ("e", "f"):
        return []
    if (x, y) == ("e", "h"):
        return [(-1, (("e", n),))]
    if (x, y) == ("h", "e"):
        return [(1, (("e", n),))]
    if (x, y) == ("h", "f"):
        return [(-1, (("f", n),))]
    if (x, y) == ("f", "h"):
        return [(1, (("f", n),))]
    if (x, y) == ("h", "h"):
        return [(2, (("e", 0), ("f", n))), (-1, (("h", n),))]
    if (x, y) == ("e", "f"):
        if i == 0:
            return None
        return [(1, (("e", 0), ("f", n)))]
    if (x, y) == ("f", "e"):
        return [(1, (("e", 0), ("f", n))), (-1, (("h", n),))]
    raise AssertionError((a, b))


def _letter_reduce(word: tuple, depth: int = 0) -> dict:
    if depth > 64:
        raise RuntimeError("letter rewriting did not terminate")
    for i in range(len(word) - 1):
        rule = _letter_rule(word[i], word[i + 1])
        if rule is None:
            continue
        out: dict = {}
        for c, rep in rule:
            for w, v in _letter_reduce(word[:i] + rep + word[i + 2 :], depth + 1).items():
                out[w] = out.get(w, 0) + c * v
        return {w: v for w, v in out.items() if v}
    return {word: Fraction(1)}


def _sym_to_letters(s: tuple) -> dict:
    if s == ONE_SYM:
        return {(): Fraction(1)}
    kind, m = s
    if kind == "H2":
        return {(("e", 0), ("f", m)): Fraction(2), (("h", m),): Fraction(-1)}
    return {((kind.lower(), m),): Fraction(1)}


def _letters_to_loop(word: tuple) -> LoopElt:
    if not word:
        return LoopElt.one()
    if len(word) == 1:
        x, m = word[0]
        return LoopElt.basis((x.upper(), m))
    if len(word) == 2 and word[0] == ("e", 0) and word[1][0] == "f":
        m = word[1][1]
        return _lit((("H2", m), Fraction(1, 2)), (("H", m), Fraction(1, 2)))
    raise AssertionError(f"not a normal letter word: {word}")


def derive_literal_table(s1: tuple, s2: tuple) -> LoopElt:
    """Product of two basis symbols computed from the letter rules only."""
    out = LoopElt()
    for w1, c1 in _sym_to_letters(s1).items():
        for w2, c2 in _sym_to_letters(s2).items():
            for w, c in _letter_reduce(w1 + w2).items():
                out = out + _letters_to_loop(w).scale(c1 * c2 * c)
    return out


# --------------------------------------------------------------------------
# the involution


def involution_alpha(x: ModeExpr) -> ModeExpr:
    """e(n) -> -f(n), f(n) -> -e(n), h(n) -> -h(n), as an algebra map."""
    swap = {Gen.E: Gen.F, Gen.F: Gen.E, Gen.H: Gen.H}
    out = {}
    for w, c in x.items():
        nw = tuple(Mode(swap[m.gen], m.index) for m in w)
        sign = -1 if len(w) % 2 else 1
        out[nw] = out.get(nw, 0) + sign * c
    return ModeExpr(out)


# --------------------------------------------------------------------------
# four-fold h products


def _hh_rule(x: int, y: int, r: int) -> ModeExpr:
    """2e(r)f(x+y-r) - h(x+y), the literal value of h(x)h(y)."""
    return ModeExpr.word(e(r), f(x + y - r), coeff=2) - ModeExpr.word(h(x + y))


def check_h4(a: int, b: int, c: int, d: int, r: int, s: int, t: int) -> VerifyReport:
    """h(a)h(b)h(c)h(d) against its three-stage expansion, in the literal regime."""
    total = a + b + c + d
    lhs = ModeExpr.word(h(a), h(b), h(c), h(d))
    rhs = (
        ModeExpr.word(e(r), f(total - r), coeff=2)
        - ModeExpr.word(e(s), f(total - s), coeff=2)
        + ModeExpr.word(e(t), f(total - t), coeff=2)
        - ModeExpr.word(h(total))
    )
    rep = VerifyReport(claim="h4", regime="Literal")
    case = rep.add(Case(input=f"(a,b,c,d,r,s,t)=({a},{b},{c},{d},{r},{s},{t})"))

    hcd = ModeExpr.word(h(c), h(d))
    stage1 = _hh_rule(a, b, r) * hcd
    stage2 = ModeExpr.word(e(r), f(total - r), coeff=2) - ModeExpr.word(h(a + b)) * hcd
    stage3 = (
        ModeExpr.word(e(r), f(total - r), coeff=2)
        - ModeExpr.word(e(s), f(total - s), coeff=2)
        + ModeExpr.word(h(a + b + c), h(d))
    )
    chain = [
        ("hh rule on h(a)h(b), free variable r", lhs, stage1),
        ("f(x)h(y) = f(x+y) twice", stage1, stage2),
        ("hh rule on h(a+b)h(c), free variable s", stage2, stage3),
        ("hh rule on h(a+b+c)h(d), free variable t", stage3, rhs),
    ]
    for label, before, after in chain:
        ok = reduce_paper(before - after) == 0
        case.add(Step(label, VERIFIED if ok else FAILED, str(before), str(after)))
    final = reduce_paper(lhs - rhs)
    case.add(
        Step(
            "reduce both sides",
            VERIFIED if final == 0 else FAILED,
            str(reduce_paper(lhs)),
            str(reduce_paper(rhs)),
        )
    )
    return rep

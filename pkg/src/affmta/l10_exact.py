"""Exact ideal generated by e(-1)e(-1) in U(sl2^, 1), with full central terms.

Every derived relation carries an ad-chain certificate: a rational combination
of iterated adjoint actions ad(x1) ... ad(xn) applied to e(-1)e(-1).  Replaying
the chain with exact brackets reproduces the relation, so soundness never
depends on the solver.

Within a bounded index window the ideal is truncated per sector (index sum,
ad(h)-weight) and put in reduced row echelon form.  Two-letter words are
pivoted first, so the rows read as solved rewriting rules; the representative
h(0)h(s) of the weight-0 pair space comes last among pairs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .modes import IDENTITY, Mode, ModeExpr, ad_action, e, f, h, pbw_normal, word_key, word_str
from .sl2 import Gen

LEVEL = 1
SEED = ModeExpr.word(e(-1), e(-1))
_ALPHA_GEN = {Gen.E: Gen.F, Gen.F: Gen.E, Gen.H: Gen.H}


def _weight(w) -> int:
    return sum(m.gen.weight for m in w)


# --------------------------------------------------------------------------
# ad-chain certificates


@dataclass(frozen=True)
class Chain:
    """sum of coeff * ad(x1) ... ad(xn) (e(-1)e(-1)); x1 is applied last."""

    terms: tuple = ()

    def __add__(self, other: "Chain") -> "Chain":
        return Chain(self.terms + other.terms)

    def scale(self, c) -> "Chain":
        return Chain(tuple((Fraction(c) * k, xs) for k, xs in self.terms))

    def ad(self, x: Mode) -> "Chain":
        return Chain(tuple((k, (x,) + xs) for k, xs in self.terms))

    def alpha(self) -> "Chain":
        """Image under the involution, re-expressed from e(-1)e(-1).

        alpha(e(-1)e(-1)) = f(-1)f(-1) = ad(f(0))^4 (e(-1)e(-1)) / 24.
        """
        out = []
        for k, xs in self.terms:
            sign = -1 if len(xs) % 2 else 1
            ys = tuple(Mode(_ALPHA_GEN[m.gen], m.index) for m in xs) + (f(0),) * 4
            out.append((k * sign / 24, ys))
        return Chain(tuple(out))

    def __str__(self) -> str:
        parts = []
        for k, xs in self.terms:
            ads = " ".join(f"ad {m}" for m in xs)
            parts.append(f"{k}*[{ads}]" if ads else f"{k}*[]")
        return " + ".join(parts) or "0"


@lru_cache(maxsize=100_000)
def _ad_chain_value(xs: tuple) -> ModeExpr:
    if not xs:
        return SEED
    return pbw_normal(ad_action(xs[0], _ad_chain_value(xs[1:]), LEVEL), LEVEL)


def chain_value(chain: Chain) -> ModeExpr:
    out = ModeExpr()
    for k, xs in chain.terms:
        out = out + _ad_chain_value(xs).scale(k)
    return pbw_normal(out, LEVEL)


def ee_chain(a: int, b: int) -> Chain:
    """e(a)e(b) = ad h(b+1) ad h(a+1) (e(-1)e(-1)) / 8 - ad h(a+b+2) (e(-1)e(-1)) / 4."""
    return Chain(
        (
            (Fraction(1, 8), (h(b + 1), h(a + 1))),
            (Fraction(-1, 4), (h(a + b + 2),)),
        )
    )


def ff_chain(a: int, b: int) -> Chain:
    return ee_chain(a, b).alpha()


# --------------------------------------------------------------------------
# relation instances


PAPER = "Displayed"
EXACT = "ExactIdeal"


@dataclass
class RelationInstance:
    name: str
    lhs: ModeExpr
    rhs: ModeExpr
    provenance: str
    indices: tuple = ()
    chain: Chain | None = None

    def element(self) -> ModeExpr:
        return self.lhs - self.rhs

    def replay(self) -> bool:
        """Re-derive lhs - rhs from e(-1)e(-1) by exact brackets."""
        if self.chain is None:
            return False
        return pbw_normal(self.element() - chain_value(self.chain), LEVEL).is_zero()

    def index_str(self) -> str:
        return ",".join(f"{k}={v}" for k, v in self.indices)

    def to_line(self) -> str:
        return f"{self.lhs} == {self.rhs}  # {self.provenance}, {self.name}({self.index_str()})"


def _normal(x: ModeExpr) -> ModeExpr:
    return pbw_normal(x, LEVEL)


def ee_relation(a: int, b: int) -> RelationInstance:
    return RelationInstance("ee", ModeExpr.word(e(a), e(b)), ModeExpr(), EXACT, (("a", a), ("b", b)), ee_chain(a, b))


def ff_relation(a: int, b: int) -> RelationInstance:
    return RelationInstance("ff", ModeExpr.word(f(a), f(b)), ModeExpr(), EXACT, (("a", a), ("b", b)), ff_chain(a, b))


def first_rel_exact(k: int, n1: int, n2: int, level=LEVEL) -> RelationInstance:
    """ad f(k) (e(n1)e(n2)), expanded with its central terms."""
    val = ad_action(f(k), ModeExpr.word(e(n1), e(n2)), level)
    return RelationInstance(
        "firstRel", val, ModeExpr(), EXACT, (("k", k), ("n1", n1), ("n2", n2)), ee_chain(n1, n2).ad(f(k))
    )


def second_rel_exact(l: int, k: int, n1: int, n2: int, level=LEVEL) -> RelationInstance:
    inner = ad_action(f(k), ModeExpr.word(e(n1), e(n2)), level)
    val = ad_action(f(l), inner, level)
    return RelationInstance(
        "secondRel",
        val,
        ModeExpr(),
        EXACT,
        (("l", l), ("k", k), ("n1", n1), ("n2", n2)),
        ee_chain(n1, n2).ad(f(k)).ad(f(l)),
    )


def third_rel_exact(m: int, l: int, k: int, n1: int, n2: int, level=LEVEL) -> RelationInstance:
    inner = ad_action(f(k), ModeExpr.word(e(n1), e(n2)), level)
    val = ad_action(f(m), ad_action(f(l), inner, level), level)
    return RelationInstance(
        "thirdRel",
        val,
        ModeExpr(),
        EXACT,
        (("m", m), ("l", l), ("k", k), ("n1", n1), ("n2", n2)),
        ee_chain(n1, n2).ad(f(k)).ad(f(l)).ad(f(m)),
    )


def alpha_relation(rel: RelationInstance) -> RelationInstance:
    from .l10 import involution_alpha

    return RelationInstance(
        "alpha:" + rel.name,
        involution_alpha(rel.lhs),
        involution_alpha(rel.rhs),
        rel.provenance,
        rel.indices,
        rel.chain.alpha() if rel.chain is not None else None,
    )


# displayed (central terms omitted) forms, transcribed as printed
# except for the coefficient "-2(m+n2)" which is read as -2h(m+n2).


def first_rel_displayed(k: int, n1: int, n2: int) -> ModeExpr:
    return (
        ModeExpr.word(e(n2), h(k + n1))
        + ModeExpr.word(e(k + n1 + n2), coeff=2)
        + ModeExpr.word(e(n1), h(k + n2))
    )


def second_rel_displayed(l: int, k: int, n1: int, n2: int) -> ModeExpr:
    return (
        -ModeExpr.word(h(l + n2), h(k + n1))
        + ModeExpr.word(e(n2), f(l + k + n1), coeff=2)
        - ModeExpr.word(h(l + k + n1 + n2), coeff=2)
        - ModeExpr.word(h(l + n1), h(k + n2))
        + ModeExpr.word(e(n1), f(l + k + n2), coeff=2)
    )


def third_rel_displayed(m: int, l: int, k: int, n1: int, n2: int) -> ModeExpr:
    c = -2
    return (
        ModeExpr.word(h(k + n1), f(m + l + n2), coeff=c)
        + ModeExpr.word(h(l + n2), f(m + k + n1), coeff=c)
        + ModeExpr.word(h(k + n2), f(m + l + n1), coeff=c)
        + ModeExpr.word(h(l + n1), f(m + k + n2), coeff=c)
        + ModeExpr.word(h(m + n1), f(l + k + n2), coeff=c)
        + ModeExpr.word(h(m + n2), f(l + k + n1), coeff=c)
        + ModeExpr.word(f(m + l + k + n1 + n2), coeff=-8)
    )


# --------------------------------------------------------------------------
# literal rules as relation instances


def literal_rule(name: str, x: int, y: int, r: int = 0) -> RelationInstance:
    """One instance of a displayed relation, read verbatim at (x, y[, r])."""
    s = x + y
    if name == "ee":
        lhs, rhs = ModeExpr.word(e(x), e(y)), ModeExpr()
    elif name == "ff":
        lhs, rhs = ModeExpr.word(f(x), f(y)), ModeExpr()
    elif name == "eh":
        lhs, rhs = ModeExpr.word(e(x), h(y)), -ModeExpr.word(e(s))
    elif name == "hf":
        lhs, rhs = ModeExpr.word(h(x), f(y)), -ModeExpr.word(f(s))
    elif name == "he":
        lhs, rhs = ModeExpr.word(h(x), e(y)), ModeExpr.word(e(s))
    elif name == "fh":
        lhs, rhs = ModeExpr.word(f(x), h(y)), ModeExpr.word(f(s))
    elif name == "hh+":
        lhs = ModeExpr.word(h(x), h(y)) + ModeExpr.word(h(s))
        rhs = ModeExpr.word(e(r), f(s - r), coeff=2)
    elif name == "hh-":
        lhs = ModeExpr.word(h(x), h(y)) - ModeExpr.word(h(s))
        rhs = ModeExpr.word(f(s - r), e(r), coeff=2)
    else:
        raise ValueError(f"unknown literal rule {name!r}")
    idx = (("x", x), ("y", y)) + ((("r", r),) if name.startswith("hh") else ())
    return RelationInstance(name, lhs, rhs, PAPER, idx)


LITERAL_RULES = ("ee", "ff", "eh", "he", "hf", "fh", "hh+", "hh-")


def defining_instance(name: str, x: int, y: int, r: int = 0, level=LEVEL) -> ModeExpr:
    """The ad-instance whose central-free part is the literal rule."""
    if name == "ee":
        return _normal(ModeExpr.word(e(x), e(y)))
    if name == "ff":
        return _normal(ModeExpr.word(f(x), f(y)))
    if name in ("eh", "he"):
        ex, hy = (x, y) if name == "eh" else (y, x)
        return pbw_normal(ad_action(f(hy - ex), ModeExpr.word(e(ex), e(ex)), level), level)
    if name in ("hf", "fh"):
        hx, fy = (x, y) if name == "hf" else (y, x)
        return pbw_normal(ad_action(e(hx - fy), ModeExpr.word(f(fy), f(fy)), level), level)
    if name in ("hh+", "hh-"):
        inner = ad_action(f(x - r), ModeExpr.word(e(r), e(r)), level)
        return pbw_normal(ad_action(f(y - r), inner, level), level)
    raise ValueError(name)


# --------------------------------------------------------------------------
# sector RREF


def _column_key(w, rep) -> tuple:
    if len(w) >= 2:
        return (0 if w != rep else 1, word_key(w))
    return (2 + (1 - len(w)), word_key(w))


FAMILIES = ("displayed", "full")


class ExactIdeal:
    """Truncation of the ideal to two-letter words with indices in a window.

    ``family="displayed"`` keeps one defining instance per pair, specialized the way
    the displayed derivations specialize (n1 = n2 = r), with central terms.
    ``family="full"`` adds off-diagonal instances and every free variable; it
    is used to exhibit that the closure swallows single modes and 1.
    """

    def __init__(self, window: int = 3, family: str = "displayed", level=LEVEL):
        if window < 1:
            raise ValueError("window must be >= 1")
        if family not in FAMILIES:
            raise ValueError(f"unknown family {family!r}")
        self.window = window
        self.family = family
        self.level = level
        self._sectors: dict = {}

    # generation -----------------------------------------------------------
    def bound(self, s: int) -> int:
        return self.window + abs(s)

    def generators(self, s: int, wt: int) -> list:
        """Certified ideal elements of index sum s and weight wt."""
        b = self.bound(s)
        full = self.family == "full"
        lv = self.level
        out = []
        if wt == 2:
            for x in range(-b, b + 1):
                out.append(first_rel_exact(s - 2 * x, x, x, lv))
            if full:
                for n1 in range(-b, b + 1):
                    for n2 in range(n1 + 1, b + 1):
                        out.append(first_rel_exact(s - n1 - n2, n1, n2, lv))
        elif wt == -2:
            out = [alpha_relation(r) for r in self.generators(s, 2)]
        elif wt == 0:
            # e(r)f(s-r) against a generic pair h(x*)h(s-x*), x* not in {0, s}
            xs = 1 if s != 1 else -1
            ys = s - xs
            for r in range(-b, b + 1):
                out.append(second_rel_exact(ys - r, xs - r, r, r, lv))
            # every other h(x)h(s-x) against e(0)f(s)
            for x in range(-b, b + 1):
                y = s - x
                if abs(y) <= b and x <= y and {x, y} != {xs, ys}:
                    out.append(second_rel_exact(y, x, 0, 0, lv))
            if full:
                for r in range(-b, b + 1):
                    for x in range(-b, b + 1):
                        y = s - x
                        if abs(y) <= b:
                            out.append(second_rel_exact(y - r, x - r, r, r, lv))
                out += [alpha_relation(rel) for rel in list(out)]
        elif wt in (4, -4):
            for a in range(-b, b + 1):
                c = s - a
                if a <= c and abs(c) <= b:
                    out.append(ee_relation(a, c) if wt == 4 else ff_relation(a, c))
        return out

    def representative(self, s: int, wt: int):
        if wt != 0:
            return None
        return (h(0), h(s)) if s >= 0 else (h(s), h(0))

    def sector(self, s: int, wt: int) -> dict:
        """pivot word -> (row, chain); row is fully reduced and monic at the pivot."""
        key = (s, wt)
        if key not in self._sectors:
            self._sectors[key] = self._build(s, wt)
        return self._sectors[key]

    def _build(self, s: int, wt: int) -> dict:
        rep = self.representative(s, wt)
        pivots: dict = {}
        for rel in self.generators(s, wt):
            row, chain = _reduce_row(dict(pbw_normal(rel.element(), self.level).items()), rel.chain, pivots)
            if not row:
                continue
            col = min(row, key=lambda w: _column_key(w, rep))
            lead = Fraction(row[col])
            row = {w: Fraction(c) / lead for w, c in row.items()}
            chain = chain.scale(1 / lead)
            for pc in list(pivots):
                prow, pchain = pivots[pc]
                c = prow.get(col)
                if c:
                    prow = _axpy(prow, row, -c)
                    pivots[pc] = (prow, _merge(pchain + chain.scale(-c)))
            pivots[col] = (row, _merge(chain))
        return pivots

    # queries --------------------------------------------------------------
    def row(self, word: tuple):
        return self.sector(sum(m.index for m in word), _weight(word)).get(word)

    def solved(self, word: tuple) -> ModeExpr | None:
        """word = -(rest of its pivot row), or None if the window leaves it free."""
        if len(word) != 2:
            return None
        entry = self.row(word)
        if entry is None:
            return None
        return ModeExpr({w: -c for w, c in entry[0].items() if w != word})

    def is_fully_solved(self, word: tuple) -> bool:
        sol = self.solved(word)
        return sol is not None and all(len(w) < 2 for w, _ in sol.items())

    def collapsed_singles(self, s: int, wt: int) -> list:
        """Pivots of length <= 1: single modes (or 1) found inside the ideal."""
        return sorted((w for w in self.sector(s, wt) if len(w) < 2), key=word_key)

    def reduce(self, x: ModeExpr, max_steps: int = 500) -> ModeExpr:
        """Rewrite adjacent pairs by their solved rows until none applies."""
        cur = pbw_normal(x, self.level)
        for _ in range(max_steps):
            nxt = ModeExpr()
            changed = False
            for w, c in cur.items():
                rw = self._rewrite_word(w)
                if rw is None:
                    nxt = nxt + ModeExpr({w: c})
                else:
                    changed = True
                    nxt = nxt + rw.scale(c)
            cur = pbw_normal(nxt, self.level)
            if not changed:
                return cur
        raise RuntimeError("exact reduction did not terminate")

    def _rewrite_word(self, w: tuple) -> ModeExpr | None:
        if len(w) == 1 or not w:
            entry = self.row(w) if w else self.sector(0, 0).get(IDENTITY)
            if entry is not None:
                return ModeExpr({x: -c for x, c in entry[0].items() if x != w})
            return None
        for i in range(len(w) - 1):
            pair = w[i : i + 2]
            if pair[0].gen == pair[1].gen and pair[0].gen in (Gen.E, Gen.F):
                return ModeExpr()
            sol = self.solved(pair)
            if sol is not None:
                return ModeExpr.word(*w[:i]) * sol * ModeExpr.word(*w[i + 2 :])
        return None

    def contains(self, x: ModeExpr) -> bool:
        return self.reduce(x).is_zero()

    def solved_relations(self) -> list:
        """Fully determined two-letter rules inside the window."""
        out = []
        w = self.window
        for s in range(-w, w + 1):
            for wt in (2, 0, -2):
                for col, (row, chain) in sorted(self.sector(s, wt).items(), key=lambda kv: word_key(kv[0])):
                    if len(col) != 2 or any(abs(m.index) > w for m in col):
                        continue
                    rhs = ModeExpr({x: -c for x, c in row.items() if x != col})
                    if all(len(x) < 2 for x, _ in rhs.items()):
                        out.append(
                            RelationInstance(
                                "solved",
                                ModeExpr.word(*col),
                                rhs,
                                EXACT,
                                (("word", word_str(col)),),
                                chain,
                            )
                        )
        return out


def _axpy(row: dict, other: dict, c) -> dict:
    out = dict(row)
    for w, v in other.items():
        nv = out.get(w, 0) + c * v
        if nv:
            out[w] = nv
        else:
            out.pop(w, None)
    return out


def _merge(chain: Chain) -> Chain:
    acc: dict = {}
    for k, xs in chain.terms:
        acc[xs] = acc.get(xs, 0) + k
    return Chain(tuple((k, xs) for xs, k in acc.items() if k))


def _reduce_row(row: dict, chain: Chain, pivots: dict):
    chain = chain or Chain()
    for col in [c for c in row if c in pivots]:
        c = row.get(col)
        if not c:
            continue
        prow, pchain = pivots[col]
        row = _axpy(row, prow, -c)
        chain = chain + pchain.scale(-c)
    return row, _merge(chain)


def unit_certificate(window: int = 2) -> Chain:
    """An ad-chain combination whose value is exactly 1.

    The full closure puts e(2) in the ideal; then
    ad f(-2) e(2) = -h(0) - 2 and ad f(0) ad e(0) of that is -2h(0).
    """
    ideal = ExactIdeal(window, family="full")
    entry = ideal.sector(2, 2).get((e(2),))
    if entry is None:
        raise RuntimeError("e(2) not reached; enlarge the window")
    row, c_e2 = entry
    if row != {(e(2),): 1}:
        raise RuntimeError("row for e(2) is not a pure single")
    a = c_e2.ad(f(-2))
    b = a.ad(e(0)).ad(f(0))
    return _merge((a + b.scale(Fraction(-1, 2))).scale(Fraction(-1, 2)))


@lru_cache(maxsize=8)
def exact_ideal(window: int = 3, family: str = "displayed", level=LEVEL) -> ExactIdeal:
    return ExactIdeal(window, family, level)


def derive_exact_relations(window: int) -> list:
    """Certified ee relations, exact first/second/third relations on the diagonal,
    their alpha images, and the solved two-letter rules, all inside the window."""
    if window < 1:
        raise ValueError("window must be >= 1")
    rng = range(-window, window + 1)
    out = []
    for a in rng:
        for b in rng:
            if a <= b:
                out.append(ee_relation(a, b))
    for k in rng:
        for r in rng:
            out.append(first_rel_exact(k, r, r))
    for l in rng:
        for k in rng:
            for r in rng:
                out.append(second_rel_exact(l, k, r, r))
    for k in rng:
        for r in rng:
            out.append(third_rel_exact(k, k, k, r, r))
    out += [alpha_relation(rel) for rel in list(out)]
    out += exact_ideal(window).solved_relations()
    return out


def serialize_relations(rels) -> str:
    return "".join(rel.to_line() + "\n" for rel in rels)


# --------------------------------------------------------------------------
# audit: literal rules against the exact table


@dataclass(frozen=True)
class Discrepancy:
    rule: str
    indices: tuple
    displayed: str
    exact: str
    difference: str
    central: bool

    def key(self) -> tuple:
        return (self.rule, self.indices)

    def to_dict(self) -> dict:
        return {
            "rule": self.rule,
            "indices": ",".join(f"{k}={v}" for k, v in self.indices),
            "displayed": self.displayed,
            "exact": self.exact,
            "difference": self.difference,
            "central": self.central,
        }


@dataclass
class DiscrepancyReport:
    window: int
    entries: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return bool(self.entries)

    def restrict(self, keys) -> "DiscrepancyReport":
        keys = set(keys)
        return DiscrepancyReport(self.window, [d for d in self.entries if d.key() in keys])

    def to_dict(self) -> dict:
        return {
            "claim": "audit-relations",
            "regime": "Literal-vs-Exact",
            "window": self.window,
            "status": "flagged" if self.entries else "verified",
            "cases": [
                {
                    "input": f"{d.rule}({','.join(f'{k}={v}' for k, v in d.indices)})",
                    "status": "flagged",
                    "trace": [d.to_dict()],
                }
                for d in self.entries
            ],
        }

    def canonical_json(self) -> str:
        import json

        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _rule_tuples(rule: str, window: int):
    rng = range(-window, window + 1)
    if rule.startswith("hh"):
        return [(x, y, r) for x in rng for y in rng for r in rng]
    return [(x, y, 0) for x in rng for y in rng]


def _central_involved(rule: str, x: int, y: int, r: int, window: int) -> bool:
    """True when the discrepancy disappears once central terms are dropped."""
    rel = literal_rule(rule, x, y, r)
    return exact_ideal(window, "displayed", 0).reduce(rel.element()).is_zero()


def audit_rule(rule: str, window: int, ideal_window: int | None = None) -> list:
    ideal = exact_ideal(ideal_window or window)
    out = []
    for x, y, r in _rule_tuples(rule, window):
        rel = literal_rule(rule, x, y, r)
        diff = ideal.reduce(rel.element())
        if diff.is_zero():
            continue
        out.append(
            Discrepancy(
                rule,
                rel.indices,
                f"{rel.lhs} == {rel.rhs}",
                f"{rel.lhs} == {ideal.reduce(rel.lhs)}",
                str(diff),
                _central_involved(rule, x, y, r, ideal_window or window),
            )
        )
    return out


def audit_bracket(window: int) -> list:
    """f(d)e(-d) - e(-d)f(d) from the literal table against [f(d), e(-d)]."""
    from .l10 import reduce_paper
    from .modes import affine_bracket

    out = []
    for d in range(-window, window + 1):
        table = reduce_paper(ModeExpr.word(f(d), e(-d)) - ModeExpr.word(e(-d), f(d))).to_modeexpr()
        exact = affine_bracket(f(d), e(-d), LEVEL)
        diff = _normal(exact - table)
        if not diff.is_zero():
            out.append(
                Discrepancy(
                    "bracket[f,e]",
                    (("d", d),),
                    f"f({d})e({-d}) - e({-d})f({d}) == {table}",
                    f"[f({d}),e({-d})] == {exact}",
                    str(diff),
                    True,
                )
            )
    return out


AUDITED = LITERAL_RULES + ("bracket[f,e]",)


def _audit_task(args):
    rule, window = args
    if rule == "bracket[f,e]":
        return audit_bracket(window)
    return audit_rule(rule, window)


def audit_relations(window: int, jobs: int = 1) -> DiscrepancyReport:
    """Index-by-index comparison of the literal rules with the exact table."""
    if window < 1:
        raise ValueError("window must be >= 1")
    tasks = [(rule, window) for rule in AUDITED]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_audit_task, tasks))
    else:
        parts = [_audit_task(t) for t in tasks]
    entries = [d for part in parts for d in part]
    entries.sort(key=lambda d: (AUDITED.index(d.rule), d.indices))
    return DiscrepancyReport(window, entries)

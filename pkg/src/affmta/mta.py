"""Mode transition algebra elements for L(1,0) and the strong-unit verifier.

An element of the degree (m, -n) piece is a finite sum of triples
``left (x) z (x) right``: ``left`` a word of total degree m (a class modulo
N_L), ``z`` an element of the Zhu algebra U(sl2)/<e^2>, ``right`` a word of
degree -n (a class modulo N_R).  The product of two triples pairs the inner
right and left classes through the circledast map and multiplies middles.

Two regimes are supported and never mixed:

``Literal``
    the closed rule table of :mod:`affmta.l10`;
``Exact``
    exact normal ordering with central terms, plus the certified ideal of
    :mod:`affmta.l10_exact` for left and right classes.

Equality is decided after canonicalization: middles are slid into the
neighbouring class and the result is reduced in the declared regime.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .l10 import ONE_SYM, LoopElt, reduce_paper
from .l10_exact import exact_ideal
from .modes import IDENTITY, Mode, ModeExpr, e, f, format_expr, h, pbw_normal
from .pbw import ZHU_BASIS, ZhuL10Elt, zhu_project
from .report import FAILED, FLAGGED, VERIFIED, Case, Step, VerifyReport
from .sl2 import bracket_basis, form_basis
from .vacuum import project_to_zhu

LITERAL = "Literal"
EXACT = "Exact"
REGIMES = (LITERAL, EXACT)
L10 = "L10"
PAIR_MODES = ("ordered", "unordered")

# zero-mode lifts of the Zhu basis
_LIFT = {
    "1": (),
    "e": (e(0),),
    "f": (f(0),),
    "h": (h(0),),
    "ef": (e(0), f(0)),
}


def _check_regime(regime: str) -> str:
    if regime not in REGIMES:
        raise ValueError(f"unknown regime {regime!r}; expected one of {REGIMES}")
    return regime


def lift_zhu(z: ZhuL10Elt) -> ModeExpr:
    out = ModeExpr()
    for name, c in z.as_dict().items():
        out = out + ModeExpr.word(*_LIFT[name], coeff=c)
    return out


def loop_to_zhu(x: LoopElt) -> ZhuL10Elt:
    """Degree-zero literal symbols to the Zhu basis; H2(0) is h^2 = 2ef - h."""
    acc = {b: Fraction(0) for b in ZHU_BASIS}
    for s, c in x.items():
        if s == ONE_SYM:
            acc["1"] += c
            continue
        kind, m = s
        if m != 0:
            raise ValueError(f"{kind}({m}) is not of degree zero")
        if kind == "H2":
            acc["ef"] += 2 * c
            acc["h"] -= c
        else:
            acc[kind.lower()] += c
    return ZhuL10Elt(acc)


# --------------------------------------------------------------------------
# brackets: exact, and the d-independent form used in the displayed proofs


def _bracket(x: Mode, y: Mode, central) -> ModeExpr:
    out = {}
    for g, c in bracket_basis(x.gen, y.gen).items():
        out[(Mode(g, x.index + y.index),)] = c
    if x.index + y.index == 0 and x.index != 0:
        w = form_basis(x.gen, y.gen)
        if w:
            out[IDENTITY] = central(x.index) * w
    return ModeExpr(out)


def _exact_central(m: int) -> int:
    return m


def _displayed_central(m: int) -> int:
    return 1 if m > 0 else -1


def _commutator(a: ModeExpr, b: ModeExpr, central) -> ModeExpr:
    """Leibniz expansion of [a, b] at level 1 with the given central rule."""
    out = ModeExpr()
    for wa, ca in a.items():
        for i, x in enumerate(wa):
            pre, post = ModeExpr.word(*wa[:i]), ModeExpr.word(*wa[i + 1 :])
            for wb, cb in b.items():
                for j, y in enumerate(wb):
                    br = _bracket(x, y, central)
                    if br:
                        inner = ModeExpr.word(*wb[:j]) * br * ModeExpr.word(*wb[j + 1 :])
                        out = out + (pre * inner * post).scale(ca * cb)
    return out


def exact_bracket(a: ModeExpr, b: ModeExpr) -> ModeExpr:
    """[a, b] at level 1, normal ordered."""
    return pbw_normal(_commutator(a, b, _exact_central), 1)


def displayed_bracket(a: ModeExpr, b: ModeExpr) -> ModeExpr:
    """[a, b] with every central term m (a|b) replaced by sign(m) (a|b)."""
    return pbw_normal(_commutator(a, b, _displayed_central), 1)


# --------------------------------------------------------------------------
# regime engines


def circledast(beta: ModeExpr, alpha: ModeExpr, regime: str, central=_exact_central) -> ZhuL10Elt:
    """beta (*) alpha in the Zhu algebra; zero unless the degrees cancel."""
    _check_regime(regime)
    db, da = beta.homogeneous_degree(), alpha.homogeneous_degree()
    if db is None or da is None or db + da != 0:
        return ZhuL10Elt()
    if regime == LITERAL:
        # alpha beta lies in N_L, so beta alpha = [beta, alpha] there
        return loop_to_zhu(reduce_paper(_commutator(beta, alpha, central)))
    return zhu_project(project_to_zhu(beta * alpha, 1), 1)


def _exact_window(x: ModeExpr) -> int:
    top = max((abs(m.index) for w in x for m in w), default=1)
    return max(3, top + 1)


def reduce_class(x: ModeExpr, regime: str):
    """Canonical form of a one-sided class: LoopElt (Literal) or ModeExpr (Exact)."""
    if _check_regime(regime) == LITERAL:
        return reduce_paper(x)
    return exact_ideal(_exact_window(x)).reduce(x)


def class_str(x) -> str:
    return format_expr(x) if isinstance(x, ModeExpr) else str(x)


# --------------------------------------------------------------------------
# elements


def _word(x) -> ModeExpr:
    if isinstance(x, ModeExpr):
        return x
    if isinstance(x, Mode):
        return ModeExpr.word(x)
    if isinstance(x, (tuple, list)):
        return ModeExpr.word(*x)
    return ModeExpr.scalar(x)


def _zhu(z) -> ZhuL10Elt:
    if isinstance(z, ZhuL10Elt):
        return z
    if isinstance(z, str):
        return ZhuL10Elt.basis(z)
    return ZhuL10Elt.basis("1").scale(Fraction(z))


@dataclass
class MtaElt:
    """Finite sum of triples (left, middle, right) in one bidegree piece (m, -n)."""

    bidegree: tuple
    triples: list = field(default_factory=list)
    tag: str = L10
    regime: str = LITERAL

    @classmethod
    def triple(cls, left, middle, right, regime: str = LITERAL) -> "MtaElt":
        lw, rw = _word(left), _word(right)
        m = lw.homogeneous_degree() or 0
        n = -(rw.homogeneous_degree() or 0)
        return cls((m, n), [(lw, _zhu(middle), rw)], L10, _check_regime(regime))

    def _compatible(self, other: "MtaElt") -> None:
        if self.tag != other.tag:
            raise ValueError(f"tag mismatch: {self.tag} vs {other.tag}")
        if self.regime != other.regime:
            raise ValueError(f"regime mismatch: {self.regime} vs {other.regime}")

    def __add__(self, other: "MtaElt") -> "MtaElt":
        self._compatible(other)
        if self.bidegree != other.bidegree and self.triples and other.triples:
            raise ValueError(f"bidegree mismatch: {self.bidegree} vs {other.bidegree}")
        bideg = self.bidegree if self.triples else other.bidegree
        return MtaElt(bideg, self.triples + other.triples, self.tag, self.regime)

    def scale(self, c) -> "MtaElt":
        return MtaElt(self.bidegree, [(l, z.scale(c), r) for l, z, r in self.triples], self.tag, self.regime)

    def canonical(self) -> dict:
        return canonical_form(self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MtaElt):
            return NotImplemented
        self._compatible(other)
        if self.triples and other.triples and self.bidegree != other.bidegree:
            return False
        return self.canonical() == (other.canonical() if other.triples else {})

    def is_zero(self) -> bool:
        return not self.canonical()

    def __str__(self) -> str:
        if not self.triples:
            return "0"
        return " + ".join(f"{format_expr(l)} (x) ({z}) (x) {format_expr(r)}" for l, z, r in self.triples)


def star(x: MtaElt, y: MtaElt) -> MtaElt:
    """(alpha (x) z (x) beta) * (alpha' (x) z' (x) beta') = alpha (x) z (beta (*) alpha') z' (x) beta'."""
    x._compatible(y)
    m, j = x.bidegree
    k, n = y.bidegree
    if j != k:
        return MtaElt((m, n), [], x.tag, x.regime)
    out = []
    for l1, z1, r1 in x.triples:
        for l2, z2, r2 in y.triples:
            mid = z1 * circledast(r1, l2, x.regime) * z2
            if not mid.is_zero():
                out.append((l1, mid, r2))
    return MtaElt((m, n), out, x.tag, x.regime)


# --------------------------------------------------------------------------
# canonical forms


def _vec_add(acc: dict, key, c) -> None:
    v = acc.get(key, 0) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def _class_items(x, regime: str):
    return list(x.items())


def _tensor_vector(x: MtaElt) -> dict:
    """Slide each middle into the left class; return {(left_key, right_key): coeff}."""
    acc: dict = {}
    for l, z, r in x.triples:
        left = reduce_class(l * lift_zhu(z), x.regime)
        right = reduce_class(r, x.regime)
        for lk, lc in _class_items(left, x.regime):
            for rk, rc in _class_items(right, x.regime):
                _vec_add(acc, (lk, rk), lc * rc)
    return acc


def _key_word(key, regime: str) -> ModeExpr:
    if regime == LITERAL:
        return LoopElt.basis(key).to_modeexpr()
    return ModeExpr.word(*key)


def _balancing_rows(keys, regime: str) -> list:
    """(L u) (x) R - L (x) (u R) for zero modes u, over the left and right keys present."""
    lefts = sorted({k[0] for k in keys}, key=repr)
    rights = sorted({k[1] for k in keys}, key=repr)
    rows = []
    for u in (e(0), f(0), h(0)):
        uw = ModeExpr.word(u)
        for lk in lefts:
            lu = reduce_class(_key_word(lk, regime) * uw, regime)
            for rk in rights:
                ur = reduce_class(uw * _key_word(rk, regime), regime)
                row: dict = {}
                for a, c in _class_items(lu, regime):
                    _vec_add(row, (a, rk), c)
                for b, c in _class_items(ur, regime):
                    _vec_add(row, (lk, b), -c)
                if row:
                    rows.append(row)
    return rows


def _reduce_against(vec: dict, rows: list) -> dict:
    """Reduce vec modulo the span of rows (Gauss-Jordan with a fixed column order)."""
    pivots: list = []
    for row in rows:
        row = dict(row)
        for col, prow in pivots:
            c = row.get(col)
            if c:
                for k, v in prow.items():
                    _vec_add(row, k, -c * v)
        if not row:
            continue
        col = max(row, key=repr)
        lead = Fraction(row[col])
        row = {k: Fraction(v) / lead for k, v in row.items()}
        new = []
        for pc, prow in pivots:
            c = prow.get(col)
            if c:
                prow = dict(prow)
                for k, v in row.items():
                    _vec_add(prow, k, -c * v)
            new.append((pc, prow))
        pivots = new + [(col, row)]
    out = dict(vec)
    for col, prow in pivots:
        c = out.get(col)
        if c:
            for k, v in prow.items():
                _vec_add(out, k, -c * v)
    return out


def canonical_form(x: MtaElt) -> dict:
    """Hashable normal form used for equality in the declared regime."""
    m, n = x.bidegree
    if n == 0 or m == 0:
        acc: dict = {}
        for l, z, r in x.triples:
            red = reduce_class(l * lift_zhu(z) * r, x.regime)
            for k, c in _class_items(red, x.regime):
                _vec_add(acc, k, c)
        return acc
    vec = _tensor_vector(x)
    if not vec:
        return vec
    return _reduce_against(vec, _balancing_rows(vec.keys(), x.regime))


# --------------------------------------------------------------------------
# the strong unit


def pair_coefficient(d: int, n: int, m: int) -> Fraction:
    return Fraction(1, 4 * d) if d % 2 == 0 and n == m == d // 2 else Fraction(1, 2 * d)


def unit_terms(d: int, pairs: str = "ordered") -> list:
    """[(coeff, left word, right word)] of the degree-d strong unit."""
    if d < 1:
        raise ValueError("d must be >= 1")
    if pairs not in PAIR_MODES:
        raise ValueError(f"pairs must be one of {PAIR_MODES}")
    out = [
        (Fraction(1, 3), (e(-d),), (f(d),)),
        (Fraction(1, 3), (f(-d),), (e(d),)),
        (Fraction(1, 6), (h(-d),), (h(d),)),
    ]
    for n in range(d - 1, 0, -1):
        m = d - n
        if pairs == "unordered" and n < m:
            continue
        out.append((pair_coefficient(d, n, m), (h(-n), h(-m)), (h(n), h(m))))
    return out


def build_strong_unit(d: int, pairs: str = "ordered", regime: str = LITERAL, perturb: dict | None = None) -> MtaElt:
    """The degree-d unit; ``perturb`` maps a term index to an additive shift of its coefficient."""
    triples = []
    for i, (c, l, r) in enumerate(unit_terms(d, pairs)):
        c = c + Fraction((perturb or {}).get(i, 0))
        triples.append((ModeExpr.word(*l), ZhuL10Elt.basis("1").scale(c), ModeExpr.word(*r)))
    return MtaElt((d, d), triples, L10, _check_regime(regime))


def spanning_left(d: int) -> list:
    out = [(e(-d),), (f(-d),), (h(-d),)]
    out += [(h(-r), h(-(d - r))) for r in range(d - 1, 0, -1) if r >= d - r]
    return out


def spanning_right(d: int) -> list:
    out = [(e(d),), (f(d),), (h(d),)]
    out += [(h(r), h(d - r)) for r in range(d - 1, 0, -1) if r >= d - r]
    return out


def _word_label(w) -> str:
    return format_expr(ModeExpr.word(*w))


def _diff_str(a, b) -> str:
    return class_str(a - b) if not isinstance(a, ZhuL10Elt) else str(a - b)


def _unit_case(d: int, regime: str, side: str, s: tuple, xname: str, terms: list) -> Case:
    sw = ModeExpr.word(*s)
    x = ZhuL10Elt.basis(xname)
    if side == "left":
        label = f"I_{d} * ({_word_label(s)} (x) {xname})"
        target = reduce_class(sw * lift_zhu(x), regime)
    else:
        label = f"({xname} (x) {_word_label(s)}) * I_{d}"
        target = reduce_class(lift_zhu(x) * sw, regime)
    case = Case(label)
    total = None
    for i, (c, lt, rt) in enumerate(terms):
        lw, rw = ModeExpr.word(*lt), ModeExpr.word(*rt)
        inner_b, inner_a = (rw, sw) if side == "left" else (sw, lw)
        tag = f"term {i}: {_word_label(lt)} (x) {_word_label(rt)}"
        ex = exact_bracket(inner_b, inner_a)
        disp = displayed_bracket(inner_b, inner_a)
        br = f"[{format_expr(inner_b)}, {format_expr(inner_a)}]"
        if ex == disp:
            case.add(Step(f"{tag}: bracket", VERIFIED, br, format_expr(ex)))
        else:
            case.add(Step(f"{tag}: bracket", FLAGGED, br, format_expr(ex),
                          f"displayed form {format_expr(disp)}; central term depends on the mode index"))
        mid = circledast(inner_b, inner_a, regime)
        mid_disp = circledast(inner_b, inner_a, LITERAL, _displayed_central)
        st = VERIFIED if mid == mid_disp else FLAGGED
        note = "" if st == VERIFIED else f"displayed computation gives {mid_disp}"
        case.add(Step(f"{tag}: circledast", st, br, str(mid), note))
        z = (mid * x if side == "left" else x * mid).scale(c)
        if side == "left":
            before = lw * lift_zhu(z)
        else:
            before = lift_zhu(z) * rw
        contrib = reduce_class(before, regime)
        contrib_disp = reduce_paper(before)
        if regime == LITERAL or _same_class(contrib, contrib_disp):
            case.add(Step(f"{tag}: slide", VERIFIED, format_expr(before), class_str(contrib)))
        else:
            case.add(Step(f"{tag}: slide", FLAGGED, format_expr(before), class_str(contrib),
                          f"literal rules give {contrib_disp}"))
        total = contrib if total is None else total + contrib
    if _same(total, target, regime):
        case.add(Step("compare", VERIFIED, class_str(total), class_str(target)))
    else:
        case.add(Step("compare", FAILED, class_str(total), class_str(target),
                      f"difference {_diff_str(total, target)}"))
    return case


def _same(a, b, regime: str) -> bool:
    return (a - b).is_zero() if regime == EXACT else a == b


def _same_class(exact_val: ModeExpr, literal_val: LoopElt) -> bool:
    """Compare an exact class with a literal one through the literal rules."""
    return reduce_paper(exact_val) == literal_val


def verify_strong_unit(d: int, regime: str = LITERAL, pairs: str = "ordered", perturb: dict | None = None) -> VerifyReport:
    """Check I_d * (s (x) x) = s (x) x and (x (x) s) * I_d = x (x) s on spanning elements."""
    _check_regime(regime)
    terms = [(c + Fraction((perturb or {}).get(i, 0)), l, r) for i, (c, l, r) in enumerate(unit_terms(d, pairs))]
    report = VerifyReport(f"strong-unit d={d} pairs={pairs}", regime)
    for side, span in (("left", spanning_left(d)), ("right", spanning_right(d))):
        for s in span:
            for xname in ZHU_BASIS:
                report.add(_unit_case(d, regime, side, s, xname, terms))
    report.metadata = {"d": d, "pairs": pairs, "perturb": {str(k): str(v) for k, v in (perturb or {}).items()}}
    return report


def unit_idempotent(d: int = 1, pairs: str = "ordered", regime: str = LITERAL) -> bool:
    u = build_strong_unit(d, pairs, regime)
    return star(u, u) == u


# --------------------------------------------------------------------------
# [h(n)h(m), h(-r)h(-s)]


def _delta(a: int, b: int) -> int:
    return 1 if a == b else 0


def bracket_hh_delta(n: int, m: int, r: int, s: int) -> ModeExpr:
    """The delta formula for [h(n)h(m), h(-r)h(-s)], before normal ordering."""
    hw = lambda a, b: ModeExpr.word(h(a), h(b))  # noqa: E731
    return (
        hw(n, -s).scale(2 * m * _delta(m, r))
        + hw(n, -r).scale(2 * m * _delta(m, s))
        + hw(-s, m).scale(2 * n * _delta(n, r))
        + hw(-r, m).scale(2 * n * _delta(n, s))
    )


def bracket_hh_quartic(n: int, m: int, r: int, s: int) -> ModeExpr:
    """[h(n)h(m), h(-r)h(-s)] by double Leibniz; asserts agreement with the delta formula."""
    if min(n, m, r, s) <= 0 or n + m != r + s:
        raise ValueError("need positive n, m, r, s with n + m = r + s")
    lhs = ModeExpr.word(h(n), h(m))
    rhs = ModeExpr.word(h(-r), h(-s))
    exact = exact_bracket(lhs, rhs)
    formula = pbw_normal(bracket_hh_delta(n, m, r, s), 1)
    if exact != formula:
        raise AssertionError(f"delta formula disagrees: {formula} vs {exact}")
    return exact


__all__ = [
    "EXACT",
    "LITERAL",
    "MtaElt",
    "PAIR_MODES",
    "REGIMES",
    "bracket_hh_delta",
    "bracket_hh_quartic",
    "build_strong_unit",
    "canonical_form",
    "circledast",
    "displayed_bracket",
    "exact_bracket",
    "lift_zhu",
    "loop_to_zhu",
    "pair_coefficient",
    "reduce_class",
    "spanning_left",
    "spanning_right",
    "star",
    "unit_idempotent",
    "unit_terms",
    "verify_strong_unit",
]

from .vacuum_unit import (  # noqa: E402
    ConstraintSystem,
    nonexistence_certificate,
    vacuum_constraints,
)

__all__ += ["ConstraintSystem", "nonexistence_certificate", "vacuum_constraints"]

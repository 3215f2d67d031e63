"""Degreewise reductions in the enveloping algebra of the universal affine VOA.

Left classes live in U / N_L (trailing positive-index modes vanish), right
classes in U / N_R (leading negative-index modes vanish).  Both are computed
by exact normal ordering: ascending mode index, ties broken f < h < e, so that
a word of zero-index modes reads directly as a PBW monomial f^a h^b e^c.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .modes import Mode, ModeExpr, pbw_normal
from .pbw import PbwElt
from .scalars import K
from .sl2 import GENS, Gen, LieElt, invariant_form, lie_bracket


def _require_homogeneous(x: ModeExpr, sign: int) -> int | None:
    d = x.homogeneous_degree()
    if d is not None and d * sign < 0:
        raise ValueError(f"expected degree {'>=' if sign > 0 else '<='} 0, got {d}")
    return d


def reduce_mod_left(x: ModeExpr, level=K) -> ModeExpr:
    """Canonical representative of x in U / N^1_L."""
    _require_homogeneous(x, 1)
    normal = pbw_normal(x, level)
    return ModeExpr({w: c for w, c in normal.items() if not (w and w[-1].index > 0)})


def reduce_mod_right(x: ModeExpr, level=K) -> ModeExpr:
    """Canonical representative of x in U / N^1_R."""
    _require_homogeneous(x, -1)
    normal = pbw_normal(x, level)
    return ModeExpr({w: c for w, c in normal.items() if not (w and w[0].index < 0)})


def zero_word_to_pbw(w) -> tuple[int, int, int]:
    counts = {Gen.F: 0, Gen.H: 0, Gen.E: 0}
    for m in w:
        if m.index != 0:
            raise ValueError(f"{m} is not a zero-index mode")
        counts[m.gen] += 1
    return (counts[Gen.F], counts[Gen.H], counts[Gen.E])


def project_to_zhu(x: ModeExpr, level=K) -> PbwElt:
    """Image of a degree-zero element in A = U_0 / N^1_L U_0 = U(sl2)."""
    red = reduce_mod_left(x, level)
    out = PbwElt()
    for w, c in red.items():
        out = out + PbwElt({zero_word_to_pbw(w): c})
    return out


def pairing_circledast(beta: ModeExpr, alpha: ModeExpr, level=K) -> PbwElt:
    """beta (x) alpha -> class of beta*alpha in A when degrees cancel, else 0."""
    db, da = beta.homogeneous_degree(), alpha.homogeneous_degree()
    if db is None or da is None or db + da != 0:
        return PbwElt()
    return project_to_zhu(beta * alpha, level)


# --------------------------------------------------------------------------
# the bidegree (1,-1) piece: span of a(-1) (x) u (x) b(1)


def bracket_pairing(b: Gen, a: Gen, level=K) -> PbwElt:
    """[b, a] + (b|a) level, as an element of U(sl2): the value of b(1) (*) a(-1)."""
    br = lie_bracket(LieElt.basis(b), LieElt.basis(a))
    out = PbwElt.scalar(invariant_form(LieElt.basis(b), LieElt.basis(a)) * level)
    for g, mono in ((Gen.F, (1, 0, 0)), (Gen.H, (0, 1, 0)), (Gen.E, (0, 0, 1))):
        c = br.coeff(g)
        if c:
            out = out + PbwElt({mono: c})
    return out


@dataclass
class A1Elt:
    """Sum of a(-1) (x) u (x) b(1), keyed by (a, b)."""

    terms: dict = field(default_factory=dict)

    @classmethod
    def triple(cls, a: Gen, u: PbwElt | int, b: Gen) -> "A1Elt":
        if not isinstance(u, PbwElt):
            u = PbwElt.scalar(u)
        return cls({(a, b): u} if u else {})

    def __add__(self, other: "A1Elt") -> "A1Elt":
        out = dict(self.terms)
        for key, u in other.terms.items():
            v = out.get(key, PbwElt()) + u
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        return A1Elt(out)

    def scale(self, s) -> "A1Elt":
        return A1Elt({key: u.scale(s) for key, u in self.terms.items() if u.scale(s)})

    def __eq__(self, other) -> bool:
        if not isinstance(other, A1Elt):
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        return all(self.terms.get(k_, PbwElt()) == other.terms.get(k_, PbwElt()) for k_ in keys)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (a, b), u in sorted(self.terms.items(), key=lambda kv: (kv[0][0].value, kv[0][1].value)):
            parts.append(f"{a.value}(-1) (x) {u} (x) {b.value}(1)")
        return " + ".join(parts)


def a1_star(x: A1Elt, y: A1Elt, level=K) -> A1Elt:
    """(a(-1) (x) u (x) b(1)) * (a'(-1) (x) u' (x) b'(1)) = a(-1) (x) u([b,a'] + (b|a')k)u' (x) b'(1)."""
    out = A1Elt()
    for (a, b), u in x.terms.items():
        for (a2, b2), u2 in y.terms.items():
            mid = u * bracket_pairing(b, a2, level) * u2
            if mid:
                out = out + A1Elt({(a, b2): mid})
    return out


def a1_basis(level=K):
    return [A1Elt.triple(a, 1, b) for a in GENS for b in GENS]


__all__ = [
    "A1Elt",
    "Mode",
    "a1_basis",
    "a1_star",
    "bracket_pairing",
    "pairing_circledast",
    "project_to_zhu",
    "reduce_mod_left",
    "reduce_mod_right",
    "zero_word_to_pbw",
]

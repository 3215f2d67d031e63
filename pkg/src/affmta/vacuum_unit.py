"""Strong-unit constraints for the universal affine VOA in degree one.

A candidate unit in degree one is I_1 = sum a(-1) (x) c_{a,b} (x) b(1) with
nine unknowns c_{a,b} in U(sl2).  Multiplying 1 (x) b(1) by I_1 and reading
off the coefficient of each right basis element gives nine equations
``sum_a M(b, a) c_{a,b'} = delta_{b,b'}`` with M(b, a) = [b, a] + (b|a) k.

The b = e, b' = e equation is (h + k) c_{f,e} - 2 e c_{h,e} = 1, i.e. 1 would
lie in the right ideal (h + k) U + e U.  Transposing (e <-> f) turns this into
the left ideal U (h + k) + U f, which is killed by the coefficient of the
lowest-weight vector w in U / (U f + U (h + k)).  So the equation has no
solution, for every level.

The replay of the linear-independence elimination that makes the coefficient
extraction legitimate divides by 2(k + 2), so at k = -2 the certificate is
inconclusive.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .pbw import PbwElt, casimir, format_pbw, parse_pbw, transpose_tau, witness_action, witness_phi
from .report import FAILED, INCONCLUSIVE, VERIFIED, Case, Step, VerifyReport
from .scalars import K, LevelScalar, specialize_level
from .sl2 import GENS, Gen
from .vacuum import bracket_pairing

_G = {Gen.E: "e", Gen.F: "f", Gen.H: "h"}


def _is_formal(level) -> bool:
    return isinstance(level, LevelScalar) and not level.is_constant()


def _spec(x: PbwElt, level) -> PbwElt:
    """Specialize the formal level in every coefficient (identity for formal k)."""
    if _is_formal(level):
        return x
    v = LevelScalar.coerce(level).to_rat() if isinstance(level, LevelScalar) else Fraction(level)
    return PbwElt({m: specialize_level(c, v) if isinstance(c, LevelScalar) else c for m, c in x.items()})


def _parse(text: str, level) -> PbwElt:
    env = {"Omega": casimir()}
    if not _is_formal(level):
        env["k"] = LevelScalar.coerce(level).to_rat() if isinstance(level, LevelScalar) else Fraction(level)
    return _spec(parse_pbw(text, env), level)


# --------------------------------------------------------------------------
# the constraint system


@dataclass(frozen=True)
class Constraint:
    """sum over unknowns of left_factor * unknown == rhs."""

    b: str
    coefficient_of: str
    terms: tuple  # ((unknown, PbwElt), ...) with zero factors dropped
    rhs: int

    def render(self) -> str:
        parts = [f"({format_pbw(p)}) {u}" for u, p in self.terms]
        return f"{' + '.join(parts) or '0'} = {self.rhs}"


@dataclass
class ConstraintSystem:
    unknowns: tuple
    constraints: list = field(default_factory=list)

    def equation(self, b: str, coefficient_of: str) -> Constraint:
        for c in self.constraints:
            if c.b == b and c.coefficient_of == coefficient_of:
                return c
        raise KeyError((b, coefficient_of))

    def rename(self, mapping: dict) -> "ConstraintSystem":
        new = [
            Constraint(c.b, c.coefficient_of, tuple((mapping.get(u, u), p) for u, p in c.terms), c.rhs)
            for c in self.constraints
        ]
        return ConstraintSystem(tuple(mapping.get(u, u) for u in self.unknowns), new)

    def canonical(self) -> tuple:
        """Structure with unknowns replaced by their position: invariant under renaming."""
        pos = {u: i for i, u in enumerate(self.unknowns)}
        return tuple(
            (c.b, c.coefficient_of, tuple(sorted((pos[u], tuple(sorted(p.items(), key=repr))) for u, p in c.terms)), c.rhs)
            for c in self.constraints
        )

    def render(self) -> str:
        return "\n".join(f"b={c.b}, coefficient of {c.coefficient_of}(1): {c.render()}" for c in self.constraints)


def unknown_name(a: Gen, b: Gen) -> str:
    return f"c_{_G[a]}{_G[b]}"


def vacuum_constraints(level=K) -> ConstraintSystem:
    """Expand (1 (x) b(1)) * I_1 = 1 (x) b(1) coefficientwise."""
    unknowns = tuple(unknown_name(a, b) for a in GENS for b in GENS)
    system = ConstraintSystem(unknowns)
    for b in GENS:
        for beta in GENS:
            terms = []
            for a in GENS:
                m = _spec(bracket_pairing(b, a, K), level)
                if m:
                    terms.append((unknown_name(a, beta), m))
            system.constraints.append(Constraint(_G[b], _G[beta], tuple(terms), 1 if b == beta else 0))
    return system


# --------------------------------------------------------------------------
# linear forms lambda * p + mu * q + nu * r with the unknowns on the left


class LinForm(dict):
    def __add__(self, other):
        out = LinForm(self)
        for u, p in other.items():
            v = out.get(u, PbwElt()) + p
            if v:
                out[u] = v
            else:
                out.pop(u, None)
        return out

    def scale(self, c):
        return LinForm({u: p.scale(c) for u, p in self.items() if p.scale(c)})

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def rmul(self, q: PbwElt):
        return LinForm({u: p * q for u, p in self.items() if p * q})

    def same(self, other) -> bool:
        return not (self - other)

    def render(self) -> str:
        return " + ".join(f"{u}({format_pbw(p)})" for u, p in sorted(self.items())) or "0"


# unknown attached to each right basis element by the recomputed action
LIN_UNKNOWN = {Gen.H: "lambda", Gen.E: "mu", Gen.F: "nu"}

DISPLAYED = {
    "lin1": {"lambda": "k", "mu": "-e", "nu": "f"},
    "lin2": {"lambda": "2 e", "nu": "-(h - k)"},
    "lin3": {"lambda": "-2 f", "mu": "h + k"},
    "lin4a": {"lambda": "2 e", "nu": "-(h - k)"},
    "lin4b": {"lambda": "2 f", "mu": "-(h + k)"},
    "lin5": {"lambda": "2 e f", "nu": "-f(h - k - 2)"},
    "lin6": {"lambda": "2 f e", "mu": "-e(h + k + 2)"},
    "lin7": {"lambda": "2 h", "nu": "-f(h - k - 2)", "mu": "e(h + k + 2)"},
    "lin8": {"nu": "2(k + 2) f", "lambda": "(k + 2)(h + k)"},
    "lin9": {"nu": "f", "lambda": "1/2 (h + k)"},
    "lin10": {"mu": "e", "lambda": "1/2 (h - k)"},
    "lin11": {"lambda": "4 f e + (h - k)(h + k + 2)"},
    "lin12": {"lambda": "Omega - k(k + 2)"},
}

IDENTITIES = (
    ("(h - k) f", "f(h - k - 2)"),
    ("(h + k) e", "e(h + k + 2)"),
    ("e f - f e", "h"),
    ("4 f e + (h - k)(h + k + 2)", "Omega - k(k + 2)"),
)


def displayed_form(name: str, level=K) -> LinForm:
    return LinForm({u: _parse(t, level) for u, t in DISPLAYED[name].items()})


def action_form(a: Gen, level=K) -> LinForm:
    """(sum_b u_b (x) b(1)) * (a(-1) (x) 1): coefficient form sum_b u_b M(b, a)."""
    out = LinForm()
    for b in GENS:
        m = _spec(bracket_pairing(b, a, K), level)
        if m:
            out = out + LinForm({LIN_UNKNOWN[b]: m})
    return out


def _lin_chain(level, case: Case) -> bool:
    """Replay the elimination; False if it stops (pole)."""
    P = lambda t: _parse(t, level)  # noqa: E731
    forms: dict = {}

    def check(name: str, derived: LinForm, how: str) -> None:
        shown = displayed_form(name, level)
        ok = derived.same(shown)
        case.add(Step(name, VERIFIED if ok else FAILED, how, shown.render(),
                      "" if ok else f"derived {derived.render()}"))
        forms[name] = shown if ok else derived

    check("lin1", action_form(Gen.H, level).scale(Fraction(1, 2)), "1/2 action of h(-1)")
    check("lin2", action_form(Gen.E, level), "action of e(-1)")
    check("lin3", action_form(Gen.F, level), "action of f(-1)")
    check("lin4a", forms["lin2"], "lin2 rearranged")
    check("lin4b", -forms["lin3"], "lin3 rearranged")
    check("lin5", forms["lin4a"].rmul(P("f")), "lin4a times f on the right")
    check("lin6", forms["lin4b"].rmul(P("e")), "lin4b times e on the right")
    check("lin7", forms["lin5"] - forms["lin6"], "lin5 - lin6, using ef - fe = h")
    check("lin8", forms["lin7"] + forms["lin1"].rmul(P("h + k + 2")), "lin7 + lin1 (h + k + 2)")
    divisor = 2 * (LevelScalar.coerce(level) + 2) if _is_formal(level) else 2 * (Fraction(_const(level)) + 2)
    if divisor == 0:
        case.add(Step("lin8 -> lin9", INCONCLUSIVE, "lin8 / 2(k + 2)", "",
                      "inconclusive at critical-adjacent level: 2(k + 2) = 0, cannot divide"))
        return False
    check("lin9", forms["lin8"].scale(LevelScalar.coerce(divisor).inverse() if _is_formal(level) else 1 / divisor),
          "lin8 / 2(k + 2)")
    check("lin10", forms["lin9"] - forms["lin1"], "lin9 - lin1")
    check("lin11", forms["lin6"].scale(2) + forms["lin10"].rmul(P("h + k + 2")).scale(2),
          "2 lin6 + 2 lin10 (h + k + 2)")
    check("lin12", forms["lin11"], "lin11 rewritten with the Casimir")
    return True


def _const(level):
    return LevelScalar.coerce(level).to_rat() if isinstance(level, LevelScalar) else Fraction(level)


def _random_pbw(rng: random.Random, max_deg: int) -> PbwElt:
    out = PbwElt()
    for _ in range(rng.randint(1, 4)):
        deg = rng.randint(0, max_deg)
        a = rng.randint(0, deg)
        b = rng.randint(0, deg - a)
        out = out + PbwElt.mono(a, b, deg - a - b, Fraction(rng.randint(-5, 5), rng.randint(1, 3)))
    return out


def witness_samples(n: int = 200, seed: int = 0, level=K) -> list:
    """x (h + k) + y f with x, y of PBW degree <= 2; the samples have degree <= 3."""
    rng = random.Random(seed)
    hk, fe = _parse("h + k", level), _parse("f", level)
    return [_random_pbw(rng, 2) * hk + _random_pbw(rng, 2) * fe for _ in range(n)]


def nonexistence_certificate(level=K, samples: int = 200, seed: int = 0) -> VerifyReport:
    """No strong unit in degree one, as a three-part certificate."""
    tag = "formal k" if _is_formal(level) else f"k = {_const(level)}"
    wl = level if _is_formal(level) else _const(level)
    report = VerifyReport("no-strong-unit-degree-1", "Exact")

    ident = report.add(Case(f"U(sl2) identities, {tag}"))
    for lhs, rhs in IDENTITIES:
        ok = _parse(lhs, level) == _parse(rhs, level)
        ident.add(Step(f"{lhs} = {rhs}", VERIFIED if ok else FAILED))

    chain = report.add(Case(f"linear independence elimination, {tag}"))
    if _lin_chain(level, chain):
        chain.add(Step("conclude", VERIFIED if chain.status == VERIFIED else FAILED,
                       "lambda(Omega - k(k+2)) = 0 in a domain", "lambda = mu = nu = 0"))

    omega = report.add(Case(f"Omega - k(k + 2) is nonzero, {tag}"))
    val = _parse("Omega - k(k + 2)", level)
    omega.add(Step("canonical form", VERIFIED if val else FAILED, "Omega - k(k + 2)", format_pbw(val)))

    cons = report.add(Case(f"constraint b = e, coefficient of e(1), {tag}"))
    eq = vacuum_constraints(level).equation("e", "e")
    expected = {"c_fe": _parse("h + k", level), "c_he": _parse("-2 e", level)}
    ok = dict(eq.terms) == expected and eq.rhs == 1
    cons.add(Step("extract", VERIFIED if ok else FAILED, "(1 (x) e(1)) * I_1", eq.render()))

    wit = report.add(Case(f"witness functional, {tag}"))
    gens = [transpose_tau(p) for _, p in eq.terms]
    for g in gens:
        ok = not witness_action(g, wl)
        wit.add(Step(f"({format_pbw(g)}) w = 0", VERIFIED if ok else FAILED, "", "",
                     "" if ok else "generator does not kill the lowest-weight vector"))
    one = witness_phi(PbwElt.one(), wl)
    wit.add(Step("phi(1) = 1", VERIFIED if one == 1 else FAILED, "", str(one)))
    bad = sum(1 for s in witness_samples(samples, seed, level) if witness_phi(s, wl) != 0)
    wit.add(Step(f"phi vanishes on {samples} samples x(h+k) + y f", VERIFIED if not bad else FAILED,
                 "", f"{bad} nonzero"))

    report.metadata = {"level": tag, "samples": samples, "seed": seed}
    return report


__all__ = [
    "Constraint",
    "ConstraintSystem",
    "LinForm",
    "action_form",
    "displayed_form",
    "nonexistence_certificate",
    "vacuum_constraints",
    "witness_samples",
]

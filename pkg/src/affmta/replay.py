"""Step-by-step replay of displayed derivation chains.

A script is a text file, one step per line::

    BEFORE  ==>  AFTER  @ JUSTIFICATION

with ``#`` comments and three header directives::

    # script: BASECASE
    # params: r
    # bindings: r=-3..3
    # algebra: affine          (or sl2)

``bindings`` lists index environments separated by ``;``; each is a
comma-separated list of ``name=value`` or ``name=lo..hi`` (ranges expand to a
cartesian product).

Justifications understood in the affine algebra (level 1, formal k inside the
engine):

``exact``
    BEFORE = AFTER in U(sl2^, 1).
``ideal(G; G; ...)``
    BEFORE - AFTER is a rational combination of the cited ideal elements.  Each
    G is ``ad X ad Y ... FAMILY(args)`` with FAMILY one of ``ee``, ``ff``,
    ``firstRel``, ``secondRel``, ``thirdRel``.
``rule(NAME; x, y[, r]) ...``
    AFTER follows from BEFORE by the cited displayed rules; each instance is
    then checked against the exact ideal.
``h4(a, b, c, d; r, s, t)``
    shorthand for the six rule instances used by the four-fold h expansion.
``literal``
    the step holds in the literal rule table.

In the ``sl2`` algebra: ``pbw`` (identity in U(sl2) over formal k),
``lin(NAME)`` (linear-form elimination step) and ``constraint(b, beta)``
(coefficient equation of the degree-one unit system).

Statuses: verified (holds exactly), flagged (holds only after dropping central
terms, or only under the literal rules; the note says which), failed.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .l10 import reduce_paper
from .l10_exact import ee_relation, exact_ideal, ff_relation, literal_rule
from .modes import Mode, ModeExpr, ad_action, e, f, format_expr, h, parse_expr, pbw_normal
from .pbw import PbwElt, casimir, format_pbw, parse_pbw
from .report import FAILED, FLAGGED, INCONCLUSIVE, VERIFIED, Case, Step, VerifyReport
from .scalars import K, LevelScalar, parse_scalar, specialize_level
from .sl2 import Gen
from .vacuum_unit import LIN_UNKNOWN, LinForm, action_form, vacuum_constraints

ARROW = "==>"


@dataclass(frozen=True)
class ScriptStep:
    before: str
    after: str
    justification: str
    line: int


@dataclass
class DerivationScript:
    id: str
    params: tuple = ()
    bindings: list = field(default_factory=list)
    algebra: str = "affine"
    steps: list = field(default_factory=list)

    def tokens(self) -> list:
        """Token stream of every step, used by the golden-file check."""
        out = []
        for s in self.steps:
            out.append(" ".join(_tokenize(s.before)) + " ==> " + " ".join(_tokenize(s.after))
                       + " @ " + " ".join(_tokenize(s.justification)))
        return out


_TOKEN = re.compile(r"hh[+-]|\d+|[A-Za-z_]\w*|\S")


def _tokenize(text: str) -> list:
    return _TOKEN.findall(text)


# --------------------------------------------------------------------------
# parsing


def _expand_binding(spec: str) -> list:
    names, values = [], []
    for part in spec.split(","):
        part = part.strip()
        if not part:
            continue
        name, _, val = part.partition("=")
        name, val = name.strip(), val.strip()
        if ".." in val:
            lo, hi = val.split("..")
            values.append(list(range(int(lo), int(hi) + 1)))
        else:
            values.append([int(val)])
        names.append(name)
    return [dict(zip(names, combo)) for combo in itertools.product(*values)]


def parse_script(text: str, default_id: str = "SCRIPT") -> DerivationScript:
    script = DerivationScript(default_id)
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            key, sep, val = body.partition(":")
            key = key.strip().lower()
            if not sep:
                continue
            if key == "script":
                script.id = val.strip()
            elif key == "params":
                script.params = tuple(val.split())
            elif key == "bindings":
                script.bindings = [b for spec in val.split(";") for b in _expand_binding(spec)] or [{}]
            elif key == "algebra":
                script.algebra = val.strip()
            continue
        code = line.split(" #", 1)[0].strip()
        if ARROW not in code or "@" not in code:
            raise ValueError(f"line {lineno}: expected 'BEFORE ==> AFTER @ JUSTIFICATION'")
        lhs, rest = code.split(ARROW, 1)
        after, just = rest.rsplit("@", 1)
        script.steps.append(ScriptStep(lhs.strip(), after.strip(), just.strip(), lineno))
    if not script.bindings:
        script.bindings = [{}]
    if script.algebra not in ("affine", "sl2"):
        raise ValueError(f"unknown algebra {script.algebra!r}")
    return script


def scripts_dir() -> Path:
    return Path(str(resources.files("affmta") / "scripts"))


BUILTIN = (
    "BASECASE",
    "ALLZERO",
    "CHECKIDEAL",
    "FIRSTREL",
    "SECONDREL",
    "THIRDREL",
    "HH-FROM-SECONDREL",
    "FF-ZERO",
    "H4",
    "LIN-CHAIN",
    "THMA-EXPANSION",
    "LEFTUNIT-E",
    "LEFTUNIT-F",
    "LEFTUNIT-H",
    "LEFTUNIT-HH",
    "RIGHTUNIT-E",
    "RIGHTUNIT-F",
    "RIGHTUNIT-H",
    "RIGHTUNIT-HH",
)


def load_script(name: str, directory: str | Path | None = None) -> DerivationScript:
    path = Path(name)
    if not path.suffix:
        path = Path(directory or scripts_dir()) / f"{name}.txt"
    return parse_script(path.read_text(encoding="utf-8"), path.stem)


def builtin_scripts(directory: str | Path | None = None) -> dict:
    return {n: load_script(n, directory) for n in BUILTIN}


# --------------------------------------------------------------------------
# affine checks


def _at(x: ModeExpr, v) -> ModeExpr:
    return ModeExpr({w: specialize_level(c, v) if isinstance(c, LevelScalar) else c for w, c in x.items()})


def _solve_span(target: ModeExpr, gens: list):
    """Rational coefficients c with target = sum c_i gens_i, or None."""
    cols = [dict(g.items()) for g in gens]
    words = sorted({w for g in cols for w in g} | set(target.terms), key=repr)
    # augmented rows: one per word
    n = len(cols)
    rows = [[Fraction(cols[j].get(w, 0)) for j in range(n)] + [Fraction(target.coeff(w))] for w in words]
    piv_cols, r = [], 0
    for c in range(n):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        lead = rows[r][c]
        rows[r] = [v / lead for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                fac = rows[i][c]
                rows[i] = [a - fac * b for a, b in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    if any(row[n] for row in rows[r:]):
        return None
    sol = [Fraction(0)] * n
    for i, c in enumerate(piv_cols):
        sol[c] = rows[i][n]
    return sol


_FAMILY_ARITY = {"ee": 2, "ff": 2, "firstRel": 3, "secondRel": 4, "thirdRel": 5}


def _index(text: str, env: dict) -> int:
    val = parse_scalar(text, env)
    if not val.is_constant() or val.to_rat().denominator != 1:
        raise ValueError(f"index {text!r} is not an integer")
    return int(val.to_rat())


def _split_args(body: str) -> list:
    out, depth, cur = [], 0, ""
    for ch in body:
        if ch == "," and depth == 0:
            out.append(cur)
            cur = ""
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur += ch
    if cur.strip():
        out.append(cur)
    return [a.strip() for a in out]


_MODE_RE = re.compile(r"([efh])\(([^()]*(?:\([^()]*\)[^()]*)*)\)")


def _ideal_generator(text: str, env: dict):
    """(element at formal k, certification ok) for 'ad X ad Y FAMILY(args)'."""
    text = text.strip()
    ads = []
    while text.startswith("ad "):
        text = text[3:].strip()
        m = _MODE_RE.match(text)
        if not m:
            raise ValueError(f"bad ad operand in {text!r}")
        ads.append(Mode(Gen(m.group(1)), _index(m.group(2), env)))
        text = text[m.end():].strip()
    m = re.fullmatch(r"(\w+)\((.*)\)", text)
    if not m or m.group(1) not in _FAMILY_ARITY:
        raise ValueError(f"unknown ideal generator {text!r}")
    fam, args = m.group(1), [_index(a, env) for a in _split_args(m.group(2))]
    if len(args) != _FAMILY_ARITY[fam]:
        raise ValueError(f"{fam} takes {_FAMILY_ARITY[fam]} indices")
    certified = True
    if fam == "ff":
        base = ModeExpr.word(f(args[0]), f(args[1]))
        if (args[0], args[1]) != (-1, -1):
            certified = ff_relation(*args).replay()
    else:
        n1, n2 = args[-2], args[-1]
        base = ModeExpr.word(e(n1), e(n2))
        if (n1, n2) != (-1, -1):
            certified = ee_relation(n1, n2).replay()
        # firstRel(k,..) = ad f(k); secondRel(l,k,..) = ad f(l) ad f(k); thirdRel(m,l,k,..)
        ads = ads + [f(i) for i in args[:-2]]
    val = base
    for x in reversed(ads):
        val = ad_action(x, val, K)
    return pbw_normal(val, K), certified


_JUST_RE = re.compile(r"(\w+)\s*\(([^()]*(?:\([^()]*\)[^()]*)*)\)|(\w+)")


def _parse_justification(text: str) -> list:
    out = []
    for m in _JUST_RE.finditer(text):
        if m.group(3):
            out.append((m.group(3), ""))
        else:
            out.append((m.group(1), m.group(2)))
    return out


def _rule_instances(items: list, env: dict) -> list:
    out = []
    for name, body in items:
        if name == "rule":
            rname, _, args = body.partition(";")
            idx = [_index(a, env) for a in _split_args(args)]
            out.append(literal_rule(rname.strip(), *idx))
        elif name == "h4":
            quad, _, free = body.partition(";")
            a, b, c, d = [_index(x, env) for x in _split_args(quad)]
            r, s, t = [_index(x, env) for x in _split_args(free)]
            out += [
                literal_rule("hh+", a, b, r),
                literal_rule("fh", a + b - r, c),
                literal_rule("fh", a + b + c - r, d),
                literal_rule("hh+", a + b, c, s),
                literal_rule("fh", a + b + c - s, d),
                literal_rule("hh+", a + b + c, d, t),
            ]
    return out


def _pattern(rel):
    """The two-letter word a rule rewrites, and what it becomes."""
    word = next(w for w in rel.lhs if len(w) == 2)
    c = rel.lhs.coeff(word)
    repl = ModeExpr.word(*word) - rel.element().scale(Fraction(1) / c)
    return word, repl


def _rewrite(x: ModeExpr, rules: list, max_rounds: int = 50) -> ModeExpr:
    pats = [_pattern(r) for r in rules]
    cur = x
    for _ in range(max_rounds):
        out, changed = ModeExpr(), False
        for w, c in cur.items():
            hit = None
            for i in range(len(w) - 1):  # leftmost pair first
                for word, repl in pats:
                    if w[i : i + 2] == word:
                        hit = (i, repl)
                        break
                if hit:
                    break
            if hit is None:
                out = out + ModeExpr({w: c})
            else:
                i, repl = hit
                changed = True
                out = out + (ModeExpr.word(*w[:i]) * repl * ModeExpr.word(*w[i + 2 :])).scale(c)
        cur = out
        if not changed:
            break
    return cur


def _rule_key(rel) -> tuple:
    return (rel.name, rel.indices)


def degenerate(rel) -> bool:
    """True when a central term can enter: h(0) against a nonzero mode, or an h-pair summing to 0."""
    idx = dict(rel.indices)
    x, y = idx["x"], idx["y"]
    if rel.name in ("eh", "fh"):
        return y == 0 and x != 0
    if rel.name in ("he", "hf"):
        return x == 0 and y != 0
    if rel.name.startswith("hh"):
        return x + y == 0
    return False


def _certify_rule(rel) -> tuple:
    """(status, note) for one displayed rule instance against the exact ideal."""
    top = max((abs(m.index) for w in rel.element() for m in w), default=1)
    window = max(3, top + 1)
    rem = exact_ideal(window).reduce(rel.element())
    label = f"{rel.name}({rel.index_str()})"
    if rem.is_zero():
        return VERIFIED, ""
    if exact_ideal(window, "displayed", 0).reduce(rel.element()).is_zero():
        return FLAGGED, f"{label} holds only after dropping central terms; exact remainder {format_expr(rem)}"
    return FLAGGED, f"{label} holds only under the literal rules; exact remainder {format_expr(rem)}"


def _difference_status(d_formal: ModeExpr) -> tuple:
    d1 = _at(d_formal, 1)
    if d1.is_zero():
        return VERIFIED, ""
    if _at(d_formal, 0).is_zero():
        return FLAGGED, f"holds only after dropping central terms; exact difference {format_expr(d1)}"
    if not reduce_paper(d1):
        return FLAGGED, f"holds only under the literal rules; exact difference {format_expr(d1)}"
    return FAILED, f"difference {format_expr(d1)}"


def _check_affine(step: ScriptStep, env: dict) -> Step:
    before = parse_expr(step.before, K, env)
    after = parse_expr(step.after, K, env)
    items = _parse_justification(step.justification)
    kinds = {n for n, _ in items}
    d = pbw_normal(before - after, K)
    label = f"line {step.line}: {step.justification}"
    shown_b, shown_a = format_expr(_at(pbw_normal(before, K), 1)), format_expr(_at(pbw_normal(after, K), 1))

    if kinds == {"exact"}:
        st, note = _difference_status(d)
        return Step(label, st, shown_b, shown_a, note)

    if kinds == {"literal"}:
        d1 = _at(d, 1)
        if d1.is_zero():
            return Step(label, VERIFIED, shown_b, shown_a)
        if not reduce_paper(d1):
            return Step(label, FLAGGED, shown_b, shown_a, f"literal rules only; exact difference {format_expr(d1)}")
        return Step(label, FAILED, shown_b, shown_a, f"difference {format_expr(d1)}")

    if kinds == {"ideal"}:
        gens, cert_ok = [], True
        for _, body in items:
            for g in body.split(";"):
                val, ok = _ideal_generator(g, env)
                gens.append(val)
                cert_ok &= ok
        if not cert_ok:
            return Step(label, FAILED, shown_b, shown_a, "a cited generator does not replay from e(-1)e(-1)")
        d1 = _at(d, 1)
        if _solve_span(d1, [_at(g, 1) for g in gens]) is not None:
            return Step(label, VERIFIED, shown_b, shown_a)
        sol0 = _solve_span(_at(d, 0), [_at(g, 0) for g in gens])
        if sol0 is not None:
            resid = d1
            for c, g in zip(sol0, gens):
                resid = resid - _at(g, 1).scale(c)
            return Step(label, FLAGGED, shown_b, shown_a,
                        f"holds only after dropping central terms; central term {format_expr(pbw_normal(resid, 1))}")
        if not reduce_paper(d1):
            return Step(label, FLAGGED, shown_b, shown_a, "holds only under the literal rules")
        return Step(label, FAILED, shown_b, shown_a, "not a combination of the cited ideal elements")

    if kinds <= {"rule", "h4"}:
        rules = _rule_instances(items, env)
        elems = [pbw_normal(r.element(), K) for r in rules]
        if _solve_span(_at(d, 1), [_at(x, 1) for x in elems]) is not None:
            st, note = VERIFIED, ""
        else:
            # the rules used as rewrites inside longer words
            st, note = _difference_status(pbw_normal(_rewrite(before - after, rules), K))
        if st == FAILED:
            return Step(label, FAILED, shown_b, shown_a, f"does not follow from the cited rules; {note}")
        notes = [note] if note else []
        for rel in rules:
            s2, n2 = _certify_rule(rel)
            if s2 != VERIFIED:
                st = FLAGGED
                notes.append(n2)
        return Step(label, st, shown_b, shown_a, "; ".join(dict.fromkeys(notes)))

    raise ValueError(f"line {step.line}: unknown justification {step.justification!r}")


# --------------------------------------------------------------------------
# sl2 checks: PBW identities, linear-form elimination, unit constraints

# unknowns as the displayed derivation attaches them to e(1), f(1), h(1)
STATED_LABELS = {Gen.E: "lambda", Gen.F: "mu", Gen.H: "nu"}
_LIN_TERM = re.compile(r"\s*([+-])?\s*(\w+)\s*\(")


def _sl2_env(env: dict) -> dict:
    out = {"Omega": casimir()}
    if "k" in env:
        out["k"] = Fraction(env["k"])
    return out


def _pbw(text: str, env: dict) -> PbwElt:
    return parse_pbw(text, _sl2_env(env))


def _balanced(text: str, start: int) -> int:
    depth = 0
    for i in range(start, len(text)):
        if text[i] == "(":
            depth += 1
        elif text[i] == ")":
            depth -= 1
            if depth == 0:
                return i
    raise ValueError(f"unbalanced parentheses in {text!r}")


def _parse_linform(text: str, env: dict) -> LinForm:
    """'lambda(2 e) - nu(h - k)': unknowns on the left of their PBW factor."""
    out, pos = LinForm(), 0
    while pos < len(text.strip()):
        m = _LIN_TERM.match(text, pos)
        if not m:
            raise ValueError(f"bad linear form {text!r}")
        end = _balanced(text, m.end() - 1)
        val = _pbw(text[m.end():end], env)
        if m.group(1) == "-":
            val = -val
        out = out + LinForm({m.group(2): val})
        pos = end + 1
        while pos < len(text) and text[pos] == " ":
            pos += 1
    return out


def _parse_right_form(text: str, env: dict) -> dict:
    """'(h + k) c_fe + (-2 e) c_he': PBW factors on the left of the unknown."""
    out, pos, text = {}, 0, text.strip()
    while pos < len(text):
        sign = 1
        while text[pos] in "+- ":
            sign = -sign if text[pos] == "-" else sign
            pos += 1
        end = _balanced(text, pos)
        val = _pbw(text[pos + 1 : end], env).scale(sign)
        m = re.match(r"\s*(\w+)", text[end + 1 :])
        out[m.group(1)] = out.get(m.group(1), PbwElt()) + val
        pos = end + 1 + m.end()
        while pos < len(text) and text[pos] == " ":
            pos += 1
    return {u: p for u, p in out.items() if p}


def _eval_combination(text: str, env: dict, forms: dict):
    """Sum of terms [c] NAME [* (PBW)] [/ (PBW)] with NAME a stored form or act(x)."""
    total = LinForm()
    for sign, body in re.findall(r"([+-]?)\s*((?:[^+-]|\([^()]*\))+)", _protect(text)):
        body = _unprotect(body).strip()
        if not body:
            continue
        m = re.fullmatch(r"(\d+(?:/\d+)?)?\s*(act\([efh]\)|\w+)\s*(?:\*\s*\((.*)\))?\s*(?:/\s*\((.*)\))?", body)
        if not m:
            raise ValueError(f"bad combination term {body!r}")
        coef = Fraction(m.group(1)) if m.group(1) else Fraction(1)
        name = m.group(2)
        if name.startswith("act("):
            form = action_form(Gen(name[4]), Fraction(env["k"]) if "k" in env else K)
            form = LinForm({STATED_LABELS[g]: form[u] for g, u in LIN_UNKNOWN.items() if u in form})
        else:
            form = forms[name]
        if m.group(3):
            form = form.rmul(_pbw(m.group(3), env))
        if m.group(4):
            div = _pbw(m.group(4), env)
            c = div.coeff((0, 0, 0))
            if any(mono != (0, 0, 0) for mono in div.terms) or not c:
                raise ZeroDivisionError(f"cannot divide by {m.group(4)}")
            form = form.scale(LevelScalar.coerce(c).inverse())
        total = total + form.scale(-coef if sign == "-" else coef)
    return total


def _protect(text: str) -> str:
    out, depth = [], 0
    for ch in text:
        depth += ch == "("
        depth -= ch == ")"
        out.append({"+": "\x01", "-": "\x02"}.get(ch, ch) if depth else ch)
    return "".join(out)


def _unprotect(text: str) -> str:
    return text.replace("\x01", "+").replace("\x02", "-")


def _relabelings(form: LinForm, target: LinForm):
    # the relabeling from the stated attachment to the recomputed one first
    order = [("mu", "nu", "lambda")] + list(itertools.permutations(("lambda", "mu", "nu")))
    for perm in order:
        mapping = dict(zip(("lambda", "mu", "nu"), perm))
        if mapping == {u: u for u in mapping}:
            continue
        renamed = LinForm({mapping[u]: p for u, p in form.items()})
        if renamed.same(target):
            return mapping
    return None


def _check_sl2(step: ScriptStep, env: dict, forms: dict) -> Step:
    items = _parse_justification(step.justification)
    name, body = items[0]
    label = f"line {step.line}: {step.justification}"
    if name == "pbw":
        ok = _pbw(step.before, env) == _pbw(step.after, env)
        return Step(label, VERIFIED if ok else FAILED, step.before, step.after,
                    "" if ok else f"difference {format_pbw(_pbw(step.before, env) - _pbw(step.after, env))}")
    if name == "lin":
        target = _parse_linform(step.after, env)
        forms[body.strip()] = target
        try:
            derived = _eval_combination(step.before, env, forms)
        except ZeroDivisionError as exc:
            return Step(label, INCONCLUSIVE, step.before, step.after, f"inconclusive: {exc}")
        if derived.same(target):
            return Step(label, VERIFIED, step.before, step.after)
        mapping = _relabelings(derived, target)
        if mapping:
            ren = ", ".join(f"{a}->{b}" for a, b in mapping.items() if a != b)
            return Step(label, FLAGGED, step.before, step.after,
                        f"holds only after relabeling the unknowns ({ren}); recomputed {derived.render()}")
        return Step(label, FAILED, step.before, step.after, f"derived {derived.render()}")
    if name == "constraint":
        b, beta = [a.strip() for a in body.split(",")]
        level = Fraction(env["k"]) if "k" in env else K
        eq = vacuum_constraints(level).equation(b, beta)
        lhs = _parse_right_form(step.before, env)
        rhs = _pbw(step.after, env)
        ok = lhs == dict(eq.terms) and rhs == PbwElt.scalar(eq.rhs)
        return Step(label, VERIFIED if ok else FAILED, step.before, step.after,
                    "" if ok else f"expansion gives {eq.render()}")
    raise ValueError(f"line {step.line}: unknown justification {step.justification!r}")


# --------------------------------------------------------------------------
# driver


def _binding_str(env: dict) -> str:
    return ", ".join(f"{k}={v}" for k, v in env.items())


def replay(script: DerivationScript, params: dict | list | None = None) -> VerifyReport:
    """Replay every step for each binding; never stops early."""
    if params is None:
        bindings = script.bindings
    elif isinstance(params, dict):
        bindings = [params]
    else:
        bindings = list(params)
    report = VerifyReport(f"replay:{script.id}", "Replay")
    for env in bindings:
        missing = [p for p in script.params if p not in env]
        if missing:
            raise ValueError(f"{script.id}: unbound index {', '.join(missing)}")
        case = report.add(Case(f"{script.id}({_binding_str(env)})"))
        forms: dict = {}
        for step in script.steps:
            try:
                if script.algebra == "sl2":
                    res = _check_sl2(step, env, forms)
                else:
                    res = _check_affine(step, env)
            except (ValueError, KeyError, ZeroDivisionError) as exc:
                res = Step(f"line {step.line}: {step.justification}", FAILED, step.before, step.after, f"error: {exc}")
            case.add(res)
    report.metadata = {"script": script.id, "bindings": len(bindings)}
    return report


def _replay_named(args):
    name, directory = args
    return replay(load_script(name, directory))


def replay_suite(names=None, directory: str | Path | None = None, jobs: int = 1) -> list:
    """Replay scripts, in parallel processes when ``jobs > 1``; order is preserved."""
    tasks = [(n, directory) for n in (names or BUILTIN)]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_replay_named, tasks))
    return [_replay_named(t) for t in tasks]


def rule_tuples_used(directory: str | Path | None = None, non_degenerate: bool = True) -> set:
    """Audit keys of the displayed-rule instances cited by the built-in scripts.

    With ``non_degenerate`` instances that can pick up a central term are
    left out.
    """
    out = set()
    for script in builtin_scripts(directory).values():
        if script.algebra != "affine":
            continue
        for env in script.bindings:
            for step in script.steps:
                rules = _rule_instances(_parse_justification(step.justification), env)
                for rel in rules:
                    if not (non_degenerate and degenerate(rel)):
                        out.add(_rule_key(rel))
    return out


def golden_lines(directory: str | Path | None = None) -> list:
    lines = []
    for name, script in builtin_scripts(directory).items():
        lines += [f"{name}: {t}" for t in script.tokens()]
    return lines


def golden_check(directory: str | Path | None = None, golden: str | Path | None = None) -> list:
    """Lines that differ between the scripts and the shipped golden file."""
    path = Path(golden) if golden else Path(directory or scripts_dir()) / "GOLDEN"
    expected = path.read_text(encoding="utf-8").splitlines()
    current = golden_lines(directory)
    return sorted(set(expected) ^ set(current))


__all__ = [
    "BUILTIN",
    "DerivationScript",
    "ScriptStep",
    "builtin_scripts",
    "degenerate",
    "golden_check",
    "golden_lines",
    "load_script",
    "parse_script",
    "replay",
    "replay_suite",
    "rule_tuples_used",
]

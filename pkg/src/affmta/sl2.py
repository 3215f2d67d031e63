"""The Lie algebra sl2 in the basis {e, h, f}."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .scalars import LevelScalar


class Gen(Enum):
    E = "e"
    H = "h"
    F = "f"

    def __str__(self) -> str:
        return self.value

    @property
    def weight(self) -> int:
        """ad(h)-eigenvalue."""
        return {"e": 2, "h": 0, "f": -2}[self.value]


E, H, F = Gen.E, Gen.H, Gen.F
GENS = (E, H, F)

# PBW tie-break among modes of equal index: f < h < e
GEN_ORDER = {F: 0, H: 1, E: 2}

# [x, y] on basis elements, as {gen: coeff}
_BRACKET: dict[tuple[Gen, Gen], dict[Gen, int]] = {
    (E, F): {H: 1},
    (F, E): {H: -1},
    (H, E): {E: 2},
    (E, H): {E: -2},
    (H, F): {F: -2},
    (F, H): {F: 2},
}

_FORM: dict[tuple[Gen, Gen], int] = {(E, F): 1, (F, E): 1, (H, H): 2}


def bracket_basis(x: Gen, y: Gen) -> dict[Gen, int]:
    return _BRACKET.get((x, y), {})


def form_basis(x: Gen, y: Gen) -> int:
    return _FORM.get((x, y), 0)


@dataclass(frozen=True)
class LieElt:
    e: object = 0
    h: object = 0
    f: object = 0

    @classmethod
    def basis(cls, g: Gen) -> "LieElt":
        return cls(**{g.value: 1})

    def coeff(self, g: Gen):
        return getattr(self, g.value)

    def __add__(self, other: "LieElt") -> "LieElt":
        return LieElt(self.e + other.e, self.h + other.h, self.f + other.f)

    def __sub__(self, other: "LieElt") -> "LieElt":
        return LieElt(self.e - other.e, self.h - other.h, self.f - other.f)

    def scale(self, c) -> "LieElt":
        return LieElt(c * self.e, c * self.h, c * self.f)

    def is_zero(self) -> bool:
        return not (self.e or self.h or self.f)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieElt):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash((LevelScalar.coerce(self.e), LevelScalar.coerce(self.h), LevelScalar.coerce(self.f)))

    def __str__(self) -> str:
        parts = [f"{c}{g}" if c != 1 else str(g) for g, c in ((E, self.e), (H, self.h), (F, self.f)) if c]
        return " + ".join(parts) or "0"


def lie_bracket(a: LieElt, b: LieElt) -> LieElt:
    acc = {g: 0 for g in GENS}
    for x in GENS:
        cx = a.coeff(x)
        if not cx:
            continue
        for y in GENS:
            cy = b.coeff(y)
            if not cy:
                continue
            for z, c in bracket_basis(x, y).items():
                acc[z] = acc[z] + c * cx * cy
    return LieElt(acc[E], acc[H], acc[F])


def invariant_form(a: LieElt, b: LieElt):
    """Normalized invariant form: (e|f) = 1, (h|h) = 2."""
    total = 0
    for x in GENS:
        for y in GENS:
            w = form_basis(x, y)
            if w:
                total = total + w * a.coeff(x) * b.coeff(y)
    return LevelScalar.coerce(total)

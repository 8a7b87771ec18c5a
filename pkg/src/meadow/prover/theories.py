"""Axiom theories: named equations and indexed axiom schemes."""
from __future__ import annotations

from dataclasses import dataclass, field

from .. import terms as T
from ..terms import Term

DEFAULT_BOUND = 8


class TheoryError(ValueError):
    """Unknown theory or axiom, or a scheme index outside its bound."""


def _eqs(pairs):
    return {name: (T.parse(lhs), T.parse(rhs)) for name, lhs, rhs in pairs}


CR_AXIOMS = _eqs([
    ("CR1", "(x + y) + z", "x + (y + z)"),
    ("CR2", "x + y", "y + x"),
    ("CR3", "x + 0", "x"),
    ("CR4", "x + -x", "0"),
    ("CR5", "(x * y) * z", "x * (y * z)"),
    ("CR6", "x * y", "y * x"),
    ("CR7", "1 * x", "x"),
    ("CR8", "x * (y + z)", "x * y + x * z"),
])

MD_AXIOMS = _eqs([
    ("Inv", "(x^-1)^-1", "x"),
    ("RIL", "x * (x * x^-1)", "x"),
])

SIGNS_AXIOMS = _eqs([
    ("S1", "s(one(x))", "one(x)"),
    ("S2", "s(zero(x))", "zero(x)"),
    ("S3", "s(-1)", "-1"),
    ("S4", "s(x^-1)", "s(x)"),
    ("S5", "s(x * y)", "s(x) * s(y)"),
    ("S6", "zero(s(x) - s(y)) * (s(x + y) - s(x))", "0"),
])

CC_AXIOMS = _eqs([
    ("CC0", "conj(0)", "0"),
    ("CC1", "conj(1)", "1"),
    ("CC2", "conj(i)", "-i"),
    ("CC3", "conj(-x)", "-conj(x)"),
    ("CC4", "conj(x + y)", "conj(x) + conj(y)"),
    ("CC5", "conj(x * y)", "conj(x) * conj(y)"),
    ("CC6", "conj(x^-1)", "conj(x)^-1"),
    ("CC7", "conj(conj(x))", "x"),
    ("CC8", "i * i", "-1"),
    ("CC9", "one(conj(x))", "one(x)"),
])

SIGNS_STAR_AXIOMS = _eqs([
    ("S1", "s(one(x))", "one(x)"),
    ("S2", "s(zero(x))", "zero(x)"),
    ("S3", "s(-1)", "-1"),
    ("S*4", "s(re(x)^-1)", "s(re(x))"),
    ("S*5", "s(re(x) * re(y))", "s(re(x)) * s(re(y))"),
    ("S*6", "zero(s(re(x)) - s(re(y))) * (s(re(x) + re(y)) - s(re(x)))", "0"),
    ("S*7", "s(x)", "s(re(x))"),
    ("S*8", "conj(s(x))", "s(x)"),
])

# consequences of Md + Signs, checked semantically and proved in the corpus
SIGNS_CONSEQUENCES = _eqs([
    ("S7", "s(x^2)", "one(x)"),
    ("S8", "s(x^3)", "s(x)"),
    ("S9", "one(x) * s(x)", "s(x)"),
    ("S10", "s(x)^-1", "s(x)"),
    ("S11", "s(s(x))", "s(x)"),
])

PC_LAWS = _eqs([
    ("PC1", "zero(x) * zero(x)", "zero(x)"),
    ("PC2", "zero(x^2)", "zero(x)"),
    ("PC3", "zero(x) * x", "0"),
    ("PC4", "zero(x) * zero(x + y)", "zero(x) * zero(y)"),
    ("PC5", "one(x) * one(x)", "one(x)"),
    ("PC6", "one(x^2)", "one(x)"),
    ("PC7", "one(x) * x", "x"),
    ("PC8", "one(x) * one(y)", "one(x * y)"),
])

RI_LAWS = _eqs([
    ("RI0", "x", "re(x) + im(x) * i"),
    ("RI1", "re(x)", "conj(re(x))"),
    ("RI2", "im(x)", "conj(im(x))"),
    ("RI3", "re(re(x))", "re(x)"),
    ("RI4", "re(im(x))", "im(x)"),
    ("RI5", "im(re(x))", "0"),
    ("RI6", "im(im(x))", "0"),
    ("RI7", "re(0)", "0"),
    ("RI8", "re(1)", "1"),
    ("RI9", "re(i)", "0"),
    ("RI10", "re(-x)", "-re(x)"),
    ("RI11", "re(x + y)", "re(x) + re(y)"),
    ("RI12", "re(x * y)", "re(x) * re(y) - im(x) * im(y)"),
    ("RI13", "re(x^-1)", "re(x) * (re(x) * re(x) + im(x) * im(x))^-1"),
    ("RI14", "re(conj(x))", "re(x)"),
    ("RI15", "im(0)", "0"),
    ("RI16", "im(1)", "0"),
    ("RI17", "im(i)", "1"),
    ("RI18", "im(-x)", "-im(x)"),
    ("RI19", "im(x + y)", "im(x) + im(y)"),
    ("RI20", "im(x * y)", "re(x) * im(y) + im(x) * re(y)"),
    ("RI21", "im(x^-1)", "-im(x) * (re(x) * re(x) + im(x) * im(x))^-1"),
    ("RI22", "im(conj(x))", "-im(x)"),
])

MD_DERIVED = _eqs([
    ("zero_inverse", "0^-1", "0"),
    ("inv_neg", "(-x)^-1", "-(x^-1)"),
    ("inv_mul", "(x * y)^-1", "x^-1 * y^-1"),
    ("zero_mul", "0 * x", "0"),
    ("mul_neg", "x * -y", "-(x * y)"),
    ("neg_neg", "-(-x)", "x"),
])


def xs(n: int) -> list[Term]:
    return [T.var(f"x{k}") for k in range(n + 1)]


def sum_of_squares(vs) -> Term:
    return T.sum_of([T.power(v, 2) for v in vs])


def c0_axiom(n: int):
    return T.pone(T.numeral(n + 1)), T.ONE_T


def efr_axiom(n: int):
    v = xs(n)
    return T.mul(T.pzero(sum_of_squares(v)), v[0]), T.ZERO_T


def aefr_axiom(n: int):
    return T.pone(T.add(T.ONE_T, sum_of_squares(xs(n)))), T.ONE_T


def ssav_axiom(n: int):
    body = T.ONE_T
    for v in xs(n):
        body = T.add(body, T.mul(v, T.conj(v)))
    return T.pone(body), T.ONE_T


SCHEMES = {"C0": c0_axiom, "EFR": efr_axiom, "AEFR": aefr_axiom, "SSAV": ssav_axiom}

FAMILIES = {
    "CR": CR_AXIOMS,
    "Md": MD_AXIOMS,
    "Signs": SIGNS_AXIOMS,
    "CC": CC_AXIOMS,
    "Signs*": SIGNS_STAR_AXIOMS,
}

_ORDER = ["CR", "Md", "C0", "EFR", "AEFR", "Signs", "CC", "SSAV", "Signs*"]


@dataclass(frozen=True)
class Theory:
    """A set of axiom families; indexed schemes are limited to ``index <= bound``."""

    families: frozenset
    bound: int = DEFAULT_BOUND
    name: str = field(default="", compare=False)

    @property
    def signature(self) -> T.Signature:
        if "CC" in self.families:
            return T.Signature("complex-meadow", signs_star="Signs*" in self.families)
        if "Signs" in self.families:
            return T.SIGNED
        return T.MEADOW

    def axiom_names(self) -> list[str]:
        out = []
        for fam in _ORDER:
            if fam not in self.families:
                continue
            if fam in SCHEMES:
                out.append(fam)
            else:
                out.extend(n for n in FAMILIES[fam] if n not in out)
        return out

    def axiom(self, name: str, index: int | None = None):
        for fam in _ORDER:
            if fam not in self.families:
                continue
            if fam in SCHEMES and name == fam:
                if index is None:
                    raise TheoryError(f"axiom scheme {name} needs an index")
                if not 0 <= index <= self.bound:
                    raise TheoryError(f"index {index} of {name} outside bound {self.bound}")
                return SCHEMES[fam](index)
            if fam not in SCHEMES and name in FAMILIES[fam]:
                return FAMILIES[fam][name]
        raise TheoryError(f"axiom {name!r} is not in theory {self.name or sorted(self.families)}")

    def includes(self, other: Theory) -> bool:
        return other.families <= self.families


def theory(name: str, bound: int = DEFAULT_BOUND) -> Theory:
    """Theory from a name such as ``Md+Signs`` or ``Md+CC+SSAV``."""
    fams = set()
    for part in name.split("+"):
        part = part.strip()
        if part not in _ORDER:
            raise TheoryError(f"unknown axiom family {part!r}")
        fams.add(part)
    if fams - {"CR"}:
        fams.add("CR")
    if fams & {"C0", "EFR", "AEFR", "Signs", "CC", "SSAV", "Signs*"} and "Md" not in fams:
        raise TheoryError(f"theory {name!r} must include Md")
    if "Signs*" in fams and "CC" not in fams:
        raise TheoryError("Signs* is only defined over the complex signature")
    if "Signs" in fams and "CC" in fams:
        raise TheoryError("use Signs* with the complex signature")
    return Theory(frozenset(fams), bound, name)


def instantiate_axiom(th: Theory, name: str, index: int | None, sub: dict):
    lhs, rhs = th.axiom(name, index)
    return T.substitute(lhs, sub), T.substitute(rhs, sub)

"""Exact evaluation in the concrete meadows Q0 (with sign), C0 and Z/nZ.

Values are ``fractions.Fraction`` for Q0, :class:`GaussRat` for C0 and
:class:`ZmodVal` for residue rings.  Inverse is total everywhere: the inverse
of zero is zero.
"""
from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import terms as T
from .terms import (ADD, CONJ, I, IM, INV, MUL, NEG, NUM, ONE, PONE, POW, PZERO, RE, SIGN,
                    SUB, VAR, ZERO, Term)

Rat = Fraction


class EvalError(ValueError):
    """Evaluation failed: missing variable or a node the model does not support."""


# ---------------------------------------------------------------- Gaussian rationals

@dataclass(frozen=True)
class GaussRat:
    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    def __add__(self, o: GaussRat) -> GaussRat:
        return GaussRat(self.re + o.re, self.im + o.im)

    def __neg__(self) -> GaussRat:
        return GaussRat(-self.re, -self.im)

    def __sub__(self, o: GaussRat) -> GaussRat:
        return GaussRat(self.re - o.re, self.im - o.im)

    def __mul__(self, o: GaussRat) -> GaussRat:
        return GaussRat(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    def conj(self) -> GaussRat:
        return GaussRat(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> GaussRat:
        n = self.norm()
        if n == 0:
            return GaussRat(0, 0)
        return GaussRat(self.re / n, -self.im / n)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __str__(self):
        return format_value(self)


@dataclass(frozen=True)
class ZmodVal:
    modulus: int
    residue: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        object.__setattr__(self, "residue", self.residue % self.modulus)

    def __str__(self):
        return str(self.residue)


# ---------------------------------------------------------------- Z/nZ inverse

def factorize(n: int) -> dict:
    out, d = {}, 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_squarefree(n: int) -> bool:
    return n >= 1 and all(e == 1 for e in factorize(n).values())


def crt(residues, moduli) -> int:
    x, m = 0, 1
    for r, p in zip(residues, moduli):
        # solve x + m*k = r (mod p)
        k = ((r - x) * pow(m, -1, p)) % p
        x += m * k
        m *= p
    return x % m


def zmod_inverse(n: int, x) -> ZmodVal:
    """Totalized inverse in Z/nZ, computed prime-componentwise via CRT."""
    if not is_squarefree(n):
        raise EvalError(f"Z/{n}Z carries no meadow inverse: {n} is not squarefree")
    r = x.residue if isinstance(x, ZmodVal) else int(x) % n
    primes = sorted(factorize(n))
    comps = [(pow(r % p, -1, p) if r % p else 0) for p in primes]
    return ZmodVal(n, crt(comps, primes) if primes else 0)


# ---------------------------------------------------------------- models

class Model:
    """Operations of a concrete meadow."""

    name = "model"
    ordered = False
    has_sign = False
    is_complex = False

    def const(self, k: int):
        raise NotImplementedError

    def lift(self, v):
        return v

    def sign(self, v):
        raise EvalError(f"sign is not available in {self.name}")

    def conj(self, v):
        raise EvalError(f"conjugation is not available in {self.name}")

    def imag_unit(self):
        raise EvalError(f"i is not available in {self.name}")

    def less(self, a, b) -> bool:
        raise EvalError(f"order atom in unordered model {self.name}")


class Q0(Model):
    name = "q0"
    ordered = True
    has_sign = True

    def const(self, k):
        return Fraction(k)

    def lift(self, v):
        if isinstance(v, GaussRat):
            if v.im != 0:
                raise EvalError("complex value in q0")
            return v.re
        if isinstance(v, ZmodVal):
            raise EvalError("residue value in q0")
        return Fraction(v)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def inv(a):
        return Fraction(0) if a == 0 else 1 / a

    def sign(self, a):
        return Fraction((a > 0) - (a < 0))

    def less(self, a, b):
        return a < b

    @staticmethod
    def is_zero(a):
        return a == 0


class C0(Model):
    name = "c0"
    is_complex = True

    def __init__(self, signs_star: bool = False):
        self.has_sign = signs_star

    def const(self, k):
        return GaussRat(k, 0)

    def lift(self, v):
        if isinstance(v, GaussRat):
            return v
        if isinstance(v, ZmodVal):
            raise EvalError("residue value in c0")
        return GaussRat(Fraction(v), 0)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def inv(a):
        return a.inverse()

    def sign(self, a):
        if not self.has_sign:
            raise EvalError("sign in c0 requires the Signs* configuration")
        # the sign of a complex number is the sign of its real part
        return GaussRat((a.re > 0) - (a.re < 0), 0)

    def conj(self, a):
        return a.conj()

    def imag_unit(self):
        return GaussRat(0, 1)

    @staticmethod
    def is_zero(a):
        return a.is_zero()


class Zmod(Model):
    def __init__(self, n: int):
        if not is_squarefree(n):
            raise EvalError(f"Z/{n}Z is not a meadow: {n} is not squarefree")
        self.n = n
        self.name = f"zmod:{n}"
        self._inv = [zmod_inverse(n, r).residue for r in range(n)] if n <= 100_000 else None

    def const(self, k):
        return ZmodVal(self.n, k)

    def lift(self, v):
        if isinstance(v, ZmodVal):
            return ZmodVal(self.n, v.residue)
        if isinstance(v, Fraction):
            if v.denominator != 1:
                raise EvalError("fractional value in zmod")
            v = v.numerator
        if isinstance(v, GaussRat):
            raise EvalError("complex value in zmod")
        return ZmodVal(self.n, int(v))

    def add(self, a, b):
        return ZmodVal(self.n, a.residue + b.residue)

    def mul(self, a, b):
        return ZmodVal(self.n, a.residue * b.residue)

    def neg(self, a):
        return ZmodVal(self.n, -a.residue)

    def inv(self, a):
        if self._inv is not None:
            return ZmodVal(self.n, self._inv[a.residue])
        return zmod_inverse(self.n, a)

    @staticmethod
    def is_zero(a):
        return a.residue == 0


def model_from_name(name: str, signs_star: bool = False) -> Model:
    """Model selector strings ``q0``, ``c0``, ``zmod:<n>``."""
    name = name.strip()
    if name == "q0":
        return Q0()
    if name == "c0":
        return C0(signs_star)
    if name.startswith("zmod:"):
        try:
            n = int(name[5:])
        except ValueError:
            raise EvalError(f"bad modulus in {name!r}") from None
        if n < 1:
            raise EvalError("modulus must be positive")
        return Zmod(n)
    raise EvalError(f"unknown model {name!r}")


# ---------------------------------------------------------------- evaluation

@lru_cache(maxsize=4096)
def compile_term(t: Term) -> tuple:
    """Flatten ``t`` into a list of instructions over shared subterms.

    Each instruction is ``(kind, payload, arg_slots)``; the value of the last
    instruction is the value of ``t``.
    """
    slots: dict = {}
    code: list = []

    def emit(u: Term) -> int:
        k = slots.get(u)
        if k is not None:
            return k
        args = tuple(emit(c) for c in u.args)
        code.append((u.kind, u.name, args))
        slots[u] = len(code) - 1
        return slots[u]

    stack = [(t, False)]
    # iterative post-order keeps deep terms away from the recursion limit
    while stack:
        u, ready = stack.pop()
        if u in slots:
            continue
        if ready or not u.args:
            emit(u)
        else:
            stack.append((u, True))
            stack.extend((c, False) for c in reversed(u.args))
    return tuple(code)


def evaluate(t: Term, model: Model, a: dict):
    """Evaluate ``t`` in ``model`` under assignment ``a`` (variable name -> value)."""
    code = compile_term(t)
    vals: list = []
    push = vals.append
    add, mul, neg, inv = model.add, model.mul, model.neg, model.inv
    lifted: dict = {}
    for kind, name, args in code:
        if kind == ADD:
            push(add(vals[args[0]], vals[args[1]]))
        elif kind == MUL:
            push(mul(vals[args[0]], vals[args[1]]))
        elif kind == VAR:
            v = lifted.get(name)
            if v is None:
                if name not in a:
                    raise EvalError(f"no value for variable {name!r}")
                v = lifted[name] = model.lift(a[name])
            push(v)
        elif kind == NEG:
            push(neg(vals[args[0]]))
        elif kind == INV:
            push(inv(vals[args[0]]))
        elif kind == ZERO:
            push(model.const(0))
        elif kind == ONE:
            push(model.const(1))
        elif kind == NUM:
            push(model.const(name))
        elif kind == I:
            push(model.imag_unit())
        elif kind == SUB:
            push(add(vals[args[0]], neg(vals[args[1]])))
        elif kind == SIGN:
            push(model.sign(vals[args[0]]))
        elif kind == CONJ:
            push(model.conj(vals[args[0]]))
        elif kind == PONE:
            v = vals[args[0]]
            push(mul(v, inv(v)))
        elif kind == PZERO:
            v = vals[args[0]]
            push(add(model.const(1), neg(mul(v, inv(v)))))
        elif kind == POW:
            v, e = vals[args[0]], name
            if e < 0:
                v, e = inv(v), -e
            r = model.const(1)
            for _ in range(e):
                r = mul(r, v)
            push(r)
        elif kind in (RE, IM):
            v = vals[args[0]]
            half = inv(model.const(2))
            if kind == RE:
                push(mul(half, add(v, model.conj(v))))
            else:
                coef = neg(mul(model.imag_unit(), half))
                push(mul(coef, add(v, neg(model.conj(v)))))
        else:
            raise EvalError(f"unknown node {kind}")
    return vals[-1]


def _reject(t: Term, kinds, model_name: str):
    for node in T.subterms(t):
        if node.kind in kinds:
            raise EvalError(f"node {node.kind!r} is outside the signature of {model_name}")


def eval_q0(t: Term, a: dict) -> Fraction:
    _reject(t, T.COMPLEX_KINDS, "q0")
    return evaluate(t, Q0(), a)


def eval_c0(t: Term, a: dict, signs_star: bool = False) -> GaussRat:
    return evaluate(t, C0(signs_star), a)


def eval_zmod(n: int, t: Term, a: dict) -> ZmodVal:
    _reject(t, T.COMPLEX_KINDS | {T.SIGN}, f"zmod:{n}")
    return evaluate(t, Zmod(n), a)


def eval_in(model: Model, t: Term, a: dict):
    if isinstance(model, Zmod):
        _reject(t, T.COMPLEX_KINDS | {T.SIGN}, model.name)
    elif isinstance(model, Q0):
        _reject(t, T.COMPLEX_KINDS, "q0")
    return evaluate(t, model, a)


# ---------------------------------------------------------------- literals

_GAUSS = re.compile(
    r"^\s*(?P<re>[+-]?\d+(?:/\d+)?)?\s*(?:(?P<sgn>[+-])?\s*(?P<im>\d+(?:/\d+)?)?\s*i)?\s*$")


def parse_value(text: str, model: Model):
    """Parse a literal such as ``3/4``, ``1+2i``, ``-i`` or ``7``."""
    text = text.strip()
    m = _GAUSS.match(text)
    if not m or (m.group("re") is None and "i" not in text):
        raise EvalError(f"bad value literal {text!r}")
    re_part = Fraction(m.group("re")) if m.group("re") else Fraction(0)
    im_part = Fraction(0)
    if text.endswith("i"):
        mag = Fraction(m.group("im")) if m.group("im") else Fraction(1)
        im_part = -mag if m.group("sgn") == "-" else mag
    if im_part:
        return model.lift(GaussRat(re_part, im_part))
    return model.lift(re_part)


def parse_assignment(items, model: Model) -> dict:
    """Parse ``["x=3/4", "y=1+2i"]`` into an assignment for ``model``."""
    out = {}
    for item in items:
        if "=" not in item:
            raise EvalError(f"assignment {item!r} must look like name=value")
        name, val = item.split("=", 1)
        out[name.strip()] = parse_value(val, model)
    return out


def format_value(v) -> str:
    if isinstance(v, GaussRat):
        if v.im == 0:
            return str(v.re)
        im = "" if abs(v.im) == 1 else str(abs(v.im))
        if v.re == 0:
            return f"{'-' if v.im < 0 else ''}{im}i"
        return f"{v.re}{'-' if v.im < 0 else '+'}{im}i"
    return str(v)


def format_assignment(a: dict) -> str:
    return ",".join(f"{k}={format_value(a[k])}" for k in sorted(a))


# ---------------------------------------------------------------- sampling

DEFAULT_BOUND = 10 ** 6


def structured_domain(model: Model) -> list:
    if isinstance(model, C0):
        return [GaussRat(0), GaussRat(1), GaussRat(-1), GaussRat(0, 1), GaussRat(0, -1)]
    if isinstance(model, Zmod):
        vals = [0, 1, model.n - 1]
        return [ZmodVal(model.n, v) for v in dict.fromkeys(vals)]
    return [Fraction(0), Fraction(1), Fraction(-1)]


def _rand_rat(rng: random.Random, bound: int) -> Fraction:
    if rng.random() < 0.15:
        return Fraction(rng.choice((0, 1, -1)))
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_value(model: Model, rng: random.Random, bound: int = DEFAULT_BOUND):
    if isinstance(model, Zmod):
        return ZmodVal(model.n, rng.randrange(model.n))
    if isinstance(model, C0):
        return GaussRat(_rand_rat(rng, bound), _rand_rat(rng, bound))
    return _rand_rat(rng, bound)


def sample_rng(seed: int, index: int) -> random.Random:
    """Independent generator for sample ``index`` under ``seed``."""
    return random.Random(f"meadow:{seed}:{index}")


def random_assignment(names, model: Model, seed: int, index: int, bound: int = DEFAULT_BOUND) -> dict:
    rng = sample_rng(seed, index)
    return {n: random_value(model, rng, bound) for n in names}


def values_equal(a, b) -> bool:
    return a == b


def gcd_check(r: Fraction) -> bool:
    return math.gcd(r.numerator, r.denominator) == 1 and r.denominator > 0

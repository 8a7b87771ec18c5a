"""Terms over the meadow signatures: construction, parsing, printing, substitution.

A term is an immutable tree.  Derived operators (subtraction, pseudo ones and
zeros, numerals, integer powers, real and imaginary parts) are ordinary nodes
and are only unfolded by :func:`expand_derived`.
"""
from __future__ import annotations

import re
from functools import lru_cache
from dataclasses import dataclass

# node kinds
ZERO, ONE, I, VAR = "zero", "one", "i", "var"
NEG, ADD, MUL, INV = "neg", "add", "mul", "inv"
SIGN, CONJ = "sign", "conj"
SUB, PONE, PZERO, RE, IM, NUM, POW = "sub", "pone", "pzero", "re", "im", "num", "pow"

CORE_KINDS = frozenset({ZERO, ONE, I, VAR, NEG, ADD, MUL, INV, SIGN, CONJ})
DERIVED_KINDS = frozenset({SUB, PONE, PZERO, RE, IM, NUM, POW})
ARITY = {ZERO: 0, ONE: 0, I: 0, VAR: 0, NUM: 0,
         NEG: 1, INV: 1, SIGN: 1, CONJ: 1, PONE: 1, PZERO: 1, RE: 1, IM: 1, POW: 1,
         ADD: 2, MUL: 2, SUB: 2}
COMPLEX_KINDS = frozenset({I, CONJ, RE, IM})

RESERVED_HEADS = frozenset({"s", "conj", "one", "zero", "re", "im", "n"})
RESERVED_PREFIX = "_g"


_TABLE: dict = {}
_SPECIAL_BITS = {I: 1, CONJ: 2, RE: 4, IM: 8, SIGN: 16}
COMPLEX_MASK = 1 | 2 | 4 | 8
SIGN_MASK = 16


class Term:
    """Immutable, hash-consed term node.

    Structurally equal terms are the same object, so equality is identity.
    ``mask`` records which signature-sensitive operators occur in the term.
    """

    __slots__ = ("kind", "args", "name", "_hash", "mask")

    def __new__(cls, kind: str, args: tuple = (), name=None):
        key = (kind, name, args)
        t = _TABLE.get(key)
        if t is not None:
            return t
        t = object.__new__(cls)
        t.kind = kind
        t.args = args
        t.name = name
        t._hash = hash(key)
        m = _SPECIAL_BITS.get(kind, 0)
        for a in args:
            m |= a.mask
        t.mask = m
        _TABLE[key] = t
        return t

    def __reduce__(self):
        return (Term, (self.kind, self.args, self.name))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return self is other

    def __ne__(self, other):
        return not self.__eq__(other)

    def __repr__(self):
        return f"Term({to_string(self)!r})"

    def __str__(self):
        return to_string(self)

    def size(self) -> int:
        return 1 + sum(a.size() for a in self.args)


# ---------------------------------------------------------------- constructors

ZERO_T = Term(ZERO)
ONE_T = Term(ONE)
I_T = Term(I)


def var(name: str) -> Term:
    return Term(VAR, (), name)


def neg(a: Term) -> Term:
    return Term(NEG, (a,))


def add(a: Term, b: Term) -> Term:
    return Term(ADD, (a, b))


def sub(a: Term, b: Term) -> Term:
    return Term(SUB, (a, b))


def mul(a: Term, b: Term) -> Term:
    return Term(MUL, (a, b))


def inv(a: Term) -> Term:
    return Term(INV, (a,))


def sign(a: Term) -> Term:
    return Term(SIGN, (a,))


def conj(a: Term) -> Term:
    return Term(CONJ, (a,))


def pone(a: Term) -> Term:
    return Term(PONE, (a,))


def pzero(a: Term) -> Term:
    return Term(PZERO, (a,))


def re_(a: Term) -> Term:
    return Term(RE, (a,))


def im_(a: Term) -> Term:
    return Term(IM, (a,))


def numeral(n: int) -> Term:
    if n < 0:
        raise ValueError("numerals are natural numbers")
    return Term(NUM, (), n)


def power(a: Term, k: int) -> Term:
    if k == -1:
        return inv(a)
    return Term(POW, (a,), k)


def sum_of(terms) -> Term:
    terms = list(terms)
    if not terms:
        return ZERO_T
    out = terms[0]
    for t in terms[1:]:
        out = add(out, t)
    return out


def product_of(terms) -> Term:
    terms = list(terms)
    if not terms:
        return ONE_T
    out = terms[0]
    for t in terms[1:]:
        out = mul(out, t)
    return out


def with_args(t: Term, args) -> Term:
    args = tuple(args)
    if args == t.args:
        return t
    return Term(t.kind, args, t.name)


# ---------------------------------------------------------------- signatures

@dataclass(frozen=True)
class Signature:
    """Which operators a term may use.

    ``base`` is one of ``meadow``, ``signed-meadow``, ``complex-meadow``.  The
    complex signature admits the sign operator only with ``signs_star`` set.
    """

    base: str = "meadow"
    signs_star: bool = False

    def __post_init__(self):
        if self.base not in ("meadow", "signed-meadow", "complex-meadow"):
            raise ValueError(f"unknown signature {self.base!r}")

    @property
    def has_sign(self) -> bool:
        return self.base == "signed-meadow" or (self.base == "complex-meadow" and self.signs_star)

    @property
    def is_complex(self) -> bool:
        return self.base == "complex-meadow"

    def admits(self, kind: str) -> bool:
        if kind in COMPLEX_KINDS:
            return self.is_complex
        if kind == SIGN:
            return self.has_sign
        return True


MEADOW = Signature("meadow")
SIGNED = Signature("signed-meadow")
COMPLEX = Signature("complex-meadow")
COMPLEX_SIGNED = Signature("complex-meadow", signs_star=True)
FULL = COMPLEX_SIGNED


class TermError(ValueError):
    """Base class for term-level errors."""


class ParseError(TermError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class SignatureError(TermError):
    """A symbol is used that the selected signature does not admit."""


def check_signature(t: Term, sig: Signature) -> None:
    allowed = (COMPLEX_MASK if sig.is_complex else 0) | (SIGN_MASK if sig.has_sign else 0)
    if not t.mask & ~allowed:
        return
    for node in subterms(t):
        if not sig.admits(node.kind):
            raise SignatureError(f"symbol {_symbol(node.kind)!r} not in signature {sig.base}")


def _symbol(kind: str) -> str:
    return {SIGN: "s", CONJ: "conj", I: "i", RE: "re", IM: "im"}.get(kind, kind)


# ---------------------------------------------------------------- traversal

def subterms(t: Term):
    """Pre-order iteration over all nodes."""
    stack = [t]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.args))


def positions(t: Term, prefix: tuple = ()):
    """Yield (path, subterm) pairs in pre-order."""
    yield prefix, t
    for k, a in enumerate(t.args):
        yield from positions(a, prefix + (k,))


def at_path(t: Term, path) -> Term:
    for k in path:
        t = t.args[k]
    return t


def replace_at(t: Term, path, new: Term) -> Term:
    if not path:
        return new
    k = path[0]
    args = list(t.args)
    args[k] = replace_at(args[k], path[1:], new)
    return with_args(t, args)


def free_vars(t: Term) -> tuple:
    """Variables of ``t`` as a lexicographically sorted tuple."""
    return tuple(sorted({n.name for n in subterms(t) if n.kind == VAR}))


def substitute(t: Term, m: dict) -> Term:
    """Simultaneous substitution; variables outside ``m`` stay fixed."""
    if not m:
        return t
    cache = {}

    def go(u: Term) -> Term:
        if u.kind == VAR:
            return m.get(u.name, u)
        if not u.args:
            return u
        r = cache.get(u)
        if r is None:
            r = with_args(u, [go(a) for a in u.args])
            cache[u] = r
        return r

    return go(t)


# ---------------------------------------------------------------- expansion

_TWO = add(ONE_T, ONE_T)
_expand_cache: dict = {}


def expand_derived(t: Term, sig: Signature | None = None) -> Term:
    """Unfold every derived operator into the core signature."""
    if sig is not None:
        for node in subterms(t):
            if node.kind in COMPLEX_KINDS and not sig.is_complex:
                raise SignatureError(f"{_symbol(node.kind)!r} requires the complex signature")
    return _expand(t)


def _expand(t: Term) -> Term:
    if not t.args and t.kind != NUM:
        return t
    r = _expand_cache.get(t)
    if r is not None:
        return r
    k = t.kind
    if k == NUM:
        n = t.name
        r = ZERO_T if n == 0 else ONE_T
        for _ in range(n - 1):
            r = add(r, ONE_T)
    elif k == POW:
        base = _expand(t.args[0])
        e = t.name
        if e == 0:
            r = ONE_T
        else:
            b = base if e > 0 else inv(base)
            r = b
            for _ in range(abs(e) - 1):
                r = mul(r, b)
    else:
        args = [_expand(a) for a in t.args]
        if k == SUB:
            r = add(args[0], neg(args[1]))
        elif k == PONE:
            r = mul(args[0], inv(args[0]))
        elif k == PZERO:
            r = add(ONE_T, neg(mul(args[0], inv(args[0]))))
        elif k == RE:
            r = mul(inv(_TWO), add(args[0], conj(args[0])))
        elif k == IM:
            r = mul(neg(mul(I_T, inv(_TWO))), add(args[0], neg(conj(args[0]))))
        else:
            r = with_args(t, args)
    if len(_expand_cache) > 200_000:
        _expand_cache.clear()
    _expand_cache[t] = r
    return r


def is_core(t: Term) -> bool:
    return all(n.kind in CORE_KINDS for n in subterms(t))


# ---------------------------------------------------------------- printing

_LEVEL = {ADD: 1, SUB: 1, MUL: 2, NEG: 3, INV: 4, POW: 4}


def _level(t: Term) -> int:
    return _LEVEL.get(t.kind, 5)


def to_string(t: Term) -> str:
    """Render ``t`` in the concrete grammar; ``parse`` inverts this."""
    out: list[str] = []
    _emit(t, 0, out)
    return "".join(out)


def _emit(t: Term, need: int, out: list) -> None:
    lvl = _level(t)
    paren = lvl < need
    if paren:
        out.append("(")
    k = t.kind
    if k in (ADD, SUB):
        _emit(t.args[0], 1, out)
        out.append(" + " if k == ADD else " - ")
        _emit(t.args[1], 2, out)
    elif k == MUL:
        _emit(t.args[0], 2, out)
        out.append(" * ")
        _emit(t.args[1], 3, out)
    elif k == NEG:
        out.append("-")
        _emit(t.args[0], 3, out)
    elif k == INV:
        _emit(t.args[0], 5, out)
        out.append("^-1")
    elif k == POW:
        _emit(t.args[0], 5, out)
        out.append(f"^{t.name}")
    elif k == ZERO:
        out.append("0")
    elif k == ONE:
        out.append("1")
    elif k == I:
        out.append("i")
    elif k == VAR:
        out.append(t.name)
    elif k == NUM:
        out.append(f"n({t.name})")
    else:
        head = {SIGN: "s", CONJ: "conj", PONE: "one", PZERO: "zero", RE: "re", IM: "im"}[k]
        out.append(head + "(")
        _emit(t.args[0], 0, out)
        out.append(")")
    if paren:
        out.append(")")


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>_?[a-z][a-z0-9_]*)|(?P<sym>\^|[-+*()]))")
_HEADS = {"s": SIGN, "conj": CONJ, "one": PONE, "zero": PZERO, "re": RE, "im": IM}


def _tokenize(text: str):
    text = text.rstrip()
    toks = [(m.lastgroup, m.group(m.lastgroup), m.start(m.lastgroup)) for m in _TOKEN.finditer(text)]
    end = toks[-1][2] + len(toks[-1][1]) if toks else 0
    if end < len(text) or sum(len(t[1]) for t in toks) != len("".join(text.split())):
        pos = 0
        for m in _TOKEN.finditer(text):
            if m.start() != pos:
                break
            pos = m.end()
        raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}", pos)
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, sig: Signature, allow_reserved: bool):
        self.toks = _tokenize(text)
        self.k = 0
        self.sig = sig
        self.allow_reserved = allow_reserved

    def peek(self):
        return self.toks[self.k]

    def take(self):
        tok = self.toks[self.k]
        if tok[0] != "end":
            self.k += 1
        return tok

    def expect(self, value: str):
        tok = self.take()
        if tok[1] != value:
            raise ParseError(f"expected {value!r}, found {tok[1] or 'end of input'!r}", tok[2])
        return tok

    def gate(self, kind: str, pos: int):
        if not self.sig.admits(kind):
            raise SignatureError(f"symbol {_symbol(kind)!r} not in signature {self.sig.base} at position {pos}")

    def term(self) -> Term:
        left = self.prod()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "sym":
            op = self.take()[1]
            right = self.prod()
            left = add(left, right) if op == "+" else sub(left, right)
        return left

    def prod(self) -> Term:
        left = self.unary()
        while self.peek()[1] == "*":
            self.take()
            left = mul(left, self.unary())
        return left

    def unary(self) -> Term:
        if self.peek()[1] == "-":
            self.take()
            return neg(self.unary())
        t = self.atom()
        while self.peek()[1] == "^":
            self.take()
            negative = False
            if self.peek()[1] == "-":
                self.take()
                negative = True
            tok = self.take()
            if tok[0] != "int":
                raise ParseError("expected integer exponent", tok[2])
            e = -int(tok[1]) if negative else int(tok[1])
            t = power(t, e)
        return t

    def atom(self) -> Term:
        kind, val, pos = self.take()
        if kind == "int":
            if val == "0":
                return ZERO_T
            if val == "1":
                return ONE_T
            raise ParseError(f"integer literal {val} not allowed; use n({val})", pos)
        if val == "(":
            t = self.term()
            self.expect(")")
            return t
        if kind == "name":
            if val == "i":
                self.gate(I, pos)
                return I_T
            if val in RESERVED_HEADS and self.peek()[1] == "(":
                self.take()
                if val == "n":
                    tok = self.take()
                    if tok[0] != "int":
                        raise ParseError("n(...) expects a natural number", tok[2])
                    self.expect(")")
                    return numeral(int(tok[1]))
                node_kind = _HEADS[val]
                self.gate(node_kind, pos)
                arg = self.term()
                self.expect(")")
                return Term(node_kind, (arg,))
            if val in RESERVED_HEADS:
                raise ParseError(f"reserved name {val!r} used as a variable", pos)
            if val.startswith("_") and not self.allow_reserved:
                raise ParseError(f"variable {val!r} is in the reserved namespace", pos)
            return var(val)
        raise ParseError(f"unexpected token {val or 'end of input'!r}", pos)


def parse(text: str, sig: Signature = FULL, allow_reserved: bool = False) -> Term:
    """Parse ``text`` in the term grammar, rejecting symbols outside ``sig``."""
    return _parse(text, sig, allow_reserved)


@lru_cache(maxsize=1 << 16)
def _parse(text: str, sig: Signature, allow_reserved: bool) -> Term:
    p = _Parser(text, sig, allow_reserved)
    t = p.term()
    tok = p.peek()
    if tok[0] != "end":
        raise ParseError(f"unexpected trailing input {tok[1]!r}", tok[2])
    return t


def parse_equation(text: str, sig: Signature = FULL) -> tuple[Term, Term]:
    """Parse ``"<s> = <t>"``."""
    if text.count("=") != 1:
        raise ParseError("equation must contain exactly one '='", 0)
    left, right = text.split("=")
    return parse(left, sig), parse(right, sig)


def infer_signature(*terms: Term) -> Signature:
    kinds = {n.kind for t in terms for n in subterms(t)}
    cplx = bool(kinds & COMPLEX_KINDS)
    if cplx:
        return COMPLEX_SIGNED if SIGN in kinds else COMPLEX
    return SIGNED if SIGN in kinds else MEADOW

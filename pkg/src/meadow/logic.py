"""First-order formulas over field signatures and the translations into them.

``translate_phi`` turns a pair of standard meadow forms into a quantifier-free
field formula that holds exactly when the two forms are equal (in models
without zero divisors).  ``translate_gamma``/``translate_psi`` eliminate the
sign operator in favour of the order relation, introducing guarded
quantifiers over fresh variables ``_g0, _g1, ...``.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import terms as T
from .normal_forms import Guard, Leaf
from .semantics import EvalError, Model, evaluate
from .terms import Term


class FormulaError(ValueError):
    """Malformed formula or a translation precondition violated."""


# ---------------------------------------------------------------- AST

@dataclass(frozen=True)
class Equal:
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class Less:
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    parts: tuple


@dataclass(frozen=True)
class Or:
    parts: tuple


@dataclass(frozen=True)
class Implies:
    premise: "Formula"
    conclusion: "Formula"


@dataclass(frozen=True)
class ForAll:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


Formula = "Equal | Less | Not | And | Or | Implies | ForAll | Exists"


def conj(*parts):
    return And(tuple(parts))


def disj(*parts):
    return Or(tuple(parts))


def neq(a: Term, b: Term) -> Not:
    return Not(Equal(a, b))


def atoms(f):
    if isinstance(f, (Equal, Less)):
        yield f
    elif isinstance(f, Not):
        yield from atoms(f.body)
    elif isinstance(f, (And, Or)):
        for p in f.parts:
            yield from atoms(p)
    elif isinstance(f, Implies):
        yield from atoms(f.premise)
        yield from atoms(f.conclusion)
    else:
        yield from atoms(f.body)


def is_quantifier_free(f) -> bool:
    if isinstance(f, (ForAll, Exists)):
        return False
    if isinstance(f, Not):
        return is_quantifier_free(f.body)
    if isinstance(f, (And, Or)):
        return all(is_quantifier_free(p) for p in f.parts)
    if isinstance(f, Implies):
        return is_quantifier_free(f.premise) and is_quantifier_free(f.conclusion)
    return True


def free_vars(f) -> tuple:
    def go(g, bound):
        if isinstance(g, (Equal, Less)):
            return (set(T.free_vars(g.lhs)) | set(T.free_vars(g.rhs))) - bound
        if isinstance(g, Not):
            return go(g.body, bound)
        if isinstance(g, (And, Or)):
            out = set()
            for p in g.parts:
                out |= go(p, bound)
            return out
        if isinstance(g, Implies):
            return go(g.premise, bound) | go(g.conclusion, bound)
        return go(g.body, bound | {g.var})

    return tuple(sorted(go(f, frozenset())))


def map_atoms(f, fn):
    """Rebuild ``f`` with every atom replaced by ``fn(atom)``."""
    if isinstance(f, (Equal, Less)):
        return fn(f)
    if isinstance(f, Not):
        return Not(map_atoms(f.body, fn))
    if isinstance(f, And):
        return And(tuple(map_atoms(p, fn) for p in f.parts))
    if isinstance(f, Or):
        return Or(tuple(map_atoms(p, fn) for p in f.parts))
    if isinstance(f, Implies):
        return Implies(map_atoms(f.premise, fn), map_atoms(f.conclusion, fn))
    return type(f)(f.var, map_atoms(f.body, fn))


# ---------------------------------------------------------------- rendering

def to_string(f) -> str:
    if isinstance(f, Equal):
        return f"{T.to_string(f.lhs)} = {T.to_string(f.rhs)}"
    if isinstance(f, Less):
        return f"{T.to_string(f.lhs)} < {T.to_string(f.rhs)}"
    if isinstance(f, Not):
        return f"~{_operand(f.body)}"
    if isinstance(f, And):
        return " & ".join(_operand(p) for p in f.parts) if f.parts else "0 = 0"
    if isinstance(f, Or):
        return " | ".join(_operand(p) for p in f.parts) if f.parts else "~0 = 0"
    if isinstance(f, Implies):
        return f"{_operand(f.premise)} -> {_operand(f.conclusion)}"
    kw = "forall" if isinstance(f, ForAll) else "exists"
    return f"{kw} {f.var}. {to_string(f.body)}"


def _operand(f) -> str:
    if isinstance(f, Not):
        return to_string(f)
    if isinstance(f, (And, Or)) and len(f.parts) == 1:
        return _operand(f.parts[0])
    return f"({to_string(f)})"


class _FParser:
    def __init__(self, text: str):
        self.s = text
        self.k = 0

    def ws(self):
        while self.k < len(self.s) and self.s[self.k].isspace():
            self.k += 1

    def at(self, tok: str) -> bool:
        self.ws()
        return self.s.startswith(tok, self.k)

    def eat(self, tok: str):
        if not self.at(tok):
            raise T.ParseError(f"expected {tok!r}", self.k)
        self.k += len(tok)

    def formula(self):
        left = self.disjunction()
        if self.at("->"):
            self.eat("->")
            return Implies(left, self.formula())
        return left

    def disjunction(self):
        parts = [self.conjunction()]
        while self.at("|"):
            self.eat("|")
            parts.append(self.conjunction())
        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def conjunction(self):
        parts = [self.unary()]
        while self.at("&"):
            self.eat("&")
            parts.append(self.unary())
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def unary(self):
        self.ws()
        if self.at("~"):
            self.eat("~")
            return Not(self.unary())
        for kw, cls in (("forall", ForAll), ("exists", Exists)):
            if self.at(kw) and not (self.s[self.k + len(kw):self.k + len(kw) + 1].isalnum()):
                self.eat(kw)
                self.ws()
                start = self.k
                while self.k < len(self.s) and (self.s[self.k].isalnum() or self.s[self.k] == "_"):
                    self.k += 1
                name = self.s[start:self.k]
                if not name:
                    raise T.ParseError("expected a bound variable", start)
                self.eat(".")
                return cls(name, self.formula())
        if self.at("("):
            save = self.k
            try:
                return self.atom()
            except T.ParseError:
                self.k = save
            self.eat("(")
            f = self.formula()
            self.eat(")")
            return f
        return self.atom()

    def term_extent(self) -> int:
        depth, j = 0, self.k
        while j < len(self.s):
            c = self.s[j]
            if c == "(":
                depth += 1
            elif c == ")":
                if depth == 0:
                    break
                depth -= 1
            elif depth == 0 and (c in "=<&|~." or self.s.startswith("->", j)):
                break
            j += 1
        return j

    def term(self) -> Term:
        self.ws()
        start = self.k
        end = self.term_extent()
        text = self.s[start:end]
        if not text.strip():
            raise T.ParseError("expected a term", start)
        try:
            t = T.parse(text, allow_reserved=True)
        except T.ParseError as e:
            raise T.ParseError(str(e), start + e.pos) from None
        self.k = end
        return t

    def atom(self):
        lhs = self.term()
        if self.at("="):
            self.eat("=")
            return Equal(lhs, self.term())
        if self.at("<"):
            self.eat("<")
            return Less(lhs, self.term())
        raise T.ParseError("expected '=' or '<'", self.k)


def parse_formula(text: str):
    p = _FParser(text)
    f = p.formula()
    p.ws()
    if p.k != len(text):
        raise T.ParseError("unexpected trailing input", p.k)
    return f


# ---------------------------------------------------------------- fresh names

class Fresh:
    """Generator of reserved names ``_g0, _g1, ...``."""

    def __init__(self, start: int = 0):
        self.n = start

    def __call__(self) -> str:
        name = f"{T.RESERVED_PREFIX}{self.n}"
        self.n += 1
        return name


# ---------------------------------------------------------------- phi

def _phi_leaves(s: Leaf, t: Leaf):
    s1, s2, t1, t2 = s.num, s.den, t.num, t.den
    zero = T.ZERO_T
    return conj(
        Implies(Equal(s2, zero), disj(Equal(t1, zero), Equal(t2, zero))),
        Implies(Equal(t2, zero), disj(Equal(s1, zero), Equal(s2, zero))),
        Implies(neq(T.mul(s2, t2), zero), Equal(T.mul(s1, t2), T.mul(t1, s2))),
    )


def translate_phi(s, t, signed: bool = False):
    """Quantifier-free field formula equivalent to ``s = t`` for two SMFs."""
    for f in (s, t):
        if not signed and _has_sign(f):
            raise FormulaError("signed normal form given; pass signed=True")

    def go(a, b):
        if isinstance(a, Guard):
            g = a.guard
            return conj(Implies(Equal(g, T.ZERO_T), go(a.zero, b)),
                        Implies(neq(g, T.ZERO_T), go(a.one, b)))
        if isinstance(b, Guard):
            g = b.guard
            return conj(Implies(Equal(g, T.ZERO_T), go(a, b.zero)),
                        Implies(neq(g, T.ZERO_T), go(a, b.one)))
        return _phi_leaves(a, b)

    return go(s, t)


def _has_sign(f) -> bool:
    from .normal_forms import smf_terms
    return any(n.kind == T.SIGN for c in smf_terms(f) for n in T.subterms(c))


# ---------------------------------------------------------------- gamma / psi

_FIELD_OPS = {T.ADD: T.add, T.MUL: T.mul}


def _check_fs(t: Term) -> Term:
    t = T.expand_derived(t)
    for n in T.subterms(t):
        if n.kind == T.INV:
            raise FormulaError("inverse is not allowed here")
        if n.kind in T.COMPLEX_KINDS:
            raise FormulaError("complex nodes are not allowed here")
    return t


def translate_gamma(x: str, t: Term, fresh: Fresh | None = None):
    """Ordered-field formula that holds iff ``x`` equals the value of ``t``."""
    t = _check_fs(t)
    if x in T.free_vars(t):
        raise FormulaError(f"{x} occurs in the term")
    return _gamma(x, t, fresh or Fresh())


def _gamma(x: str, t: Term, fresh: Fresh):
    xv = T.var(x)
    k = t.kind
    if k in (T.ZERO, T.ONE, T.VAR):
        return Equal(xv, t)
    if k == T.NEG:
        z = fresh()
        return ForAll(z, Implies(_gamma(z, t.args[0], fresh), Equal(xv, T.neg(T.var(z)))))
    if k in _FIELD_OPS:
        u, v = fresh(), fresh()
        body = Implies(conj(_gamma(u, t.args[0], fresh), _gamma(v, t.args[1], fresh)),
                       Equal(xv, _FIELD_OPS[k](T.var(u), T.var(v))))
        return ForAll(u, ForAll(v, body))
    if k == T.SIGN:
        z = fresh()
        zv = T.var(z)
        one = T.ONE_T
        positive = conj(Less(T.ZERO_T, zv), Equal(xv, one))
        negative = conj(Less(zv, T.ZERO_T), Equal(xv, T.neg(one)))
        return conj(Implies(Equal(xv, T.ZERO_T), _gamma(x, t.args[0], fresh)),
                    Implies(neq(xv, T.ZERO_T),
                            ForAll(z, Implies(_gamma(z, t.args[0], fresh), disj(positive, negative)))))
    raise FormulaError(f"node {k!r} is not a field-with-sign operation")


def translate_psi(s: Term, t: Term, fresh: Fresh | None = None):
    """Sign-free ordered-field formula equivalent to ``s = t``."""
    fresh = fresh or Fresh()
    s, t = _check_fs(s), _check_fs(t)
    x, y = fresh(), fresh()
    body = Implies(conj(_gamma(x, s, fresh), _gamma(y, t, fresh)), Equal(T.var(x), T.var(y)))
    return ForAll(x, ForAll(y, body))


def translate_ordered(s, t):
    """Signed SMF pair to an ordered-field formula: phi, then psi on signed atoms."""
    fresh = Fresh()
    phi = translate_phi(s, t, signed=True)

    def repl(atom):
        if any(n.kind == T.SIGN for side in (atom.lhs, atom.rhs) for n in T.subterms(side)):
            return translate_psi(atom.lhs, atom.rhs, fresh)
        return atom

    return map_atoms(phi, repl)


# ---------------------------------------------------------------- evaluation

def eval_formula(f, a: dict, model: Model) -> bool:
    """Truth of ``f`` in ``model`` under ``a``.

    Quantifiers must be guarded: every bound variable is pinned by a
    subformula that determines its value (the shapes produced by
    ``translate_gamma``), and is instantiated with that value.
    """
    env = {k: model.lift(v) for k, v in a.items()}
    return _holds(f, env, model)


def _value(t: Term, env: dict, model: Model):
    return evaluate(t, model, env)


def _eq(x, y) -> bool:
    return x == y


def _holds(f, env, model) -> bool:
    if isinstance(f, Equal):
        return _eq(_value(f.lhs, env, model), _value(f.rhs, env, model))
    if isinstance(f, Less):
        if not model.ordered:
            raise EvalError(f"order atom in unordered model {model.name}")
        return model.less(_value(f.lhs, env, model), _value(f.rhs, env, model))
    if isinstance(f, Not):
        return not _holds(f.body, env, model)
    if isinstance(f, And):
        return all(_holds(p, env, model) for p in f.parts)
    if isinstance(f, Or):
        return any(_holds(p, env, model) for p in f.parts)
    if isinstance(f, Implies):
        return (not _holds(f.premise, env, model)) or _holds(f.conclusion, env, model)
    return _quantified(f, env, model)


def _quantifier_chain(f):
    kind = type(f)
    names = []
    while isinstance(f, kind):
        names.append(f.var)
        f = f.body
    return kind, names, f


def _conjuncts(f):
    # guards are the top-level parts only; a sign guard is itself a conjunction
    if isinstance(f, And) and _subject(f) is None:
        return list(f.parts)
    return [f]


def _pin_all(names, premise, env, model):
    """Values of the bound ``names`` fixed by the guard conjuncts in ``premise``."""
    guards = _conjuncts(premise)
    local = dict(env)
    for name in names:
        g = next((c for c in guards if _subject(c) == name), None)
        if g is None:
            raise EvalError(f"unguarded quantifier over {name}")
        local[name] = _solve(g, name, local, model)
    return local


def _quantified(f, env, model) -> bool:
    kind, names, body = _quantifier_chain(f)
    if kind is ForAll:
        if not isinstance(body, Implies):
            raise EvalError(f"unguarded quantifier over {names[0]}")
        local = _pin_all(names, body.premise, env, model)
        return (not _holds(body.premise, local, model)) or _holds(body.conclusion, local, model)
    local = _pin_all(names, body, env, model)
    return _holds(body, local, model)


def _subject(g):
    """The variable a guard subformula pins, or None."""
    if isinstance(g, Equal) and g.lhs.kind == T.VAR:
        return g.lhs.name
    if isinstance(g, ForAll):
        _, _, body = _quantifier_chain(g)
        if isinstance(body, Implies) and isinstance(body.conclusion, Equal) \
                and body.conclusion.lhs.kind == T.VAR:
            return body.conclusion.lhs.name
    if isinstance(g, And) and len(g.parts) == 2 and isinstance(g.parts[0], Implies):
        prem = g.parts[0].premise
        if isinstance(prem, Equal) and prem.lhs.kind == T.VAR and prem.rhs == T.ZERO_T:
            return prem.lhs.name
    return None


def _solve(g, name, env, model):
    if isinstance(g, Equal):
        if name in T.free_vars(g.rhs):
            raise EvalError(f"guard for {name} is circular")
        return _value(g.rhs, env, model)
    if isinstance(g, ForAll):
        _, names, body = _quantifier_chain(g)
        local = _pin_all(names, body.premise, env, model)
        return _value(body.conclusion.rhs, local, model)
    # sign shape: x = 0 when the argument is 0, else the sign of the pinned argument
    inner = g.parts[1].conclusion
    if isinstance(inner, ForAll):
        _, names, body = _quantifier_chain(inner)
        local = _pin_all(names, body.premise, env, model)
        z = local[names[0]]
        zero = model.const(0)
        if model.ordered:
            if z == zero:
                return zero
            return model.const(1) if model.less(zero, z) else model.const(-1)
    for cand in (model.const(0), model.const(1), model.const(-1)):
        trial = dict(env)
        trial[name] = cand
        if _holds(g, trial, model):
            return cand
    raise EvalError(f"guard for {name} has no solution")

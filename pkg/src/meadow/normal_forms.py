"""Pseudo-constant simplification and standard meadow forms.

An SMF is either a :class:`Leaf` ``num * den^-1`` with inverse-free
components, or a :class:`Guard` denoting ``zero(g) * Z + one(g) * O``.

Construction works on an internal representation: leaves hold a sign and two
multisets of polynomial factors, and every combinator carries the set of
guard facts (factor known zero / known nonzero) that hold on the current
branch.  Every step is valid in all zero-totalized fields, hence in every
meadow.  The only constants assumed nonzero are 1 and -1, unless the caller
asks for characteristic-zero reasoning (``char0=True``), which is only sound
in models such as Q0 and C0.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import terms as T
from .polynomial import Poly, atom_key, poly_to_term, term_to_poly
from .semantics import evaluate
from .terms import Term


class NormalFormError(ValueError):
    """Input outside the fragment a normal form is defined for."""


# ---------------------------------------------------------------- public SMF

@dataclass(frozen=True)
class Leaf:
    num: Term
    den: Term

    @property
    def level(self) -> int:
        return 0


@dataclass(frozen=True)
class Guard:
    guard: Term
    zero: "Leaf | Guard"
    one: "Leaf | Guard"

    @property
    def level(self) -> int:
        return 1 + max(self.zero.level, self.one.level)


SMF = "Leaf | Guard"


def level(f) -> int:
    return f.level


def smf_terms(f):
    """All guard and leaf component terms, pre-order."""
    if isinstance(f, Leaf):
        yield f.num
        yield f.den
    else:
        yield f.guard
        yield from smf_terms(f.zero)
        yield from smf_terms(f.one)


def smf_vars(f) -> tuple:
    out = set()
    for t in smf_terms(f):
        out.update(T.free_vars(t))
    return tuple(sorted(out))


def denotation(f) -> Term:
    """The meadow term an SMF stands for."""
    if isinstance(f, Leaf):
        return T.mul(f.num, T.inv(f.den))
    return T.add(T.mul(T.pzero(f.guard), denotation(f.zero)),
                 T.mul(T.pone(f.guard), denotation(f.one)))


def eval_smf(f, model, a: dict):
    """Evaluate the denotation arithmetically (both branches are computed)."""
    return evaluate(denotation(f), model, a)


def _inverse_free(t: Term) -> bool:
    return all(n.kind not in (T.INV, T.PONE, T.PZERO) and not (n.kind == T.POW and n.name < 0)
               for n in T.subterms(t))


def is_smf(f, signed: bool = False) -> bool:
    """Structural predicate: inverse-free components and balanced guard levels."""
    if isinstance(f, Leaf):
        comps = (f.num, f.den)
    elif isinstance(f, Guard):
        if not (is_smf(f.zero, signed) and is_smf(f.one, signed)):
            return False
        if f.zero.level != f.one.level:
            return False
        comps = (f.guard,)
    else:
        return False
    for c in comps:
        if not _inverse_free(c):
            return False
        for n in T.subterms(c):
            if n.kind in T.COMPLEX_KINDS or (n.kind == T.SIGN and not signed):
                return False
            if n.kind == T.SIGN and not _inverse_free(n.args[0]):
                return False
    return True


def render(f) -> str:
    """Text form: ``guard(t){Z | O} /* level k */`` with ``frac(num, den)`` leaves."""
    if isinstance(f, Leaf):
        return f"frac({T.to_string(f.num)}, {T.to_string(f.den)})"
    return (f"guard({T.to_string(f.guard)}){{{render(f.zero)} | {render(f.one)}}}"
            f" /* level {f.level} */")


# ---------------------------------------------------------------- pseudo constants

def _is_square(t: Term):
    if t.kind == T.POW and t.name == 2:
        return t.args[0]
    if t.kind == T.MUL and t.args[0] == t.args[1]:
        return t.args[0]
    return None


def _pc_root(t: Term):
    k = t.kind
    if k in (T.PZERO, T.PONE):
        a = t.args[0]
        if a.kind in (T.ZERO, T.ONE):
            # 0_0 = 1_1 = 1 and 0_1 = 1_0 = 0
            return T.ONE_T if (k == T.PZERO) == (a.kind == T.ZERO) else T.ZERO_T
        base = _is_square(a)
        if base is not None:
            return Term(k, (base,))
        return None
    if k != T.MUL:
        return None
    x, y = t.args
    for p, q in ((x, y), (y, x)):
        if p.kind == T.PZERO:
            if q == p:
                return p
            if q == p.args[0]:
                return T.ZERO_T
            if q.kind == T.PZERO and q.args[0].kind == T.ADD and q.args[0].args[0] == p.args[0]:
                return T.mul(p, T.pzero(q.args[0].args[1]))
        if p.kind == T.PONE:
            if q == p:
                return p
            if q == p.args[0]:
                return q
            if q.kind == T.PONE:
                return T.pone(T.mul(p.args[0], q.args[0]))
    return None


def pseudo_simplify(t: Term) -> Term:
    """Apply the pseudo-constant laws left to right, bottom-up, to a fixpoint."""
    cache: dict = {}

    def go(u: Term) -> Term:
        r = cache.get(u)
        if r is not None:
            return r
        cur = T.with_args(u, [go(a) for a in u.args]) if u.args else u
        while True:
            nxt = _pc_root(cur)
            if nxt is None:
                break
            cur = go(nxt) if nxt.args else nxt
        cache[u] = cur
        return cur

    return go(t)


# ---------------------------------------------------------------- internal forms
#
# leaf  = ("L", sign, num_factors, den_factors)   sign in {-1, 0, 1}; 0 means value 0
# guard = ("G", poly, zero_branch, one_branch)

_ZERO_LEAF = ("L", 0, (), ())
_ONE = Poly.const(1)


def _split_factor(p: Poly) -> tuple[int, list]:
    """Write ``p = s * prod(factors)`` with normalized factors; ``p`` nonzero."""
    s, q = p.sign_normal()
    if q.is_const():
        c = q.const_value()
        return s, ([] if c == 1 else [q])
    if q.is_monomial():
        (m, c), = q.terms.items()
        out = [] if c == 1 else [Poly.const(c)]
        for key, e in m:
            out.extend([Poly.indet(key)] * e)
        return s, out
    g = q.content()
    if g > 1:
        return s, [Poly.const(g), Poly({m: c // g for m, c in q.terms.items()})]
    return s, [q]


class _Ctx:
    """Guard facts known on the current branch."""

    __slots__ = ("facts", "char0")

    def __init__(self, facts=None, char0=False):
        self.facts = facts or {}
        self.char0 = char0

    def with_fact(self, p: Poly, nonzero: bool) -> _Ctx:
        d = dict(self.facts)
        d[p] = nonzero
        return _Ctx(d, self.char0)

    def status(self, p: Poly):
        """True if surely nonzero, False if surely zero, None if unknown."""
        if p.is_zero():
            return False
        if p.is_const():
            if abs(p.const_value()) == 1 or self.char0:
                return True
            return self.facts.get(p)
        s, q = p.sign_normal()
        st = self.facts.get(q)
        if st is None and q.is_monomial():
            # a monomial vanishes iff one of its variable factors does
            _, fs = _split_factor(q)
            if fs == [q]:
                return st
            sts = [self.status(f) for f in fs]
            if any(x is False for x in sts):
                return False
            if all(x is True for x in sts):
                return True
        return st


def _prod(fs) -> Poly:
    out = _ONE
    for f in fs:
        out = out * f
    return out


def _leaf_from_polys(sign: int, num: list, den: list, ctx: _Ctx):
    """Normalize a leaf ``sign * prod(num) / prod(den)`` under ``ctx``."""
    if sign == 0:
        return _ZERO_LEAF
    nf, df = [], []
    for p in num:
        if p.is_zero():
            return _ZERO_LEAF
        s, fs = _split_factor(p)
        sign *= s
        nf.extend(fs)
    for p in den:
        if p.is_zero():
            return _ZERO_LEAF
        s, fs = _split_factor(p)
        sign *= s
        df.extend(fs)
    for f in nf:
        if ctx.status(f) is False:
            return _ZERO_LEAF
    for f in df:
        if ctx.status(f) is False:
            return _ZERO_LEAF
    # cancel common factors that are known to be nonzero
    rest = list(nf)
    kept_den = []
    for f in df:
        if f in rest and ctx.status(f) is True:
            rest.remove(f)
        else:
            kept_den.append(f)
    return ("L", sign, tuple(sorted(rest)), tuple(sorted(kept_den)))


def _mk_guard(g: Poly, z, o):
    if z == o:
        return z
    return ("G", g, z, o)


def _guard_poly(p: Poly) -> Poly:
    """Normalize a guard polynomial: drop its sign, take the radical of a monomial."""
    _, q = p.sign_normal()
    if q.is_monomial() and not q.is_const():
        (m, c), = q.terms.items()
        return Poly({tuple((k, 1) for k, _ in m): c})
    return q


def _split(p: Poly, ctx: _Ctx, build):
    """Case split on ``p`` (unknown under ctx); ``build(ctx')`` constructs each branch."""
    g = _guard_poly(p)
    return _mk_guard(g, build(ctx.with_fact(g, False)), build(ctx.with_fact(g, True)))


def _lift(node, ctx: _Ctx, fn):
    """Apply ``fn(leaf, ctx)`` at every leaf, resolving guards already decided by ctx."""
    if node[0] == "L":
        return fn(node, ctx)
    g = node[1]
    st = ctx.status(g)
    if st is False:
        return _lift(node[2], ctx, fn)
    if st is True:
        return _lift(node[3], ctx, fn)
    return _mk_guard(g, _lift(node[2], ctx.with_fact(g, False), fn),
                     _lift(node[3], ctx.with_fact(g, True), fn))


def _lift2(a, b, ctx: _Ctx, fn):
    if a[0] == "G":
        return _lift(a, ctx, lambda la, c: _lift2(la, b, c, fn))
    return _lift(b, ctx, lambda lb, c: fn(a, lb, c))


def _refresh(leaf, ctx):
    return _leaf_from_polys(leaf[1], list(leaf[2]), list(leaf[3]), ctx)


def _leaf_add(a, b, ctx: _Ctx):
    a, b = _refresh(a, ctx), _refresh(b, ctx)
    if a[1] == 0:
        return b
    if b[1] == 0:
        return a
    for f in a[3] + b[3]:
        if ctx.status(f) is None:
            return _split(f, ctx, lambda c: _leaf_add(a, b, c))
    # common denominator: least common multiple of the factor multisets
    lcm = _multiset_max(a[3], b[3])
    ca = _multiset_minus(lcm, a[3])
    cb = _multiset_minus(lcm, b[3])
    num = (_prod(a[2]) * _prod(ca)).scale(a[1]) + (_prod(b[2]) * _prod(cb)).scale(b[1])
    return _leaf_from_polys(1, [num], lcm, ctx)


def _multiset_max(xs, ys) -> list:
    out = list(xs)
    pool = list(xs)
    for y in ys:
        if y in pool:
            pool.remove(y)
        else:
            out.append(y)
    return sorted(out)


def _multiset_minus(xs, ys) -> list:
    out = list(xs)
    for y in ys:
        out.remove(y)
    return out


def _leaf_mul(a, b, ctx):
    if a[1] == 0 or b[1] == 0:
        return _ZERO_LEAF
    return _leaf_from_polys(a[1] * b[1], list(a[2] + b[2]), list(a[3] + b[3]), ctx)


def _leaf_inv(a, ctx):
    if a[1] == 0:
        return _ZERO_LEAF
    return _leaf_from_polys(a[1], list(a[3]), list(a[2]), ctx)


def _leaf_neg(a, ctx):
    return ("L", -a[1], a[2], a[3])


def _leaf_sign(a, ctx):
    """s(P/Q) = s(P*Q) * 1^-1, with signs of constant factors pulled out."""
    if a[1] == 0:
        return _ZERO_LEAF
    sign, rest = a[1], []
    for f in a[2] + a[3]:
        if f.is_const():
            sign *= 1 if f.const_value() > 0 else -1
        else:
            rest.append(f)
    if not rest:
        return ("L", sign, (), ())
    p = _prod(rest)
    if len(rest) == 1 and p.is_monomial() and next(iter(p.terms))[0][0].startswith("~s("):
        return _leaf_from_polys(sign, [p], [], ctx)  # s(s(t)) = s(t)
    return _leaf_from_polys(sign, [Poly.indet(atom_key(T.sign(poly_to_term(p))))], [], ctx)


class _Builder:
    def __init__(self, signed: bool, char0: bool):
        self.signed = signed
        self.ctx = _Ctx(char0=char0)
        self.cache: dict = {}

    def build(self, t: Term):
        r = self.cache.get(t)
        if r is not None:
            return r
        k = t.kind
        ctx = self.ctx
        if k == T.VAR:
            r = ("L", 1, (Poly.indet(t.name),), ())
        elif k == T.ZERO:
            r = _ZERO_LEAF
        elif k == T.ONE:
            r = ("L", 1, (), ())
        elif k == T.NEG:
            r = _lift(self.build(t.args[0]), ctx, _leaf_neg)
        elif k == T.ADD:
            r = _lift2(self.build(t.args[0]), self.build(t.args[1]), ctx, _leaf_add)
        elif k == T.MUL:
            r = _lift2(self.build(t.args[0]), self.build(t.args[1]), ctx, _leaf_mul)
        elif k == T.INV:
            r = _lift(self.build(t.args[0]), ctx, _leaf_inv)
        elif k == T.SIGN:
            if not self.signed:
                raise NormalFormError("sign requires the signed normal form")
            r = _lift(self.build(t.args[0]), ctx, _leaf_sign)
        else:
            raise NormalFormError(f"node {k!r} is outside the meadow signature")
        self.cache[t] = r
        return r


# ---------------------------------------------------------------- reduction

def _linear_pivot(g: Poly):
    """A variable ``v`` with ``g = +-v + r`` and ``v`` not in ``r``, if any."""
    for key in sorted(g.keys()):
        if key.startswith("~"):
            continue
        c = g.terms.get(((key, 1),))
        if c not in (1, -1):
            continue
        if any(k == key for m in g.terms if m != ((key, 1),) for k, _ in m):
            continue
        rest = g - Poly({((key, 1),): c})
        return key, rest.scale(-c)  # v = -c * rest  (c = +-1)
    return None


def _apply_sub(p: Poly, sub: dict) -> Poly:
    for key, q in sub.items():
        p = p.subst(key, q)
    return p


def _reduce(node, ctx: _Ctx, sub: dict):
    """Propagate guard facts downward: resolve decided guards, substitute pivots."""
    if node[0] == "L":
        if node[1] == 0:
            return node
        return _leaf_from_polys(node[1], [_apply_sub(p, sub) for p in node[2]],
                                [_apply_sub(p, sub) for p in node[3]], ctx)
    g = _apply_sub(node[1], sub)
    st = ctx.status(g)
    if st is False:
        return _reduce(node[2], ctx, sub)
    if st is True:
        return _reduce(node[3], ctx, sub)
    g = _guard_poly(g)
    st = ctx.status(g)
    if st is not None:
        return _reduce(node[2] if st is False else node[3], ctx, sub)
    zsub = sub
    piv = _linear_pivot(g)
    if piv is not None:
        key, val = piv
        zsub = {k: v.subst(key, val) for k, v in sub.items()}
        zsub[key] = val
    z = _reduce(node[2], ctx.with_fact(g, False), zsub)
    o = _reduce(node[3], ctx.with_fact(g, True), sub)
    return _mk_guard(g, z, o)


# ---------------------------------------------------------------- finishing

def _to_public(node):
    if node[0] == "L":
        _, sign, num, den = node
        if sign == 0:
            return Leaf(T.ZERO_T, T.ONE_T)
        return Leaf(poly_to_term(_prod(num).scale(sign)), poly_to_term(_prod(den)))
    return Guard(poly_to_term(node[1]), _to_public(node[2]), _to_public(node[3]))


def _pad(f):
    if isinstance(f, Leaf):
        return f
    z, o = _pad(f.zero), _pad(f.one)
    while z.level < o.level:
        z = Guard(T.ONE_T, z, z)
    while o.level < z.level:
        o = Guard(T.ONE_T, o, o)
    return Guard(f.guard, z, o)


def _finish(node, want_vars) -> object:
    f = _to_public(node)
    have = set(smf_vars(f))
    for v in sorted(set(want_vars) - have, reverse=True):
        # 0_v * P + 1_v * P = P keeps v among the variables
        f = Guard(T.var(v), f, f)
    return _pad(f)


def _prepare(t: Term, signed: bool) -> Term:
    for n in T.subterms(t):
        if n.kind in T.COMPLEX_KINDS:
            raise NormalFormError(f"complex node {n.kind!r} has no standard meadow form")
        if n.kind == T.SIGN and not signed:
            raise NormalFormError("sign is not in the meadow signature; use to_ssmf")
    return T.expand_derived(t)


def _internal(t: Term, signed: bool, char0: bool):
    b = _Builder(signed, char0)
    node = b.build(_prepare(t, signed))
    return _reduce(node, _Ctx(char0=char0), {})


def to_smf(t: Term, char0: bool = False):
    """Standard meadow form of a term over the plain meadow signature."""
    return _finish(_internal(t, False, char0), T.free_vars(t))


def to_ssmf(t: Term, char0: bool = False):
    """Signed standard meadow form; sign is pushed through every guard."""
    return _finish(_internal(t, True, char0), T.free_vars(t))


def _atoms_ok(u: Term) -> Poly:
    if u.kind == T.SIGN:
        return Poly.indet(atom_key(u))
    raise NormalFormError(f"node {u.kind!r} is not allowed in an SMF component")


def _internalize(f, ctx: _Ctx):
    if isinstance(f, Leaf):
        num = term_to_poly(f.num, _atoms_ok)
        den = term_to_poly(f.den, _atoms_ok)
        return _leaf_from_polys(1, [num], [den], ctx)
    g = term_to_poly(f.guard, _atoms_ok)
    return ("G", g, _internalize(f.zero, ctx), _internalize(f.one, ctx))


def canon_smf(f, char0: bool = False):
    """Canonical representative: polynomial components, merged and pruned guards."""
    ctx = _Ctx(char0=char0)
    node = _reduce(_internalize(f, ctx), ctx, {})
    return _finish(node, smf_vars(f))


def smf_leaves(f):
    if isinstance(f, Leaf):
        yield f
    else:
        yield from smf_leaves(f.zero)
        yield from smf_leaves(f.one)


def is_zero_form(t: Term, signed: bool = True, char0: bool = False) -> bool:
    """True when construction proves ``t`` equal to 0 (every leaf vanishes)."""
    node = _internal(t, signed, char0)
    return _all_zero(node)


def _all_zero(node) -> bool:
    if node[0] == "L":
        return node[1] == 0
    return _all_zero(node[2]) and _all_zero(node[3])

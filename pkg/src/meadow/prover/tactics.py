"""Untrusted proof construction.

Proofs are built as trees of :class:`Thm` nodes over fully unfolded core
terms and flattened into a :class:`ProofScript` for the kernel.  Nothing here
is trusted: every script is re-checked by :mod:`meadow.prover.kernel`.

The workhorses are a proof-producing ring normalizer, a rewriter that aligns
two terms and closes each differing position by a rule or by ring
normalization, and a simplifier that adds oriented rules on atoms and on
monomials.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .. import terms as T
from ..terms import Term
from .kernel import ProofScript, ProofStep
from .theories import FAMILIES, SCHEMES

E = T.expand_derived
ADD, MUL, NEG, INV, SIGN, CONJ = T.ADD, T.MUL, T.NEG, T.INV, T.SIGN, T.CONJ
ZERO_T, ONE_T = T.ZERO_T, T.ONE_T


class TacticError(RuntimeError):
    """A tactic could not produce the requested equation."""


# ---------------------------------------------------------------- proof trees

class Thm:
    """Proven equation ``lhs = rhs`` between core terms, with its derivation."""

    __slots__ = ("lhs", "rhs", "rule", "refs", "axiom", "index", "subst")

    def __init__(self, lhs, rhs, rule, refs=(), axiom=None, index=None, subst=()):
        self.lhs, self.rhs, self.rule = lhs, rhs, rule
        self.refs, self.axiom, self.index, self.subst = refs, axiom, index, subst

    @property
    def is_refl(self) -> bool:
        return self.rule == "refl"

    def __repr__(self):
        return f"Thm({T.to_string(self.lhs)} = {T.to_string(self.rhs)} by {self.rule})"


def _term(x) -> Term:
    if isinstance(x, str):
        x = T.parse(x, allow_reserved=True)
    return E(x)


def _subst_map(sub: dict) -> dict:
    return {k: _term(v) for k, v in sub.items()}


def refl(t: Term) -> Thm:
    return Thm(t, t, "refl")


def sym(a: Thm) -> Thm:
    if a.is_refl:
        return a
    if a.rule == "sym":
        return a.refs[0]
    return Thm(a.rhs, a.lhs, "sym", (a,))


def trans(*thms: Thm) -> Thm:
    out = None
    for b in thms:
        if b is None:
            raise TacticError("missing link in a chain")
        if out is None or out.is_refl:
            if out is not None and out.rhs != b.lhs:
                raise TacticError(f"chain break: {T.to_string(out.rhs)} vs {T.to_string(b.lhs)}")
            out = b
            continue
        if b.is_refl:
            if out.rhs != b.lhs:
                raise TacticError(f"chain break: {T.to_string(out.rhs)} vs {T.to_string(b.lhs)}")
            continue
        if out.rhs != b.lhs:
            raise TacticError(f"chain break: {T.to_string(out.rhs)} vs {T.to_string(b.lhs)}")
        out = Thm(out.lhs, b.rhs, "trans", (out, b))
    return out


def cong(head: Term, args) -> Thm:
    args = list(args)
    lhs = T.with_args(head, [a.lhs for a in args])
    rhs = T.with_args(head, [a.rhs for a in args])
    if all(a.is_refl for a in args):
        return refl(lhs)
    return Thm(lhs, rhs, "cong", tuple(None if a.is_refl else a for a in args))


def _sorted_sub(sub: dict) -> tuple:
    return tuple(sorted(sub.items()))


def _axiom_eq(name: str, index):
    if name in SCHEMES:
        return tuple(E(x) for x in SCHEMES[name](index))
    for fam in FAMILIES.values():
        if name in fam:
            return tuple(E(x) for x in fam[name])
    raise TacticError(f"unknown axiom {name}")


def axiom(name: str, index: int | None = None, **sub) -> Thm:
    a, b = _axiom_eq(name, index)
    m = _subst_map(sub)
    return Thm(T.substitute(a, m), T.substitute(b, m), "axiom", (), name, index, _sorted_sub(m))


# name -> (lhs, rhs) of already built scripts, unfolded
LEMMAS: dict = {}


def register_lemma(name: str, lhs: Term, rhs: Term) -> None:
    LEMMAS[name] = (E(lhs), E(rhs))


def lemma(name: str, **sub) -> Thm:
    if name not in LEMMAS:
        raise TacticError(f"lemma {name} has not been built yet")
    a, b = LEMMAS[name]
    m = _subst_map(sub)
    return Thm(T.substitute(a, m), T.substitute(b, m), "lemma", (), name, None, _sorted_sub(m))


def subst(a: Thm, **sub) -> Thm:
    m = _subst_map(sub)
    return Thm(T.substitute(a.lhs, m), T.substitute(a.rhs, m), "subst", (a,), None, None, _sorted_sub(m))


def rw_at(t: Term, path, th: Thm) -> Thm:
    """Rewrite the subterm of ``t`` at ``path`` (which must be ``th.lhs``)."""
    if not path:
        if t != th.lhs:
            raise TacticError("rewrite target mismatch")
        return th
    k = path[0]
    args = [refl(a) for a in t.args]
    args[k] = rw_at(t.args[k], path[1:], th)
    return cong(t, args)


# ---------------------------------------------------------------- flattening

def _fold(t: Term, cache: dict) -> Term:
    """Re-introduce derived notation; unfolding the result gives back ``t``."""
    r = cache.get(t)
    if r is not None:
        return r
    if t.args:
        u = T.with_args(t, [_fold(a, cache) for a in t.args])
    else:
        u = t
    k = u.kind
    if k == ADD:
        a, b = u.args
        if a.kind == T.ONE and b.kind == T.ONE:
            u = T.numeral(2)
        elif a.kind == T.NUM and b.kind == T.ONE:
            u = T.numeral(a.name + 1)
        elif a.kind == T.ONE and b.kind == NEG and b.args[0].kind == T.PONE:
            u = T.pzero(b.args[0].args[0])
        elif b.kind == NEG:
            u = T.sub(a, b.args[0])
    elif k == MUL:
        a, b = u.args
        if b.kind == INV and b.args[0] == a:
            u = T.pone(a)
        elif a == b and a.kind == T.VAR:
            u = T.power(a, 2)
        elif a.kind == T.POW and a.args[0] == b and b.kind == T.VAR:
            u = T.power(b, a.name + 1)
        elif (a.kind == INV and a.args[0].kind == T.NUM and a.args[0].name == 2
              and b.kind == ADD and b.args[1].kind == CONJ and b.args[1].args[0] == b.args[0]):
            u = T.re_(b.args[0])
        elif (a.kind == NEG and a.args[0].kind == MUL and a.args[0].args[0].kind == T.I
              and a.args[0].args[1].kind == INV and a.args[0].args[1].args[0].kind == T.NUM
              and a.args[0].args[1].args[0].name == 2
              and b.kind == T.SUB and b.args[1].kind == CONJ and b.args[1].args[0] == b.args[0]):
            u = T.im_(b.args[0])
    cache[t] = u
    return u


def to_script(th: Thm, theory: str, goal: tuple, name: str = "") -> ProofScript:
    """Flatten a proof tree; steps proving the same equation are shared."""
    glhs, grhs = goal
    if (E(glhs), E(grhs)) != (th.lhs, th.rhs):
        raise TacticError(
            f"{name}: proof shows {T.to_string(th.lhs)} = {T.to_string(th.rhs)}, "
            f"goal is {T.to_string(E(glhs))} = {T.to_string(E(grhs))}")
    fcache: dict = {}
    ids: dict = {}  # statement -> step id
    done: dict = {}  # id(thm) -> step id
    steps: list = []

    order = []
    stack = [(th, False)]
    seen = set()
    while stack:
        node, expanded = stack.pop()
        if expanded:
            order.append(node)
            continue
        if id(node) in seen:
            continue
        seen.add(id(node))
        stack.append((node, True))
        for r in reversed(node.refs):
            if r is not None and id(r) not in seen:
                stack.append((r, False))

    for node in order:
        key = (node.lhs, node.rhs)
        if key in ids:
            done[id(node)] = ids[key]
            continue
        sid = f"s{len(steps) + 1}"
        refs = tuple(None if r is None else done[id(r)] for r in node.refs)
        steps.append(ProofStep(
            id=sid,
            lhs=_fold(node.lhs, fcache),
            rhs=_fold(node.rhs, fcache),
            rule=node.rule,
            refs=refs,
            axiom=node.axiom,
            index=node.index,
            subst=tuple((k, _fold(v, fcache)) for k, v in node.subst),
        ))
        ids[key] = sid
        done[id(node)] = sid

    # keep only steps the last one depends on
    by_id = {s.id: s for s in steps}
    last = done[id(th)]
    live, todo = set(), [last]
    while todo:
        s = todo.pop()
        if s in live:
            continue
        live.add(s)
        todo.extend(r for r in by_id[s].refs if r is not None)
    kept = [s for s in steps if s.id in live]
    # the goal step goes last
    kept.sort(key=lambda s: s.id == last)
    rename = {s.id: f"s{k + 1}" for k, s in enumerate(kept)}
    final = tuple(
        ProofStep(rename[s.id], s.lhs, s.rhs, s.rule,
                  tuple(None if r is None else rename[r] for r in s.refs),
                  s.axiom, s.index, s.subst)
        for s in kept)
    return ProofScript(theory, (glhs, grhs), final, name)


# ---------------------------------------------------------------- ring normalizer

_KIND_RANK = {T.VAR: 0, T.I: 1, CONJ: 2, INV: 3, SIGN: 4, ADD: 5, MUL: 6, NEG: 7,
              T.ONE: 8, T.ZERO: 9}
_key_cache: dict = {}


def _key(t: Term):
    r = _key_cache.get(t)
    if r is None:
        r = (_KIND_RANK[t.kind], t.name or "", tuple(_key(a) for a in t.args))
        _key_cache[t] = r
    return r


def _atoms(p: Term) -> list:
    out = []
    while p.kind == MUL:
        out.append(p.args[0])
        p = p.args[1]
    if p.kind != T.ONE:
        out.append(p)
    return out


def _mono_key(m: Term):
    if m.kind == NEG:
        m = m.args[0]
    return tuple(_key(a) for a in _atoms(m))


def _items(s: Term) -> list:
    if s.kind == T.ZERO:
        return []
    out = []
    while s.kind == ADD:
        out.append(s.args[0])
        s = s.args[1]
    out.append(s)
    return out


def _product(atoms) -> Term:
    atoms = list(atoms)
    if not atoms:
        return ONE_T
    out = atoms[-1]
    for a in reversed(atoms[:-1]):
        out = T.mul(a, out)
    return out


def _sum(items) -> Term:
    items = list(items)
    if not items:
        return ZERO_T
    out = items[-1]
    for a in reversed(items[:-1]):
        out = T.add(a, out)
    return out


def _L(name: str, **sub) -> Thm:
    return lemma("ring." + name, **sub)


def _A(name: str, **sub) -> Thm:
    return axiom(name, **sub)


def _negm(m: Term) -> Thm:
    """``-m`` for a normal monomial."""
    if m.kind == NEG:
        return _L("neg_neg", x=m.args[0])
    return refl(T.neg(m))


def _insert(m: Term, s: Term) -> Thm:
    if s.kind == T.ZERO:
        return _A("CR3", x=m)
    if s.kind == ADD:
        n, rest = s.args
    else:
        n, rest = s, None
    km, kn = _mono_key(m), _mono_key(n)
    if km < kn:
        return refl(T.add(m, s))
    if km == kn:
        if (m.kind == NEG) == (n.kind == NEG):
            return refl(T.add(m, s))
        if rest is None:
            if m.kind == NEG:
                return _L("neg_add_self", x=n)
            return _A("CR4", x=m)
        if m.kind == NEG:
            return _L("neg_add_cancel_left", x=n, y=rest)
        return _L("add_neg_cancel_left", x=m, y=rest)
    if rest is None:
        return _A("CR2", x=m, y=n)
    th = _L("add_left_comm", x=m, y=n, z=rest)
    th = trans(th, cong(th.rhs, [refl(n), _insert(m, rest)]))
    if th.rhs.args[1].kind == T.ZERO:
        th = trans(th, _A("CR3", x=n))
    return th


def _add_nf(a: Term, b: Term) -> Thm:
    if a.kind == T.ZERO:
        return _L("zero_add", x=b)
    if b.kind == T.ZERO:
        return _A("CR3", x=a)
    if a.kind == ADD:
        m, rest = a.args
        th = _A("CR1", x=m, y=rest, z=b)
        th2 = cong(th.rhs, [refl(m), _add_nf(rest, b)])
        return trans(th, th2, _insert(m, th2.rhs.args[1]))
    return _insert(a, b)


def _neg_nf(s: Term) -> Thm:
    if s.kind == T.ZERO:
        return _L("neg_zero")
    if s.kind == ADD:
        m, rest = s.args
        th = _L("neg_add", x=m, y=rest)
        return trans(th, cong(th.rhs, [_negm(m), _neg_nf(rest)]))
    return _negm(s)


def _insert_atom(a: Term, q: Term) -> Thm:
    if q.kind == MUL:
        b, rest = q.args
        if _key(a) <= _key(b):
            return refl(T.mul(a, q))
        th = _L("mul_left_comm", x=a, y=b, z=rest)
        return trans(th, cong(th.rhs, [refl(b), _insert_atom(a, rest)]))
    if _key(a) <= _key(q):
        return refl(T.mul(a, q))
    return _A("CR6", x=a, y=q)


def _mul_prod(p: Term, q: Term) -> Thm:
    if p.kind == T.ONE:
        return _A("CR7", x=q)
    if q.kind == T.ONE:
        return _L("mul_one", x=p)
    if p.kind == MUL:
        a, rest = p.args
        th = _A("CR5", x=a, y=rest, z=q)
        th2 = cong(th.rhs, [refl(a), _mul_prod(rest, q)])
        return trans(th, th2, _insert_atom(a, th2.rhs.args[1]))
    return _insert_atom(p, q)


def _mul_mono(m: Term, n: Term) -> Thm:
    if m.kind == NEG:
        th = _L("neg_mul", x=m.args[0], y=n)
        th2 = cong(th.rhs, [_mul_mono(m.args[0], n)])
        return trans(th, th2, _negm(th2.rhs.args[0]))
    if n.kind == NEG:
        th = _L("mul_neg", x=m, y=n.args[0])
        return trans(th, cong(th.rhs, [_mul_prod(m, n.args[0])]))
    return _mul_prod(m, n)


def _mul_mono_sum(m: Term, s: Term) -> Thm:
    if s.kind == ADD:
        n, rest = s.args
        th = _A("CR8", x=m, y=n, z=rest)
        th2 = cong(th.rhs, [_mul_mono(m, n), _mul_mono_sum(m, rest)])
        return trans(th, th2, _add_nf(*th2.rhs.args))
    return _mul_mono(m, s)


def _mul_nf(a: Term, b: Term) -> Thm:
    if a.kind == T.ZERO:
        return _L("zero_mul", x=b)
    if b.kind == T.ZERO:
        return _L("mul_zero", x=a)
    if a.kind == ADD:
        m, rest = a.args
        th = _L("distrib_right", x=m, y=rest, z=b)
        th2 = cong(th.rhs, [_mul_mono_sum(m, b), _mul_nf(rest, b)])
        return trans(th, th2, _add_nf(*th2.rhs.args))
    return _mul_mono_sum(a, b)


_norm_cache: dict = {}


def norm(t: Term) -> Thm:
    """Proof of ``t = NF(t)`` where NF is the commutative-ring normal form."""
    r = _norm_cache.get(t)
    if r is not None:
        return r
    k = t.kind
    if not t.args:
        r = refl(t)
    elif k in (INV, SIGN, CONJ):
        r = cong(t, [norm(t.args[0])])
    else:
        c = cong(t, [norm(a) for a in t.args])
        if k == NEG:
            r = trans(c, _neg_nf(c.rhs.args[0]))
        elif k == ADD:
            r = trans(c, _add_nf(*c.rhs.args))
        elif k == MUL:
            r = trans(c, _mul_nf(*c.rhs.args))
        else:
            raise TacticError(f"cannot normalize node {k}")
    _norm_cache[t] = r
    return r


def reset_caches() -> None:
    """Forget cached proofs (needed when the ring lemmas are rebuilt)."""
    _norm_cache.clear()


def ring_eq(u: Term, v: Term) -> Thm | None:
    a, b = norm(u), norm(v)
    if a.rhs != b.rhs:
        return None
    return trans(a, sym(b))


# ---------------------------------------------------------------- rules

def match(p: Term, t: Term, vars_, sub: dict) -> dict | None:
    if p.kind == T.VAR and p.name in vars_:
        bound = sub.get(p.name)
        if bound is None:
            out = dict(sub)
            out[p.name] = t
            return out
        return sub if bound == t else None
    if p.kind != t.kind or p.name != t.name or len(p.args) != len(t.args):
        return None
    for a, b in zip(p.args, t.args):
        sub = match(a, b, vars_, sub)
        if sub is None:
            return None
    return sub


@dataclass(frozen=True)
class Rule:
    """An equation usable for rewriting, instantiated by matching."""

    lhs: Term
    rhs: Term
    vars: frozenset
    make: Callable

    def forward(self, t: Term):
        s = match(self.lhs, t, self.vars, {})
        return None if s is None else self.make(s)

    def apply(self, u: Term, v: Term) -> Thm | None:
        s = match(self.lhs, u, self.vars, {})
        if s is not None:
            s = match(self.rhs, v, self.vars, s)
            if s is not None:
                return self.make(s)
        s = match(self.rhs, u, self.vars, {})
        if s is not None:
            s = match(self.lhs, v, self.vars, s)
            if s is not None:
                return sym(self.make(s))
        return None


def _vars(*ts) -> frozenset:
    return frozenset(v for t in ts for v in T.free_vars(t))


def ax_rule(name: str, index: int | None = None) -> Rule:
    a, b = _axiom_eq(name, index)
    return Rule(a, b, _vars(a, b), lambda s: axiom(name, index, **s))


def lem_rule(name: str) -> Rule:
    a, b = LEMMAS[name]
    return Rule(a, b, _vars(a, b), lambda s: lemma(name, **s))


def thm_rule(th: Thm) -> Rule:
    """A proven ground equation as a rule (its variables are not generalized)."""
    return Rule(th.lhs, th.rhs, frozenset(), lambda s: th)


def as_rules(rules) -> list:
    out = []
    for r in rules if isinstance(rules, (list, tuple)) else [rules]:
        if isinstance(r, Rule):
            out.append(r)
        elif isinstance(r, Thm):
            out.append(thm_rule(r))
        elif isinstance(r, str) and "." in r:
            out.append(lem_rule(r))
        elif isinstance(r, str):
            out.append(ax_rule(r))
        elif isinstance(r, tuple):
            out.append(ax_rule(*r))
        else:
            raise TypeError(f"not a rule: {r!r}")
    return out


def prove_eq(u: Term, v: Term, rules=(), ring: bool = True) -> Thm | None:
    """Align ``u`` and ``v``; close each difference by a rule or by ring normalization."""
    rules = as_rules(rules)
    memo: dict = {}

    def go(a: Term, b: Term):
        if a == b:
            return refl(a)
        key = (a, b)
        if key in memo:
            return memo[key]
        memo[key] = None
        r = None
        for rule in rules:
            r = rule.apply(a, b)
            if r is not None:
                break
        if r is None and a.kind == b.kind and a.name == b.name and a.args and len(a.args) == len(b.args):
            subs = []
            for x, y in zip(a.args, b.args):
                p = go(x, y)
                if p is None:
                    break
                subs.append(p)
            else:
                r = cong(a, subs)
        if r is None and ring:
            r = ring_eq(a, b)
        memo[key] = r
        return r

    return go(u, v)


def step(u, v, how="ring", ring: bool = True) -> Thm:
    u, v = _term(u), _term(v)
    if isinstance(how, Simp):
        th = how.prove(u, v)
    elif how == "ring":
        th = prove_eq(u, v)
    else:
        th = prove_eq(u, v, how, ring)
    if th is None:
        raise TacticError(f"cannot justify {T.to_string(u)} = {T.to_string(v)} by {how!r}")
    return th


def calc(start, *chain, ring: bool = True) -> Thm:
    """``calc(t0, (t1, how1), (t2, how2), ...)`` proves ``t0 = tn``.

    ``how`` is ``"ring"``, a :class:`Simp`, or rules for :func:`prove_eq`.
    """
    cur = _term(start)
    out = refl(cur)
    for target, how in chain:
        th = step(cur, target, how, ring)
        out = trans(out, th)
        cur = th.rhs
    return out


# ---------------------------------------------------------------- simplifier

@dataclass(frozen=True)
class MonoRule:
    """Rewrite a product of atoms occurring inside a monomial."""

    patterns: tuple
    rule: Rule


def mono_rule(rule, patterns) -> MonoRule:
    (r,) = as_rules(rule)
    return MonoRule(tuple(_term(p) for p in patterns), r)


def _match_multiset(pats, atoms, vars_, sub):
    if not pats:
        return sub, atoms
    tried = set()
    for k, a in enumerate(atoms):
        if a in tried:
            continue
        tried.add(a)
        s2 = match(pats[0], a, vars_, sub)
        if s2 is not None:
            r = _match_multiset(pats[1:], atoms[:k] + atoms[k + 1:], vars_, s2)
            if r is not None:
                return r
    return None


_TWO_CORE = E(T.numeral(2))
_HALF = T.inv(_TWO_CORE)


class Simp:
    """Ring normalization plus oriented rules, run to a fixpoint.

    ``rules`` rewrite anywhere (innermost first); ``mono`` rules rewrite a
    sub-multiset of a monomial's atoms; ``halve`` is a proof of
    ``(1+1)*(1+1)^-1 = 1`` that lets two equal monomials containing
    ``(1+1)^-1`` merge into one without it.
    """

    def __init__(self, rules=(), mono=(), halve: Thm | None = None, limit: int = 400):
        self.rules = as_rules(rules)
        self.mono = list(mono)
        self.halve = halve
        self.limit = limit

    def run(self, t: Term) -> Thm:
        th = norm(t)
        for _ in range(self.limit):
            cur = th.rhs
            r = self._rewrite(cur, ()) or self._sums(cur, ())
            if r is None:
                return th
            th = trans(th, rw_at(cur, r[0], r[1]))
            th = trans(th, norm(th.rhs))
        raise TacticError("simplifier did not reach a fixpoint")

    def prove(self, u: Term, v: Term) -> Thm | None:
        a, b = self.run(u), self.run(v)
        if a.rhs != b.rhs:
            return None
        return trans(a, sym(b))

    def _rewrite(self, t: Term, path):
        for k, a in enumerate(t.args):
            r = self._rewrite(a, path + (k,))
            if r is not None:
                return r
        for rule in self.rules:
            th = rule.forward(t)
            if th is not None:
                return path, th
        return None

    def _sums(self, s: Term, path):
        """Find a monomial rewrite in the sum ``s`` or in atom arguments.

        Returns ``(path, proof)`` for the subterm to replace, or None.
        """
        items = _items(s)
        n = len(items)
        ipaths = [path + (1,) * j + ((0,) if j < n - 1 else ()) for j in range(n)]
        for j, m in enumerate(items):
            ppath = ipaths[j] + ((0,) if m.kind == NEG else ())
            prod = m.args[0] if m.kind == NEG else m
            atoms = _atoms(prod)
            for k, a in enumerate(atoms):
                if a.args:
                    apath = ppath + (1,) * k + ((0,) if k < len(atoms) - 1 else ()) + (0,)
                    r = self._sums(a.args[0], apath)
                    if r is not None:
                        return r
            for mr in self.mono:
                hit = _match_multiset(mr.patterns, atoms, mr.rule.vars, {})
                if hit is None:
                    continue
                sub, rest = hit
                inner = T.substitute(mr.rule.lhs, sub)
                th = mr.rule.make(sub)
                exposed = T.mul(inner, _product(rest)) if rest else inner
                sub_path = (0,) if rest else ()
                if m.kind == NEG:
                    exposed = T.neg(exposed)
                    sub_path = (0,) + sub_path
                to_exposed = sym(norm(exposed))
                if to_exposed.lhs != m:
                    raise TacticError("monomial exposure failed")
                local = trans(to_exposed, rw_at(exposed, sub_path, th))
                return ipaths[j], local
        if self.halve is not None:
            for j in range(n - 1):
                m = items[j]
                if m != items[j + 1]:
                    continue
                prod = m.args[0] if m.kind == NEG else m
                atoms = _atoms(prod)
                if _HALF not in atoms:
                    continue
                rest = list(atoms)
                rest.remove(_HALF)
                inner = T.mul(_TWO_CORE, _HALF)
                new = T.mul(inner, _product(rest)) if rest else inner
                sub_path = (0,) if rest else ()
                if m.kind == NEG:
                    new = T.neg(new)
                    sub_path = (0,) + sub_path
                tail = items[j + 2:]
                spath = path + (1,) * j
                old = _sum(items[j:])
                exposed = T.add(new, _sum(tail)) if tail else new
                if tail:
                    sub_path = (0,) + sub_path
                to_exposed = sym(norm(exposed))
                if to_exposed.lhs != old:
                    raise TacticError("halving exposure failed")
                local = trans(to_exposed, rw_at(exposed, sub_path, self.halve))
                return spath, local
        return None


def inverse_unique(p1: Thm, p2: Thm) -> Thm:
    """From ``u*(u*v) = u`` and ``v*(v*u) = v`` conclude ``v = u^-1``."""
    u = p1.rhs
    v = p2.rhs
    w = T.inv(u)
    ril = axiom("RIL", x=u)            # u*(u*w) = u
    rinv = lemma("md.ril_inv", x=u)    # w*(w*u) = w
    left = calc(
        v,
        (T.mul(v, T.mul(v, u)), [p2]),
        (T.mul(v, T.mul(v, T.mul(u, T.mul(u, w)))), [ril]),
        (T.mul(T.mul(v, T.mul(v, u)), T.mul(u, w)), "ring"),
        (T.mul(v, T.mul(u, w)), [p2]),
    )
    right = calc(
        w,
        (T.mul(w, T.mul(w, u)), [rinv]),
        (T.mul(w, T.mul(w, T.mul(u, T.mul(u, v)))), [p1]),
        (T.mul(T.mul(w, T.mul(w, u)), T.mul(u, v)), "ring"),
        (T.mul(w, T.mul(u, v)), [rinv]),
    )
    return trans(left, step(left.rhs, right.rhs), sym(right))

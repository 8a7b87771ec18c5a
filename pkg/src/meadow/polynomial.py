"""Sparse multivariate integer polynomials over variables and opaque atoms.

Indeterminates are identified by string keys.  A plain variable uses its own
name; any other subterm treated as an indeterminate (a sign application, for
instance) uses ``"~" + printed form`` and is remembered in a registry so the
polynomial can be turned back into a term.
"""
from __future__ import annotations

from functools import total_ordering

from . import terms as T
from .terms import Term

_ATOMS: dict[str, Term] = {}


class PolyError(ValueError):
    """The term is outside the inverse-free fragment."""


def atom_key(t: Term) -> str:
    if t.kind == T.VAR:
        return t.name
    key = "~" + T.to_string(t)
    _ATOMS.setdefault(key, t)
    return key


def atom_term(key: str) -> Term:
    if key.startswith("~"):
        return _ATOMS[key]
    return T.var(key)


def _mono_mul(m1: tuple, m2: tuple) -> tuple:
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for k, e in m2:
        d[k] = d.get(k, 0) + e
    return tuple(sorted(d.items()))


def _mono_degree(m: tuple) -> int:
    return sum(e for _, e in m)


def _grlex_key(m: tuple):
    # larger total degree first, then lexicographic on the exponent vector
    return (-_mono_degree(m), tuple((k, -e) for k, e in m))


@total_ordering
class Poly:
    """Immutable polynomial: mapping monomial -> nonzero int coefficient.

    A monomial is a sorted tuple of ``(key, exponent)`` pairs; the empty tuple
    is the constant monomial.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: dict | None = None):
        self.terms = {m: c for m, c in (terms or {}).items() if c}
        self._hash = None

    # construction
    @staticmethod
    def const(c: int) -> Poly:
        return Poly({(): c})

    @staticmethod
    def indet(key: str) -> Poly:
        return Poly({((key, 1),): 1})

    # algebra
    def __add__(self, o: Poly) -> Poly:
        d = dict(self.terms)
        for m, c in o.terms.items():
            d[m] = d.get(m, 0) + c
        return Poly(d)

    def __neg__(self) -> Poly:
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, o: Poly) -> Poly:
        return self + (-o)

    def __mul__(self, o: Poly) -> Poly:
        d: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = _mono_mul(m1, m2)
                d[m] = d.get(m, 0) + c1 * c2
        return Poly(d)

    def scale(self, c: int) -> Poly:
        return Poly({m: c * v for m, v in self.terms.items()})

    def __pow__(self, k: int) -> Poly:
        out = Poly.const(1)
        for _ in range(k):
            out = out * self
        return out

    # inspection
    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return not self.terms or set(self.terms) == {()}

    def const_value(self) -> int:
        return self.terms.get((), 0)

    def monomials(self) -> list:
        return sorted(self.terms, key=_grlex_key)

    def leading(self):
        m = self.monomials()[0]
        return m, self.terms[m]

    def degree(self) -> int:
        return max((_mono_degree(m) for m in self.terms), default=0)

    def keys(self) -> set:
        return {k for m in self.terms for k, _ in m}

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def content(self) -> int:
        from math import gcd
        g = 0
        for c in self.terms.values():
            g = gcd(g, c)
        return g

    def sign_normal(self) -> tuple[int, Poly]:
        """Return ``(s, q)`` with ``self = s*q`` and ``q`` having positive leading coefficient."""
        if self.is_zero():
            return 1, self
        _, c = self.leading()
        return (1, self) if c > 0 else (-1, -self)

    def subst(self, key: str, q: Poly) -> Poly:
        if key not in self.keys():
            return self
        out = Poly()
        for m, c in self.terms.items():
            rest, e = [], 0
            for k, x in m:
                if k == key:
                    e = x
                else:
                    rest.append((k, x))
            out = out + Poly({tuple(rest): c}) * (q ** e)
        return out

    # identity
    def _items(self):
        return tuple((m, self.terms[m]) for m in self.monomials())

    def __eq__(self, o):
        return isinstance(o, Poly) and self.terms == o.terms

    def __lt__(self, o):
        return _sort_key(self) < _sort_key(o)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self):
        return f"Poly({T.to_string(self.to_term())!r})"

    def to_term(self) -> Term:
        return poly_to_term(self)


def _sort_key(p: Poly):
    return (p.degree(), len(p.terms), [(_grlex_key(m), c) for m, c in p._items()])


def _coef_term(c: int) -> Term:
    return T.ONE_T if c == 1 else T.numeral(c)


def _mono_term(m: tuple) -> Term:
    factors = []
    for k, e in m:
        a = atom_term(k)
        factors.append(a if e == 1 else T.power(a, e))
    return T.product_of(factors)


def poly_to_term(p: Poly) -> Term:
    """Render in grlex order as a sum of ``n(c) * monomial`` terms."""
    if p.is_zero():
        return T.ZERO_T
    out = None
    for m in p.monomials():
        c = p.terms[m]
        mag = abs(c)
        if not m:
            body = _coef_term(mag)
        elif mag == 1:
            body = _mono_term(m)
        else:
            body = T.mul(T.numeral(mag), _mono_term(m))
        if out is None:
            out = T.neg(body) if c < 0 else body
        else:
            out = T.sub(out, body) if c < 0 else T.add(out, body)
    return out


def term_to_poly(t: Term, atom=None) -> Poly:
    """Expand an inverse-free term.

    ``atom`` decides what to do with non-ring nodes: ``None`` rejects them,
    otherwise it is called with the node and must return a Poly.
    """
    cache: dict = {}

    def go(u: Term) -> Poly:
        r = cache.get(u)
        if r is not None:
            return r
        k = u.kind
        if k == T.VAR:
            r = Poly.indet(u.name)
        elif k == T.ZERO:
            r = Poly()
        elif k == T.ONE:
            r = Poly.const(1)
        elif k == T.NUM:
            r = Poly.const(u.name)
        elif k == T.NEG:
            r = -go(u.args[0])
        elif k == T.ADD:
            r = go(u.args[0]) + go(u.args[1])
        elif k == T.SUB:
            r = go(u.args[0]) - go(u.args[1])
        elif k == T.MUL:
            r = go(u.args[0]) * go(u.args[1])
        elif k == T.POW and u.name >= 0:
            r = go(u.args[0]) ** u.name
        elif atom is not None:
            r = atom(u)
        else:
            raise PolyError(f"node {k!r} is not allowed in a polynomial")
        cache[u] = r
        return r

    return go(t)


def canon_poly(t: Term) -> Poly:
    """Canonical polynomial of an inverse-, sign- and complex-free term."""
    return term_to_poly(t)


def opaque_atoms(u: Term) -> Poly:
    """Atom callback that treats any non-ring node as an indeterminate."""
    return Poly.indet(atom_key(u))

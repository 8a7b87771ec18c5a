"""Deciding equations in concrete meadows.

:func:`decide` first tries to prove ``s = t`` (polynomial canonical form,
exhaustive enumeration of a small residue ring, standard meadow form) and
otherwise samples assignments.  A sample schedule depends only on the seed
and the sample index, so a larger budget extends the schedule of a smaller
one and can never lose a counterexample.

:func:`decide_complex` reduces a complex equation to two real ones by
splitting both sides into real and imaginary parts.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import terms as T
from .normal_forms import NormalFormError, is_zero_form, pseudo_simplify
from .polynomial import PolyError, canon_poly
from .semantics import (
    C0, DEFAULT_BOUND, EvalError, GaussRat, Model, Q0, Zmod, eval_in, format_assignment,
    format_value, model_from_name, random_assignment, structured_domain,
)
from .terms import Term

PROVED, REFUTED, PROBABLE, UNKNOWN = "proved", "refuted", "probable-valid", "unknown"

# structured samples cover every combination of special values up to this many variables
STRUCTURED_VARS = 3
# larger terms skip the normal form engine, whose guard trees can grow exponentially
NF_SIZE_LIMIT = 160


class DecideError(ValueError):
    """Terms outside the signature of the selected model."""


@dataclass(frozen=True)
class Verdict:
    """Outcome of a decision together with the engine that produced it.

    ``witness`` is a sorted tuple of ``(variable, value)`` pairs and is set
    only for refutations, alongside the two side values.  ``degree_bound``
    is the total degree of the polynomial difference when both sides are
    polynomials, which bounds the chance that a random point misses a
    nonzero difference.
    """

    outcome: str
    engine: str
    samples: int = 0
    witness: tuple = ()
    lhs_value: object = None
    rhs_value: object = None
    degree_bound: int | None = None

    @property
    def assignment(self) -> dict:
        return dict(self.witness)

    def record(self) -> str:
        """Single-line machine-readable form."""
        w = format_assignment(self.assignment) if self.witness else "none"
        return f"verdict={self.outcome} samples={self.samples} witness={w}"

    def describe(self) -> str:
        """Human-readable summary."""
        if self.outcome == PROVED:
            return f"proved by {self.engine}"
        if self.outcome == REFUTED:
            return (f"refuted at {format_assignment(self.assignment)}: "
                    f"lhs = {format_value(self.lhs_value)}, rhs = {format_value(self.rhs_value)}")
        if self.outcome == PROBABLE:
            msg = f"no counterexample in {self.samples} samples (not a proof)"
            if self.degree_bound is not None:
                msg += f"; polynomial difference of total degree {self.degree_bound}"
            return msg
        return "unknown"

    @property
    def exit_code(self) -> int:
        return {PROVED: 0, PROBABLE: 0, REFUTED: 1}.get(self.outcome, 2)


# ---------------------------------------------------------------- models and signatures

def resolve_model(model, *terms: Term) -> Model:
    """Model object from a selector, checking that ``terms`` fit its signature."""
    uses_sign = any(t.mask & T.SIGN_MASK for t in terms)
    if isinstance(model, str):
        model = model_from_name(model, signs_star=uses_sign)
    complex_used = any(t.mask & T.COMPLEX_MASK for t in terms)
    if isinstance(model, (Q0, Zmod)) and complex_used:
        raise DecideError(f"complex symbols are not in the signature of {model.name}")
    if isinstance(model, Zmod) and uses_sign:
        raise DecideError(f"sign is not in the signature of {model.name}")
    if isinstance(model, C0) and uses_sign and not model.has_sign:
        raise DecideError("sign over c0 needs the Signs* configuration")
    return model


# ---------------------------------------------------------------- sampling

def sample_schedule(names, model: Model, seed: int, budget: int, bound: int = DEFAULT_BOUND):
    """Yield up to ``budget`` assignments: structured values first, then random ones."""
    names = tuple(names)
    count = 0
    if len(names) <= STRUCTURED_VARS:
        for combo in itertools.product(structured_domain(model), repeat=len(names)):
            if count >= budget:
                return
            yield dict(zip(names, combo))
            count += 1
    index = 0
    while count < budget:
        yield random_assignment(names, model, seed, index, bound)
        index += 1
        count += 1


def _exhaustive(names, model: Zmod):
    for combo in itertools.product(range(model.n), repeat=len(names)):
        yield {v: model.const(c) for v, c in zip(names, combo)}


def _search(s: Term, t: Term, model: Model, assignments):
    """First assignment where the sides differ, with both values and the count examined."""
    n = 0
    for a in assignments:
        n += 1
        lv, rv = eval_in(model, s, a), eval_in(model, t, a)
        if lv != rv:
            return a, lv, rv, n
    return None, None, None, n


def _names(s: Term, t: Term):
    return tuple(sorted(set(T.free_vars(s)) | set(T.free_vars(t))))


def _refuted(s, t, model, a, lv, rv, n, engine="sampling") -> Verdict:
    # independent re-evaluation guards against a stale or mutated assignment
    if eval_in(model, s, a) == eval_in(model, t, a):
        raise AssertionError("witness does not re-verify")
    return Verdict(REFUTED, engine, n, tuple(sorted(a.items())), lv, rv)


def sample_refute(s: Term, t: Term, model="q0", budget: int = 1000, seed: int = 0,
                  bound: int = DEFAULT_BOUND) -> Verdict:
    """Sampling alone: a re-verified refutation, or ``unknown`` after ``budget`` samples."""
    m = resolve_model(model, s, t)
    a, lv, rv, n = _search(s, t, m, sample_schedule(_names(s, t), m, seed, budget, bound))
    if a is None:
        return Verdict(UNKNOWN, "sampling", n)
    return _refuted(s, t, m, a, lv, rv, n)


def refute(s: Term, t: Term, model="q0", budget: int = 1000, seed: int = 0,
           bound: int = DEFAULT_BOUND) -> dict | None:
    """Counterexample assignment found by sampling alone, or ``None``."""
    v = sample_refute(s, t, model, budget, seed, bound)
    return v.assignment if v.outcome == REFUTED else None


# ---------------------------------------------------------------- proving engines

_POLY_KINDS = frozenset({T.ZERO, T.ONE, T.VAR, T.NUM, T.NEG, T.ADD, T.SUB, T.MUL, T.POW})


def polynomial_difference(s: Term, t: Term):
    """Canonical polynomial of ``s - t`` when both sides are polynomials, else ``None``."""
    for n in itertools.chain(T.subterms(s), T.subterms(t)):
        if n.kind not in _POLY_KINDS or (n.kind == T.POW and n.name < 0):
            return None
    try:
        return canon_poly(T.sub(s, t))
    except PolyError:
        return None


def _nf_proves(s: Term, t: Term, model: Model) -> bool:
    if s.mask & T.COMPLEX_MASK or t.mask & T.COMPLEX_MASK:
        return False
    if s.size() + t.size() > NF_SIZE_LIMIT:
        return False
    signed = bool((s.mask | t.mask) & T.SIGN_MASK)
    if signed and not isinstance(model, Q0):
        return False
    char0 = not isinstance(model, Zmod)
    try:
        return is_zero_form(pseudo_simplify(T.sub(s, t)), signed=signed, char0=char0)
    except NormalFormError:
        return False


def decide(s: Term, t: Term, model="q0", budget: int = 1000, seed: int = 0,
           bound: int = DEFAULT_BOUND) -> Verdict:
    """Decide ``s = t`` in ``model`` (``q0``, ``c0``, ``zmod:<n>`` or a Model)."""
    if budget < 1:
        raise DecideError("budget must be at least 1")
    m = resolve_model(model, s, t)
    names = _names(s, t)
    poly = polynomial_difference(s, t)
    if poly is not None and poly.is_zero():
        return Verdict(PROVED, "polynomial")
    if isinstance(m, Zmod) and m.n ** len(names) <= budget:
        a, lv, rv, n = _search(s, t, m, _exhaustive(names, m))
        if a is None:
            return Verdict(PROVED, "exhaustive", n)
        return _refuted(s, t, m, a, lv, rv, n, "exhaustive")
    if _nf_proves(s, t, m):
        return Verdict(PROVED, "normal-form")
    try:
        a, lv, rv, n = _search(s, t, m, sample_schedule(names, m, seed, budget, bound))
    except EvalError:
        return Verdict(UNKNOWN, "sampling")
    if a is not None:
        return _refuted(s, t, m, a, lv, rv, n)
    degree = poly.degree() if poly is not None else None
    return Verdict(PROBABLE, "sampling", n, degree_bound=degree)


# ---------------------------------------------------------------- complex to real

class SplitError(ValueError):
    """A term outside the sign-free complex signature."""


def _radd(a: Term, b: Term) -> Term:
    return T.add(a, b)


def _rmul(a: Term, b: Term) -> Term:
    return T.mul(a, b)


def split_complex(t: Term) -> tuple[Term, Term]:
    """Real forms ``(r, m)`` with ``re(t) = r`` and ``im(t) = m``.

    Real forms are built from 0, 1, ``re(x)`` and ``im(x)`` of variables by
    negation, inverse, addition and multiplication.
    """
    cache: dict = {}

    def go(u: Term):
        r = cache.get(u)
        if r is not None:
            return r
        k = u.kind
        if k == T.ZERO:
            r = (T.ZERO_T, T.ZERO_T)
        elif k == T.ONE:
            r = (T.ONE_T, T.ZERO_T)
        elif k == T.I:
            r = (T.ZERO_T, T.ONE_T)
        elif k == T.VAR:
            r = (T.re_(u), T.im_(u))
        elif k == T.NUM:
            r = (T.expand_derived(u), T.ZERO_T)
        elif k == T.NEG:
            a, b = go(u.args[0])
            r = (T.neg(a), T.neg(b))
        elif k == T.ADD:
            (a1, b1), (a2, b2) = go(u.args[0]), go(u.args[1])
            r = (_radd(a1, a2), _radd(b1, b2))
        elif k == T.SUB:
            r = go(T.add(u.args[0], T.neg(u.args[1])))
        elif k == T.MUL:
            (a1, b1), (a2, b2) = go(u.args[0]), go(u.args[1])
            r = (_radd(_rmul(a1, a2), T.neg(_rmul(b1, b2))),
                 _radd(_rmul(a1, b2), _rmul(b1, a2)))
        elif k == T.INV:
            a, b = go(u.args[0])
            n = T.inv(_radd(_rmul(a, a), _rmul(b, b)))
            r = (_rmul(a, n), _rmul(T.neg(b), n))
        elif k == T.CONJ:
            a, b = go(u.args[0])
            r = (a, T.neg(b))
        elif k == T.RE:
            r = (go(u.args[0])[0], T.ZERO_T)
        elif k == T.IM:
            r = (go(u.args[0])[1], T.ZERO_T)
        elif k == T.PONE:
            x = u.args[0]
            r = go(T.mul(x, T.inv(x)))
        elif k == T.PZERO:
            x = u.args[0]
            r = go(T.add(T.ONE_T, T.neg(T.mul(x, T.inv(x)))))
        elif k == T.POW:
            base = u.args[0] if u.name >= 0 else T.inv(u.args[0])
            r = go(T.product_of([base] * abs(u.name)) if u.name else T.ONE_T)
        else:
            raise SplitError(f"node {k!r} cannot be split into real and imaginary parts")
        cache[u] = r
        return r

    return go(t)


def is_real_form(t: Term) -> bool:
    """Membership in the inductive real-form grammar."""
    stack = [t]
    while stack:
        n = stack.pop()
        if n.kind in (T.RE, T.IM):
            if n.args[0].kind != T.VAR:
                return False
        elif n.kind in (T.NEG, T.INV, T.ADD, T.MUL):
            stack.extend(n.args)
        elif n.kind not in (T.ZERO, T.ONE):
            return False
    return True


def star_substitute(u: Term, pairing) -> Term:
    """Replace ``x`` by ``re(z)`` and ``y`` by ``im(z)`` for each pair ``(x, y) -> z``.

    ``pairing`` maps ``(x, y)`` name pairs to ``z`` names; ``y`` may be ``None``.
    """
    sub = {}
    for (x, y), z in dict(pairing).items():
        zt = T.var(z)
        sub[x] = T.re_(zt)
        if y is not None:
            sub[y] = T.im_(zt)
    if u.mask:
        raise SplitError("star substitution applies to plain meadow terms")
    missing = [v for v in T.free_vars(u) if v not in sub]
    if missing:
        raise SplitError(f"variables {missing} are not covered by the pairing")
    return T.substitute(u, sub)


def _unstar(t: Term, names: dict) -> Term:
    """Replace ``re(z)`` and ``im(z)`` by plain variables, allocating names in ``names``."""
    cache: dict = {}

    def go(u: Term) -> Term:
        if u.kind in (T.RE, T.IM) and u.args[0].kind == T.VAR:
            key = (u.kind, u.args[0].name)
            if key not in names:
                names[key] = f"{T.RESERVED_PREFIX}{'r' if u.kind == T.RE else 'i'}_{u.args[0].name}"
            return T.var(names[key])
        if not u.args:
            return u
        r = cache.get(u)
        if r is None:
            r = T.with_args(u, [go(a) for a in u.args])
            cache[u] = r
        return r

    return go(t)


def decide_complex(s: Term, t: Term, budget: int = 1000, seed: int = 0,
                   bound: int = DEFAULT_BOUND) -> Verdict:
    """Decide ``s = t`` over the complex rationals through its real and imaginary parts."""
    if (s.mask | t.mask) & T.SIGN_MASK:
        raise SplitError("sign is not supported by the complex split")
    r1, r2 = split_complex(T.sub(s, t))
    names: dict = {}
    u1, u2 = _unstar(r1, names), _unstar(r2, names)
    v1 = decide(u1, T.ZERO_T, "q0", budget, seed, bound)
    v2 = decide(u2, T.ZERO_T, "q0", budget, seed, bound)
    samples = max(v1.samples, v2.samples)
    if v1.outcome == PROVED and v2.outcome == PROVED:
        return Verdict(PROVED, "complex-split", samples)
    bad = v1 if v1.outcome == REFUTED else v2 if v2.outcome == REFUTED else None
    if bad is not None:
        real = bad.assignment
        parts: dict = {}
        for (kind, z), name in names.items():
            re_im = parts.setdefault(z, [0, 0])
            re_im[0 if kind == T.RE else 1] = real.get(name, 0)
        w = {z: GaussRat(a, b) for z, (a, b) in parts.items()}
        for z in _names(s, t):
            w.setdefault(z, GaussRat(0))
        m = C0()
        lv, rv = eval_in(m, s, w), eval_in(m, t, w)
        if lv == rv:
            raise AssertionError("reassembled complex witness does not re-verify")
        return Verdict(REFUTED, "complex-split", bad.samples, tuple(sorted(w.items())), lv, rv)
    if UNKNOWN in (v1.outcome, v2.outcome):
        return Verdict(UNKNOWN, "complex-split", samples)
    return Verdict(PROBABLE, "complex-split", samples)

"""Finite meadows on the residue rings Z/nZ.

A residue ring carries a meadow inverse exactly when some unary map is an
involution satisfying ``x * (x * x^-1) = x``.  :func:`zmod_meadow` builds the
inverse table for squarefree moduli from the Chinese remainder theorem and,
for the other moduli, searches for such a map over per-element candidate
sets, returning the element whose candidate set is empty or an exhaustion
certificate.

Axioms are checked exhaustively with numpy: each variable gets its own axis
and a term is evaluated once over the whole grid of assignments.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import terms as T
from .prover.theories import SCHEMES, Theory, theory as parse_theory
from .semantics import is_squarefree, zmod_inverse
from .terms import Term

# largest grid of assignments an exhaustive check will build
MAX_GRID = 4_000_000


class ModelLabError(ValueError):
    """Bad modulus, unsupported theory or an infeasible exhaustive check."""


@dataclass(frozen=True)
class FiniteMeadow:
    """Z/nZ with a meadow inverse table.

    ``zero_divisors`` is the first pair of nonzero elements with product 0,
    or ``None`` when the ring has no proper zero divisors.
    """

    n: int
    inverse: tuple
    zero_divisors: tuple | None = None

    @property
    def cancellation(self) -> bool:
        return self.zero_divisors is None

    @property
    def table(self) -> np.ndarray:
        return np.array(self.inverse, dtype=np.int64)


@dataclass(frozen=True)
class Impossible:
    """No meadow inverse on Z/nZ.

    ``witness`` is an element ``x`` with no ``y`` such that ``x * x * y = x``;
    when every candidate set is nonempty it is ``None`` and ``explored``
    counts the search nodes visited before exhaustion.
    """

    n: int
    witness: int | None
    explored: int = 0

    @property
    def reason(self) -> str:
        if self.witness is not None:
            x = self.witness
            return f"no y with {x}*{x}*y = {x} (mod {self.n})"
        return f"no involutive inverse table exists (search visited {self.explored} nodes)"


def _check_modulus(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ModelLabError(f"modulus must be a positive integer, got {n!r}")


def candidate_sets(n: int) -> list[tuple]:
    """``[{y : x*x*y = x (mod n)} for x in 0..n-1]`` as sorted tuples."""
    _check_modulus(n)
    r = np.arange(n, dtype=np.int64)
    sq = (r * r) % n
    hits = (np.outer(sq, r) % n) == r[:, None]
    return [tuple(int(y) for y in np.flatnonzero(row)) for row in hits]


def search_inverse(n: int):
    """Search for an involutive RIL-consistent inverse table.

    Returns the table as a tuple or an :class:`Impossible` record.
    """
    cands = candidate_sets(n)
    for x, c in enumerate(cands):
        if not c:
            return Impossible(n, x)
    allowed = [set(c) for c in cands]
    table = [-1] * n
    explored = 0

    def assign(x: int) -> bool:
        nonlocal explored
        while x < n and table[x] >= 0:
            x += 1
        if x == n:
            return True
        for y in cands[x]:
            explored += 1
            # involution: y's inverse is x, so x must be a candidate for y
            if table[y] >= 0 or x not in allowed[y]:
                continue
            table[x] = y
            table[y] = x
            if assign(x + 1):
                return True
            table[x] = table[y] = -1
        return False

    if assign(0):
        return tuple(table)
    return Impossible(n, None, explored)


def _zero_divisors(n: int) -> tuple | None:
    r = np.arange(1, n, dtype=np.int64)
    hits = np.argwhere(np.outer(r, r) % n == 0)
    if hits.size == 0:
        return None
    a, b = hits[0]
    return int(a) + 1, int(b) + 1


def zmod_meadow(n: int):
    """The meadow on Z/nZ, or an :class:`Impossible` record when none exists."""
    _check_modulus(n)
    if not is_squarefree(n):
        return search_inverse(n)
    inv = tuple(zmod_inverse(n, r).residue for r in range(n))
    m = FiniteMeadow(n, inv, _zero_divisors(n))
    bad = [r for r in check_axioms(m, parse_theory("Md")) if not r.holds]
    if bad:
        raise AssertionError(f"CRT inverse table of Z/{n}Z violates {bad[0].label}")
    return m


@dataclass(frozen=True)
class ClassRow:
    n: int
    meadow: bool
    squarefree: bool
    cancellation: bool | None
    witness: int | None = None

    def line(self) -> str:
        canc = "-" if self.cancellation is None else ("yes" if self.cancellation else "no")
        return (f"{self.n:>4} {'yes' if self.meadow else 'no':>6} "
                f"{'yes' if self.squarefree else 'no':>10} {canc:>12}")


TABLE_HEADER = f"{'n':>4} {'meadow':>6} {'squarefree':>10} {'cancellation':>12}"


def classify_range(max_n: int) -> list[ClassRow]:
    """Classify Z/nZ for ``1 <= n <= max_n``."""
    _check_modulus(max_n)
    rows = []
    for n in range(1, max_n + 1):
        r = zmod_meadow(n)
        sf = is_squarefree(n)
        if isinstance(r, FiniteMeadow):
            rows.append(ClassRow(n, True, sf, r.cancellation))
        else:
            rows.append(ClassRow(n, False, sf, None, r.witness))
    return rows


def format_table(rows) -> str:
    return "\n".join([TABLE_HEADER] + [r.line() for r in rows]) + "\n"


# ---------------------------------------------------------------- exhaustive checking

@dataclass(frozen=True)
class AxiomReport:
    name: str
    index: int | None
    holds: bool
    counter: tuple | None = field(default=None)  # sorted (variable, residue) pairs

    @property
    def label(self) -> str:
        return self.name if self.index is None else f"{self.name}_{self.index}"


def eval_grid(t: Term, m: FiniteMeadow, env: dict) -> np.ndarray:
    """Evaluate ``t`` with each variable bound to a broadcastable residue array."""
    n, inv = m.n, m.table
    cache: dict = {}

    def go(u: Term):
        r = cache.get(u)
        if r is not None:
            return r
        k = u.kind
        if k == T.VAR:
            r = env[u.name]
        elif k == T.ZERO:
            r = np.int64(0)
        elif k == T.ONE:
            r = np.int64(1 % n)
        elif k == T.ADD:
            r = (go(u.args[0]) + go(u.args[1])) % n
        elif k == T.MUL:
            r = (go(u.args[0]) * go(u.args[1])) % n
        elif k == T.NEG:
            r = (-go(u.args[0])) % n
        elif k == T.INV:
            r = inv[go(u.args[0])]
        else:
            raise ModelLabError(f"node {k!r} cannot be evaluated in Z/{n}Z")
        cache[u] = r
        return r

    return np.asarray(go(T.expand_derived(t)))


def _grid_env(names, n: int) -> dict:
    k = len(names)
    env = {}
    for axis, name in enumerate(names):
        shape = [1] * k
        shape[axis] = n
        env[name] = np.arange(n, dtype=np.int64).reshape(shape)
    return env


def check_equation(m: FiniteMeadow, lhs: Term, rhs: Term):
    """First counter-assignment in lexicographic order, or ``None``."""
    names = sorted(set(T.free_vars(lhs)) | set(T.free_vars(rhs)))
    if m.n ** len(names) > MAX_GRID:
        raise ModelLabError(f"{m.n}^{len(names)} assignments exceed the exhaustive limit")
    env = _grid_env(names, m.n)
    shape = (m.n,) * len(names)
    diff = np.broadcast_to(eval_grid(lhs, m, env) != eval_grid(rhs, m, env), shape)
    if not diff.any():
        return None
    idx = np.unravel_index(int(np.argmax(diff)), shape) if names else ()
    return tuple((v, int(i)) for v, i in zip(names, idx))


def check_axioms(m: FiniteMeadow, th: Theory | str) -> list[AxiomReport]:
    """Exhaustively check every axiom (and scheme instance up to the bound) of ``th``."""
    if isinstance(th, str):
        th = parse_theory(th)
    if th.signature != T.MEADOW:
        raise ModelLabError("finite residue models only interpret the plain meadow signature")
    out = []
    for name in th.axiom_names():
        indices = range(th.bound + 1) if name in SCHEMES else [None]
        for index in indices:
            lhs, rhs = th.axiom(name, index)
            counter = check_equation(m, lhs, rhs)
            out.append(AxiomReport(name, index, counter is None, counter))
    return out

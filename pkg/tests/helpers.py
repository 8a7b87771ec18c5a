"""Random term generators shared by the test modules."""
from __future__ import annotations

import random

from meadow import terms as T

VARS = ("x", "y", "z", "w")


def random_term(rng: random.Random, max_nodes: int = 40, nvars: int = 4,
                signed: bool = False, inverse: bool = True, derived: bool = False,
                complex_: bool = False):
    """Random term with at most ``max_nodes`` nodes over the first ``nvars`` variables."""
    names = VARS[:nvars]
    budget = [max_nodes]

    def leaf():
        r = rng.random()
        if complex_ and r < 0.1:
            return T.I_T
        if r < 0.15:
            return T.ZERO_T
        if r < 0.3:
            return T.ONE_T
        return T.var(rng.choice(names))

    def go(depth):
        if budget[0] <= 1 or depth > 7 or rng.random() < 0.25:
            budget[0] -= 1
            return leaf()
        ops = ["add", "add", "mul", "mul", "neg"]
        if inverse:
            ops += ["inv", "inv"]
        if signed:
            ops += ["sign"]
        if complex_:
            ops += ["conj"]
        if derived:
            ops += ["sub", "pone", "pzero"]
        op = rng.choice(ops)
        budget[0] -= 1
        if op in ("add", "mul", "sub"):
            a = go(depth + 1)
            b = go(depth + 1)
            return {"add": T.add, "mul": T.mul, "sub": T.sub}[op](a, b)
        a = go(depth + 1)
        return {"neg": T.neg, "inv": T.inv, "sign": T.sign, "conj": T.conj,
                "pone": T.pone, "pzero": T.pzero}[op](a)

    return go(0)


def points(names, model, count: int, seed: int):
    """``count`` assignments for ``names``: the first ones force zeros, then random values."""
    from meadow.semantics import random_assignment

    names = tuple(names)
    out = []
    for k in range(count):
        a = random_assignment(names, model, seed, k)
        # the first 2^len(names) points zero out every subset of the variables
        if k < 2 ** len(names):
            for j, v in enumerate(names):
                if (k >> j) & 1:
                    a[v] = model.const(0)
        out.append(a)
    return out


def mutate_script(script, rng: random.Random):
    """Copy of ``script`` with one step perturbed: a subterm replaced or a ref redirected."""
    import dataclasses

    steps = list(script.steps)
    k = rng.randrange(len(steps))
    step = steps[k]
    real_refs = [j for j, r in enumerate(step.refs) if r is not None]
    earlier = [s.id for s in steps[:k] if s.id not in step.refs]
    if real_refs and earlier and rng.random() < 0.3:
        refs = list(step.refs)
        refs[rng.choice(real_refs)] = rng.choice(earlier)
        steps[k] = dataclasses.replace(step, refs=tuple(refs))
    else:
        side = rng.choice(("lhs", "rhs"))
        t = getattr(step, side)
        positions = list(T.positions(t))
        path, old = positions[rng.randrange(len(positions))]
        new = T.var("mutant") if old != T.var("mutant") else T.ONE_T
        steps[k] = dataclasses.replace(step, **{side: T.replace_at(t, path, new)})
    return dataclasses.replace(script, steps=tuple(steps)), step.id

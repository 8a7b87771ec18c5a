"""Acceptance suite: eight end-to-end criteria, one PASS/FAIL line each.

Each criterion is a function returning a :class:`Result` whose ``record`` is
the machine-readable summary (no timings), so the determinism criterion can
rerun the others and compare records byte for byte.  Run directly with
``python3 tests/test_acceptance.py`` or through pytest.
"""
from __future__ import annotations

import io
import itertools
import random
import sys
import time
from dataclasses import dataclass

import pytest

from meadow import logic as L
from meadow import terms as T
from meadow.cli import run
from meadow.decide import PROBABLE, PROVED, REFUTED, decide, decide_complex, refute, split_complex
from meadow.model_lab import FiniteMeadow, Impossible, classify_range, zmod_meadow
from meadow.normal_forms import denotation, to_smf, to_ssmf
from meadow.prover import theories as TH
from meadow.prover.kernel import Checker
from meadow.prover.library import corpus_dict
from meadow.semantics import C0, GaussRat, Q0, Zmod, evaluate
from helpers import mutate_script, points, random_term

SEED = 0


@dataclass(frozen=True)
class Result:
    number: int
    title: str
    ok: bool
    record: str
    seconds: float = 0.0

    def line(self) -> str:
        return (f"{'PASS' if self.ok else 'FAIL'} criterion {self.number} {self.title}: "
                f"{self.record} ({self.seconds:.1f}s)")


def _timed(fn, *args):
    start = time.perf_counter()
    r = fn(*args)
    return Result(r.number, r.title, r.ok, r.record, time.perf_counter() - start)


def _names(*ts):
    return sorted(set().union(*(T.free_vars(t) for t in ts)))


# ---------------------------------------------------------------- 1. axiom sweep

def _axiom_rows():
    q0, c0, star = Q0(), C0(), C0(signs_star=True)
    rows = []

    def add(tag, table, models):
        for name, (l, r) in table.items():
            for m in models:
                rows.append((f"{tag}.{name}@{m.name}{'*' if m is star else ''}", l, r, m))

    add("CR", TH.CR_AXIOMS, [q0])
    add("Md", TH.MD_AXIOMS, [q0, c0])
    add("Signs", TH.SIGNS_AXIOMS, [q0])
    add("CC", TH.CC_AXIOMS, [c0])
    add("RI", TH.RI_LAWS, [c0])
    add("Signs*", TH.SIGNS_STAR_AXIOMS, [star])
    add("PC", TH.PC_LAWS, [q0])
    for n in range(TH.DEFAULT_BOUND + 1):
        rows.append((f"C0_{n}@q0", *TH.c0_axiom(n), q0))
        rows.append((f"EFR_{n}@q0", *TH.efr_axiom(n), q0))
        rows.append((f"AEFR_{n}@q0", *TH.aefr_axiom(n), q0))
        rows.append((f"SSAV_{n}@c0", *TH.ssav_axiom(n), c0))
    return rows


def criterion_1(seed: int = SEED, samples: int = 200) -> Result:
    rows = _axiom_rows()
    failures = []
    for label, l, r, model in rows:
        for a in points(_names(l, r), model, samples, seed):
            if evaluate(l, model, a) != evaluate(r, model, a):
                failures.append(label)
                break
    record = f"axioms={len(rows)} samples={samples} failures={len(failures)}"
    if failures:
        record += " first=" + failures[0]
    return Result(1, "axiom soundness sweep", not failures, record)


# ---------------------------------------------------------------- 2. formal realness

def criterion_2(seed: int = SEED) -> Result:
    parts, ok = [], True
    for n in range(5):
        l, r = TH.efr_axiom(n)
        v = decide(l, r, "q0", budget=1000, seed=seed)
        good = v.outcome in (PROVED, PROBABLE) and refute(l, r, "q0", 1000, seed) is None
        ok &= good
        parts.append(f"EFR_{n}={v.outcome}")
    l, r = TH.efr_axiom(1)
    v = decide(l, r, "c0", budget=200, seed=seed)
    want = {"x0": GaussRat(1), "x1": GaussRat(0, 1)}
    ok &= (v.outcome == REFUTED and v.assignment == want and v.lhs_value == GaussRat(1)
           and v.samples <= 200 and evaluate(l, C0(), want) == GaussRat(1))
    parts.append("c0:" + v.record())
    return Result(2, "formal realness split", ok, " ".join(parts))


# ---------------------------------------------------------------- 3. SMF oracle

def criterion_3(seed: int = SEED, count: int = 1000, signed_count: int = 500) -> Result:
    rng = random.Random(seed)
    z10 = Zmod(10)
    mismatch = exhaustive = 0
    for k in range(count):
        t = random_term(rng, max_nodes=40, nvars=4)
        d = denotation(to_smf(t))
        names = T.free_vars(t)
        for a in points(names, Q0(), 100, seed + k):
            mismatch += evaluate(t, Q0(), a) != evaluate(d, Q0(), a)
        if len(names) <= 2:
            exhaustive += 1
            for combo in itertools.product(range(10), repeat=len(names)):
                a = {v: z10.const(c) for v, c in zip(names, combo)}
                mismatch += evaluate(t, z10, a) != evaluate(d, z10, a)
    for k in range(signed_count):
        t = random_term(rng, max_nodes=40, nvars=4, signed=True)
        d = denotation(to_ssmf(t))
        for a in points(T.free_vars(t), Q0(), 100, seed + count + k):
            mismatch += evaluate(t, Q0(), a) != evaluate(d, Q0(), a)
    record = f"terms={count} zmod10_exhaustive={exhaustive} signed={signed_count} mismatches={mismatch}"
    return Result(3, "normal form oracle equivalence", mismatch == 0, record)


# ---------------------------------------------------------------- 4. translations

def criterion_4(seed: int = SEED, pairs: int = 300, samples: int = 50) -> Result:
    rng = random.Random(seed)
    mismatch = 0
    for k in range(pairs):
        s = random_term(rng, max_nodes=12, nvars=3)
        t = random_term(rng, max_nodes=12, nvars=3)
        f = L.translate_phi(to_smf(s), to_smf(t))
        assert L.is_quantifier_free(f)
        for model in (Q0(), C0()):
            for a in points(_names(s, t), model, samples, seed + k):
                same = evaluate(s, model, a) == evaluate(t, model, a)
                mismatch += L.eval_formula(f, a, model) != same
    for k in range(pairs):
        s = random_term(rng, max_nodes=10, nvars=3, signed=True, inverse=False)
        t = random_term(rng, max_nodes=10, nvars=3, signed=True, inverse=False)
        f = L.translate_psi(s, t)
        for a in points(_names(s, t), Q0(), samples, seed + pairs + k):
            same = evaluate(s, Q0(), a) == evaluate(t, Q0(), a)
            mismatch += L.eval_formula(f, a, Q0()) != same
    record = f"phi_pairs={pairs} psi_pairs={pairs} samples={samples} mismatches={mismatch}"
    return Result(4, "translation agreement", mismatch == 0, record)


# ---------------------------------------------------------------- 5. proof corpus

def criterion_5(seed: int = SEED, mutations: int = 20) -> Result:
    scripts = corpus_dict()
    checker = Checker(scripts)
    valid = sum(checker.check(scripts[n]).valid for n in sorted(scripts))
    rng = random.Random(seed)
    accepted = []
    for name in sorted(scripts):
        for _ in range(mutations):
            mutated, _ = mutate_script(scripts[name], rng)
            if checker.check(mutated).valid:
                accepted.append(name)
    ok = len(scripts) >= 40 and valid == len(scripts) and not accepted
    record = f"scripts={len(scripts)} valid={valid} mutants={len(scripts) * mutations} accepted={len(accepted)}"
    return Result(5, "proof corpus", ok, record)


# ---------------------------------------------------------------- 6. finite models

def _squarefree(n: int) -> bool:
    return all(n % (p * p) for p in range(2, int(n ** 0.5) + 1))


def criterion_6() -> Result:
    rows = classify_range(50)
    agree = all(r.meadow == _squarefree(r.n) for r in rows)
    m10, m4 = zmod_meadow(10), zmod_meadow(4)
    ok = (agree and isinstance(m10, FiniteMeadow) and m10.zero_divisors == (2, 5)
          and isinstance(m4, Impossible) and m4.witness == 2)
    record = (f"max_n=50 meadows={sum(r.meadow for r in rows)} agree={'yes' if agree else 'no'} "
              f"z10_zero_divisors={m10.zero_divisors} z4_witness={getattr(m4, 'witness', None)}")
    return Result(6, "finite model classification", ok, record.replace(", ", ","))


# ---------------------------------------------------------------- 7. complex pipeline

def criterion_7(seed: int = SEED) -> Result:
    E = T.expand_derived
    c0 = C0()
    bad = []
    for name, (lhs, rhs) in TH.RI_LAWS.items():
        if lhs.kind in (T.RE, T.IM) and lhs.args[0].kind != T.VAR:
            r, m = split_complex(lhs.args[0])
            part = r if lhs.kind == T.RE else m
            if E(part) != E(rhs):
                bad.append(name)
                continue
        else:
            # decomposition and realness rows: the split pipeline must prove them
            part = rhs
            if decide_complex(lhs, rhs, seed=seed).outcome != PROVED:
                bad.append(name)
                continue
        for a in points(_names(lhs, rhs), c0, 100, seed):
            v = evaluate(lhs, c0, a)
            if v != evaluate(rhs, c0, a) or v != evaluate(part, c0, a):
                bad.append(name)
                break
    cc7 = decide_complex(*TH.CC_AXIOMS["CC7"], seed=seed)
    cc8 = decide_complex(*TH.CC_AXIOMS["CC8"], seed=seed)
    s, t = T.parse("conj(x)"), T.parse("x")
    neg = decide_complex(s, t, seed=seed)
    witness_ok = (neg.outcome == REFUTED
                  and evaluate(s, c0, neg.assignment) != evaluate(t, c0, neg.assignment))
    ok = not bad and cc7.outcome == PROVED and cc8.outcome == PROVED and witness_ok
    record = (f"ri_rows={len(TH.RI_LAWS)} ri_failures={len(bad)} CC7={cc7.outcome} CC8={cc8.outcome} "
              f"conj:{neg.record()}")
    return Result(7, "complex pipeline", ok, record)


# ---------------------------------------------------------------- 8. determinism

_CLI_RUNS = [
    ("decide", "--model", "c0", "zero(x^2 + y^2)*x", "0"),
    ("decide", "--seed", "17", "--budget", "300", "zero(x0^2 + x1^2) * x0 = 0"),
    ("refute", "--seed", "5", "one(x + y) = one(x)"),
    ("decide", "--model", "c0-split", "conj(x) = x"),
    ("modelcheck", "--max-n", "50"),
    ("normalize", "--form", "ssmf", "s(x*y^-1) + x^-1"),
    ("translate", "--target", "ordered-field", "s(x) = 1"),
]


def _cli_transcript() -> str:
    chunks = []
    for argv in _CLI_RUNS:
        out = io.StringIO()
        code = run(list(argv), out, io.StringIO())
        chunks.append(f"$ {' '.join(argv)}\n{out.getvalue()}exit={code}\n")
    return "".join(chunks)


def criterion_8(seed: int = SEED) -> Result:
    reruns = [
        lambda: criterion_1(seed, 50).record,
        lambda: criterion_2(seed).record,
        lambda: criterion_3(seed, 100, 50).record,
        lambda: criterion_4(seed, 30, 20).record,
        lambda: criterion_5(seed, 2).record,
        lambda: criterion_6().record,
        lambda: criterion_7(seed).record,
        _cli_transcript,
    ]
    differ = [k + 1 for k, fn in enumerate(reruns) if fn().encode() != fn().encode()]
    record = f"reruns={len(reruns)} differing={len(differ)}"
    return Result(8, "determinism", not differ, record)


# ---------------------------------------------------------------- pytest wiring

LIMITS = {1: 60.0, 5: 30.0, 6: 10.0}
CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4,
            criterion_5, criterion_6, criterion_7, criterion_8]


def _report(result: Result, capsys=None) -> None:
    if capsys is None:
        print(result.line())
        return
    with capsys.disabled():
        print("\n" + result.line())


@pytest.mark.parametrize("fn", CRITERIA, ids=lambda f: f.__name__)
def test_criterion(fn, capsys):
    r = _timed(fn)
    limit = LIMITS.get(r.number)
    if limit is not None and r.seconds >= limit:
        r = Result(r.number, r.title, False, r.record + f" over_time_limit={limit:.0f}s", r.seconds)
    _report(r, capsys)
    assert r.ok, r.line()


def main() -> int:
    failed = 0
    for fn in CRITERIA:
        r = _timed(fn)
        limit = LIMITS.get(r.number)
        if limit is not None and r.seconds >= limit:
            r = Result(r.number, r.title, False, r.record + f" over_time_limit={limit:.0f}s", r.seconds)
        _report(r)
        failed += not r.ok
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())

from __future__ import annotations

import dataclasses
import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from meadow import terms as T
from meadow.prover import (
    Checker, ProofScript, ProofStep, ScriptFormatError, TheoryError, check_proof, corpus,
    corpus_dict, instantiate_axiom, script_from_json, script_to_json, theory,
)
from meadow.prover.build import build_all
from meadow.prover.library import PROOF_DIR, check_corpus, file_name
from meadow.semantics import C0, Q0, evaluate
from helpers import mutate_script, points, random_term

P = T.parse
seeds = st.integers(min_value=0, max_value=2 ** 32)


@pytest.fixture(scope="module")
def scripts():
    return corpus_dict()


@pytest.fixture(scope="module")
def verdicts(scripts):
    return check_corpus(scripts)


# ---------------------------------------------------------------- theories

def test_instantiate_examples():
    th = theory("Md+Signs")
    assert instantiate_axiom(th, "S5", None, {"x": P("a+b"), "y": P("c")}) == (
        P("s((a+b)*c)"), P("s(a+b)*s(c)"))
    assert instantiate_axiom(theory("Md"), "RIL", None, {"x": T.ZERO_T}) == (P("0*(0*0^-1)"), T.ZERO_T)
    assert instantiate_axiom(theory("Md+EFR"), "EFR", 1, {"x0": P("a"), "x1": P("b")}) == (
        P("zero(a^2 + b^2) * a"), T.ZERO_T)


def test_instantiate_errors():
    with pytest.raises(TheoryError):
        instantiate_axiom(theory("Md"), "S5", None, {})
    with pytest.raises(TheoryError):
        instantiate_axiom(theory("Md+EFR", bound=2), "EFR", 3, {})
    with pytest.raises(TheoryError):
        instantiate_axiom(theory("Md+EFR"), "EFR", None, {})


@pytest.mark.parametrize("name", ["Foo", "CC", "Signs+CC", "Md+Signs*", "Md+CC+Signs"])
def test_bad_theories(name):
    with pytest.raises(TheoryError):
        theory(name)


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_instantiation_is_substitution_homomorphic(seed):
    rng = random.Random(seed)
    th = theory("Md+Signs+EFR", bound=3)
    name = rng.choice(th.axiom_names())
    index = rng.randrange(4) if name == "EFR" else None
    lhs, _ = th.axiom(name, index)
    names = T.free_vars(lhs)
    tau = {v: random_term(rng, max_nodes=6, nvars=2) for v in names}
    sigma = {v: random_term(rng, max_nodes=6, nvars=2) for v in ("x", "y")}
    composed = {v: T.substitute(t, sigma) for v, t in tau.items()}
    a, b = instantiate_axiom(th, name, index, tau)
    assert instantiate_axiom(th, name, index, composed) == (T.substitute(a, sigma), T.substitute(b, sigma))


# ---------------------------------------------------------------- checker rules

def _script(theory_name, goal, *steps):
    return ProofScript(theory_name, (P(goal[0]), P(goal[1])), tuple(
        ProofStep(id=i, lhs=P(l), rhs=P(r), rule=rule, refs=tuple(refs), axiom=ax, index=idx,
                  subst=tuple(sorted((k, P(v)) for k, v in (sub or {}).items())))
        for i, l, r, rule, refs, ax, idx, sub in steps))


def test_small_valid_script_uses_every_rule():
    s = _script("Md", ("y + x", "x + y"),
                ("a", "x + y", "y + x", "axiom", [], "CR2", None, {}),
                ("b", "y + x", "x + y", "sym", ["a"], None, None, None),
                ("c", "x + y", "x + y", "trans", ["a", "b"], None, None, None),
                ("d", "(x + y) + 0", "(y + x) + 0", "cong", ["a", None], None, None, None),
                ("e", "u + v", "v + u", "subst", ["a"], None, None, {"x": "u", "y": "v"}),
                ("f", "one(x)", "x * x^-1", "expand-derived", [], None, None, None),
                ("g", "y + x", "x + y", "expand-derived", ["b"], None, None, None))
    assert check_proof(s, {}).valid


@pytest.mark.parametrize("step, reason", [
    (("a", "x + y", "x + x", "axiom", [], "CR2", None, {}), "not an instance"),
    (("a", "x", "y", "refl", [], None, None, None), "sides differ"),
    (("a", "x", "x", "sym", ["zz"], None, None, None), "unknown or later"),
    (("a", "x", "x", "bogus", [], None, None, None), "unknown rule"),
    (("a", "x", "x", "lemma", [], "no.such", None, {}), "unknown lemma"),
])
def test_invalid_steps(step, reason):
    v = check_proof(_script("Md", ("x", "x"), step), {})
    assert not v.valid and v.step == "a" and reason in v.reason


def test_goal_mismatch_and_duplicates():
    ok = ("a", "x", "x", "refl", [], None, None, None)
    v = check_proof(_script("Md", ("y", "y"), ok), {})
    assert not v.valid and "goal" in v.reason
    v = check_proof(_script("Md", ("x", "x"), ok, ok), {})
    assert not v.valid and "duplicate" in v.reason


def test_signature_is_enforced():
    v = check_proof(_script("Md", ("s(x)", "s(x)"), ("a", "s(x)", "s(x)", "refl", [], None, None, None)), {})
    assert not v.valid


def test_lemma_theory_must_be_contained(scripts):
    s = _script("CR", ("0^-1", "0"), ("a", "0^-1", "0", "lemma", [], "md.zero_inverse", None, {}))
    v = check_proof(s, scripts)
    assert not v.valid and "needs theory" in v.reason


def test_circular_lemmas_are_rejected():
    a = _script("Md", ("x", "y"), ("a", "x", "y", "lemma", [], "t.b", None, {}))
    b = _script("Md", ("x", "y"), ("a", "x", "y", "lemma", [], "t.a", None, {}))
    lib = {"t.a": dataclasses.replace(a, name="t.a"), "t.b": dataclasses.replace(b, name="t.b")}
    assert not Checker(lib).check(lib["t.a"]).valid


# ---------------------------------------------------------------- file format

def test_json_round_trip(scripts):
    s = scripts["pc.pc7"]
    assert script_from_json(script_to_json(s), s.name) == s


def test_json_rejects_unknown_fields():
    doc = {"theory": "Md", "goal": {"lhs": "x", "rhs": "x"},
           "steps": [{"id": "a", "lhs": "x", "rhs": "x", "rule": "refl", "extra": 1}]}
    with pytest.raises(ScriptFormatError):
        script_from_json(json.dumps(doc))
    doc["steps"][0].pop("extra")
    doc["comment"] = "hi"
    with pytest.raises(ScriptFormatError):
        script_from_json(json.dumps(doc))


@pytest.mark.parametrize("text", ["not json", "[]", '{"theory": "Md", "goal": {"lhs": "x"}, "steps": []}'])
def test_json_rejects_malformed(text):
    with pytest.raises(ScriptFormatError):
        script_from_json(text)


# ---------------------------------------------------------------- corpus

REQUIRED = (
    ["md.zero_inverse", "md.inv_neg", "md.inv_mul", "md.zero_mul", "md.mul_neg", "md.neg_neg",
     "pc.zero_zero", "pc.one_one", "pc.one_zero", "pc.zero_one", "pc.sum"]
    + [f"pc.pc{k}" for k in range(1, 9)]
    + [f"signs.s{k}" for k in range(7, 12)]
    + [f"appendix.efr_{n}" for n in range(4)] + [f"appendix.useful_{n}" for n in range(4)]
    + [f"appendix.dagger_{n}" for n in range(4)]
    + ["ri.ri0", "ri.ri1", "ri.ri2", "ri.ri13", "ri.ri21", "c0.one_two_signs_star", "cefr.n2_x2"]
)


def test_corpus_covers_required_scripts(scripts):
    assert len(scripts) >= 40
    missing = [n for n in REQUIRED if n not in scripts]
    assert not missing


def test_corpus_examples(scripts, verdicts):
    assert scripts["md.zero_inverse"].goal == (P("0^-1"), T.ZERO_T)
    assert scripts["appendix.efr_2"].theory == "Md+Signs"
    assert scripts["ri.ri0"].theory == "Md+CC+SSAV"
    assert scripts["appendix.useful_2"].goal == (P("zero(x0^2 + x1^2 + x2^2) * one(x0 * x1 * x2)"), T.ZERO_T)
    goal = scripts["c0.one_two_signs_star"].goal
    assert tuple(map(T.expand_derived, goal)) == (T.expand_derived(P("one(n(2))")), T.ONE_T)
    for name in ("md.zero_inverse", "appendix.efr_2", "ri.ri0", "pc.pc4", "appendix.useful_2"):
        assert verdicts[name].valid


def test_all_corpus_scripts_check(verdicts):
    bad = {n: str(v) for n, v in verdicts.items() if not v.valid}
    assert not bad


def test_perturbed_pc4_is_invalid_at_that_step(scripts):
    s = scripts["pc.pc4"]
    k = len(s.steps) // 2
    step = s.steps[k]
    bad = dataclasses.replace(step, rhs=T.add(step.rhs, T.ZERO_T))
    mutated = dataclasses.replace(s, steps=s.steps[:k] + (bad,) + s.steps[k + 1:])
    v = Checker(scripts).check(mutated)
    assert not v.valid and v.step == step.id


def test_mutations_fail(scripts):
    rng = random.Random(11)
    checker = Checker(scripts)
    for name in ("pc.pc4", "signs.s9", "ri.ri13", "md.inv_mul"):
        for _ in range(10):
            mutated, _ = mutate_script(scripts[name], rng)
            assert not checker.check(mutated).valid


def _model_for(theory_name):
    return C0() if "CC" in theory_name else Q0()


def test_corpus_goals_hold_semantically(scripts):
    for name, s in sorted(scripts.items()):
        model = _model_for(s.theory)
        lhs, rhs = s.goal
        names = sorted(set(T.free_vars(lhs)) | set(T.free_vars(rhs)))
        for a in points(names, model, 100, seed=len(name)):
            assert evaluate(lhs, model, a) == evaluate(rhs, model, a), (name, a)


def test_shipped_corpus_is_reproducible():
    built = build_all()
    shipped = sorted(p.name for p in PROOF_DIR.glob("*.mpf"))
    assert sorted(file_name(n) for n in built) == shipped
    for name, s in built.items():
        assert (PROOF_DIR / file_name(name)).read_text(encoding="utf-8") == script_to_json(s), name


def test_corpus_listing_is_sorted():
    names = [s.name for s in corpus()]
    assert names == sorted(names)

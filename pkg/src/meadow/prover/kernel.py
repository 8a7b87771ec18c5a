"""Proof scripts and the trusted checker.

A script is a list of steps, each an equation justified by one rule from
earlier steps.  Equations are compared after unfolding derived operators and
nothing else, so associativity and commutativity must be spelled out.

Rules:

``axiom``          instance of a theory axiom (``axiom``, ``index``, ``subst``)
``refl``           ``t = t``
``sym``            from ``a = b`` (one ref) conclude ``b = a``
``trans``          from ``a = b`` and ``b = c`` conclude ``a = c``
``cong``           both sides share a head operator; ``refs`` has one entry per
                   argument, either a step proving that argument pair or
                   ``null`` when the two arguments coincide
``subst``          substitution instance of one ref
``lemma``          substitution instance of another script's goal, named in
                   ``axiom``; that script must check and its theory must be
                   contained in the current one
``expand-derived`` equal to the ref's statement (or, without a ref, lhs equals
                   rhs) after unfolding derived operators
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .. import terms as T
from ..terms import Term
from .theories import DEFAULT_BOUND, Theory, TheoryError, theory as parse_theory

RULES = ("axiom", "refl", "sym", "trans", "cong", "subst", "lemma", "expand-derived")
_STEP_FIELDS = {"id", "lhs", "rhs", "rule", "refs", "axiom", "index", "subst"}
_SCRIPT_FIELDS = {"theory", "goal", "steps"}


class ScriptFormatError(ValueError):
    """Malformed proof script document."""


@dataclass(frozen=True)
class ProofStep:
    id: str
    lhs: Term
    rhs: Term
    rule: str
    refs: tuple = ()
    axiom: str | None = None
    index: int | None = None
    subst: tuple = ()  # sorted (variable, Term) pairs

    @property
    def substitution(self) -> dict:
        return dict(self.subst)


@dataclass(frozen=True)
class ProofScript:
    theory: str
    goal: tuple  # (lhs, rhs)
    steps: tuple
    name: str = field(default="", compare=False)


@dataclass(frozen=True)
class Verdict:
    valid: bool
    step: str | None = None
    reason: str = ""

    def __str__(self):
        if self.valid:
            return "valid"
        return f"invalid at {self.step}: {self.reason}"


VALID = Verdict(True)


# ---------------------------------------------------------------- serialization

def _term_json(t: Term) -> str:
    return T.to_string(t)


def _parse_term(text, where: str) -> Term:
    if not isinstance(text, str):
        raise ScriptFormatError(f"{where}: expected a term string")
    try:
        return T.parse(text)
    except T.TermError as e:
        raise ScriptFormatError(f"{where}: {e}") from None


def script_to_json(script: ProofScript) -> str:
    doc = {
        "theory": script.theory,
        "goal": {"lhs": _term_json(script.goal[0]), "rhs": _term_json(script.goal[1])},
        "steps": [
            {
                "id": s.id,
                "lhs": _term_json(s.lhs),
                "rhs": _term_json(s.rhs),
                "rule": s.rule,
                "refs": list(s.refs),
                "axiom": s.axiom,
                "index": s.index,
                "subst": {k: _term_json(v) for k, v in s.subst},
            }
            for s in script.steps
        ],
    }
    return json.dumps(doc, indent=1, ensure_ascii=False) + "\n"


def script_from_json(text: str, name: str = "") -> ProofScript:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ScriptFormatError(f"not JSON: {e}") from None
    if not isinstance(doc, dict):
        raise ScriptFormatError("script must be a JSON object")
    extra = set(doc) - _SCRIPT_FIELDS
    if extra:
        raise ScriptFormatError(f"unknown fields {sorted(extra)}")
    missing = _SCRIPT_FIELDS - set(doc)
    if missing:
        raise ScriptFormatError(f"missing fields {sorted(missing)}")
    goal = doc["goal"]
    if not isinstance(goal, dict) or set(goal) != {"lhs", "rhs"}:
        raise ScriptFormatError("goal must have exactly the fields lhs and rhs")
    if not isinstance(doc["theory"], str):
        raise ScriptFormatError("theory must be a string")
    steps = []
    if not isinstance(doc["steps"], list):
        raise ScriptFormatError("steps must be a list")
    for k, raw in enumerate(doc["steps"]):
        where = f"step {k}"
        if not isinstance(raw, dict):
            raise ScriptFormatError(f"{where}: must be an object")
        extra = set(raw) - _STEP_FIELDS
        if extra:
            raise ScriptFormatError(f"{where}: unknown fields {sorted(extra)}")
        for req in ("id", "lhs", "rhs", "rule"):
            if req not in raw:
                raise ScriptFormatError(f"{where}: missing field {req}")
        refs = raw.get("refs") or []
        if not isinstance(refs, list) or not all(r is None or isinstance(r, str) for r in refs):
            raise ScriptFormatError(f"{where}: refs must be a list of ids or nulls")
        sub = raw.get("subst") or {}
        if not isinstance(sub, dict):
            raise ScriptFormatError(f"{where}: subst must be an object")
        index = raw.get("index")
        if index is not None and (not isinstance(index, int) or isinstance(index, bool)):
            raise ScriptFormatError(f"{where}: index must be an integer")
        axiom = raw.get("axiom")
        if axiom is not None and not isinstance(axiom, str):
            raise ScriptFormatError(f"{where}: axiom must be a string")
        steps.append(ProofStep(
            id=str(raw["id"]),
            lhs=_parse_term(raw["lhs"], where),
            rhs=_parse_term(raw["rhs"], where),
            rule=str(raw["rule"]),
            refs=tuple(refs),
            axiom=axiom,
            index=index,
            subst=tuple(sorted((str(v), _parse_term(t, where)) for v, t in sub.items())),
        ))
    lhs = _parse_term(goal["lhs"], "goal")
    rhs = _parse_term(goal["rhs"], "goal")
    return ProofScript(doc["theory"], (lhs, rhs), tuple(steps), name)


# ---------------------------------------------------------------- checking

E = T.expand_derived


class _Invalid(Exception):
    pass


class Checker:
    """Checks scripts against a library of named scripts usable as lemmas.

    Lemma verdicts are memoized, so one checker can check a whole corpus
    while visiting each script once.
    """

    def __init__(self, library: dict | None = None, bound: int = DEFAULT_BOUND):
        self.library = library if library is not None else {}
        self.bound = bound
        self._verdicts: dict = {}
        self._active: set = set()

    def check(self, script: ProofScript) -> Verdict:
        try:
            th = parse_theory(script.theory, self.bound)
        except TheoryError as e:
            return Verdict(False, None, str(e))
        sig = th.signature
        proven: dict = {}
        last = None
        for step in script.steps:
            try:
                if step.id in proven:
                    raise _Invalid(f"duplicate step id {step.id!r}")
                for t in (step.lhs, step.rhs):
                    T.check_signature(t, sig)
                for _, t in step.subst:
                    T.check_signature(t, sig)
                stmt = (E(step.lhs), E(step.rhs))
                self._step(th, step, stmt, proven)
            except _Invalid as e:
                return Verdict(False, step.id, str(e))
            except (T.TermError, TheoryError) as e:
                return Verdict(False, step.id, str(e))
            proven[step.id] = stmt
            last = step
        if last is None:
            return Verdict(False, None, "script has no steps")
        goal = (E(script.goal[0]), E(script.goal[1]))
        if proven[last.id] != goal:
            return Verdict(False, last.id, "last step does not match the goal")
        return VALID

    def _ref(self, proven: dict, ref) -> tuple:
        if ref not in proven:
            raise _Invalid(f"unknown or later step {ref!r}")
        return proven[ref]

    def _nrefs(self, step: ProofStep, n: int) -> None:
        if len(step.refs) != n:
            raise _Invalid(f"rule {step.rule} takes {n} refs, got {len(step.refs)}")

    def _step(self, th: Theory, step: ProofStep, stmt: tuple, proven: dict) -> None:
        r = step.rule
        lhs, rhs = stmt
        if r == "axiom":
            self._nrefs(step, 0)
            if step.axiom is None:
                raise _Invalid("axiom rule needs an axiom name")
            a, b = th.axiom(step.axiom, step.index)
            sub = {k: E(v) for k, v in step.subst}
            if (T.substitute(E(a), sub), T.substitute(E(b), sub)) != stmt:
                raise _Invalid(f"not an instance of {step.axiom}")
        elif r == "refl":
            self._nrefs(step, 0)
            if lhs != rhs:
                raise _Invalid("sides differ")
        elif r == "sym":
            self._nrefs(step, 1)
            a, b = self._ref(proven, step.refs[0])
            if (b, a) != stmt:
                raise _Invalid("not the reverse of the ref")
        elif r == "trans":
            self._nrefs(step, 2)
            a, b = self._ref(proven, step.refs[0])
            c, d = self._ref(proven, step.refs[1])
            if b != c:
                raise _Invalid("refs do not chain")
            if (a, d) != stmt:
                raise _Invalid("statement is not the composite of the refs")
        elif r == "cong":
            if not (self._cong(step.lhs, step.rhs, step, proven) or self._cong(lhs, rhs, step, proven)):
                raise _Invalid("congruence does not apply")
        elif r == "subst":
            self._nrefs(step, 1)
            a, b = self._ref(proven, step.refs[0])
            sub = {k: E(v) for k, v in step.subst}
            if (T.substitute(a, sub), T.substitute(b, sub)) != stmt:
                raise _Invalid("not the substitution instance of the ref")
        elif r == "lemma":
            self._nrefs(step, 0)
            name = step.axiom
            if name is None:
                raise _Invalid("lemma rule needs the lemma name in the axiom field")
            lem = self._lemma(th, name)
            sub = {k: E(v) for k, v in step.subst}
            if (T.substitute(E(lem.goal[0]), sub), T.substitute(E(lem.goal[1]), sub)) != stmt:
                raise _Invalid(f"not an instance of lemma {name}")
        elif r == "expand-derived":
            if not step.refs:
                if lhs != rhs:
                    raise _Invalid("sides differ after unfolding")
            else:
                self._nrefs(step, 1)
                if self._ref(proven, step.refs[0]) != stmt:
                    raise _Invalid("ref differs after unfolding")
        else:
            raise _Invalid(f"unknown rule {r!r}")

    def _cong(self, lhs: Term, rhs: Term, step: ProofStep, proven: dict) -> bool:
        if lhs.kind != rhs.kind or lhs.name != rhs.name or not lhs.args:
            return False
        if len(lhs.args) != len(rhs.args) or len(step.refs) != len(lhs.args):
            return False
        for a, b, ref in zip(lhs.args, rhs.args, step.refs):
            ea, eb = E(a), E(b)
            if ref is None:
                if ea != eb:
                    return False
            elif ref not in proven or proven[ref] != (ea, eb):
                return False
        return True

    def _lemma(self, th: Theory, name: str) -> ProofScript:
        lem = self.library.get(name)
        if lem is None:
            raise _Invalid(f"unknown lemma {name!r}")
        try:
            lth = parse_theory(lem.theory, self.bound)
        except TheoryError as e:
            raise _Invalid(f"lemma {name}: {e}") from None
        if not lth.families <= th.families:
            raise _Invalid(f"lemma {name} needs theory {lem.theory}")
        if name in self._active:
            raise _Invalid(f"circular lemma use through {name}")
        v = self._verdicts.get(name)
        if v is None:
            self._active.add(name)
            try:
                v = self.check(lem)
            finally:
                self._active.discard(name)
            self._verdicts[name] = v
        if not v.valid:
            raise _Invalid(f"lemma {name} does not check ({v})")
        return lem


def check_proof(script: ProofScript, library: dict | None = None,
                bound: int = DEFAULT_BOUND) -> Verdict:
    """Check ``script``; lemmas resolve against ``library`` (default: the shipped corpus)."""
    if library is None:
        from .library import corpus_dict
        library = corpus_dict()
    return Checker(library, bound).check(script)

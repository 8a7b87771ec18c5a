"""Equational proofs over meadow axiom theories: checker and shipped corpus."""
from .library import check_corpus, corpus, corpus_dict, load_script
from .kernel import (Checker, ProofScript, ProofStep, ScriptFormatError, Verdict,
                     check_proof, script_from_json, script_to_json)
from .theories import DEFAULT_BOUND, Theory, TheoryError, instantiate_axiom, theory

__all__ = [
    "Checker", "DEFAULT_BOUND", "ProofScript", "ProofStep", "ScriptFormatError", "Theory",
    "TheoryError", "Verdict", "check_corpus", "check_proof", "corpus", "corpus_dict",
    "instantiate_axiom", "load_script", "script_from_json", "script_to_json", "theory",
]

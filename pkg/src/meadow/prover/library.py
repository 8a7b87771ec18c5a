"""The shipped proof corpus: ``proofs/*.mpf`` files inside the package."""
from __future__ import annotations

from functools import lru_cache
from pathlib import Path

from .kernel import Checker, ProofScript, script_from_json, script_to_json

PROOF_DIR = Path(__file__).resolve().parent / "proofs"


def file_name(name: str) -> str:
    """``appendix.efr_2`` is stored as ``appendix_efr_2.mpf``."""
    return name.replace(".", "_", 1) + ".mpf"


def script_name(path: Path) -> str:
    prefix, _, rest = Path(path).stem.partition("_")
    return f"{prefix}.{rest}" if rest else prefix


def load_script(path) -> ProofScript:
    path = Path(path)
    return script_from_json(path.read_text(encoding="utf-8"), script_name(path))


@lru_cache(maxsize=1)
def _load_all() -> tuple:
    return tuple(load_script(p) for p in sorted(PROOF_DIR.glob("*.mpf")))


def corpus() -> list:
    """All shipped scripts, sorted by name."""
    return sorted(_load_all(), key=lambda s: s.name)


def corpus_dict() -> dict:
    return {s.name: s for s in _load_all()}


def check_corpus(scripts: dict | None = None) -> dict:
    """Verdict per script name, sharing one checker so lemmas are checked once."""
    scripts = corpus_dict() if scripts is None else scripts
    checker = Checker(scripts)
    return {name: checker.check(s) for name, s in sorted(scripts.items())}


def write_corpus(scripts: dict, directory: Path = PROOF_DIR) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    for old in directory.glob("*.mpf"):
        old.unlink()
    for name, s in scripts.items():
        (directory / file_name(name)).write_text(script_to_json(s), encoding="utf-8")
    _load_all.cache_clear()


def resolve(path: str) -> Path:
    """Find a script by path, falling back to the packaged ``proofs`` directory."""
    p = Path(path)
    if p.exists():
        return p
    q = PROOF_DIR / p.name
    if p.parent.name == "proofs" and q.exists():
        return q
    return p

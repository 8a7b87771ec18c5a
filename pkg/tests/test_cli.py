from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from meadow.cli import Config, UsageError, run
from meadow.prover.library import PROOF_DIR


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_eval_example():
    assert call("eval", "--model", "zmod:10", "n(2)*n(5)") == (0, "0\n", "")


@pytest.mark.parametrize("argv, value", [
    (("eval", "x^-1", "--assign", "x=3/4"), "4/3"),
    (("eval", "0^-1"), "0"),
    (("eval", "--model", "c0", "x*conj(x)", "--assign", "x=1+2i"), "5"),
    (("eval", "--model", "c0", "i^-1"), "-i"),
    (("eval", "s(-(n(3)))"), "-1"),
])
def test_eval_values(argv, value):
    assert call(*argv) == (0, value + "\n", "")


def test_decide_c0_example():
    code, out, _ = call("decide", "--model", "c0", "zero(x^2 + y^2)*x", "0")
    assert code == 1
    assert out.splitlines()[-1] == "verdict=refuted samples=9 witness=x=1,y=i"


def test_check_shipped_script():
    code, out, _ = call("check", "proofs/appendix_efr_2.mpf")
    assert code == 0 and out.endswith("valid=yes files=1\n")


def test_check_invalid_script(tmp_path):
    doc = json.loads((PROOF_DIR / "appendix_efr_2.mpf").read_text())
    doc["steps"][-1]["rhs"] = "1"
    p = tmp_path / "broken.mpf"
    p.write_text(json.dumps(doc))
    code, out, _ = call("check", str(p), "proofs/appendix_efr_2.mpf")
    assert code == 4
    assert "invalid at" in out and out.endswith("valid=no files=2\n")


def test_check_unknown_field(tmp_path):
    doc = json.loads((PROOF_DIR / "appendix_efr_0.mpf").read_text())
    doc["comment"] = "x"
    p = tmp_path / "extra.mpf"
    p.write_text(json.dumps(doc))
    code, _, err = call("check", str(p))
    assert code == 3 and "unknown fields" in err


@pytest.mark.parametrize("argv", [
    (), ("frobnicate",), ("eval",), ("eval", "2"), ("eval", "x +"), ("decide", "a", "b", "c"),
    ("decide", "x", "x", "--budget", "0"), ("eval", "--model", "zmod:4", "x"),
    ("eval", "--model", "zmod:x", "x"), ("check", "/no/such/file.mpf"), ("modelcheck", "--max-n", "0"),
    ("decide", "s(x)", "x", "--model", "zmod:10"), ("split-complex", "s(x)"), ("normalize", "x", "--form", "dnf"),
])
def test_usage_errors_exit_3(argv):
    code, out, err = call(*argv)
    assert code == 3 and err.startswith("meadow: ")


def test_equation_spellings_agree():
    a = call("decide", "x*y", "y*x")
    b = call("decide", "x*y = y*x")
    c = call("decide", "x*y", "=", "y*x")
    assert a == b == c and a[0] == 0


def test_env_overrides(monkeypatch):
    monkeypatch.setenv("MEADOW_SEED", "7")
    monkeypatch.setenv("MEADOW_BUDGET", "12")
    code, out, _ = call("refute", "x + y = y + x")
    assert code == 2
    assert out.splitlines()[0] == "# seed=7 budget=12 magnitude=1000000 model=q0"
    assert out.splitlines()[-1] == "verdict=unknown samples=12 witness=none"
    # flags win over the environment
    assert call("refute", "--budget", "3", "x = x")[1].splitlines()[-1] == "verdict=unknown samples=3 witness=none"
    monkeypatch.setenv("MEADOW_SEED", "seven")
    assert call("refute", "x = x")[0] == 3


def test_config_defaults_and_validation():
    c = Config()
    assert (c.seed, c.budget, c.magnitude, c.bound) == (0, 1000, 10 ** 6, 8)
    with pytest.raises(UsageError):
        Config(budget=0)
    with pytest.raises(UsageError):
        Config(seed=2 ** 63)


GOLDEN = {
    ("decide", "x*x^-1 = 1"): (1, [
        "# seed=0 budget=1000 magnitude=1000000 model=q0",
        "refuted at x=0: lhs = 0, rhs = 1",
        "verdict=refuted samples=1 witness=x=0",
    ]),
    ("decide", "(x+y)^2 = x^2 + n(2)*x*y + y^2"): (0, [
        "# seed=0 budget=1000 magnitude=1000000 model=q0",
        "proved by polynomial",
        "verdict=proved samples=0 witness=none",
    ]),
    ("decide", "--model", "zmod:10", "x*x = x"): (1, [
        "# seed=0 budget=1000 magnitude=1000000 model=zmod:10",
        "refuted at x=2: lhs = 4, rhs = 2",
        "verdict=refuted samples=3 witness=x=2",
    ]),
    ("decide", "--model", "c0-split", "conj(conj(x)) = x"): (0, [
        "# seed=0 budget=1000 magnitude=1000000 model=c0-split",
        "proved by complex-split",
        "verdict=proved samples=0 witness=none",
    ]),
    ("normalize", "x*x^-1*y"): (0, ["frac(x * y, x)", "form=smf"]),
    ("split-complex", "x*y"): (0, [
        "re = re(x) * re(y) + -(im(x) * im(y))",
        "im = re(x) * im(y) + im(x) * re(y)",
        "split=ok",
    ]),
    ("modelcheck", "--max-n", "5"): (0, [
        "   n meadow squarefree cancellation",
        "   1    yes        yes          yes",
        "   2    yes        yes          yes",
        "   3    yes        yes          yes",
        "   4     no         no            -",
        "   5    yes        yes          yes",
        "max_n=5 meadows=4",
    ]),
}


@pytest.mark.parametrize("argv", list(GOLDEN), ids=" ".join)
def test_golden_output(argv):
    code, out, err = call(*argv)
    assert (code, out.splitlines()) == GOLDEN[argv] and err == ""


@pytest.mark.parametrize("argv", [
    ("decide", "zero(x0^2 + x1^2) * x0 = 0", "--seed", "5", "--budget", "300"),
    ("refute", "one(x + y) = one(x)", "--seed", "11"),
    ("translate", "x^-1 = y"),
    ("translate", "--target", "ordered-field", "s(x) = 1"),
    ("normalize", "--form", "ssmf", "s(x*y^-1)"),
])
def test_repeatable(argv):
    first = call(*argv)
    assert call(*argv) == first and first[1].endswith("\n")
    trailer = first[1].splitlines()[-1]
    assert "=" in trailer and " = " not in trailer


def test_every_trailer_is_key_value():
    for argv in (("normalize", "x"), ("translate", "x = y"), ("corpus",), ("modelcheck", "--max-n", "3")):
        code, out, _ = call(*argv)
        assert code == 0
        for field in out.splitlines()[-1].split():
            key, _, value = field.partition("=")
            assert key.isidentifier() and value


def test_corpus_run_all():
    code, out, _ = call("corpus", "--run-all")
    lines = out.splitlines()
    n = len(lines) - 1
    assert code == 0 and lines[-1] == f"scripts={n} valid={n}" and n >= 40


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "meadow", "eval", "--model", "zmod:10", "n(2)*n(5)"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "0\n"

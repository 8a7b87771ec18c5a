"""The ``meadow`` command line.

``eval`` prints the bare value.  Every other subcommand prints human-readable
lines followed by one ``key=value`` trailer line.  Exit codes: 0 success, 1 refuted, 2 unknown, 3 parse or usage
error, 4 invalid proof.
"""
from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass

from . import __version__
from . import logic
from . import terms as T
from .decide import (
    PROBABLE, UNKNOWN, DecideError, SplitError, decide, decide_complex, resolve_model, sample_refute,
    split_complex,
)
from .model_lab import ModelLabError, classify_range, format_table
from .normal_forms import NormalFormError, canon_smf, pseudo_simplify, render, to_smf, to_ssmf
from .prover.kernel import Checker, ScriptFormatError
from .prover.library import corpus_dict, load_script, resolve
from .prover.theories import DEFAULT_BOUND, TheoryError
from .semantics import DEFAULT_BOUND as DEFAULT_MAGNITUDE
from .semantics import EvalError, eval_in, format_value, parse_assignment

EXIT_OK, EXIT_REFUTED, EXIT_UNKNOWN, EXIT_USAGE, EXIT_INVALID = 0, 1, 2, 3, 4


class UsageError(Exception):
    """Bad arguments; reported with exit code 3."""


@dataclass(frozen=True)
class Config:
    seed: int = 0
    budget: int = 1000
    magnitude: int = DEFAULT_MAGNITUDE
    bound: int = DEFAULT_BOUND
    model: str = "q0"

    def __post_init__(self):
        if self.budget < 1:
            raise UsageError("budget must be at least 1")
        if self.magnitude < 1:
            raise UsageError("magnitude must be at least 1")
        if self.bound < 0:
            raise UsageError("scheme bound must be nonnegative")
        if not -(2 ** 63) <= self.seed < 2 ** 63:
            raise UsageError("seed must fit in 64 bits")

    def header(self) -> str:
        return f"# seed={self.seed} budget={self.budget} magnitude={self.magnitude} model={self.model}"


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{name} must be an integer, got {raw!r}") from None


def config_from(args) -> Config:
    seed = args.seed if args.seed is not None else _env_int("MEADOW_SEED", 0)
    budget = args.budget if args.budget is not None else _env_int("MEADOW_BUDGET", 1000)
    return Config(seed, budget, args.magnitude, args.bound, getattr(args, "model", None) or "q0")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _equation(parts) -> tuple:
    if len(parts) == 1 or "=" in parts:
        return T.parse_equation(" ".join(parts))
    if len(parts) == 2:
        return T.parse(parts[0]), T.parse(parts[1])
    raise UsageError("give an equation as two terms or as one \"s = t\" string")


# ---------------------------------------------------------------- subcommands

def cmd_eval(args, cfg: Config, out) -> int:
    t = T.parse(args.term)
    model = resolve_model(cfg.model, t)
    a = parse_assignment(args.assign or [], model)
    out.write(format_value(eval_in(model, t, a)) + "\n")
    return EXIT_OK


def cmd_normalize(args, cfg: Config, out) -> int:
    t = T.parse(args.term)
    form = args.form
    if form == "pseudo":
        text = T.to_string(pseudo_simplify(t))
    elif form == "smf":
        text = render(to_smf(t, char0=args.char0))
    elif form == "ssmf":
        text = render(to_ssmf(t, char0=args.char0))
    else:
        build = to_ssmf if t.mask & T.SIGN_MASK else to_smf
        text = render(canon_smf(build(t, char0=args.char0), char0=args.char0))
    out.write(text + "\n")
    out.write(f"form={form}\n")
    return EXIT_OK


def cmd_translate(args, cfg: Config, out) -> int:
    s, t = _equation(args.equation)
    if args.target == "field-qf":
        f = logic.translate_phi(to_smf(s), to_smf(t))
    else:
        f = logic.translate_ordered(to_ssmf(s), to_ssmf(t))
    out.write(logic.to_string(f) + "\n")
    out.write(f"target={args.target}\n")
    return EXIT_OK


def cmd_decide(args, cfg: Config, out) -> int:
    s, t = _equation(args.equation)
    out.write(cfg.header() + "\n")
    if cfg.model == "c0-split":
        v = decide_complex(s, t, cfg.budget, cfg.seed, cfg.magnitude)
    else:
        v = decide(s, t, cfg.model, cfg.budget, cfg.seed, cfg.magnitude)
    line = v.describe()
    if v.outcome == PROBABLE and cfg.model in ("q0", "c0"):
        line += "; sampled over the rationals only"
    out.write(line + "\n")
    out.write(v.record() + "\n")
    return v.exit_code


def cmd_refute(args, cfg: Config, out) -> int:
    s, t = _equation(args.equation)
    out.write(cfg.header() + "\n")
    v = sample_refute(s, t, cfg.model, cfg.budget, cfg.seed, cfg.magnitude)
    if v.outcome == UNKNOWN:
        out.write(f"no counterexample in {v.samples} samples\n")
    else:
        out.write(v.describe() + "\n")
    out.write(v.record() + "\n")
    return v.exit_code


def cmd_check(args, cfg: Config, out) -> int:
    checker = Checker(corpus_dict(), cfg.bound)
    code = EXIT_OK
    for path in args.files:
        script = load_script(resolve(path))
        v = checker.check(script)
        out.write(f"{path}: {v}\n")
        if not v.valid:
            code = EXIT_INVALID
    out.write(f"valid={'yes' if code == EXIT_OK else 'no'} files={len(args.files)}\n")
    return code


def cmd_corpus(args, cfg: Config, out) -> int:
    scripts = corpus_dict()
    if not args.run_all:
        for name in sorted(scripts):
            s = scripts[name]
            out.write(f"{name:<28} {s.theory:<14} {T.to_string(s.goal[0])} = {T.to_string(s.goal[1])}\n")
        out.write(f"scripts={len(scripts)}\n")
        return EXIT_OK
    checker = Checker(scripts, cfg.bound)
    good = 0
    for name in sorted(scripts):
        v = checker.check(scripts[name])
        good += v.valid
        out.write(f"{name:<28} {v}\n")
    out.write(f"scripts={len(scripts)} valid={good}\n")
    return EXIT_OK if good == len(scripts) else EXIT_INVALID


def cmd_modelcheck(args, cfg: Config, out) -> int:
    rows = classify_range(args.max_n)
    out.write(format_table(rows))
    out.write(f"max_n={args.max_n} meadows={sum(r.meadow for r in rows)}\n")
    return EXIT_OK


def cmd_split(args, cfg: Config, out) -> int:
    t = T.parse(args.term)
    r, m = split_complex(t)
    out.write(f"re = {T.to_string(r)}\n")
    out.write(f"im = {T.to_string(m)}\n")
    out.write("split=ok\n")
    return EXIT_OK


# ---------------------------------------------------------------- wiring

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="sampling seed (env MEADOW_SEED, default 0)")
    common.add_argument("--budget", type=int, default=None, help="sample budget (env MEADOW_BUDGET, default 1000)")
    common.add_argument("--magnitude", type=int, default=DEFAULT_MAGNITUDE,
                        help="bound on random numerators and denominators")
    common.add_argument("--bound", type=int, default=DEFAULT_BOUND, help="largest axiom scheme index")

    p = _Parser(prog="meadow", description="Compute, normalize, prove and decide meadow equations.")
    p.add_argument("--version", action="version", version=f"meadow {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("eval", cmd_eval, "evaluate a term in a model")
    sp.add_argument("term")
    sp.add_argument("--model", default="q0", help="q0, c0 or zmod:<n>")
    sp.add_argument("--assign", action="append", metavar="NAME=VALUE", help="variable value (repeatable)")

    sp = add("normalize", cmd_normalize, "normal forms of a term")
    sp.add_argument("term")
    sp.add_argument("--form", choices=["smf", "ssmf", "canon", "pseudo"], default="smf")
    sp.add_argument("--char0", action="store_true", help="treat every nonzero numeral as invertible")

    sp = add("translate", cmd_translate, "translate an equation into first-order logic")
    sp.add_argument("equation", nargs="+")
    sp.add_argument("--target", choices=["field-qf", "ordered-field"], default="field-qf")

    for name, fn, text in (("decide", cmd_decide, "decide an equation in a model"),
                           ("refute", cmd_refute, "search for a counterexample")):
        sp = add(name, fn, text)
        sp.add_argument("equation", nargs="+")
        sp.add_argument("--model", default="q0", help="q0, c0, zmod:<n>, or c0-split for decide")

    sp = add("check", cmd_check, "check proof scripts")
    sp.add_argument("files", nargs="+")

    sp = add("corpus", cmd_corpus, "list or check the shipped proof corpus")
    sp.add_argument("--run-all", action="store_true", help="check every script")

    sp = add("modelcheck", cmd_modelcheck, "classify the residue rings Z/nZ")
    sp.add_argument("--max-n", type=int, default=50)

    sp = add("split-complex", cmd_split, "real and imaginary parts of a complex term")
    sp.add_argument("term")
    return p


def run(argv, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if not getattr(args, "command", None):
            raise UsageError("missing subcommand")
        cfg = config_from(args)
        return args.fn(args, cfg, out)
    except UsageError as e:
        err.write(f"meadow: usage error: {e}\n")
        return EXIT_USAGE
    except (T.TermError, EvalError, DecideError, SplitError, NormalFormError, logic.FormulaError,
            ScriptFormatError, TheoryError, ModelLabError) as e:
        err.write(f"meadow: error: {e}\n")
        return EXIT_USAGE
    except OSError as e:
        err.write(f"meadow: error: {e}\n")
        return EXIT_USAGE


def main(argv=None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())

"""Generator for the shipped proof corpus.

Scripts are produced in dependency order; each finished script becomes a
lemma for the later ones.  Run ``python3 -m meadow.prover.build`` to rewrite
the ``proofs`` directory.
"""
from __future__ import annotations

from .. import terms as T
from . import tactics as tc
from .tactics import Simp, axiom, calc, inverse_unique, lemma, mono_rule, step, sym
from .theories import efr_axiom


class CorpusBuilder:
    def __init__(self):
        self.scripts: dict = {}
        tc.LEMMAS.clear()
        tc.reset_caches()

    def add(self, name: str, theory: str, goal: str, prove) -> None:
        lhs, rhs = T.parse_equation(goal) if isinstance(goal, str) else goal
        th = prove()
        script = tc.to_script(th, theory, (lhs, rhs), name)
        tc.register_lemma(name, lhs, rhs)
        self.scripts[name] = script


# ---------------------------------------------------------------- ring facts

def _neg_unique(h):
    """From ``a + b = 0`` conclude ``b = -a`` (commutative-ring reasoning only)."""
    a, b = h.lhs.args
    na = T.neg(a)
    return calc(
        b,
        (T.add(T.ZERO_T, b), ["ring.zero_add"]),
        (T.add(T.add(na, a), b), ["ring.neg_add_self"]),
        (T.add(na, T.add(a, b)), ["CR1"]),
        (T.add(na, T.ZERO_T), [h]),
        (na, ["CR3"]),
        ring=False,
    )


def _ring_proofs():
    """(name, goal, proof) for the identities the ring normalizer relies on."""
    def c(start, *chain):
        return lambda: calc(start, *chain, ring=False)

    def neg_zero():
        return sym(_neg_unique(axiom("CR3", x="0")))

    def neg_neg():
        return sym(_neg_unique(lemma("ring.neg_add_self", x="x")))

    def neg_add():
        h = calc("(x+y)+(-x+-y)",
                 ("x+(y+(-x+-y))", ["CR1"]),
                 ("x+(-x+(y+-y))", ["ring.add_left_comm"]),
                 ("x+(-x+0)", ["CR4"]),
                 ("x+-x", ["CR3"]),
                 ("0", ["CR4"]), ring=False)
        return sym(_neg_unique(h))

    def mul_neg():
        h = calc("x*y + x*(-y)",
                 ("x*(y+-y)", ["CR8"]),
                 ("x*0", ["CR4"]),
                 ("0", ["ring.mul_zero"]), ring=False)
        return _neg_unique(h)

    return [
        ("zero_add", "0 + x = x", c("0 + x", ("x + 0", ["CR2"]), ("x", ["CR3"]))),
        ("add_left_comm", "x + (y + z) = y + (x + z)",
         c("x+(y+z)", ("(x+y)+z", ["CR1"]), ("(y+x)+z", ["CR2"]), ("y+(x+z)", ["CR1"]))),
        ("mul_one", "x * 1 = x", c("x*1", ("1*x", ["CR6"]), ("x", ["CR7"]))),
        ("mul_left_comm", "x * (y * z) = y * (x * z)",
         c("x*(y*z)", ("(x*y)*z", ["CR5"]), ("(y*x)*z", ["CR6"]), ("y*(x*z)", ["CR5"]))),
        ("distrib_right", "(x + y) * z = x * z + y * z",
         c("(x+y)*z", ("z*(x+y)", ["CR6"]), ("z*x + z*y", ["CR8"]), ("x*z + y*z", ["CR6"]))),
        ("neg_add_self", "-x + x = 0", c("-x + x", ("x + -x", ["CR2"]), ("0", ["CR4"]))),
        ("add_neg_cancel_left", "x + (-x + y) = y",
         c("x+(-x+y)", ("(x+-x)+y", ["CR1"]), ("0+y", ["CR4"]), ("y", ["ring.zero_add"]))),
        ("neg_add_cancel_left", "-x + (x + y) = y",
         c("-x+(x+y)", ("(-x+x)+y", ["CR1"]), ("0+y", ["ring.neg_add_self"]), ("y", ["ring.zero_add"]))),
        ("mul_zero", "x * 0 = 0",
         c("x*0", ("x*0 + 0", ["CR3"]), ("x*0 + (x*0 + -(x*0))", ["CR4"]),
           ("(x*0 + x*0) + -(x*0)", ["CR1"]), ("x*(0+0) + -(x*0)", ["CR8"]),
           ("x*0 + -(x*0)", ["CR3"]), ("0", ["CR4"]))),
        ("zero_mul", "0 * x = 0", c("0*x", ("x*0", ["CR6"]), ("0", ["ring.mul_zero"]))),
        ("neg_zero", "-0 = 0", neg_zero),
        ("neg_neg", "-(-x) = x", neg_neg),
        ("neg_add", "-(x + y) = -x + -y", neg_add),
        ("mul_neg", "x * -y = -(x * y)", mul_neg),
        ("neg_mul", "(-x) * y = -(x * y)",
         c("(-x)*y", ("y*(-x)", ["CR6"]), ("-(y*x)", ["ring.mul_neg"]), ("-(x*y)", ["CR6"]))),
    ]


def build_ring(b: CorpusBuilder) -> None:
    for name, goal, proof in _ring_proofs():
        b.add("ring." + name, "CR", goal, proof)


# ---------------------------------------------------------------- meadow identities

def build_md(b: CorpusBuilder) -> None:
    ring = {name: (goal, proof) for name, goal, proof in _ring_proofs()}
    b.add("md.inv_one", "Md", "1^-1 = 1",
          lambda: calc("1^-1", ("1*(1*1^-1)", "ring"), ("1", ["RIL"])))
    b.add("md.zero_inverse", "Md", "0^-1 = 0",
          lambda: calc("0^-1", ("0^-1*(0^-1*(0^-1)^-1)", ["RIL"]),
                       ("0^-1*(0^-1*0)", ["Inv"]), ("0", "ring")))
    b.add("md.ril_inv", "Md", "x^-1 * (x^-1 * x) = x^-1",
          lambda: calc("x^-1*(x^-1*x)", ("x^-1*(x^-1*(x^-1)^-1)", ["Inv"]), ("x^-1", ["RIL"])))

    def inv_mul():
        p1 = calc("(x*y)*((x*y)*(x^-1*y^-1))",
                  ("(x*(x*x^-1))*(y*(y*y^-1))", "ring"), ("x*y", ["RIL"]))
        p2 = calc("(x^-1*y^-1)*((x^-1*y^-1)*(x*y))",
                  ("(x^-1*(x^-1*x))*(y^-1*(y^-1*y))", "ring"), ("x^-1*y^-1", ["md.ril_inv"]))
        return sym(inverse_unique(p1, p2))

    def inv_neg():
        p1 = calc("(-x)*((-x)*(-(x^-1)))", ("-(x*(x*x^-1))", "ring"), ("-x", ["RIL"]))
        p2 = calc("(-(x^-1))*((-(x^-1))*(-x))",
                  ("-(x^-1*(x^-1*x))", "ring"), ("-(x^-1)", ["md.ril_inv"]))
        return sym(inverse_unique(p1, p2))

    b.add("md.inv_mul", "Md", "(x * y)^-1 = x^-1 * y^-1", inv_mul)
    b.add("md.inv_neg", "Md", "(-x)^-1 = -(x^-1)", inv_neg)
    for name in ("zero_mul", "mul_neg", "neg_neg"):
        goal, proof = ring[name]
        b.add("md." + name, "Md", goal, proof)


# ---------------------------------------------------------------- pseudo constants

def build_pc(b: CorpusBuilder) -> None:
    b.add("pc.zero_zero", "Md", "zero(0) = 1", lambda: step("zero(0)", "1"))
    b.add("pc.one_zero", "Md", "one(0) = 0", lambda: step("one(0)", "0"))
    b.add("pc.one_one", "Md", "one(1) = 1",
          lambda: calc("one(1)", ("1*1", ["md.inv_one"]), ("1", "ring")))
    b.add("pc.zero_one", "Md", "zero(1) = 0",
          lambda: calc("zero(1)", ("1 - 1*1", ["md.inv_one"]), ("0", "ring")))
    b.add("pc.sum", "Md", "zero(x) + one(x) = 1", lambda: step("zero(x) + one(x)", "1"))
    b.add("pc.pc7", "Md", "one(x) * x = x",
          lambda: calc("one(x)*x", ("x*(x*x^-1)", "ring"), ("x", ["RIL"])))
    b.add("pc.pc3", "Md", "zero(x) * x = 0",
          lambda: calc("zero(x)*x", ("x - x*(x*x^-1)", "ring"), ("x - x", ["RIL"]), ("0", "ring")))
    b.add("pc.pc5", "Md", "one(x) * one(x) = one(x)",
          lambda: calc("one(x)*one(x)", ("(x*(x*x^-1))*x^-1", "ring"), ("x*x^-1", ["RIL"])))
    b.add("pc.pc1", "Md", "zero(x) * zero(x) = zero(x)",
          lambda: calc("zero(x)*zero(x)",
                       ("1 - (1+1)*one(x) + one(x)*one(x)", "ring"),
                       ("1 - (1+1)*one(x) + one(x)", ["pc.pc5"]),
                       ("zero(x)", "ring")))
    b.add("pc.pc6", "Md", "one(x^2) = one(x)",
          lambda: calc("one(x^2)", ("(x*x)*(x^-1*x^-1)", ["md.inv_mul"]),
                       ("(x*(x*x^-1))*x^-1", "ring"), ("x*x^-1", ["RIL"])))
    b.add("pc.pc2", "Md", "zero(x^2) = zero(x)",
          lambda: calc("zero(x^2)", ("zero(x)", ["pc.pc6"])))
    b.add("pc.pc8", "Md", "one(x) * one(y) = one(x * y)",
          lambda: calc("one(x)*one(y)", ("(x*y)*(x^-1*y^-1)", "ring"), ("one(x*y)", ["md.inv_mul"])))

    def pc4():
        a = calc("zero(x)*(x+y)", ("zero(x)*x + zero(x)*y", "ring"),
                 ("0 + zero(x)*y", ["pc.pc3"]), ("zero(x)*y", "ring"))
        bb = calc("zero(x)^-1*(x+y)^-1", ("(zero(x)*(x+y))^-1", ["md.inv_mul"]),
                  ("(zero(x)*y)^-1", [a]), ("zero(x)^-1*y^-1", ["md.inv_mul"]))
        c = calc("zero(x)*(x+y)^-1",
                 ("(zero(x)*(zero(x)*zero(x)^-1))*(x+y)^-1", ["RIL"]),
                 ("zero(x)*zero(x)*(zero(x)^-1*(x+y)^-1)", "ring"),
                 ("zero(x)*zero(x)*(zero(x)^-1*y^-1)", [bb]),
                 ("(zero(x)*(zero(x)*zero(x)^-1))*y^-1", "ring"),
                 ("zero(x)*y^-1", ["RIL"]))
        return calc("zero(x)*zero(x+y)",
                    ("zero(x) - (zero(x)*(x+y)^-1)*(x+y)", "ring"),
                    ("zero(x) - (zero(x)*y^-1)*(x+y)", [c]),
                    ("zero(x) - y^-1*(zero(x)*(x+y))", "ring"),
                    ("zero(x) - y^-1*(zero(x)*y)", [a]),
                    ("zero(x)*zero(y)", "ring"))

    b.add("pc.pc4", "Md", "zero(x) * zero(x + y) = zero(x) * zero(y)", pc4)


# ---------------------------------------------------------------- sign function

def build_signs(b: CorpusBuilder) -> None:
    th = "Md+Signs"
    b.add("signs.s_zero", th, "s(0) = 0",
          lambda: calc("s(0)", ("s(zero(1))", ["pc.zero_one"]), ("zero(1)", ["S2"]),
                       ("0", ["pc.zero_one"])))
    b.add("signs.s_one", th, "s(1) = 1",
          lambda: calc("s(1)", ("s(one(1))", ["pc.one_one"]), ("one(1)", ["S1"]),
                       ("1", ["pc.one_one"])))

    def s_two():
        h = calc("s(1+1) - s(1)", ("zero(s(1) - s(1))*(s(1+1) - s(1))", "ring"), ("0", ["S6"]))
        return calc("s(1+1)", ("(s(1+1) - s(1)) + s(1)", "ring"), ("0 + s(1)", [h]),
                    ("s(1)", "ring"), ("1", ["signs.s_one"]))

    b.add("signs.s_two", th, "s(1 + 1) = 1", s_two)
    b.add("signs.one_two", th, "one(1 + 1) = 1",
          lambda: calc("one(1+1)", ("s(one(1+1))", ["S1"]), ("s(1+1)*s((1+1)^-1)", ["S5"]),
                       ("s(1+1)*s(1+1)", ["S4"]), ("1*1", ["signs.s_two"]), ("1", "ring")))
    b.add("signs.s7", th, "s(x^2) = one(x)",
          lambda: calc("s(x^2)", ("s(x)*s(x)", ["S5"]), ("s(x)*s(x^-1)", ["S4"]),
                       ("s(x*x^-1)", ["S5"]), ("one(x)", ["S1"])))
    b.add("signs.s9", th, "one(x) * s(x) = s(x)",
          lambda: calc("one(x)*s(x)", ("s(one(x))*s(x)", ["S1"]), ("s(one(x)*x)", ["S5"]),
                       ("s(x)", ["pc.pc7"])))
    b.add("signs.s8", th, "s(x^3) = s(x)",
          lambda: calc("s(x^3)", ("s(x^2)*s(x)", ["S5"]), ("one(x)*s(x)", ["signs.s7"]),
                       ("s(x)", ["signs.s9"])))

    def cube():
        return calc("s(x)*(s(x)*s(x))", ("s(x)*s(x)*s(x)", "ring"), ("s(x*x)*s(x)", ["S5"]),
                    ("s(x^3)", ["S5"]), ("s(x)", ["signs.s8"]))

    b.add("signs.s10", th, "s(x)^-1 = s(x)", lambda: sym(inverse_unique(cube(), cube())))

    def s11():
        u = "s(x)"
        P = f"(({u}*{u} + {u})*(1+1)^-1)"
        Q = f"(({u}*{u} - {u})*(1+1)^-1)"
        simp = Simp(mono=[mono_rule(cube(), [u, u, u])], halve=lemma("signs.one_two"))

        def fixed_by_sign(p):
            idem = step(f"{p}*({p}*{p})", p, simp)
            p_inv = inverse_unique(idem, idem)  # p = p^-1
            pone = calc(f"one({p})", (f"{p}*{p}", [p_inv]), (p, simp))
            return calc(f"s({p})", (f"s(one({p}))", [pone]), (f"one({p})", ["S1"]), (p, [pone]))

        sp, sq = fixed_by_sign(P), fixed_by_sign(Q)
        pu = step(f"{P}*{u}", P, simp)
        qu = step(f"{Q}*{u}", f"-1*{Q}", simp)
        ps = calc(f"{P}*s({u})", (f"s({P})*s({u})", [sp]), (f"s({P}*{u})", ["S5"]),
                  (f"s({P})", [pu]), (P, [sp]))
        qs = calc(f"{Q}*s({u})", (f"s({Q})*s({u})", [sq]), (f"s({Q}*{u})", ["S5"]),
                  (f"s(-1*{Q})", [qu]), (f"s(-1)*s({Q})", ["S5"]), (f"-1*{Q}", ["S3", sq]),
                  (f"-{Q}", "ring"))
        e_pq = step(f"{u}*{u}", f"{P} + {Q}", simp)
        return calc(f"s({u})",
                    (f"one({u})*s({u})", ["signs.s9"]),
                    (f"({u}*{u})*s({u})", ["signs.s10"]),
                    (f"({P} + {Q})*s({u})", [e_pq]),
                    (f"{P}*s({u}) + {Q}*s({u})", "ring"),
                    (f"{P} + -{Q}", [ps, qs]),
                    (u, simp))

    b.add("signs.s11", th, "s(s(x)) = s(x)", s11)


# ---------------------------------------------------------------- formal realness

def _squares(idx) -> str:
    return " + ".join(f"x{k}^2" for k in idx)


def _prod(idx) -> str:
    return "*".join(f"x{k}" for k in idx)


def build_appendix(b: CorpusBuilder, top: int = 3) -> None:
    th = "Md+Signs"
    for n in range(top + 1):
        P, Q = _prod(range(n + 1)), _squares(range(n + 1))
        b.add(f"appendix.dagger_{n}", th, f"one({P})*s({Q}) = one({P})", _dagger(n))
        b.add(f"appendix.useful_{n}", th, f"zero({Q})*one({P}) = 0",
              lambda P=P, Q=Q, n=n: calc(
                  f"zero({Q})*one({P})",
                  (f"zero({Q})*(one({P})*s({Q}))", [f"appendix.dagger_{n}"]),
                  (f"(zero({Q})*s({Q}))*one({P})", "ring"),
                  (f"(s(zero({Q}))*s({Q}))*one({P})", ["S2"]),
                  (f"s(zero({Q})*({Q}))*one({P})", ["S5"]),
                  (f"s(0)*one({P})", ["pc.pc3"]),
                  (f"0*one({P})", ["signs.s_zero"]),
                  ("0", "ring")))
        b.add(f"appendix.efr_{n}", th, efr_axiom(n), _efr(n))


def _dagger(n: int):
    if n == 0:
        return lambda: calc("one(x0)*s(x0^2)", ("one(x0)*one(x0)", ["signs.s7"]),
                            ("one(x0)", ["pc.pc5"]))

    def proof():
        m = n - 1
        P, Q = _prod(range(m + 1)), _squares(range(m + 1))
        y = f"x{n}"
        P1 = f"{P}*{y}"
        D = f"s({Q}) - s({y}^2)"
        ih = lemma(f"appendix.dagger_{m}")
        i_thm = calc(f"one({P1})*s({Q})",
                     (f"(one({P})*one({y}))*s({Q})", ["pc.pc8"]),
                     (f"(one({P})*s({Q}))*one({y})", "ring"),
                     (f"one({P})*one({y})", [ih]),
                     (f"one({P1})", ["pc.pc8"]))
        ii_thm = calc(f"one({P1})*({D})",
                      (f"one({P1})*s({Q}) - one({P1})*s({y}^2)", "ring"),
                      (f"one({P1}) - one({P1})*one({y})", [i_thm, "signs.s7"]),
                      (f"one({P1}) - (one({P})*one({y}))*one({y})", ["pc.pc8"]),
                      (f"one({P1}) - one({P})*(one({y})*one({y}))", "ring"),
                      (f"one({P1}) - one({P})*one({y})", ["pc.pc5"]),
                      (f"one({P1}) - one({P1})", ["pc.pc8"]),
                      ("0", "ring"))
        iii_thm = calc(f"one({P1})*zero({D})",
                       (f"one({P1}) - (one({P1})*({D}))*({D})^-1", "ring"),
                       (f"one({P1}) - 0*({D})^-1", [ii_thm]),
                       (f"one({P1})", "ring"))
        Q1 = f"{Q} + {y}^2"
        A = f"one({P1})*s({Q1})"
        return calc(A,
                    (f"{A} - one({P1})*s({Q}) + one({P1})*s({Q})", "ring"),
                    (f"{A} - one({P1})*s({Q}) + one({P1})", [i_thm]),
                    (f"one({P1})*(s({Q1}) - s({Q})) + one({P1})", "ring"),
                    (f"(one({P1})*zero({D}))*(s({Q1}) - s({Q})) + one({P1})", [iii_thm]),
                    (f"one({P1})*(zero({D})*(s({Q1}) - s({Q}))) + one({P1})", "ring"),
                    (f"one({P1})*0 + one({P1})", ["S6"]),
                    (f"one({P1})", "ring"))

    return proof


def _efr(n: int):
    if n == 0:
        return lambda: calc("zero(x0^2)*x0", ("zero(x0)*x0", ["pc.pc2"]), ("0", ["pc.pc3"]))

    def proof():
        Q = _squares(range(n + 1))
        dd = []
        for i in range(n + 1):
            if i == 0:
                dd.append(calc(f"zero({Q})*zero(x0)*x0", (f"zero({Q})*(zero(x0)*x0)", "ring"),
                               (f"zero({Q})*0", ["pc.pc3"]), ("0", "ring")))
                continue
            rem = [k for k in range(n + 1) if k != i]
            R = _squares(rem)
            ih = lemma(f"appendix.efr_{n - 1}", **{f"x{j}": f"x{k}" for j, k in enumerate(rem)})
            dd.append(calc(f"zero({Q})*zero(x{i})*x0",
                           (f"zero({Q})*zero(x{i}^2)*x0", ["pc.pc2"]),
                           (f"zero(x{i}^2)*zero(x{i}^2 + ({R}))*x0", "ring"),
                           (f"zero(x{i}^2)*zero({R})*x0", ["pc.pc4"]),
                           (f"zero(x{i}^2)*(zero({R})*x0)", "ring"),
                           (f"zero(x{i}^2)*0", [ih]),
                           ("0", "ring")))
        chain = [(f"zero({Q})*(one(x0) + zero(x0))*x0", "ring"),
                 (f"zero({Q})*one(x0)*x0 + zero({Q})*zero(x0)*x0", "ring"),
                 (f"zero({Q})*one(x0)*x0 + 0", [dd[0]]),
                 (f"zero({Q})*one(x0)*x0", "ring")]
        for k in range(1, n + 1):
            P0, P1 = _prod(range(k)), _prod(range(k + 1))
            core = f"zero({Q})*(one({P0})*one(x{k}))*x0"
            chain += [(f"zero({Q})*one({P0})*(one(x{k}) + zero(x{k}))*x0", "ring"),
                      (f"{core} + one({P0})*(zero({Q})*zero(x{k})*x0)", "ring"),
                      (f"{core} + one({P0})*0", [dd[k]]),
                      (core, "ring"),
                      (f"zero({Q})*one({P1})*x0", ["pc.pc8"])]
        chain += [("0*x0", [f"appendix.useful_{n}"]), ("0", "ring")]
        return calc(f"zero({Q})*x0", *chain)

    return proof


def build_cefr(b: CorpusBuilder, top: int = 3) -> None:
    for n in range(1, top + 1):
        for j in range(1, n + 1):
            order = list(range(n + 1))
            order[0], order[j] = j, 0
            Q, Qs = _squares(range(n + 1)), _squares(order)
            b.add(f"cefr.n{n}_x{j}", "Md+EFR", f"zero({Q})*x{j} = 0",
                  lambda Q=Q, Qs=Qs, j=j, n=n: calc(
                      f"zero({Q})*x{j}", (f"zero({Qs})*x{j}", "ring"), ("0", [("EFR", n)])))


# ---------------------------------------------------------------- complex numbers

def build_complex(b: CorpusBuilder) -> None:
    b.add("cc.pone_conj_inv", "Md+CC", "one(x)*conj(x)^-1 = conj(x)^-1",
          lambda: calc("one(x)*conj(x)^-1", ("one(conj(x))*conj(x)^-1", ["CC9"]),
                       ("conj(x)^-1*(conj(x)^-1*conj(x))", "ring"), ("conj(x)^-1", ["md.ril_inv"])))
    b.add("cc.pone_conj_inv_conj", "Md+CC", "one(conj(x))*x^-1 = x^-1",
          lambda: calc("one(conj(x))*x^-1", ("one(x)*x^-1", ["CC9"]),
                       ("x^-1*(x^-1*x)", "ring"), ("x^-1", ["md.ril_inv"])))
    b.add("c0.one_two_ssav", "Md+CC+SSAV", "one(1 + 1) = 1",
          lambda: calc("one(1+1)", ("one(1+conj(1))", ["CC1"]), ("one(1+1*conj(1))", ["CR7"]),
                       ("1", [("SSAV", 0)])))

    def c0_signs():
        re1 = calc("re(1)", ("(1+1)^-1*(1+1)", ["CC1"]), ("one(1+1)", "ring"))
        return calc("one(1+1)", ("s(one(1+1))", ["S1"]), ("s(re(1))", [re1]), ("s(1)", ["S*7"]),
                    ("s(one(1))", ["pc.one_one"]), ("one(1)", ["S1"]), ("1", ["pc.one_one"]))

    b.add("c0.one_two_signs_star", "Md+CC+Signs*", "one(1 + 1) = 1", c0_signs)

    simp = Simp(
        rules=["CC0", "CC1", "CC2", "CC3", "CC4", "CC5", "CC6", "CC7", "Inv",
               "md.inv_mul", "md.inv_neg", "md.inv_one", "md.zero_inverse"],
        mono=[mono_rule("CC8", ["i", "i"]),
              mono_rule("RIL", ["x", "x", "x^-1"]),
              mono_rule("md.ril_inv", ["x^-1", "x^-1", "x"]),
              mono_rule("cc.pone_conj_inv", ["x", "x^-1", "conj(x)^-1"]),
              mono_rule("cc.pone_conj_inv_conj", ["conj(x)", "conj(x)^-1", "x^-1"])],
        halve=lemma("c0.one_two_ssav"))
    from .theories import RI_LAWS
    for name, (lhs, rhs) in RI_LAWS.items():
        b.add(f"ri.{name.lower()}", "Md+CC+SSAV", (lhs, rhs),
              lambda lhs=lhs, rhs=rhs: step(lhs, rhs, simp))


def build_all() -> dict:
    b = CorpusBuilder()
    build_ring(b)
    build_md(b)
    build_pc(b)
    build_signs(b)
    build_appendix(b)
    build_cefr(b)
    build_complex(b)
    return b.scripts


def main() -> None:
    from .library import write_corpus
    scripts = build_all()
    write_corpus(scripts)
    print(f"wrote {len(scripts)} scripts")


if __name__ == "__main__":
    main()

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from meadow import terms as T
from meadow.model_lab import (
    MAX_GRID, FiniteMeadow, Impossible, ModelLabError, candidate_sets, check_axioms,
    check_equation, classify_range, eval_grid, format_table, search_inverse, zmod_meadow,
)
from meadow.prover.theories import theory


def squarefree_by_trial(n: int) -> bool:
    return all(n % (p * p) for p in range(2, int(n ** 0.5) + 1))


def test_classify_small_range():
    rows = classify_range(12)
    assert [r.n for r in rows if r.meadow] == [1, 2, 3, 5, 6, 7, 10, 11]
    assert [r.n for r in rows if not r.meadow] == [4, 8, 9, 12]


def test_classify_fifty_matches_squarefree():
    rows = classify_range(50)
    assert all(r.meadow == squarefree_by_trial(r.n) for r in rows)
    assert rows[29].meadow and not rows[48].meadow


def test_examples():
    m = zmod_meadow(10)
    assert isinstance(m, FiniteMeadow) and not m.cancellation and m.zero_divisors == (2, 5)
    r = zmod_meadow(4)
    assert isinstance(r, Impossible) and r.witness == 2 and "2*2*y = 2" in r.reason
    one = zmod_meadow(1)
    assert one.inverse == (0,) and one.cancellation
    assert zmod_meadow(7).cancellation
    with pytest.raises(ModelLabError):
        zmod_meadow(0)


@pytest.mark.parametrize("n", [n for n in range(1, 51) if squarefree_by_trial(n)])
def test_table_invariants(n):
    m = zmod_meadow(n)
    inv = m.table
    r = np.arange(n)
    assert (inv[inv] == r).all()
    assert ((r * r % n) * inv % n == r).all()
    prods = np.outer(r[1:], r[1:]) % n
    assert m.cancellation == (not (prods == 0).any())


@pytest.mark.parametrize("n", [n for n in range(1, 51) if squarefree_by_trial(n)])
def test_search_agrees_with_crt(n):
    assert search_inverse(n) == zmod_meadow(n).inverse


@pytest.mark.parametrize("n", [n for n in range(2, 51) if not squarefree_by_trial(n)])
def test_impossibility_witness_has_no_candidates(n):
    r = zmod_meadow(n)
    assert isinstance(r, Impossible)
    if r.witness is not None:
        assert candidate_sets(n)[r.witness] == ()
        assert all((r.witness * r.witness * y) % n != r.witness for y in range(n))


def test_md_holds_in_z10():
    reports = check_axioms(zmod_meadow(10), "Md")
    assert len(reports) == 10 and all(r.holds for r in reports)


def test_c0_scheme_in_z10():
    bad = {r.label for r in check_axioms(zmod_meadow(10), theory("Md+C0", 10)) if not r.holds}
    assert "C0_9" in bad
    # 1_2 = 2 * 8 = 6 in Z/10, so C0_1 fails as well
    assert "C0_1" in bad
    assert {"C0_0", "C0_2", "C0_8"}.isdisjoint(bad)


def test_efr_counter_in_z10():
    m = zmod_meadow(10)
    reports = {r.label: r for r in check_axioms(m, theory("Md+EFR", 2))}
    assert reports["EFR_0"].holds
    c = dict(reports["EFR_1"].counter)
    assert c == {"x0": 1, "x1": 1}
    # 0_2 = 1 - 2*8 = 5 in Z/10, so the left side is 5
    env = {k: np.int64(v) for k, v in c.items()}
    lhs, _ = theory("Md+EFR", 2).axiom("EFR", 1)
    assert int(eval_grid(lhs, m, env)) == 5


def test_rejects_non_plain_theories():
    m = zmod_meadow(10)
    for th in ("Md+Signs", "Md+CC"):
        with pytest.raises(ModelLabError):
            check_axioms(m, th)


DERIVED = [
    ("0^-1", "0"), ("(x*y)^-1", "x^-1*y^-1"), ("(-x)^-1", "-(x^-1)"),
    ("x^-1*x*x^-1", "x^-1"), ("one(x)*one(x)", "one(x)"), ("zero(x)*x", "0"),
    ("one(x*y)", "one(x)*one(y)"),
]


@pytest.mark.parametrize("n", [1, 2, 6, 10, 30])
@pytest.mark.parametrize("lhs, rhs", DERIVED)
def test_derived_identities_hold(n, lhs, rhs):
    assert check_equation(zmod_meadow(n), T.parse(lhs), T.parse(rhs)) is None


def test_first_counter_is_lexicographic():
    m = zmod_meadow(6)
    assert check_equation(m, T.parse("x*y"), T.parse("0")) == (("x", 1), ("y", 1))
    assert check_equation(m, T.parse("x*x^-1"), T.ONE_T) == (("x", 0),)


def test_grid_limit():
    names = " + ".join(f"x{k}" for k in range(8))
    with pytest.raises(ModelLabError):
        check_equation(zmod_meadow(10), T.parse(names), T.ZERO_T)
    assert 10 ** 6 <= MAX_GRID


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=2, max_value=30), st.integers(min_value=0, max_value=29),
       st.integers(min_value=0, max_value=29))
def test_grid_matches_pointwise(n, a, b):
    m = zmod_meadow(n)
    if isinstance(m, Impossible):
        return
    a, b = a % n, b % n
    t = T.parse("(x + y^-1) * (x*y)^-1 - one(y)")
    env = {"x": np.int64(a), "y": np.int64(b)}
    inv = m.inverse
    want = ((a + inv[b]) * inv[a * b % n] - b * inv[b]) % n
    assert int(eval_grid(t, m, env)) == want


def test_table_format():
    text = format_table(classify_range(4))
    lines = text.splitlines()
    assert lines[0].split() == ["n", "meadow", "squarefree", "cancellation"]
    assert lines[4].split() == ["4", "no", "no", "-"]
    assert len({len(l) for l in lines}) == 1

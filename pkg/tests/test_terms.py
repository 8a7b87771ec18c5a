from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from meadow import terms as T
from helpers import random_term

P = T.parse


def test_parse_print_pseudo_zero():
    t = P("zero(x)*x")
    assert t == T.mul(T.pzero(T.var("x")), T.var("x"))
    assert T.to_string(t) == "zero(x) * x"


def test_inverse_postfix():
    assert P("x^-1") == T.inv(T.var("x"))


def test_sign_rejected_in_plain_signature():
    with pytest.raises(T.SignatureError):
        P("s(x)", T.MEADOW)


@pytest.mark.parametrize("term, text", [
    (T.pone(T.var("x")), "one(x)"),
    (T.numeral(3), "n(3)"),
    (T.mul(T.add(T.var("x"), T.var("y")), T.inv(T.var("z"))), "(x + y) * z^-1"),
])
def test_print(term, text):
    assert T.to_string(term) == text


def test_expand_pseudo_one():
    assert T.expand_derived(P("one(x)")) == P("x * x^-1")


def test_expand_numeral_is_left_nested():
    assert T.expand_derived(T.numeral(3)) == T.add(T.add(T.ONE_T, T.ONE_T), T.ONE_T)


def test_expand_real_part():
    x = T.var("x")
    two = T.expand_derived(T.numeral(2))
    assert T.expand_derived(P("re(x)")) == T.mul(T.inv(two), T.add(x, T.conj(x)))


def test_expand_power_zero_and_negative():
    assert T.expand_derived(P("x^0")) == T.ONE_T
    assert T.expand_derived(P("x^-2")) == P("x^-1 * x^-1")


def test_expand_rejects_complex_under_plain_signature():
    with pytest.raises(T.SignatureError):
        T.expand_derived(P("re(x)"), T.MEADOW)


def test_substitute_examples():
    x, y = T.var("x"), T.var("y")
    assert T.substitute(P("x + y"), {"x": T.ZERO_T}) == T.add(T.ZERO_T, y)
    assert T.substitute(x, {"x": T.mul(x, x)}) == T.mul(x, x)


def test_substitute_star_translation_of_efr1():
    lhs = P("zero(x0^2 + x1^2) * x0")
    z = T.var("z0")
    out = T.substitute(lhs, {"x0": T.re_(z), "x1": T.im_(z)})
    assert T.to_string(out) == "zero(re(z0)^2 + im(z0)^2) * re(z0)"


@pytest.mark.parametrize("text, names", [("x + y^-1", ("x", "y")), ("n(5)", ()), ("one(x) * 0", ("x",))])
def test_free_vars(text, names):
    assert T.free_vars(P(text)) == names


@pytest.mark.parametrize("text", ["x +", "(x", "x $ y", "2", "one", "s(x", "_g0", "x ^ y"])
def test_parse_errors(text):
    with pytest.raises(T.TermError):
        P(text)


def test_parse_error_reports_position():
    with pytest.raises(T.ParseError) as e:
        P("x + #")
    assert e.value.pos == 3


def test_hash_consing_makes_equal_terms_identical():
    assert P("(x + y) * z") is T.mul(T.add(T.var("x"), T.var("y")), T.var("z"))


seeds = st.integers(min_value=0, max_value=2 ** 32)


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_round_trip(seed):
    t = random_term(random.Random(seed), signed=True, derived=True, complex_=True)
    assert P(T.to_string(t)) == t


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_expand_idempotent_and_variable_preserving(seed):
    t = random_term(random.Random(seed), derived=True, complex_=True)
    e = T.expand_derived(t)
    assert T.expand_derived(e) == e
    assert T.is_core(e)
    assert T.free_vars(e) == T.free_vars(t)


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_substitute_is_homomorphic(seed):
    rng = random.Random(seed)
    t = random_term(rng, derived=True)
    m = {"x": random_term(rng, max_nodes=5), "y": T.var("x")}
    out = T.substitute(t, m)
    if t.kind == T.VAR:
        assert out == m.get(t.name, t)
    else:
        assert out == T.with_args(t, [T.substitute(a, m) for a in t.args])

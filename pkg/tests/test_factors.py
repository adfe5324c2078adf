import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from smallcancel.factors import (ConfigError, FactorWord, InH, UnknownSymbol, ball,
                                 conjugate_intersection_ball, make_system, parse_system_config,
                                 preset, reduced_words)
from smallcancel.words import parse_word

K_words = st.lists(st.tuples(st.sampled_from("sxyh"), st.sampled_from([-2, -1, 1, 2])), max_size=12)


def kw(system, text):
    return system.letter(text, "K")


def test_reduce_examples(h1):
    assert h1.reduce(parse_word("x x^-1"), "K").syllables == ()
    assert h1.reduce(parse_word("x y y^-1 x"), "K").syllables == (("x", 2),)
    with pytest.raises(UnknownSymbol):
        h1.reduce(parse_word("a"), "K")


@given(K_words)
def test_reduce_properties(w):
    system = preset("amalgam-h1")
    r = system.reduce(w, "K")
    assert system.reduce(r.syllables, "K") == r
    assert system.reduce(list(w) + [(s, -k) for s, k in reversed(w)], "K").syllables == ()


def test_in_H(h1):
    assert h1.in_H(FactorWord((), "K"))
    assert h1.in_H(kw(h1, "s^3"))
    assert not h1.in_H(kw(h1, "s x s^-1"))


def test_h_core(h1):
    def core(text):
        return tuple(g.syllables for g in h1.h_core(kw(h1, text)))

    assert core("s^2 x s^-1") == (parse_word("s^2"), parse_word("x"), parse_word("s^-1"))
    assert core("x") == ((), parse_word("x"), ())
    assert core("s x s y s^3") == (parse_word("s"), parse_word("x s y"), parse_word("s^3"))
    with pytest.raises(InH):
        h1.h_core(kw(h1, "s^2"))


@given(K_words)
def test_h_core_recombines(w):
    system = preset("amalgam-h1")
    g = system.reduce(w, "K")
    if system.in_H(g):
        return
    p, c, s = system.h_core(g)
    assert oracles.equal(p.syllables + c.syllables + s.syllables, g.syllables)
    assert c.syllables[0][0] != "s" and c.syllables[-1][0] != "s"


def test_double_coset_examples(h1):
    assert h1.double_coset_member(kw(h1, "s x s^2"), kw(h1, "x"))
    assert not h1.double_coset_member(kw(h1, "x"), kw(h1, "y"))
    assert h1.double_coset_member(kw(h1, "s x s y s^-1"), kw(h1, "x s y"))


def test_double_coset_against_expansion(h1):
    # H-ends of words in the radius-3 ball have length <= 2, so h1, h2 need <= 4
    rng = random.Random(3)
    pool = [g for g in ball(h1, "K", 3) if not h1.in_H(g)]
    hits = 0
    for _ in range(300):
        g, t = rng.choice(pool), rng.choice(pool)
        got = h1.double_coset_member(g, t)
        assert got == oracles.double_coset_brute(h1, g.syllables, t.syllables, 4)
        hits += got
    assert hits > 0


def test_double_coset_is_equivalence(h1):
    words = [g for g in ball(h1, "K", 3) if not h1.in_H(g)]
    rng = random.Random(11)
    sample = rng.sample(words, 40)
    for u in sample:
        assert h1.double_coset_member(u, u)
        for v in sample:
            assert h1.double_coset_member(u, v) == h1.double_coset_member(v, u)


def test_good_fellows(h1):
    assert h1.good_fellows(kw(h1, "x"), kw(h1, "y"))
    assert not h1.good_fellows(kw(h1, "x"), kw(h1, "x"))
    assert not h1.good_fellows(kw(h1, "x"), kw(h1, "s x^-1 s"))
    assert not h1.good_fellows(kw(h1, "s"), kw(h1, "y"))


def test_good_fellows_symmetric_and_H_invariant(h1):
    rng = random.Random(5)
    pool = [g for g in ball(h1, "K", 2) if not h1.in_H(g)]
    for _ in range(200):
        u, v = rng.choice(pool), rng.choice(pool)
        assert h1.good_fellows(u, v) == h1.good_fellows(v, u)
        a, b = rng.randint(-2, 2), rng.randint(-2, 2)
        u2 = h1.reduce([("s", a)] + list(u.syllables) + [("s", b)], "K")
        assert h1.good_fellows(u2, v) == h1.good_fellows(u, v)


def test_conjugate_intersection(h1):
    assert h1.conjugate_intersection_trivial(h1.letter("a", "L"))
    assert not h1.conjugate_intersection_trivial(h1.letter("s", "L"))
    sys_t = make_system("s x y h".split(), "s t".split(), ["s"], "x", "y", "t", "h")
    a = sys_t.letter("s t s", "L")
    assert sys_t.conjugate_intersection_trivial(a)
    assert not oracles.conjugate_meets_H(sys_t, a.syllables, 4)
    assert conjugate_intersection_ball(sys_t, a, 4)


@pytest.mark.parametrize("name", ["amalgam-h1", "amalgam-h0"])
def test_presets_pass_hypotheses(name):
    assert preset(name).hypothesis_failures() == []


def test_broken_systems_are_named(h1):
    assert "good_fellows(x,y)" in h1.with_letters(y=h1.x).hypothesis_failures()
    assert "x notin H" in h1.with_letters(x=kw(h1, "s")).hypothesis_failures()
    assert "a^-1 H a ∩ H = 1" in h1.with_letters(a=h1.letter("s", "L")).hypothesis_failures()


CONFIG = """
# the default system written out
K.generators = s x y h
L.generators = s a
shared = s
x = x
y = y
a = a
h = h
"""


def test_config_roundtrip(h1):
    system = parse_system_config(CONFIG)
    assert system.describe() | {"name": "amalgam-h1"} == h1.describe()


@pytest.mark.parametrize("edit,field", [
    ("x = x", "x = q"),
    ("a = a", "a = x"),
    ("y = y", "y = x"),
    ("h = h", ""),
])
def test_config_errors_name_the_field(edit, field):
    text = CONFIG.replace(edit, field)
    with pytest.raises(ConfigError) as exc:
        parse_system_config(text)
    expected = edit.split()[0]
    assert expected in str(exc.value) or exc.value.field.startswith("good_fellows")


def test_reduced_words_counts():
    # 2k(2k-1)^(n-1) reduced words of length n over k generators
    counts = [sum(1 for _ in reduced_words("ab", n, n)) for n in range(1, 5)]
    assert counts == [4, 12, 36, 108]
    assert next(iter(reduced_words("ab", 2, 0))) == ()

import random
from fractions import Fraction

import pytest

import oracles
from smallcancel.amalgam import AmalgamWord, cyclically_reduce, from_syllables, interleave_equal, word
from smallcancel.cancellation import symmetrize
from smallcancel.dehn import (GREENDLINGER, Outcome, UncertifiedSet, ball_injectivity, fragments,
                              max_fragment, membership, replay, verify_trace)
from smallcancel.relators import build_r0


def rand_word(system, rng, n):
    return from_syllables(system, [(rng.choice(system.symbols), rng.choice((1, -1)))
                                   for _ in range(n)])


def product_of_conjugates(system, relators, rng, count, conj_len=4):
    w = AmalgamWord((), system)
    for _ in range(count):
        r = rng.choice(relators)
        if rng.random() < 0.5:
            r = r.inverse()
        w = w * r.conjugate(rand_word(system, rng, rng.randint(0, conj_len)))
    return w


@pytest.fixture(scope="module")
def small(h1):
    r = build_r0(h1, 3)
    return r, symmetrize(h1, [r])


def test_max_fragment_examples(h1, R80):
    r0 = build_r0(h1, 80)
    assert max_fragment(r0, R80).ratio == 1
    assert max_fragment(word(h1, "x"), R80).ratio == Fraction(1, 6640)
    cut = r0.spans[5000][0]
    # r0 letter 5000 is an L-letter; the tail opens in K and closes in L
    w = AmalgamWord(r0.syllables[:cut], h1) * word(h1, "x^5 a^9")
    f = max_fragment(w, R80)
    assert (f.letters, f.ratio) == (5000, Fraction(5000, 6640))


def test_uncertified_guard(h1, small):
    _, R = small
    with pytest.raises(UncertifiedSet):
        max_fragment(word(h1, "x"), R)
    with pytest.raises(UncertifiedSet):
        membership(word(h1, "x"), R)
    with pytest.raises(UncertifiedSet):
        ball_injectivity(symmetrize(h1, [word(h1, "x")]), 3)


def test_max_fragment_matches_oracle(h1, small):
    r, R = small
    rng = random.Random(7)
    for _ in range(60):
        w = rand_word(h1, rng, rng.randint(1, 10))
        if rng.random() < 0.5:
            # plant a piece of a relator rotation
            m = R.member(rng.randrange(len(R.cycles)), rng.randrange(18))
            k = rng.randint(1, 12)
            w = w * AmalgamWord(m.syllables[:m.spans[k][0]] if k < m.length else m.syllables, h1)
        if w.is_identity():
            continue
        f = max_fragment(w, R, require_certificate=False)
        want = oracles.max_fragment_ratio(h1, [r.syllables], w.syllables)
        assert (f.ratio if f else 0) == want


def test_fragments_are_genuine(h1, small):
    _, R = small
    w = product_of_conjugates(h1, [build_r0(h1, 3)], random.Random(2), 2)
    c, _ = cyclically_reduce(w)
    for f in fragments(c, R):
        q = c.rotation(f.start)
        m = R.member(f.cycle, f.rotation)
        got = oracles.common_letters(h1, q.syllables, m.syllables, cap=f.letters)
        assert got == f.letters


def test_membership_examples(h1, R80):
    r0 = build_r0(h1, 80)
    v = membership(r0, R80)
    assert v.outcome is Outcome.TRIVIAL and len(v.trace) == 1 and verify_trace(v, R80)
    v = membership(word(h1, "x"), R80)
    assert v.outcome is Outcome.NONTRIVIAL and v.witness <= GREENDLINGER
    rng = random.Random(1)
    u, w = rand_word(h1, rng, 4), rand_word(h1, rng, 4)
    prod = r0.conjugate(u) * r0.inverse().conjugate(w)
    v = membership(prod, R80)
    assert v.trivial and verify_trace(v, R80)


def test_identity_is_trivial(h1, R80):
    v = membership(AmalgamWord((), h1), R80)
    assert v.trivial and v.trace == []


@pytest.mark.parametrize("tie_break", ["leftmost", "random"])
def test_tie_break_independence(h1, small, tie_break):
    r, R = small
    rng = random.Random(11)
    for _ in range(200):
        w = product_of_conjugates(h1, [r], rng, rng.randint(1, 3))
        v = membership(w, R, require_certificate=False, tie_break=tie_break, rng=random.Random(3))
        assert v.trivial and verify_trace(v, R)


def test_replay_reconstructs_input(h1, small):
    r, R = small
    rng = random.Random(4)
    for _ in range(50):
        w = product_of_conjugates(h1, [r], rng, 3)
        v = membership(w, R, require_certificate=False)
        rebuilt, factors = replay(v)
        assert rebuilt == w
        if w.length:
            assert interleave_equal(h1, rebuilt, w)[0]
        for f, step in zip(factors, v.trace):
            assert cyclically_reduce(f)[0] == R.cycles[step.cycle]


def test_steps_shorten(h1, small):
    r, R = small
    rng = random.Random(9)
    for _ in range(50):
        v = membership(product_of_conjugates(h1, [r], rng, 3), R, require_certificate=False)
        for s in v.trace:
            assert s.length_before - s.length_after >= max(1, 2 * s.fragment_letters - s.relator.length)


def test_conjugation_invariance(h1, R80):
    rng = random.Random(5)
    r0 = build_r0(h1, 80)
    for _ in range(5):
        u = rand_word(h1, rng, 4)
        for w in (r0.conjugate(rand_word(h1, rng, 3)), rand_word(h1, rng, 12)):
            assert membership(w, R80).outcome == membership(w.conjugate(u), R80).outcome


def test_nontrivial_words_are_nontrivial(h1, R80):
    rng = random.Random(8)
    for _ in range(30):
        w = rand_word(h1, rng, 30)
        if w.is_identity():
            continue
        v = membership(w, R80)
        assert not v.trivial and v.witness <= Fraction(1, 2)
        with pytest.raises(ValueError):
            replay(v)


def test_ball_injectivity_small_radii(R80):
    assert ball_injectivity(R80, 0)
    assert ball_injectivity(R80, 3)


def test_verdict_serializes(h1, R80):
    d = membership(word(h1, "x a"), R80).to_dict()
    assert d["outcome"] == "nontrivial" and d["max_fragment_ratio"] == "1/3320"
    d = membership(build_r0(h1, 80), R80).to_dict()
    assert d["outcome"] == "trivial" and d["steps"][0]["length_after"] == 0

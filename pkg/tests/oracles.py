"""Slow, independent reference computations.

Everything here works on single generators (exponent +-1) with a plain
stack, and decides letter agreement by group arithmetic
(``P_s(u)^-1 P_s(v) in H``) instead of token hashing.  Nothing is imported
from the package except the FactorSystem data.
"""

from __future__ import annotations

import itertools


def expand(syl):
    out = []
    for s, k in syl:
        step = 1 if k > 0 else -1
        out.extend([(s, step)] * abs(k))
    return out


def group(gens):
    out = []
    for s, e in gens:
        if out and out[-1][0] == s:
            out[-1] = (s, out[-1][1] + e)
        else:
            out.append((s, e))
    return tuple(out)


def reduce(syl):
    stack = []
    for g in expand(syl):
        if stack and stack[-1][0] == g[0] and stack[-1][1] == -g[1]:
            stack.pop()
        else:
            stack.append(g)
    return group(stack)


def inv(syl):
    return tuple((s, -k) for s, k in reversed(syl))


def mul(*words):
    return reduce(tuple(itertools.chain.from_iterable(words)))


def equal(u, v) -> bool:
    return mul(u, inv(v)) == ()


def in_H(system, syl) -> bool:
    return all(s in system.shared for s, _ in reduce(syl))


def factor_of(system, s):
    if s in system.shared:
        return "H"
    return "K" if s in system.K.symbols else "L"


def letters(system, syl):
    """Normal form letters; H generators join the letter on their left."""
    gens = expand(reduce(syl))
    out, cur, cur_f = [], [], None
    for g in gens:
        f = factor_of(system, g[0])
        if f != "H" and cur_f is not None and f != cur_f:
            out.append(group(cur))
            cur = []
        if f != "H":
            cur_f = f
        cur.append(g)
    if cur:
        out.append(group(cur))
    return out


def cyclic_core(syl):
    gens = expand(reduce(syl))
    while len(gens) >= 2 and gens[0][0] == gens[-1][0] and gens[0][1] == -gens[-1][1]:
        gens = gens[1:-1]
    return group(gens)


def rotations(system, syl):
    """All rotations of a cyclically reduced word at letter boundaries."""
    core = cyclic_core(syl)
    gens = expand(core)
    n = len(gens)
    fs = [factor_of(system, s) for s, _ in gens]
    nonh = [i for i in range(n) if fs[i] != "H"]
    cuts = []
    for idx, i in enumerate(nonh):
        if fs[nonh[idx - 1]] != fs[i]:
            cuts.append(i)
    if not cuts:
        # one letter: conjugate leading H to the end like any other rotation
        c = nonh[0] if nonh else 0
        return [reduce(tuple(gens[c:] + gens[:c]))]
    return [reduce(tuple(gens[c:] + gens[:c])) for c in cuts]


def members(system, relators):
    """Rotation members of the symmetrized closure, as syllable tuples."""
    out = []
    seen = set()
    for r in relators:
        for w in (r, inv(r)):
            for rot in rotations(system, w):
                if rot not in seen:
                    seen.add(rot)
                    out.append(rot)
    return out


def common_letters(system, u, v, cap=None, lu=None, lv=None) -> int:
    """Longest ``s`` with the first ``s`` letters of ``u`` and ``v`` equal up to H."""
    lu = letters(system, u) if lu is None else lu
    lv = letters(system, v) if lv is None else lv
    top = min(len(lu), len(lv)) if cap is None else min(len(lu), len(lv), cap)
    pu, pv = (), ()
    s = 0
    while s < top:
        pu, pv = pu + lu[s], pv + lv[s]
        if not in_H(system, mul(inv(pu), pv)):
            break
        s += 1
    return s


def all_pairs(system, relators):
    """``{(u, v): common letters}`` over ordered pairs of distinct members."""
    ms = members(system, relators)
    ls = {u: letters(system, u) for u in ms}
    return {(u, v): common_letters(system, u, v, lu=ls[u], lv=ls[v])
            for u in ms for v in ms if u != v}


def max_common(system, relators) -> int:
    return max(all_pairs(system, relators).values(), default=0)


def max_fragment_ratio(system, relators, w):
    """max |s|/|r| over rotations of the cyclic word ``w`` and members ``r``."""
    from fractions import Fraction

    best = Fraction(0)
    core = cyclic_core(w)
    m = len(letters(system, core))
    for q in rotations(system, core):
        for r in members(system, relators):
            n = len(letters(system, r))
            s = common_letters(system, q, r, cap=min(m, n))
            best = max(best, Fraction(s, n))
    return best


def conjugate_meets_H(system, a, radius) -> bool:
    """Is there a nonidentity ``h`` in H, ``|h| <= radius``, with ``a^-1 h a`` in H?"""
    shared = sorted(system.shared)
    gens = [(s, e) for s in shared for e in (1, -1)]
    for n in range(1, radius + 1):
        for combo in itertools.product(gens, repeat=n):
            h = reduce(combo)
            if h and in_H(system, mul(inv(a), h, a)):
                return True
    return False


def double_coset_brute(system, g, t, radius) -> bool:
    """``g in H t H`` by expanding ``h1 t h2`` over ``|h1|, |h2| <= radius``."""
    shared = sorted(system.shared)
    gens = [(s, e) for s in shared for e in (1, -1)]
    hs = {()}
    for n in range(1, radius + 1):
        for combo in itertools.product(gens, repeat=n):
            hs.add(reduce(combo))
    g = reduce(g)
    return any(mul(h1, t, h2) == g for h1 in hs for h2 in hs)


def r0_blocks(cap):
    """Block formula for |r0|."""
    return 4 + sum(2 + 2 * k for k in range(2, cap + 1))


def rn_blocks(n, cap):
    return sum(2 + 2 * j for j in range(cap * (n - 1) + 1, cap * n + 1))


def perturb(system, letters, rng, size=3):
    """Random H-interleaving ``y_i = h_{i-1} x_i h_i^-1`` of a normal form."""
    n = len(letters)
    hs = [system.reduce([("s", rng.randint(-size, size)) for _ in range(rng.randint(0, 2))], "K")
          for _ in range(n - 1)]
    ys = []
    for i, g in enumerate(letters):
        left = hs[i - 1].syllables if i > 0 else ()
        right = inv(hs[i].syllables) if i < n - 1 else ()
        ys.append(system.reduce(left + g.syllables + right, g.factor))
    return ys, hs

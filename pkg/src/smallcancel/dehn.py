"""Membership in the normal closure of a C'(1/10) symmetrized set.

The procedure is Dehn's algorithm: cyclically reduce, look for a fragment of
a relator covering more than half of it, replace the fragment by the inverse
of the rest of the relator, repeat.  A word reduced to the identity is in N,
and the recorded trace rebuilds it as a product of conjugates of relators.
A nonidentity word without such a fragment is declared outside N.  This last
verdict relies on the Greendlinger property of C'(1/10) sets (every
nonidentity element of N carries a fragment longer than 7/10 of some
relator), which is why the C'(1/10) certificate is required up front.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .amalgam import AmalgamWord, CyclicWord, cyclically_reduce
from .cancellation import SymmetrizedSet, check_c_prime
from .factors import ball
from .words import concat, inverse

GREENDLINGER = Fraction(7, 10)
HALF = Fraction(1, 2)
DEHN_LAMBDA = Fraction(1, 10)


class UncertifiedSet(ValueError):
    pass


class Outcome(enum.Enum):
    TRIVIAL = "trivial"
    NONTRIVIAL = "nontrivial"


@dataclass(frozen=True)
class Fragment:
    ratio: Fraction
    start: int          # letter offset in the query's canonical rotation
    cycle: int
    rotation: int
    letters: int
    relator_length: int


@dataclass
class RewriteStep:
    conjugator: AmalgamWord     # current word == conjugator * (relator * rest) * conjugator^-1
    cycle: int
    rotation: int
    relator: AmalgamWord
    fragment_letters: int
    position: int
    length_before: int
    length_after: int
    replacement: AmalgamWord

    def to_dict(self) -> dict:
        return {
            "position": self.position,
            "cycle": self.cycle,
            "rotation": self.rotation,
            "fragment_letters": self.fragment_letters,
            "relator_length": self.relator.length,
            "length_before": self.length_before,
            "length_after": self.length_after,
            "conjugator": str(self.conjugator),
        }


@dataclass
class DehnVerdict:
    outcome: Outcome
    word: AmalgamWord
    trace: list[RewriteStep] = field(default_factory=list)
    witness: Fraction | None = None
    residue: AmalgamWord | None = None

    @property
    def trivial(self) -> bool:
        return self.outcome is Outcome.TRIVIAL

    def to_dict(self) -> dict:
        return {
            "outcome": self.outcome.value,
            "word_length": self.word.length,
            "steps": [s.to_dict() for s in self.trace],
            "max_fragment_ratio": None if self.witness is None else
            f"{self.witness.numerator}/{self.witness.denominator}",
            "residue": None if self.residue is None else str(self.residue),
        }


# -- certification guard -------------------------------------------------------

def certify(R: SymmetrizedSet, lam: Fraction = DEHN_LAMBDA):
    cache = R.__dict__.setdefault("_certificates", {})
    if lam in cache:
        return cache[lam]
    lam = Fraction(lam)
    if lam not in cache:
        cache[lam] = check_c_prime(R, lam)
    return cache[lam]


def _require(R: SymmetrizedSet, require_certificate: bool):
    if require_certificate and not certify(R).certified:
        raise UncertifiedSet("relator set is not certified C'(1/10)")


# -- fragment search -------------------------------------------------------------

_KEY_CACHE_MAX_S = 24


def _relator_keys(R: SymmetrizedSet, i: int, s: int) -> tuple[np.ndarray, np.ndarray]:
    """Sorted keys of all ``s``-letter windows of cycle ``i`` and their rotations."""
    cache = R.__dict__.setdefault("_window_keys", {})
    hit = cache.get((i, s))
    if hit is not None:
        return hit
    n = R.lengths()[i]
    starts = np.arange(R.periods[i], dtype=np.int64)
    keys = R.hash(i).keys(starts, s)
    order = np.argsort(keys, kind="stable")
    out = (keys[order], starts[order])
    if s <= _KEY_CACHE_MAX_S or n <= 4096:
        cache[(i, s)] = out
    return out


def _matches(R: SymmetrizedSet, qh, m: int, i: int, s: int):
    """Query starts having an ``s``-letter window equal to one of cycle ``i``."""
    keys, rots = _relator_keys(R, i, s)
    q = qh.keys(np.arange(m, dtype=np.int64), s)
    pos = np.searchsorted(keys, q)
    pos[pos >= len(keys)] = len(keys) - 1
    hit = keys[pos] == q
    return np.flatnonzero(hit), rots[pos[hit]]


def _best_in_cycle(R, qh, m, i) -> tuple[int, np.ndarray, np.ndarray]:
    """Longest confirmed match length with cycle ``i`` and the hash hits at it."""
    n = R.lengths()[i]
    lo, hi = 0, min(m, n)
    found = (np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64))
    while lo < hi:
        mid = (lo + hi + 1) // 2
        starts, rots = _matches(R, qh, m, i, mid)
        if any(qh.window_equal(int(a), R.hash(i), int(b), mid) for a, b in zip(starts, rots)):
            lo, found = mid, (starts, rots)
        else:
            hi = mid - 1
    return lo, found[0], found[1]


def fragments(c: CyclicWord, R: SymmetrizedSet, everything: bool = True) -> list[Fragment]:
    """Maximal-ratio fragments of ``R`` in the cyclic word ``c``, leftmost
    first.  With ``everything=False`` only the first one is returned."""
    m = len(c)
    if m == 0 or not R.cycles:
        return []
    qh = R.encode_query(c)
    best: list[Fragment] = []
    best_ratio = Fraction(0)
    for i, n in enumerate(R.lengths()):
        if Fraction(min(m, n), n) < best_ratio:
            continue
        s, starts, rots = _best_in_cycle(R, qh, m, i)
        if s == 0:
            continue
        ratio = Fraction(s, n)
        if ratio > best_ratio:
            best, best_ratio = [], ratio
        if ratio == best_ratio:
            best.extend(Fragment(ratio, int(a), i, int(b), s, n) for a, b in zip(starts, rots))
    best.sort(key=lambda f: (f.start, f.cycle, f.rotation))
    out = []
    for f in best:
        if qh.window_equal(f.start, R.hash(f.cycle), f.rotation, f.letters):
            out.append(f)
            if not everything:
                break
    return out


def max_fragment(c: CyclicWord | AmalgamWord, R: SymmetrizedSet,
                 require_certificate: bool = True) -> Fragment | None:
    """Largest ``|s|/|r|`` over fragments ``s`` of relators ``r`` in ``c``
    (read cyclically); leftmost, then lowest cycle index on ties."""
    _require(R, require_certificate)
    if isinstance(c, AmalgamWord):
        c = cyclically_reduce(c)[0]
    found = fragments(c, R, everything=False)
    return found[0] if found else None


# -- the decision procedure -----------------------------------------------------------

def membership(w: AmalgamWord, R: SymmetrizedSet, *, require_certificate: bool = True,
               tie_break: str = "leftmost", rng: random.Random | None = None,
               witness: bool = True) -> DehnVerdict:
    """Decide whether ``w`` lies in the normal closure of ``R``.

    With ``witness=False`` a word too short to hold more than half of any
    relator is declared Nontrivial without measuring its largest fragment
    (the verdict's ``witness`` is then None).
    """
    _require(R, require_certificate)
    if tie_break not in ("leftmost", "random"):
        raise ValueError("tie_break must be 'leftmost' or 'random'")
    system = w.system
    current = w
    trace: list[RewriteStep] = []
    min_len = min(R.lengths(), default=0)
    if not witness and 0 < 2 * w.length <= min_len:
        # cyclic reduction only shortens, so no fragment can exceed half a relator
        return DehnVerdict(Outcome.NONTRIVIAL, w, trace, None, w)
    reduced = cyclically_reduce(current)
    while True:
        if current.is_identity():
            return DehnVerdict(Outcome.TRIVIAL, w, trace)
        c, conj = reduced
        m = len(c)
        if not R.cycles or 2 * m <= min_len:
            # no fragment can exceed half of a relator
            if not witness:
                return DehnVerdict(Outcome.NONTRIVIAL, w, trace, None, current)
            frag = max_fragment(c, R, require_certificate=False) if R.cycles else None
            ratio = frag.ratio if frag else Fraction(0)
            return DehnVerdict(Outcome.NONTRIVIAL, w, trace, ratio, current)
        found = fragments(c, R, everything=tie_break == "random")
        if not found or found[0].ratio <= HALF:
            ratio = found[0].ratio if found else Fraction(0)
            return DehnVerdict(Outcome.NONTRIVIAL, w, trace, ratio, current)
        if tie_break == "leftmost":
            frag = found[0]
        else:
            rng = rng or random.Random(0)
            frag = rng.choice(found)
        w_rot = c.rotation(frag.start)
        # c.base == p * w_rot * p^-1 with p the first `start` letters
        p = _letter_prefix(c, frag.start)
        g = AmalgamWord(concat(conj.syllables, p), system)
        r_rot = R.member(frag.cycle, frag.rotation)
        rest = r_rot.inverse() * w_rot
        reduced = cyclically_reduce(rest)
        after = len(reduced[0])
        if after >= m:
            raise AssertionError("rewrite failed to shorten the word")
        trace.append(RewriteStep(g, frag.cycle, frag.rotation, r_rot, frag.letters,
                                 frag.start, m, after, rest))
        current = rest


def _letter_prefix(c: CyclicWord, k: int) -> tuple:
    if k == 0:
        return ()
    return c.base.syllables[:c.base.spans[k][0]]


def replay(verdict: DehnVerdict) -> tuple[AmalgamWord, list[AmalgamWord]]:
    """Rebuild the input from a Trivial trace.

    Returns the reconstructed word and the conjugates ``G r G^-1`` whose
    product it is.
    """
    if not verdict.trivial:
        raise ValueError("only Trivial verdicts carry a replayable trace")
    system = verdict.word.system
    word = AmalgamWord((), system)
    for step in reversed(verdict.trace):
        word = (step.relator * word).conjugate(step.conjugator)
    factors = []
    acc = AmalgamWord((), system)
    for step in verdict.trace:
        acc = acc * step.conjugator
        factors.append(step.relator.conjugate(acc))
    return word, factors


def verify_trace(verdict: DehnVerdict, R: SymmetrizedSet) -> bool:
    """Replay reproduces the input, every relator is a rotation member of ``R``
    and every step shortens the cyclic word."""
    word, factors = replay(verdict)
    if word != verdict.word:
        return False
    prod = AmalgamWord((), word.system)
    for f in factors:
        prod = prod * f
    if prod != verdict.word:
        return False
    for step in verdict.trace:
        if step.relator != R.member(step.cycle, step.rotation):
            return False
        if cyclically_reduce(step.relator)[0] != R.cycles[step.cycle]:
            return False
        if not step.length_after < step.length_before:
            return False
        if not step.length_before - step.length_after >= 2 * step.fragment_letters - step.relator.length:
            return False
    return True


def ball_injectivity(R: SymmetrizedSet, radius: int) -> bool:
    """No nonidentity element of K or L of reduced length ``<= radius`` is
    declared Trivial."""
    _require(R, True)
    system = R.system
    for factor in ("K", "L"):
        for g in ball(system, factor, radius):
            if membership(AmalgamWord(g.syllables, system), R, witness=False).trivial:
                return False
    return True


__all__ = [
    "UncertifiedSet", "Outcome", "Fragment", "RewriteStep", "DehnVerdict", "certify",
    "fragments", "max_fragment", "membership", "replay", "verify_trace", "ball_injectivity",
    "GREENDLINGER", "inverse",
]

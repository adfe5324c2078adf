"""Symmetrized relator sets, pieces and the metric condition C'(λ).

A symmetrized closure is infinite as soon as the factors are (conjugating by
any letter gives a new member), so it is stored through the cyclic words of
each relator and its inverse.  The members are

* the rotations of those cyclic words (length ``n``), and
* their conjugates ``t ρ t^-1`` by a letter ``t`` from the factor of the last
  letter of the rotation ``ρ`` (length ``n + 1``); conjugates by H are the
  other interleavings of the same rotations.

Two members share a semireduced prefix ``b`` exactly when their rotations
share a common run of ``s`` letters (up to H-interleaving).  ``b`` may then
carry one extra letter in front (a common conjugator ``t``) and one extra
letter at the end (merging with the next letters of both).  So the longest
piece has ``s_max + 2`` letters, and ``s_max + 1`` if only rotations are used.
:meth:`PieceReport.verify` rebuilds such a ``b`` together with two members and
checks both factorizations directly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from ._rolling import CycleHash
from .amalgam import (AmalgamWord, Boundary, CyclicWord, cyclically_reduce, junction)
from .factors import FactorSystem
from .words import Syllables, concat, format_word, inverse

SCHEMA = 1


class IdentityRelator(ValueError):
    pass


def _period(tokens: Sequence) -> int:
    n = len(tokens)
    # prefix function gives the smallest period of a primitive root
    pi = [0] * n
    for i in range(1, n):
        k = pi[i - 1]
        while k and tokens[i] != tokens[k]:
            k = pi[k - 1]
        if tokens[i] == tokens[k]:
            k += 1
        pi[i] = k
    p = n - pi[-1] if n else 0
    return p if p and n % p == 0 else n


class SymmetrizedSet:
    """Finite description of the symmetrized closure of ``relators``."""

    def __init__(self, system: FactorSystem, relators: Sequence[AmalgamWord]):
        self.system = system
        self.origin: list[AmalgamWord] = []
        self.cycles: list[CyclicWord] = []
        self.cycle_source: list[tuple[int, int]] = []  # (origin index, ±1)
        seen: set = set()
        for r in relators:
            if r.is_identity():
                raise IdentityRelator("relators must be nonidentity")
            c, _ = cyclically_reduce(r)
            if c in seen:
                continue
            idx = len(self.origin)
            self.origin.append(r)
            for sign, cw in ((1, c), (-1, c.inverse())):
                if cw not in seen:
                    seen.add(cw)
                    self.cycles.append(cw)
                    self.cycle_source.append((idx, sign))
        self._tokens: dict = {}
        self._cores: dict = {}
        self._hashes: list[CycleHash | None] = [None] * len(self.cycles)
        self._token_arrays = [self._encode(c) for c in self.cycles]
        self.periods = [_period(list(t[0])) for t in self._token_arrays]

    # -- token encoding ----------------------------------------------------

    def _encode(self, c: CyclicWord, grow: bool = True) -> tuple[np.ndarray, np.ndarray]:
        full, core = [], []
        fresh = -1
        for tok in c.tokens():
            fid = self._tokens.get(tok)
            cid = self._cores.get(tok[0])
            if fid is None:
                if grow:
                    fid = self._tokens[tok] = len(self._tokens) + 1
                else:
                    fid, fresh = fresh, fresh - 1
            if cid is None:
                if grow:
                    cid = self._cores[tok[0]] = len(self._cores) + 1
                else:
                    cid, fresh = fresh, fresh - 1
            full.append(fid)
            core.append(cid)
        # negative ids never match relator tokens; shift into the positive range
        full = np.array(full, dtype=np.int64)
        core = np.array(core, dtype=np.int64)
        full[full < 0] += 1 << 40
        core[core < 0] += 1 << 40
        return full, core

    def encode_query(self, c: CyclicWord) -> CycleHash:
        full, core = self._encode(c, grow=False)
        return CycleHash(full, core)

    def hash(self, i: int) -> CycleHash:
        h = self._hashes[i]
        if h is None:
            h = self._hashes[i] = CycleHash(*self._token_arrays[i])
        return h

    # -- members -----------------------------------------------------------

    def __len__(self) -> int:
        """Number of distinct rotation members."""
        return sum(self.periods)

    def lengths(self) -> list[int]:
        return [len(c) for c in self.cycles]

    def members(self) -> Iterator[tuple[int, int]]:
        for i, p in enumerate(self.periods):
            for k in range(p):
                yield i, k

    def member(self, i: int, k: int) -> AmalgamWord:
        return self.cycles[i].rotation(k)

    def representatives(self) -> Iterator[AmalgamWord]:
        for i, k in self.members():
            yield self.member(i, k)

    def letter_conjugate(self, i: int, k: int, t: AmalgamWord) -> AmalgamWord:
        """``t ρ t^-1`` for the rotation ``ρ``; weakly cyclically reduced when
        ``t`` is a letter of the factor of ``ρ``'s last letter."""
        return self.member(i, k).conjugate(t)

    def fresh_letter(self, factor: str) -> AmalgamWord:
        """A letter of ``factor`` that cannot cancel against relator letters."""
        gens = [s for s in self.system.alphabet(factor).symbols if s not in self.system.shared]
        big = 1 + max((abs(e) for c in self.cycles for _, e in c.base.syllables), default=1)
        return AmalgamWord(((gens[0], big),), self.system)

    def __eq__(self, other) -> bool:
        return isinstance(other, SymmetrizedSet) and set(self.cycles) == set(other.cycles)

    def __hash__(self):
        return hash(frozenset(self.cycles))

    def __repr__(self):
        return f"SymmetrizedSet({len(self.origin)} relators, {len(self)} rotations)"


def symmetrize(system: FactorSystem, relators: Sequence[AmalgamWord]) -> SymmetrizedSet:
    return SymmetrizedSet(system, relators)


def is_in_closure(R: SymmetrizedSet, w: AmalgamWord) -> bool:
    """Is ``w`` a weakly cyclically reduced conjugate of some ``r^±1``?"""
    from .amalgam import is_weakly_cyclically_reduced

    if not is_weakly_cyclically_reduced(w):
        return False
    c, _ = cyclically_reduce(w)
    if c not in R.cycles:
        return False
    n = len(c)
    return len(w) in (n, n + 1)


# -- pieces ---------------------------------------------------------------------

@dataclass
class PieceWitness:
    common_letters: int
    first: tuple[int, int]
    second: tuple[int, int]
    piece: AmalgamWord
    r: AmalgamWord
    r_prime: AmalgamWord
    conjugator: AmalgamWord | None

    def verify(self) -> bool:
        """Both factorizations ``r = b c`` and ``r' = b c'`` are semireduced."""
        b = self.piece
        c = b.inverse() * self.r
        c2 = b.inverse() * self.r_prime
        return (self.r != self.r_prime
                and b * c == self.r and b * c2 == self.r_prime
                and junction(b, c) is not Boundary.CANCELLED
                and junction(b, c2) is not Boundary.CANCELLED)

    def to_dict(self) -> dict:
        return {
            "common_letters": self.common_letters,
            "first_member": list(self.first),
            "second_member": list(self.second),
            "piece": str(self.piece),
            "piece_length": self.piece.length,
            "conjugator": None if self.conjugator is None else str(self.conjugator),
        }


@dataclass
class PieceReport:
    max_common_letters: int
    max_piece_length: int
    rotation_piece_length: int
    min_relator_length: int
    per_cycle: list[int]
    cycle_lengths: list[int]
    witness: PieceWitness | None

    @property
    def achieved_lambda(self) -> Fraction:
        """Largest ratio piece/relator over cycles (pieces counted with the
        shorter of the two relators involved)."""
        if not self.per_cycle:
            return Fraction(0)
        return max(Fraction(m + 2, n) for m, n in zip(self.per_cycle, self.cycle_lengths))

    @property
    def global_ratio(self) -> Fraction:
        if not self.min_relator_length:
            return Fraction(0)
        return Fraction(self.max_piece_length, self.min_relator_length)

    def to_dict(self) -> dict:
        return {
            "max_piece_length": self.max_piece_length,
            "max_common_letters": self.max_common_letters,
            "rotation_piece_length": self.rotation_piece_length,
            "min_relator_length": self.min_relator_length,
            "achieved_lambda": _frac(self.achieved_lambda),
            "max_piece_over_min_length": _frac(self.global_ratio),
            "witness": None if self.witness is None else self.witness.to_dict(),
        }


def _frac(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


class _Scanner:
    """Feasibility of common ``s``-letter runs, cached per ``s``."""

    def __init__(self, R: SymmetrizedSet):
        self.R = R
        self.lengths = np.array(R.lengths(), dtype=np.int64)
        cyc, rot = [], []
        for i, k in R.members():
            cyc.append(i)
            rot.append(k)
        self.cyc = np.array(cyc, dtype=np.int64)
        self.rot = np.array(rot, dtype=np.int64)
        self._cache: dict[int, dict[int, tuple]] = {}

    def pairs_at(self, s: int) -> dict[int, tuple]:
        """For each cycle with a confirmed common ``s``-run, one witness pair."""
        hit = self._cache.get(s)
        if hit is not None:
            return hit
        R = self.R
        ok = self.lengths[self.cyc] >= s
        cyc, rot = self.cyc[ok], self.rot[ok]
        keys = np.empty(len(cyc), dtype=np.int64)
        for i in np.unique(cyc):
            sel = cyc == i
            keys[sel] = R.hash(int(i)).keys(rot[sel], s)
        order = np.argsort(keys, kind="stable")
        ks = keys[order]
        dup = np.flatnonzero(ks[1:] == ks[:-1])
        found: dict[int, tuple] = {}
        for d in dup:
            a, b = order[d], order[d + 1]
            ia, ka, ib, kb = int(cyc[a]), int(rot[a]), int(cyc[b]), int(rot[b])
            if ia in found and ib in found:
                continue
            if not R.hash(ia).window_equal(ka, R.hash(ib), kb, s):
                continue
            found.setdefault(ia, ((ia, ka), (ib, kb)))
            found.setdefault(ib, ((ib, kb), (ia, ka)))
        self._cache[s] = found
        return found

    def best(self, i: int) -> tuple[int, tuple | None]:
        lo, hi = 0, int(self.lengths[i])
        pair = None
        while lo < hi:
            mid = (lo + hi + 1) // 2
            got = self.pairs_at(mid).get(i)
            if got is not None:
                lo, pair = mid, got
            else:
                hi = mid - 1
        return lo, pair


def pieces(R: SymmetrizedSet) -> PieceReport:
    """Longest pieces of ``R``, computed per cycle by hashed binary search."""
    if len(R) < 2:
        n = min(R.lengths(), default=0)
        return PieceReport(0, 0, 0, n, [0] * len(R.cycles), R.lengths(), None)
    scan = _Scanner(R)
    per_cycle = []
    best_pair, best_s = None, -1
    for i in range(len(R.cycles)):
        s, pair = scan.best(i)
        per_cycle.append(s)
        if s > best_s:
            best_s, best_pair = s, pair
    if best_pair is None:
        best_pair = ((0, 0), next((m for m in R.members() if m != (0, 0))))
    witness = build_witness(R, best_pair[0], best_pair[1], best_s)
    return PieceReport(best_s, best_s + 2, best_s + 1, min(R.lengths()), per_cycle,
                       R.lengths(), witness)


def build_witness(R: SymmetrizedSet, first: tuple[int, int], second: tuple[int, int],
                  s: int) -> PieceWitness:
    """Explicit piece ``t z_1 .. z_s u`` shared by ``t ρ t^-1`` and ``t ρ' t^-1``."""
    rho, rho2 = R.member(*first), R.member(*second)
    f_last, f2_last = rho.factors[-1], rho2.factors[-1]
    n = len(rho)
    conj = None
    if f_last == f2_last and f_last != "H":
        conj = R.fresh_letter(f_last)
        r, r2 = rho.conjugate(conj), rho2.conjugate(conj)
    else:
        r, r2 = rho, rho2
    tokens = R.cycles[first[0]].tokens()
    k = first[1]
    body: list = []
    for j in range(s):
        core, glue = tokens[(k + j) % n]
        body.extend(core)
        if j < s - 1:
            body.extend(glue)
    nxt = rho.factors[s % n] if s < n else rho.factors[0]
    u = R.fresh_letter(nxt if nxt != "H" else "K")
    prefix = conj.syllables if conj is not None else ()
    b = AmalgamWord(concat(prefix, tuple(body), u.syllables), R.system)
    return PieceWitness(s, first, second, b, r, r2, conj)


def pair_common_letters(R: SymmetrizedSet, a: tuple[int, int], b: tuple[int, int]) -> int:
    """Common run of letters at the start of two rotation members."""
    cap = min(R.lengths()[a[0]], R.lengths()[b[0]])
    return R.hash(a[0]).common_prefix(a[1], R.hash(b[0]), b[1], cap)


# -- C'(λ) --------------------------------------------------------------------

@dataclass
class CPrimeResult:
    certified: bool
    lam: Fraction
    report: PieceReport
    violation: dict | None = None

    def to_dict(self) -> dict:
        d = {"schema": SCHEMA, "lambda": _frac(self.lam), "certified": self.certified}
        d.update(self.report.to_dict())
        d["violation"] = self.violation
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def check_c_prime(R: SymmetrizedSet, lam: Fraction | str | float,
                  report: PieceReport | None = None) -> CPrimeResult:
    """Certify C'(λ): every piece of ``r`` is shorter than ``λ|r|`` and
    every ``|r| > 1/λ``."""
    lam = Fraction(lam)
    if lam <= 0:
        raise ValueError("lambda must be positive")
    report = report if report is not None else pieces(R)
    for i, n in enumerate(report.cycle_lengths):
        if not n > 1 / lam:
            return CPrimeResult(False, lam, report,
                                {"kind": "short_relator", "cycle": i, "length": n,
                                 "relator": str(R.cycles[i].base)})
    for i, (m, n) in enumerate(zip(report.per_cycle, report.cycle_lengths)):
        if not m + 2 < lam * n:
            return CPrimeResult(False, lam, report,
                                {"kind": "long_piece", "cycle": i, "piece_length": m + 2,
                                 "relator_length": n, "bound": _frac(lam * n)})
    return CPrimeResult(True, lam, report)


def format_syllables(syl: Syllables) -> str:
    return format_word(syl)


__all__ = [
    "SymmetrizedSet", "symmetrize", "IdentityRelator", "PieceReport", "PieceWitness",
    "pieces", "check_c_prime", "CPrimeResult", "pair_common_letters", "build_witness",
    "is_in_closure", "inverse",
]

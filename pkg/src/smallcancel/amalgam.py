"""Elements of the amalgam ``K *_H L`` and their normal forms.

With H a free factor of both K and L, the amalgam is the free group on all
symbols, so an element is stored as a freely reduced syllable tuple.  Its
normal form is read off by cutting that tuple wherever the factor of the
non-shared syllables changes.  Shared syllables sitting between two letters
are given to the left letter, so every letter after the first begins with a
non-shared syllable.  This fixes one canonical representative among the
H-interleaved normal forms.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .factors import FactorSystem, FactorWord, UnknownSymbol
from .words import (Syllables, concat, cyclic_reduce, format_word, free_reduce, inverse,
                    join_reduced, parse_word)


def letter_spans(system: FactorSystem, syl: Sequence[tuple[str, int]]) -> list[tuple[int, int, str]]:
    """``(start, stop, factor)`` of every canonical letter of ``syl``."""
    owner = system.owner
    spans: list[tuple[int, int, str]] = []
    start = 0
    current = None
    for i, (s, _) in enumerate(syl):
        f = owner(s)
        if f == "H":
            continue
        if current is None:
            current = f
        elif f != current:
            spans.append((start, i, current))
            start, current = i, f
    if syl:
        spans.append((start, len(syl), current or "H"))
    return spans


@dataclass(frozen=True)
class AmalgamWord:
    """An element of ``L* = K *_H L``.  Equality is equality in the group.

    ``syllables`` must be freely reduced; :func:`from_syllables` reduces.
    """

    syllables: Syllables
    system: FactorSystem = field(compare=False, repr=False)

    @cached_property
    def spans(self) -> list[tuple[int, int, str]]:
        return letter_spans(self.system, self.syllables)

    @cached_property
    def letters(self) -> tuple[FactorWord, ...]:
        syl = self.syllables
        return tuple(FactorWord(syl[i:j], "K" if f == "H" else f) for i, j, f in self.spans)

    @cached_property
    def factors(self) -> tuple[str, ...]:
        """Factor of each letter; 'H' only for a lone letter inside H."""
        return tuple(f for _, _, f in self.spans)

    def __len__(self) -> int:
        return len(self.spans)

    @property
    def length(self) -> int:
        return len(self.spans)

    def is_identity(self) -> bool:
        return not self.syllables

    def in_H(self) -> bool:
        return self.system.in_H(self.syllables)

    def __mul__(self, other: AmalgamWord) -> AmalgamWord:
        return AmalgamWord(join_reduced(self.syllables, other.syllables), self.system)

    def inverse(self) -> AmalgamWord:
        return AmalgamWord(inverse(self.syllables), self.system)

    def __invert__(self) -> AmalgamWord:
        return self.inverse()

    def conjugate(self, by: AmalgamWord) -> AmalgamWord:
        """``by * self * by^-1``."""
        return AmalgamWord(join_reduced(by.syllables, self.syllables, inverse(by.syllables)), self.system)

    def __str__(self) -> str:
        if self.syllables and self.factors == ("H",):
            return format_word(self.syllables) + " @H"
        return format_word(self.syllables)

    def letter_strings(self) -> list[str]:
        return [format_word(g.syllables) for g in self.letters]


def identity(system: FactorSystem) -> AmalgamWord:
    return AmalgamWord((), system)


def word(system: FactorSystem, text: str) -> AmalgamWord:
    """Parse ``text`` in the word grammar (a trailing ``@H`` tag is accepted)."""
    text = text.strip()
    if text.endswith("@H"):
        text = text[:-2]
    syl = parse_word(text)
    for s, _ in syl:
        system.owner(s)
    return AmalgamWord(syl, system)


def from_syllables(system: FactorSystem, syl: Iterable[tuple[str, int]]) -> AmalgamWord:
    syl = free_reduce(syl)
    for s, _ in syl:
        system.owner(s)
    return AmalgamWord(syl, system)


def normalize(system: FactorSystem, letters: Sequence[FactorWord]) -> AmalgamWord:
    """Normal form of the product of ``letters``."""
    for g in letters:
        alpha = system.alphabet(g.factor)
        for s, _ in g.syllables:
            if s not in alpha:
                raise UnknownSymbol(f"{s!r} is not a generator of {g.factor}")
    return AmalgamWord(concat(*(g.syllables for g in letters)), system)


def length(w: AmalgamWord) -> int:
    return w.length


def is_normal_form(system: FactorSystem, letters: Sequence[FactorWord]) -> bool:
    if any(not g.syllables for g in letters):
        return False
    if len(letters) >= 2 and any(system.in_H(g) for g in letters):
        return False
    return all(letters[i].factor != letters[i + 1].factor for i in range(len(letters) - 1))


# -- cyclic words -----------------------------------------------------------

def least_rotation(seq: Sequence) -> int:
    """Booth's algorithm: start index of the lexicographically least rotation."""
    n = len(seq)
    if n == 0:
        return 0
    s = list(seq) * 2
    f = [-1] * len(s)
    k = 0
    for j in range(1, len(s)):
        sj = s[j]
        i = f[j - k - 1]
        while i != -1 and sj != s[k + i + 1]:
            if sj < s[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if sj != s[k + i + 1]:
            if sj < s[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k % n


def letter_key(g: FactorWord) -> tuple:
    """Total order on letters used to pick canonical rotations."""
    return (g.factor, g.syllables)


@dataclass(frozen=True)
class CyclicWord:
    """A cyclically reduced word up to rotation.

    ``base`` is the canonical rotation: it starts at a letter, every letter is
    ``core * glue`` with the glue in H, and the letter sequence is the least
    rotation under :func:`letter_key`.
    """

    base: AmalgamWord

    @property
    def system(self) -> FactorSystem:
        return self.base.system

    @property
    def letters(self) -> tuple[FactorWord, ...]:
        return self.base.letters

    def __len__(self) -> int:
        return len(self.base)

    @property
    def length(self) -> int:
        return len(self)

    def __str__(self) -> str:
        return f"({self.base})"

    def rotation(self, k: int) -> AmalgamWord:
        """The rotation starting at letter ``k`` of the base."""
        n = len(self)
        if n == 0:
            return self.base
        k %= n
        cut = self.base.spans[k][0]
        syl = self.base.syllables
        # the base is cyclically reduced, so the rotation needs no reduction
        return AmalgamWord(syl[cut:] + syl[:cut], self.system)

    def inverse(self) -> CyclicWord:
        return cyclically_reduce(self.base.inverse())[0]

    def tokens(self) -> list[tuple[Syllables, Syllables]]:
        """``(core, glue)`` of each letter."""
        out = []
        shared = self.system.shared
        for g in self.letters:
            syl = g.syllables
            j = len(syl)
            while j > 0 and syl[j - 1][0] in shared:
                j -= 1
            out.append((syl[:j], syl[j:]))
        return out


def _rotate_syllables(syl: Syllables, cut: int) -> tuple[Syllables, Syllables]:
    """Return the rotation starting at syllable ``cut`` and the moved prefix."""
    return syl[cut:] + syl[:cut], syl[:cut]


def cyclically_reduce(w: AmalgamWord) -> tuple[CyclicWord, AmalgamWord]:
    """Return ``(c, conj)`` with ``w == conj * c.base * conj^-1``."""
    system = w.system
    core, conj = cyclic_reduce(w.syllables, reduced=True)
    owner = system.owner
    inner = [i for i, (s, _) in enumerate(core) if owner(s) != "H"]
    boundary = None
    for idx, i in enumerate(inner):
        prev = inner[idx - 1]
        if owner(core[prev][0]) != owner(core[i][0]):
            boundary = i
            break
    if boundary is None:
        # at most one letter; its H-part is not conjugated away except by free reduction
        if inner and inner[0] > 0 and len(core) > 1:
            core, moved = _rotate_syllables(core, inner[0])
            conj = concat(conj, moved)
        return CyclicWord(AmalgamWord(core, system)), AmalgamWord(conj, system)
    core, moved = _rotate_syllables(core, boundary)
    conj = concat(conj, moved)
    spans = letter_spans(system, core)
    keys = [(f, core[i:j]) for i, j, f in spans]
    ranks = {k: r for r, k in enumerate(sorted(set(keys)))}
    k = least_rotation([ranks[key] for key in keys])
    if k:
        core, moved = _rotate_syllables(core, spans[k][0])
        conj = concat(conj, moved)
    return CyclicWord(AmalgamWord(core, system)), AmalgamWord(conj, system)


def is_cyclically_reduced(w: AmalgamWord) -> bool:
    f = w.factors
    return len(f) <= 1 or f[0] != f[-1]


def is_weakly_cyclically_reduced(w: AmalgamWord) -> bool:
    g = w.letters
    return len(g) <= 1 or not w.system.in_H(concat(g[-1].syllables, g[0].syllables))


# -- comparing normal forms ------------------------------------------------

def interleave_equal(system: FactorSystem, xs: Sequence[FactorWord] | AmalgamWord,
                     ys: Sequence[FactorWord] | AmalgamWord):
    """Decide whether two normal forms represent the same element.

    Returns ``(equal, hs)``.  When equal, ``hs = [h_1, ..., h_{n-1}]`` are the
    H-elements with ``y_1 = x_1 h_1^-1``, ``y_i = h_{i-1} x_i h_i^-1`` and
    ``y_n = h_{n-1} x_n``; otherwise ``hs`` is None.
    """
    flat = []
    for side in (xs, ys):
        if isinstance(side, AmalgamWord):
            flat.append(side.syllables)
        else:
            flat.append(join_reduced(*(g.syllables for g in side)))
    xs = xs.letters if isinstance(xs, AmalgamWord) else xs
    ys = ys.letters if isinstance(ys, AmalgamWord) else ys
    if not (is_normal_form(system, xs) and is_normal_form(system, ys)):
        raise ValueError("arguments must be normal forms")
    if len(xs) != len(ys) or flat[0] != flat[1]:
        return False, None
    hs: list[FactorWord] = []
    prev: Syllables = ()
    n = len(xs)
    for i in range(n - 1):
        # h_i = y_i^-1 h_{i-1} x_i
        h = join_reduced(inverse(ys[i].syllables), prev, xs[i].syllables)
        if not system.in_H(h):
            return False, None
        hs.append(FactorWord(h, "K"))
        prev = h
    if n and join_reduced(prev, xs[-1].syllables) != ys[-1].syllables:
        return False, None
    return True, hs


# -- products -----------------------------------------------------------------

class Boundary(enum.Enum):
    CLEAN = "clean"
    MERGED = "merged"
    CANCELLED = "cancelled"


def junction(u: AmalgamWord, v: AmalgamWord) -> Boundary:
    """How the last letter of ``u`` meets the first letter of ``v``."""
    if u.is_identity() or v.is_identity():
        return Boundary.CLEAN
    g, h = u.letters[-1], v.letters[0]
    fg, fh = u.factors[-1], v.factors[0]
    if u.system.in_H(concat(g.syllables, h.syllables)):
        return Boundary.CANCELLED
    if fg == fh or "H" in (fg, fh):
        return Boundary.MERGED
    return Boundary.CLEAN


def compose(u: AmalgamWord, v: AmalgamWord) -> tuple[AmalgamWord, Boundary]:
    return u * v, junction(u, v)


def is_semireduced(parts: Sequence[AmalgamWord]) -> bool:
    return all(junction(parts[i], parts[i + 1]) is not Boundary.CANCELLED
               for i in range(len(parts) - 1))


def is_reduced(parts: Sequence[AmalgamWord]) -> bool:
    return all(junction(parts[i], parts[i + 1]) is Boundary.CLEAN
               for i in range(len(parts) - 1))

"""Factor groups K and L as free groups sharing a free factor H.

K is free on ``K.symbols`` and L on ``L.symbols``; the symbols listed in
``shared`` occur in both and generate H.  Because H is a free factor of each
side, the subgroup predicates below reduce to inspecting reduced words:

* ``w`` lies in H iff every syllable uses a shared symbol;
* ``w`` outside H has a unique decomposition ``prefix * core * suffix`` with
  prefix, suffix in H and core starting and ending with a non-shared syllable,
  so ``g in H t H`` iff the two cores coincide;
* a free factor is malnormal, so ``a^-1 H a`` meets H trivially iff ``a``
  is outside H.
"""

from __future__ import annotations

import configparser
import itertools
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .words import Syllables, concat, free_reduce, generator_length, inverse, parse_word

FACTORS = ("K", "L")


class UnknownSymbol(ValueError):
    pass


class InH(ValueError):
    """Raised when an operation needs an element outside H."""


class ConfigError(ValueError):
    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple[str, ...]
    shared: frozenset[str] = frozenset()

    def __post_init__(self):
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError(f"repeated symbol in {self.symbols}")
        missing = self.shared - set(self.symbols)
        if missing:
            raise ValueError(f"shared symbols {sorted(missing)} not in alphabet")

    def __contains__(self, sym: str) -> bool:
        return sym in self.symbols


@dataclass(frozen=True)
class FactorWord:
    """A freely reduced word inside one factor."""

    syllables: Syllables
    factor: str

    def __len__(self):
        return len(self.syllables)

    def __str__(self):
        from .words import format_word

        return format_word(self.syllables)

    def inverse(self) -> FactorWord:
        return FactorWord(inverse(self.syllables), self.factor)

    def __mul__(self, other: FactorWord) -> FactorWord:
        if other.factor != self.factor:
            raise ValueError("cannot multiply letters from different factors")
        return FactorWord(concat(self.syllables, other.syllables), self.factor)


@dataclass(frozen=True)
class FactorSystem:
    """The triple (K, L, H) together with the distinguished letters.

    ``x``, ``y``, ``h`` live in K and ``a`` in L.  Use :meth:`validate` (or
    build through :func:`make_system`) to check the hypotheses the relator
    construction relies on.
    """

    K: Alphabet
    L: Alphabet
    x: FactorWord
    y: FactorWord
    a: FactorWord
    h: FactorWord
    name: str = "custom"
    _owner: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.K.shared != self.L.shared:
            raise ValueError("K and L must declare the same shared symbols")
        clash = (set(self.K.symbols) & set(self.L.symbols)) - self.K.shared
        if clash:
            raise ValueError(f"non-shared symbols in both factors: {sorted(clash)}")
        owner = {s: "K" for s in self.K.symbols}
        owner.update({s: "L" for s in self.L.symbols})
        owner.update({s: "H" for s in self.K.shared})
        object.__setattr__(self, "_owner", owner)

    @property
    def shared(self) -> frozenset[str]:
        return self.K.shared

    @property
    def symbols(self) -> tuple[str, ...]:
        """All generators of the amalgam: K's symbols, then L's non-shared ones."""
        return self.K.symbols + tuple(s for s in self.L.symbols if s not in self.shared)

    def owner(self, sym: str) -> str:
        """'K', 'L' or 'H' (shared)."""
        try:
            return self._owner[sym]
        except KeyError:
            raise UnknownSymbol(f"unknown symbol {sym!r}") from None

    def alphabet(self, factor: str) -> Alphabet:
        return self.K if factor == "K" else self.L

    # -- factor-level operations -------------------------------------------

    def reduce(self, word: Iterable[tuple[str, int]], factor: str) -> FactorWord:
        word = list(word)
        alpha = self.alphabet(factor)
        for sym, _ in word:
            if sym not in alpha:
                raise UnknownSymbol(f"{sym!r} is not a generator of {factor}")
        return FactorWord(free_reduce(word), factor)

    def letter(self, text: str, factor: str | None = None) -> FactorWord:
        """Parse a factor word; the factor is inferred when not given."""
        syl = parse_word(text)
        if factor is None:
            owners = {self.owner(s) for s, _ in syl} - {"H"}
            if len(owners) > 1:
                raise ValueError(f"{text!r} mixes K and L symbols")
            factor = owners.pop() if owners else "K"
        return self.reduce(syl, factor)

    def in_H(self, w: FactorWord | Syllables) -> bool:
        syl = w.syllables if isinstance(w, FactorWord) else w
        return all(s in self.shared for s, _ in syl)

    def h_core(self, w: FactorWord) -> tuple[FactorWord, FactorWord, FactorWord]:
        syl = w.syllables
        inner = [i for i, (s, _) in enumerate(syl) if s not in self.shared]
        if not inner:
            raise InH(f"{w} lies in H")
        i, j = inner[0], inner[-1]
        f = w.factor
        return FactorWord(syl[:i], f), FactorWord(syl[i:j + 1], f), FactorWord(syl[j + 1:], f)

    def double_coset_member(self, g: FactorWord, t: FactorWord) -> bool:
        """Is ``g`` in ``H t H``?"""
        if g.factor != t.factor:
            raise ValueError("g and t must lie in the same factor")
        return self.h_core(g)[1] == self.h_core(t)[1]

    def good_fellows(self, u: FactorWord, v: FactorWord) -> bool:
        if u.factor != v.factor or self.in_H(u) or self.in_H(v):
            return False
        return not (self.double_coset_member(u, v) or self.double_coset_member(u, v.inverse()))

    def conjugate_intersection_trivial(self, a: FactorWord) -> bool:
        """``a^-1 H a  ∩  H == {1}``.

        H is a free factor, hence malnormal: the intersection is trivial
        exactly when ``a`` is outside H.  :func:`conjugate_intersection_ball`
        gives the enumerated cross-check.
        """
        return not self.in_H(a)

    # -- validation ----------------------------------------------------------

    def hypothesis_failures(self) -> list[str]:
        """Names of violated relator hypotheses; empty when all hold."""
        failed = []
        if self.x.factor != "K" or self.y.factor != "K" or self.h.factor != "K":
            failed.append("x,y,h in K")
        if self.a.factor != "L":
            failed.append("a in L")
        if self.in_H(self.x):
            failed.append("x notin H")
        if self.in_H(self.y):
            failed.append("y notin H")
        if self.in_H(self.h):
            failed.append("h notin H")
        if self.in_H(self.a):
            failed.append("a notin H")
        if "x notin H" not in failed and "y notin H" not in failed and not self.good_fellows(self.x, self.y):
            failed.append("good_fellows(x,y)")
        if not self.conjugate_intersection_trivial(self.a):
            failed.append("a^-1 H a ∩ H = 1")
        return failed

    def validate(self) -> FactorSystem:
        failed = self.hypothesis_failures()
        if failed:
            raise ConfigError(failed[0], "hypothesis fails")
        return self

    def with_letters(self, **letters: FactorWord) -> FactorSystem:
        kw = dict(K=self.K, L=self.L, x=self.x, y=self.y, a=self.a, h=self.h, name=self.name)
        kw.update(letters)
        return FactorSystem(**kw)

    def describe(self) -> dict:
        from .words import format_word

        return {
            "name": self.name,
            "K.generators": " ".join(self.K.symbols),
            "L.generators": " ".join(self.L.symbols),
            "shared": " ".join(s for s in self.K.symbols if s in self.shared),
            "x": format_word(self.x.syllables),
            "y": format_word(self.y.syllables),
            "a": format_word(self.a.syllables),
            "h": format_word(self.h.syllables),
        }


def make_system(k_gens: Sequence[str], l_gens: Sequence[str], shared: Sequence[str],
                x: str, y: str, a: str, h: str, name: str = "custom") -> FactorSystem:
    sh = frozenset(shared)
    K = Alphabet(tuple(k_gens), sh)
    L = Alphabet(tuple(l_gens), sh)
    stub = FactorWord((), "K")
    base = FactorSystem(K, L, stub, stub, FactorWord((), "L"), stub, name)

    def letter(key: str, text: str, factor: str) -> FactorWord:
        try:
            return base.reduce(parse_word(text), factor)
        except ValueError as exc:
            raise ConfigError(key, str(exc)) from None

    return base.with_letters(x=letter("x", x, "K"), y=letter("y", y, "K"),
                             a=letter("a", a, "L"), h=letter("h", h, "K"))


PRESETS = {
    # H = <s>: exercises H-interleaving
    "amalgam-h1": dict(k_gens="s x y h".split(), l_gens="s a".split(), shared=["s"],
                       x="x", y="y", a="a", h="h"),
    # H trivial: L* is the plain free product F(x, y, h) * F(a)
    "amalgam-h0": dict(k_gens="x y h".split(), l_gens=["a"], shared=[],
                       x="x", y="y", a="a", h="h"),
}


def preset(name: str) -> FactorSystem:
    try:
        spec = PRESETS[name]
    except KeyError:
        raise ConfigError("preset", f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    return make_system(name=name, **spec)


_CONFIG_KEYS = ("K.generators", "L.generators", "shared", "x", "y", "a", "h")


def load_system(path: str | Path, validate: bool = True) -> FactorSystem:
    """Read a flat ``key = value`` file (``#`` comments allowed)."""
    text = Path(path).read_text()
    return parse_system_config(text, name=Path(path).stem, validate=validate)


def parse_system_config(text: str, name: str = "custom", validate: bool = True) -> FactorSystem:
    cp = configparser.ConfigParser(interpolation=None, comment_prefixes=("#", ";"))
    cp.optionxform = str
    try:
        cp.read_string("[system]\n" + text)
    except configparser.Error as exc:
        raise ConfigError("config", str(exc).splitlines()[0]) from None
    sec = cp["system"]
    for key in sec:
        if key not in _CONFIG_KEYS:
            raise ConfigError(key, "unknown key")
    for key in _CONFIG_KEYS:
        if key != "shared" and key not in sec:
            raise ConfigError(key, "missing")
    try:
        system = make_system(sec["K.generators"].split(), sec["L.generators"].split(),
                             sec.get("shared", "").split(), sec["x"], sec["y"], sec["a"],
                             sec["h"], name=name)
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError("generators", str(exc)) from None
    if validate:
        system.validate()
    return system


# -- enumeration helpers used by oracles and ball checks ---------------------

def reduced_words(symbols: Sequence[str], max_len: int, min_len: int = 0) -> Iterator[Syllables]:
    """Freely reduced words with generator length in ``[min_len, max_len]``,
    shortlex in the order ``s1, s1^-1, s2, s2^-1, ...``."""
    letters = [(s, e) for s in symbols for e in (1, -1)]
    for n in range(min_len, max_len + 1):
        for combo in itertools.product(letters, repeat=n):
            if any(combo[i][0] == combo[i + 1][0] and combo[i][1] != combo[i + 1][1]
                   for i in range(n - 1)):
                continue
            yield free_reduce(combo)


def ball(system: FactorSystem, factor: str, radius: int, nonidentity: bool = True) -> Iterator[FactorWord]:
    for w in reduced_words(system.alphabet(factor).symbols, radius, 1 if nonidentity else 0):
        yield FactorWord(w, factor)


def conjugate_intersection_ball(system: FactorSystem, a: FactorWord, radius: int) -> bool:
    """Enumerated check: no nontrivial ``h`` in H with ``|h| <= radius`` has
    ``a^-1 h a`` in H."""
    shared = [s for s in system.L.symbols if s in system.shared]
    for h in reduced_words(shared, radius, 1):
        if system.in_H(concat(inverse(a.syllables), h, a.syllables)):
            return False
    return True


__all__ = [
    "Alphabet", "FactorWord", "FactorSystem", "UnknownSymbol", "InH", "ConfigError",
    "make_system", "preset", "PRESETS", "load_system", "parse_system_config",
    "reduced_words", "ball", "conjugate_intersection_ball", "generator_length",
]

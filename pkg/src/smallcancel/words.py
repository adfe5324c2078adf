"""Syllable sequences and the textual word grammar.

A word is a tuple of ``(symbol, exponent)`` syllables.  The grammar accepts
whitespace separated atoms ``sym`` or ``sym^k`` and parenthesised groups
``( ... )^k``::

    >>> parse_word("h a y a x a (y a)^2")
    (('h', 1), ('a', 1), ('y', 1), ('a', 1), ('x', 1), ('a', 1), ('y', 1), ('a', 1), ('y', 1), ('a', 1))
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence

Syllable = tuple[str, int]
Syllables = tuple[Syllable, ...]

_TOKEN = re.compile(r"\s*(?:(?P<sym>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[()^])|(?P<int>[+-]?\d+))")


class WordSyntaxError(ValueError):
    pass


def _tokenize(text: str) -> list[tuple[str, str]]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise WordSyntaxError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        kind = m.lastgroup
        out.append((kind, m.group(kind)))
        pos = m.end()
    return out


def parse_word(text: str) -> Syllables:
    """Parse ``text`` into freely reduced syllables.

    ``1`` and the empty string denote the identity.
    """
    if text.strip() in ("", "1"):
        return ()
    tokens = _tokenize(text)
    pos = 0

    def exponent() -> int:
        nonlocal pos
        if pos < len(tokens) and tokens[pos] == ("op", "^"):
            if pos + 1 >= len(tokens) or tokens[pos + 1][0] != "int":
                raise WordSyntaxError("'^' must be followed by an integer")
            k = int(tokens[pos + 1][1])
            pos += 2
            return k
        return 1

    def sequence(depth: int) -> list[Syllable]:
        nonlocal pos
        out: list[Syllable] = []
        while pos < len(tokens):
            kind, val = tokens[pos]
            if kind == "sym":
                pos += 1
                out.append((val, exponent()))
            elif val == "(":
                pos += 1
                inner = sequence(depth + 1)
                if pos >= len(tokens) or tokens[pos] != ("op", ")"):
                    raise WordSyntaxError("unbalanced '('")
                pos += 1
                out.extend(power(inner, exponent()))
            elif val == ")":
                if depth == 0:
                    raise WordSyntaxError("unbalanced ')'")
                return out
            else:
                raise WordSyntaxError(f"unexpected token {val!r}")
        return out

    body = sequence(0)
    if pos != len(tokens):
        raise WordSyntaxError("trailing input")
    return free_reduce(body)


def format_word(word: Sequence[Syllable]) -> str:
    if not word:
        return "1"
    return " ".join(s if k == 1 else f"{s}^{k}" for s, k in word)


def free_reduce(word: Iterable[Syllable]) -> Syllables:
    """Merge equal neighbours and drop zero exponents, stack style."""
    out: list[Syllable] = []
    for sym, k in word:
        if k == 0:
            continue
        if out and out[-1][0] == sym:
            k += out[-1][1]
            out.pop()
            if k == 0:
                continue
        out.append((sym, k))
    return tuple(out)


def concat(*words: Sequence[Syllable]) -> Syllables:
    return free_reduce(s for w in words for s in w)


def join_reduced(*words: Sequence[Syllable]) -> Syllables:
    """``concat`` for freely reduced inputs: only the junctions can cancel."""
    out: list[Syllable] = []
    for w in words:
        i, n = 0, len(w)
        while out and i < n and out[-1][0] == w[i][0]:
            sym, k = w[i]
            k += out.pop()[1]
            i += 1
            if k:
                out.append((sym, k))
                break
        out.extend(w[i:] if i else w)
    return tuple(out)


def inverse(word: Sequence[Syllable]) -> Syllables:
    return tuple((s, -k) for s, k in reversed(word))


def power(word: Sequence[Syllable], n: int) -> Syllables:
    if n < 0:
        word, n = inverse(word), -n
    return free_reduce(list(word) * n)


def generator_length(word: Sequence[Syllable]) -> int:
    """Length in the free group, counting each generator occurrence."""
    return sum(abs(k) for _, k in word)


def cyclic_reduce(word: Sequence[Syllable], reduced: bool = False) -> tuple[Syllables, Syllables]:
    """Return ``(core, conj)`` with ``word == conj core conj^-1`` and ``core``
    cyclically reduced in the free group.  ``reduced`` skips free reduction
    of an input already known to be reduced."""
    w = tuple(word) if reduced else free_reduce(word)
    left: list[Syllable] = []
    i, j = 0, len(w) - 1
    while j > i and w[i][0] == w[j][0]:
        sym, k0 = w[i]
        k1 = w[j][1]
        if k0 + k1 == 0:
            left.append(w[i])
            i, j = i + 1, j - 1
        else:
            # s^k0 ... s^k1 = s^k0 (... s^(k1+k0)) s^-k0
            left.append((sym, k0))
            return w[i + 1:j] + ((sym, k0 + k1),), free_reduce(left)
    return w[i:j + 1], free_reduce(left)

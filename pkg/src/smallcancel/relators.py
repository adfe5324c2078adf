"""The relator words ``r_0`` and ``r_n`` built from a factor system's letters."""

from __future__ import annotations

from .amalgam import AmalgamWord
from .factors import FactorSystem, FactorWord
from .words import concat, power

FULL_CAP = 80


class CapTooSmall(ValueError):
    pass


def _block(system: FactorSystem, j: int) -> tuple:
    """``x a (y a)^j``"""
    ya = concat(system.y.syllables, system.a.syllables)
    return concat(system.x.syllables, system.a.syllables, power(ya, j))


def build_r0(system: FactorSystem, cap: int = FULL_CAP, h: FactorWord | None = None) -> AmalgamWord:
    """``h a (y a) x a (y a)^2 ... x a (y a)^cap``"""
    if cap < 2:
        raise CapTooSmall(f"cap must be at least 2, got {cap}")
    h = system.h if h is None else h
    ya = concat(system.y.syllables, system.a.syllables)
    parts = [h.syllables, system.a.syllables, ya]
    parts += [_block(system, k) for k in range(2, cap + 1)]
    return AmalgamWord(concat(*parts), system)


def build_rn(system: FactorSystem, n: int, cap: int = FULL_CAP) -> AmalgamWord:
    """Blocks ``x a (y a)^j`` for ``j = cap(n-1)+1 .. cap n``."""
    if cap < 2:
        raise CapTooSmall(f"cap must be at least 2, got {cap}")
    if n < 1:
        raise ValueError("index must be at least 1; use build_r0 for index 0")
    return AmalgamWord(concat(*(_block(system, j) for j in range(cap * (n - 1) + 1, cap * n + 1))), system)


def r0_length(cap: int) -> int:
    return 4 + sum(2 + 2 * k for k in range(2, cap + 1))


def rn_length(n: int, cap: int) -> int:
    return 2 * cap + 2 * sum(range(cap * (n - 1) + 1, cap * n + 1))

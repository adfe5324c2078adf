"""Vectorised polynomial hashing of letter windows on cyclic words.

A window of ``s`` letters starting at ``p`` is keyed by the full tokens of
its first ``s - 1`` letters plus the core of the last one, which is exactly
the condition for two fragments to agree up to H-interleaving.  Keys are
pairs of residues modulo two primes packed into one int64; callers confirm
hits exactly.
"""

from __future__ import annotations

import numpy as np

_MODS = (2147483647, 2147483629)
_BASES = (1000003, 911382323)
_TAIL = (7919, 104729)

_pow_cache: dict[tuple[int, bool], np.ndarray] = {}


def _powers(i: int, n: int, inverse: bool = False) -> np.ndarray:
    key = (i, inverse)
    cached = _pow_cache.get(key)
    if cached is not None and len(cached) >= n:
        return cached
    P = _MODS[i]
    b = pow(_BASES[i], -1, P) if inverse else _BASES[i]
    size = 1
    while size < n:
        size *= 2
    out = np.empty(size, dtype=np.int64)
    out[0] = 1
    filled = 1
    step = b % P
    while filled < size:
        out[filled:2 * filled] = out[:filled] * step % P
        filled *= 2
        step = step * step % P
    _pow_cache[key] = out
    return out


class CycleHash:
    """Hash tables for all letter windows of one cyclic word of ``n`` letters."""

    def __init__(self, full: np.ndarray, core: np.ndarray):
        self.n = n = len(full)
        self.full = np.concatenate([full, full]).astype(np.int64)
        self.core = np.concatenate([core, core]).astype(np.int64)
        self._prefix = []
        for i, P in enumerate(_MODS):
            terms = self.full % P * _powers(i, 2 * n)[: 2 * n] % P
            pref = np.zeros(2 * n + 1, dtype=np.int64)
            np.cumsum(terms, out=pref[1:])
            self._prefix.append(pref % P)

    def keys(self, starts: np.ndarray, s: int) -> np.ndarray:
        """Keys of the ``s``-letter windows at ``starts`` (``1 <= s <= n``)."""
        starts = np.asarray(starts, dtype=np.int64)
        out = np.zeros(len(starts), dtype=np.int64)
        for i, P in enumerate(_MODS):
            pref = self._prefix[i]
            inv = _powers(i, 2 * self.n, inverse=True)
            body = (pref[starts + s - 1] - pref[starts]) % P * inv[starts] % P
            h = (body * _TAIL[i] + self.core[starts + s - 1] + (s << 20)) % P
            out = out * P + h if i else h
        return out

    def window_equal(self, p: int, other: CycleHash, q: int, s: int) -> bool:
        if s == 0:
            return True
        return (np.array_equal(self.full[p:p + s - 1], other.full[q:q + s - 1])
                and self.core[p + s - 1] == other.core[q + s - 1])

    def common_prefix(self, p: int, other: CycleHash, q: int, cap: int) -> int:
        """Longest ``s <= cap`` with equal windows at ``p`` and ``q``."""
        lo, hi = 0, cap
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self.keys(np.array([p]), mid)[0] == other.keys(np.array([q]), mid)[0]:
                lo = mid
            else:
                hi = mid - 1
        # hashes only guide the search; certify the answer
        while lo and not self.window_equal(p, other, q, lo):
            lo -= 1
        return lo

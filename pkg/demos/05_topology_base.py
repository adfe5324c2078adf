"""A finite piece of the neighbourhood base at the identity.

Nonidentity elements g_1, g_2, ... are listed in shortlex order.  For each
one a relator r_k(n) more than twice as long is chosen; then g_n survives
modulo the later relators, and r_k(n) itself is not killed by r0 together
with the relators after it.  Cap 8 runs instantly but is not certified;
cap 80 takes under a minute.
"""
import sys
import time

from smallcancel import preset
from smallcancel.factors import FactorWord
from smallcancel.shelah import assemble_step, build_topology_base
from smallcancel.words import parse_word

cap = int(sys.argv[1]) if len(sys.argv) > 1 else 8
system = preset("amalgam-h1")
step = assemble_step(system, FactorWord(parse_word("x h^-1"), "K"), cap=cap)

t = time.perf_counter()
tb = build_topology_base(step, 5, require_certificate=cap >= 80, workers=2)
print(f"cap {cap}, {time.perf_counter() - t:.1f}s")
for g, k in zip(tb.elements, tb.ks):
    print(f"  g = {str(g):>8}  k = {k}  |r_k| = {tb.relator_lengths[k]}")
for c in tb.descent:
    print(f"  descent n = {c.n}: r_{c.k} is {c.verdict.outcome.value} (ok: {c.ok})")
print("families certified:", tb.ok())

"""Deciding membership in the normal closure of r0.

Once the relator set is certified, a nontrivial element of the closure must
contain more than half of some relator.  Dehn's algorithm keeps replacing
such a fragment by the shorter remainder; it ends either at the identity or
at a word with no long fragment.
"""

from smallcancel import build_r0, preset, symmetrize
from smallcancel.amalgam import word
from smallcancel.dehn import ball_injectivity, membership, replay, verify_trace

system = preset("amalgam-h1")
r0 = build_r0(system, 80)
R = symmetrize(system, [r0])

u = word(system, "y a^-1 s")
v = word(system, "h a x")
w = r0.conjugate(u) * r0.inverse().conjugate(v)
verdict = membership(w, R)
print(f"product of two conjugates, length {w.length}: {verdict.outcome.value}, "
      f"{len(verdict.trace)} rewrites, trace checks: {verify_trace(verdict, R)}")
rebuilt, factors = replay(verdict)
print("replayed product equals the input:", rebuilt == w)

for text in ("x", "x a y a", "a x^2 a^-1 y"):
    v = membership(word(system, text), R)
    print(f"{text:>14}: {v.outcome.value}, largest fragment {v.witness}")

print("no word of length <= 4 is killed:", ball_injectivity(R, 4))

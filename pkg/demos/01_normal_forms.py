"""Normal forms in K *_H L.

Words are written over all generators; a normal form groups them into
alternating letters from K and L, none of them in H unless the word is a
single letter.  Different-looking normal forms can name the same element
when H-elements are shuffled across letter boundaries.
"""
from smallcancel import preset
from smallcancel.amalgam import cyclically_reduce, interleave_equal, word

system = preset("amalgam-h1")
print(system.describe())

w = word(system, "x a a^-1 y")
print(f"x a a^-1 y  ->  {w}   (length {w.length})")

w = word(system, "x s a s^-1 y s^2")
print(f"x s a s^-1 y s^2  ->  letters {w.letter_strings()}  (length {w.length})")

# the same element with H pushed across each boundary
L = system.letter
ys = [L("x s", "K"), L("s^-1 a s", "L"), L("s^-1 y", "K")]
ok, hs = interleave_equal(system, word(system, "x a y"), ys)
print("x | a | y  vs  x s | s^-1 a s | s^-1 y :", ok, "with h =", [str(h) for h in hs])

c, conj = cyclically_reduce(word(system, "x a y a^-1 x^-1"))
print(f"cyclic core {c.base} after conjugating by {conj}")

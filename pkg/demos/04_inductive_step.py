"""One step of the inductive construction.

From an element h_n of K the step forms h, adds the relator r0 built from
x, y, a and h, and checks on concrete balls that K embeds, that K meets H
correctly and that K stays malnormal in the quotient.
"""
from smallcancel import preset
from smallcancel.factors import FactorWord
from smallcancel.shelah import HypothesisFailed, assemble_step, verify_conditions
from smallcancel.words import parse_word

system = preset("amalgam-h1")

for text in ("x h^-1", "s x^-1", "x"):
    try:
        step = assemble_step(system, FactorWord(parse_word(text), "K"))
        print(f"h_n = {text:>7}: h = {step.h}, |r0| = {step.relator.length}")
    except HypothesisFailed as exc:
        print(f"h_n = {text:>7}: rejected ({exc.name})")

step = assemble_step(system, FactorWord(parse_word("x h^-1"), "K"))
rep = verify_conditions(step, 1)
for key in ("embedding", "intersection", "malnormality"):
    print(f"{key:>13}: {rep[key]['checked']} checks, ok = {rep[key]['ok']}")
print(f"relator length {rep['relator_length']} below {rep['power_bound']}: "
      f"{rep['relator_below_power_bound']}")

"""The relator r0 and its small cancellation certificate.

r0 is a product of blocks x a (y a)^j.  Two different rotations of r0 can
only agree on a short stretch, and that stretch is tiny compared with the
whole relator.  The checker finds the longest such piece and compares it
with lambda times the relator length.
"""
import time

from smallcancel import build_r0, preset, symmetrize
from smallcancel.cancellation import check_c_prime, pieces

system = preset("amalgam-h1")

for cap in (4, 8):
    rep = pieces(symmetrize(system, [build_r0(system, cap)]))
    print(f"cap {cap:>2}: |r0| = {rep.min_relator_length:>4}, max piece {rep.max_piece_length:>3}, "
          f"lambda achieved {rep.achieved_lambda}")

t = time.perf_counter()
r0 = build_r0(system, 80)
R = symmetrize(system, [r0])
res = check_c_prime(R, "1/10")
print(f"cap 80: |r0| = {r0.length}, max piece {res.report.max_piece_length} (bound 601), "
      f"certified C'(1/10): {res.certified}  [{time.perf_counter() - t:.1f}s]")
w = res.report.witness
print(f"longest piece shared by members {w.first} and {w.second}; re-verified: {w.verify()}")

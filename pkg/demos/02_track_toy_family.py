"""Certified tracking of x1^2 - (1 + m t) x0^2 from t = 0 to t = 1.

The start zero is (1, 1); the exact end zero is (1, sqrt(1 + m)), which is
irrational, so the tracker returns a Gaussian-integer approximate zero.
"""

import math
import sys
import time
from fractions import Fraction

from certitrack.diagnostics import ToyFamily, bit_stats, newton_contraction_check
from certitrack.tracker import TrackerConfig, track_segment

m = Fraction(sys.argv[1]) if len(sys.argv) > 1 else Fraction(10)
fam = ToyFamily(m)

start = time.perf_counter()
result = track_segment(fam.f, fam.g, fam.z0, TrackerConfig(trace_level="full"))
elapsed = time.perf_counter() - start

print(f"m = {m}: {result.status.value} in {result.steps} steps ({elapsed:.2f} s)")
x0, x1 = (complex(c) for c in result.z_star)
print("z* =", [str(c) for c in result.z_star])
print(f"z*[1]/z*[0] = {(x1 / x0).real:.10f}   sqrt(1+m) = {math.sqrt(1 + m):.10f}")

# a few steps of the trace: the step size shrinks as the path gets longer in the condition metric
for r in result.trace[:: max(1, result.steps // 6)]:
    print(f"  step {r.i:4d}: s = {float(r.s):.6f}  t = {r.t}  a = {float(r.a):.4f}  z bits = {r.z_bits}")

stats = bit_stats(result.trace)
print(f"largest coordinate: {stats.max_z_bits} bits, deepest bisection: {stats.max_lu_depth}")

check = newton_contraction_check(fam.f, result.z_star)
print("Newton contraction:", ["%.3e" % d for d in check.displacements], "->", "pass" if check.passed else "fail")

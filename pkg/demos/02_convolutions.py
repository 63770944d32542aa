"""Two routes to sigma * sigma * sigma on the parabola over F_7.

The counting route is exact; the Fourier route goes through the extension
operator.  Both are compared with the closed form.
"""

import numpy as np

from ffext import SurfaceSpec, make_field
from ffext.formulas import predicted_conv
from ffext.geometry import all_points, critical_set
from ffext.transform import convolve_counting, convolve_fourier

F = make_field(7)
s = SurfaceSpec("P1", F)
exact = convolve_counting(s, 3)
approx = convolve_fourier(s, 3).values.real
closed = predicted_conv(s, 3)

print("distinct values:", sorted(exact.distinct_values))
print("max |count - fourier| =", np.max(np.abs(exact.as_float() - approx)))
crit = critical_set(s, 3)
bad = 0
for pt in all_points(F, 2):
    key = tuple(int(c) for c in pt)
    bad += closed(key) != exact.value(key)
print(f"closed form mismatches: {bad};  |critical set| = {len(crit)}")
for key in [(0, 0), (1, 5), (2, 3)]:
    tag = "critical" if key in crit else "generic"
    print(f"  {key}: {exact.value(key)}  ({tag})")

# the 2-fold cone convolution has three values, with the origin carrying the most mass
cone = SurfaceSpec("Gamma3Full", make_field(3))
print("Gamma3Full q=3, k=2:", sorted(convolve_counting(cone, 2).distinct_values))

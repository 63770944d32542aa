"""Constant functions attain the sharp constants; random functions fall short."""

from ffext import SurfaceSpec, make_field
from ffext.formulas import sharp_constant, sharp_constant_power
from ffext.sharpness import random_ratio_suite, ratio
from ffext.transform import SurfaceFunction

cases = [("P2", 3, 1, 4), ("P2", 5, 1, 4), ("P2", 3, 2, 4), ("H2", 7, 1, 4),
         ("P1", 7, 1, 6), ("P1", 11, 1, 6), ("Gamma3", 3, 1, 4), ("Gamma3", 7, 1, 4)]

print(f"{'surface':8} {'q':>3} {'L^e':>4} {'C^e':>14} {'C':>12} {'ratio(1)':>12} {'best random':>12}")
for kind, p, n, e in cases:
    s = SurfaceSpec(kind, make_field(p, n))
    C = sharp_constant(s, e)
    r1 = ratio(SurfaceFunction.constant(s), e).value
    best = random_ratio_suite(s, e, trials=300, seed=0)
    print(f"{kind:8} {s.q:3d} {e:4d} {str(sharp_constant_power(s, e)):>14} {C:12.9f} {r1:12.9f} {best:12.9f}")

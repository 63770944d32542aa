"""On the full cones the constant function is not a critical point.

Prints the exact derivative of eps -> ratio(1 + eps delta_0)^4 at 0 next to a
finite-difference estimate, then lets gradient ascent walk away from f = 1.
"""

from ffext import SurfaceSpec, make_field
from ffext.sharpness import SearchConfig, first_variation_check, local_search, ratio
from ffext.transform import SurfaceFunction

for cone, primes in [("upsilon_full", (3, 5, 7, 11)), ("gamma_full", (3, 5, 7, 11))]:
    for p in primes:
        closed, numeric = first_variation_check(p, cone)
        print(f"{cone:12} p={p:2d}: exact {str(closed):>24} = {float(closed):+.3e}, numeric {numeric:+.3e}")

for kind in ("Gamma3Full", "Upsilon3Full"):
    s = SurfaceSpec(kind, make_field(3))
    start = SurfaceFunction.constant(s)
    _, rep = local_search(s, 4, SearchConfig(mode="full_complex", steps=300), initial=start)
    print(f"{kind} q=3: ratio(1) = {ratio(start, 4).value:.6f}, after ascent {rep.value:.6f}")

"""The maximizer family on P2 (q = 1 mod 4) and H2, and why it is rigid.

Every member attains the constant; rotating the phase at a single point
always loses something.
"""

import numpy as np

from ffext import SurfaceSpec, make_field
from ffext.formulas import MaximizerParams, maximizer_family, sharp_constant
from ffext.sharpness import perturb_phase, ratio

rng = np.random.default_rng(1)
for kind, p, n in [("P2", 13, 1), ("P2", 3, 2), ("H2", 5, 1)]:
    s = SurfaceSpec(kind, make_field(p, n))
    C = sharp_constant(s, 4)
    gaps = []
    for _ in range(20):
        lam = complex(*rng.standard_normal(2))
        a, b, c = (int(v) for v in rng.integers(0, s.q, 3))
        gaps.append(abs(C - ratio(maximizer_family(s, MaximizerParams(lam, a, b, c)), 4).value))
    f0 = maximizer_family(s, MaximizerParams(1, 1, 2, 3))
    site = tuple(int(v) for v in s.points[5])
    losses = [C - ratio(perturb_phase(f0, site, d), 4).value for d in np.linspace(0.5, 6.0, 6)]
    print(f"{kind} q={s.q}: worst family gap {max(gaps):.1e}; "
          f"losses after one-site rotation: {', '.join(f'{x:.2e}' for x in losses)}")

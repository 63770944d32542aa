"""Fields, traces and quadratic Gauss sums.

Builds F_9 and F_27, prints the chosen moduli, then checks a few Gauss sums
against their closed forms.
"""

from ffext import make_field, trace
from ffext.characters import gauss_sum, gauss_sum_closed, general_gauss_sum, general_gauss_sum_closed

for p, n in [(3, 2), (5, 2), (3, 3)]:
    F = make_field(p, n)
    w = [a for a in F.elements() if F.square(a) == F.neg(1)]
    print(f"F_{F.q}: modulus {F.modulus_str()}, primitive element {F.primitive_element}, "
          f"square roots of -1: {w or 'none'}")

F = make_field(3, 2)
print("traces over F_9:", [trace(a, F) for a in F.elements()])

for p in (5, 7, 13):
    for a in (1, 2):
        direct, closed = gauss_sum(a, p), gauss_sum_closed(a, p)
        print(f"p={p:2d} a={a}: sum e(a x^2) = {direct:.6f}   closed form {closed:.6f}")
    print(f"        general (a,b)=(3,1): {general_gauss_sum(3, 1, p):.6f} vs {general_gauss_sum_closed(3, 1, p):.6f}")

"""h-refinement: the error order follows the top degree of the space.

Reconstructing sin from value/slope samples at step h decays like
h^(n_N + 1): order 4 for the cubic Hermite space, order 6 for the
quintic pair, at identical per-sample cost for the latter thanks to the
shared inverse-filter structure.
"""

import math
from fractions import Fraction

from multispline import named_basis, parse_functionals
from multispline.sampling import log2_slope, refinement_errors

derivs = {0: math.sin, 1: math.cos}
steps = [Fraction(1, 2), Fraction(1, 4), Fraction(1, 8)]

for name in ("hermite_cubic", "derivative_sampling(2)"):
    gs = named_basis(name)
    psi = parse_functionals(gs.channels)
    errors = [refinement_errors(gs, psi, derivs, 8, h, margin=3.0) for h in steps]
    print(f"{name}:")
    for h, e in zip(steps, errors):
        print(f"  h={h}: sup error {e:.3e}")
    print(f"  log2 slope: {log2_slope(steps, errors):.2f}")

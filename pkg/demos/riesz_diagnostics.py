"""Why shortest-support bases are safe: Riesz bounds and their failures.

Two instructive controls: the plain B-spline pair generates the same
space with a longer support and a singular Gramian at omega = 0, and a
two-rectangle generator is a Riesz basis whose slices are nonetheless
dependent (the converse of the slice criterion fails).
"""

from fractions import Fraction

from multispline import (
    GeneratorSet,
    PiecewisePoly,
    bspline,
    build_mb_spline,
    riesz_bounds,
    slice_independence,
    smoothness_order,
    verify_reproduction,
)

for degrees in [(2, 3), (4, 5), (1, 7, 9)]:
    gs = build_mb_spline(degrees)
    r = riesz_bounds(gs, normalize=True)
    cert = slice_independence(gs)
    print(f"S_{'+'.join(map(str, degrees))}: A={r.A:.3e} B={r.B:.3f}"
          f"  slices {cert.rank}/{cert.count}"
          f"  repro ok: {verify_reproduction(gs, degrees[-1], 24).ok}"
          f"  smoothness C^{min(smoothness_order(g) for g in gs.gens)}")

pair = GeneratorSet((2, 3), (bspline(2), bspline(3)))
r = riesz_bounds(pair)
print(f"\nB-spline pair (beta2, beta3): support {pair.support_sum()} > 4,"
      f" exact det G(0) = {r.det_zero_exact}, A = {r.A}")

rect = GeneratorSet((0,), (PiecewisePoly(0, [[1], [Fraction(1, 2)]]),))
r = riesz_bounds(rect)
cert = slice_independence(rect)
print(f"two rectangles (alpha=1/2): A={r.A:.6f} B={r.B:.6f}"
      f" (1 -/+ alpha), slices independent: {cert.independent}")

"""Direct interpolation formulas: Lagrange, half-step bi-spline, Bezier.

For these named bases the measurement matrix is exactly the identity,
so reconstruction is a plain weighted sum of shifted generators; the
Bezier basis splits the slope control into independent left and right
handles, which is what vector-graphics editors expose.
"""

import math

from multispline import (
    Measurements,
    direct_formulas,
    invert_filter,
    named_basis,
    parse_functionals,
    reconstruct_from_measurements,
    system_matrix,
)

# modified Lagrange basis of S1+S2+S3: samples at step 1/3
gs = named_basis("lagrange(3)")
psi = parse_functionals(gs.channels)
print("lagrange(3) channels:", gs.channels)
print("identity system:", system_matrix(gs, psi).is_identity())
K = 12
chans = [[math.sin((k + float(f.offset)) * 0.8) for k in range(K)] for f in psi]
recon = direct_formulas("lagrange(3)", chans)
x = 5.4
print(f"  f~({x}) = {recon(x):.6f}  vs  sin = {math.sin(x * 0.8):.6f}")

# half-integer interpolation in S3+S4 needs one pole pair
gs = named_basis("bispline_interp(1)")
psi = parse_functionals(gs.channels)
spec = invert_filter(system_matrix(gs, psi))
print(f"\nbispline_interp(1) pole: {spec.poles[0]:.15f}"
      f"  (4 - sqrt(15) = {4 - math.sqrt(15):.15f})")
K = 48
meas = Measurements(
    [
        [math.cos(0.5 * n) for n in range(K)],
        [math.cos(0.5 * (n - 0.5)) for n in range(K)],
    ]
)
recon, _ = reconstruct_from_measurements(gs, psi, meas)
print(f"  f~(20.3) = {recon(20.3):.9f}  vs  cos = {math.cos(0.5 * 20.3):.9f}")

# a cubic Bezier segment: value plus split slope handles per knot
values = [0.0, 0.0, 1.0, 1.0, 0.0]
left = [0.0, 0.0, 0.0, -2.0, 0.0]
right = [0.0, 3.0, 0.0, 0.0, 0.0]
recon = direct_formulas("bezier_cubic", [values, left, right])
print("\nbezier_cubic curve (kinked slope control at each knot):")
for x in (1.0, 1.5, 2.0, 2.5, 3.0):
    print(f"  f~({x}) = {recon(x):+.6f}"
          f"   left slope {recon(x, order=1, side=-1):+.3f}"
          f"   right slope {recon(x, order=1, side=1):+.3f}")

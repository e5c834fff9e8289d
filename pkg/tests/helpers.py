"""Shared test utilities, kept independent of the library internals.

The convolution oracle computes B-splines by direct piecewise polynomial
convolution, a different algorithm from the integrate-and-difference
recursion inside the package, so the two can check each other
coefficient for coefficient.
"""

from fractions import Fraction as F
from math import comb, factorial

from multispline import PiecewisePoly


def _unit_conv(p, q):
    """Convolution of two polynomials supported on [0, 1).

    Returns (h1, h2), the polynomial pieces of p*q on [0,1) and [1,2),
    in local coordinates.
    """
    h1 = [F(0)] * (len(p) + len(q) + 1)
    for i, pi in enumerate(p):
        for j, qj in enumerate(q):
            # int_0^s u^i (s-u)^j du = s^(i+j+1) * i! j! / (i+j+1)!
            h1[i + j + 1] += pi * qj * F(factorial(i) * factorial(j), factorial(i + j + 1))

    # h2(1+t) = int_0^(1-t) p(v+t) q(1-v) dv
    deg = len(p) + len(q) + 1
    h2 = [F(0)] * deg
    b = [F(0)] * max(len(q), 1)
    for j, qj in enumerate(q):
        for bb in range(j + 1):
            b[bb] += qj * comb(j, bb) * (-1) ** bb
    for a in range(len(p)):
        # A_a(t) = sum_i p_i C(i,a) t^(i-a)
        a_poly = [F(0)] * len(p)
        for i in range(a, len(p)):
            a_poly[i - a] += p[i] * comb(i, a)
        for bb in range(len(b)):
            if b[bb] == 0:
                continue
            m = a + bb
            # contribution (A_a(t) * b[bb]) * (1-t)^(m+1) / (m+1)
            onemt = [F(comb(m + 1, r) * (-1) ** r, m + 1) for r in range(m + 2)]
            for e1, c1 in enumerate(a_poly):
                if c1 == 0:
                    continue
                for e2, c2 in enumerate(onemt):
                    h2[e1 + e2] += c1 * c2 * b[bb]
    return h1, h2


def conv(f, g):
    """Exact convolution of two compact piecewise polynomials."""
    acc = {}
    for i, p in enumerate(f.pieces):
        for j, q in enumerate(g.pieces):
            base = (f.start + i) + (g.start + j)
            h1, h2 = _unit_conv(list(p), list(q))
            for off, h in ((0, h1), (1, h2)):
                cur = acc.setdefault(base + off, [])
                for e, c in enumerate(h):
                    while len(cur) <= e:
                        cur.append(F(0))
                    cur[e] += c
    if not acc:
        return PiecewisePoly.zero()
    lo, hi = min(acc), max(acc)
    return PiecewisePoly(lo, [acc.get(k, []) for k in range(lo, hi + 1)])


def bspline_by_convolution(n):
    """Causal degree-n B-spline via repeated convolution with the unit box."""
    box = PiecewisePoly(0, [(F(1),)])
    out = box
    for _ in range(n):
        out = conv(out, box)
    return out


# Table rows from the reference derivative-sampling bases (integer
# coefficients after clearing the stated denominators), used as frozen
# expected values by the acceptance tests.

QUINTIC_ETA1_X4 = {
    0: [0, 0, 0, 0, 5, -3],
    1: [2, 5, 0, -10, 5],
    2: [2, -5, 0, 10, -10, 3],
}
QUINTIC_ETA2_X8 = {
    0: [0, 0, 0, 0, 15, -11],
    1: [4, 5, -20, -50, 95, -38],
    2: [-4, 5, 20, -50, 40, -11],
}
SEPTIC_ETA1_X108 = {
    0: [0, 0, 0, 0, 0, 0, 21, -11],
    1: [10, 49, 84, 35, -70, -105, 112, -27],
    2: [88, 0, -168, 0, 140, 0, -77, 27],
    3: [10, -49, 84, -35, -70, 105, -56, 11],
}
SEPTIC_ETA2_X918_5 = {
    0: [0, 0, 0, 0, 0, 0, 42, -25],
    1: [17, 77, 105, -35, -245, -273, 539, -185],
    2: [0, -224, 0, 560, 0, -924, 756, -185],
    3: [-17, 77, -105, -35, 245, -273, 133, -25],
}
CUBIC_ETA2 = {
    0: [0, 0, -1, 1],
    1: [0, 1, -2, 1],
}


def assert_slices_match(gen, table, multiplier):
    """Exact comparison of a generator's slices against integer table rows."""
    scaled = gen.scale(multiplier)
    slices = dict(scaled.slices())
    assert set(slices) == set(table), (sorted(slices), sorted(table))
    for k, row in table.items():
        want = tuple(F(x) for x in row)
        while want and want[-1] == 0:
            want = want[:-1]
        assert slices[k] == want, (k, slices[k], want)

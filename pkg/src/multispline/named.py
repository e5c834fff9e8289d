"""Named generator bases for the sampling systems.

The raw construction algorithm outputs a valid shortest-support basis,
but rarely the most practical one.  Each named basis here applies an
exact linear-combination-and-shift post-processing to the raw output,
derived from symmetry and interpolation conditions:

``hermite_cubic``            centered value/slope interpolators of S2+S3
``derivative_sampling(p)``   symmetric + antisymmetric pair of S2p+S2p+1
``bispline_interp(p)``       half-step interpolation pair of S2p+1+S2p+2
``lagrange(N)``              modified Lagrange basis of S1+...+SN
``bezier_quadratic``         value + left-slope controls in S1+S2
``bezier_cubic``             value + split-slope controls in S1+S2+S3
``mixed_s2s3s4``             value/slope/midpoint-value basis of S2+S3+S4
``direct_s2345``             half-step value/slope basis of S2+...+S5
``hybrid(0,p)``              raw jump-plus-smooth basis of S0+Sp

Every basis records its post-processing (exact rational coefficients and
integer shifts relative to the raw output) and the measurement channels
it is designed for, as ``v@tau`` / ``d1@tau`` tokens.
"""

from __future__ import annotations

import re
from fractions import Fraction

from . import exact
from .builder import (
    GeneratorSet,
    build_mb_spline,
    compact_space_basis,
    reassemble,
    reproduction_coeffs,
    solve_in_span,
)
from .piecewise import PiecewisePoly, Q, poly_add, poly_mul, poly_reflect

NAMED_PATTERNS = (
    "hermite_cubic",
    "derivative_sampling(p)  p in 1..4",
    "bispline_interp(p)      p in 1..3",
    "lagrange(N)             N in 2..6",
    "bezier_quadratic",
    "bezier_cubic",
    "mixed_s2s3s4",
    "direct_s2345",
    "hybrid(0,p)             p >= 1",
)


def _span_solutions(basis, rows):
    """Elements of span(basis) in the kernel of the given coefficient rows."""
    sols = []
    for v in exact.nullspace(rows, len(basis)):
        f = PiecewisePoly.zero()
        for a, b in zip(v, basis):
            f = f + b.scale(a)
        sols.append(f)
    return sols


def _symmetry_split(basis, length):
    """1D-or-more symmetric / antisymmetric subspaces about length/2."""
    maxdeg = max(b.degree() for b in basis) + 1

    def rows(sign):
        out = []
        refl = [b.reflect(length) for b in basis]
        for k in range(length):
            for j in range(maxdeg):
                row = []
                for b, rb in zip(basis, refl):
                    pb, prb = b.piece(k), rb.piece(k)
                    a = pb[j] if j < len(pb) else Q(0)
                    c = prb[j] if j < len(prb) else Q(0)
                    row.append(a - sign * c)
                out.append(row)
        return out

    return _span_solutions(basis, rows(1)), _span_solutions(basis, rows(-1))


def _slice_sum(g):
    s = ()
    for p in g.pieces:
        s = poly_add(s, p)
    return s


def _attach_postprocess(raw, gens, degrees, channels):
    """Express each named generator in the raw basis and rebuild it that way."""
    records, rebuilt = [], []
    for g in gens:
        cs = reproduction_coeffs(raw, g)
        records.append(
            tuple(
                (vec[n], n, k)
                for k, vec in sorted(cs.data.items())
                for n in range(raw.n)
                if vec[n] != 0
            )
        )
        rebuilt.append(reassemble(raw, cs))
    for a, b in zip(rebuilt, gens):
        if a != b:
            raise AssertionError("post-processing does not reproduce the target")
    return GeneratorSet(
        degrees,
        rebuilt,
        repro_coeffs=None,
        postprocess=tuple(records),
        channels=channels,
    )


# ---------------------------------------------------------------------------
# individual constructions


def derivative_sampling_pair(p):
    """Symmetric/antisymmetric shortest basis of S_2p + S_2p+1.

    The symmetric generator is normalized to unit integral.  The
    antisymmetric one is scaled so that its first integer sample matches
    the symmetric one's (for p = 1 all integer samples vanish and the
    slope at the center is set to 1 instead, giving the classical Hermite
    slope interpolator).
    """
    degrees = (2 * p, 2 * p + 1)
    length = p + 1
    basis = compact_space_basis(degrees, length)
    if len(basis) != 2:
        raise AssertionError(f"expected a 2-dimensional compact space, got {len(basis)}")
    sym, anti = _symmetry_split(basis, length)
    if len(sym) != 1 or len(anti) != 1:
        raise AssertionError("symmetry split is not 1+1 dimensional")
    eta1 = sym[0].scale(Q(1) / sym[0].integral())
    w = anti[0]
    if p == 1:
        eta2 = w.scale(Q(1) / w(Q(1), order=1))
    else:
        if eta1(Q(1)) == 0 or w(Q(1)) == 0:
            raise AssertionError("cannot normalize the antisymmetric generator")
        eta2 = w.scale(eta1(Q(1)) / w(Q(1)))
    return degrees, (eta1, eta2)


def bispline_pair(p):
    """Interpolation pair of S_2p+1 + S_2p+2 for half-integer sampling.

    The short generator spans the unique minimal-support direction; the
    long one is the symmetric direction with the extra order of vanishing
    at its support ends.  Both scales come from requiring that the two
    generators jointly sum to one over all integer shifts.
    """
    degrees = (2 * p + 1, 2 * p + 2)
    short = compact_space_basis(degrees, p + 1)
    if len(short) != 1:
        raise AssertionError("short direction is not unique")
    u1 = short[0]
    sym, _ = _symmetry_split(compact_space_basis(degrees, p + 2), p + 2)
    edge = []
    for b in sym:
        p0 = b.piece(0)
        edge.append([p0[2 * p + 1] if len(p0) > 2 * p + 1 else Q(0)])
    smooth = _span_solutions(sym, [[row[0] for row in edge]])
    if len(smooth) != 1:
        raise AssertionError("edge-smooth symmetric direction is not unique")
    u2 = smooth[0]
    s1_poly, s2_poly = _slice_sum(u1), _slice_sum(u2)
    width = max(len(s1_poly), len(s2_poly))
    rows = [
        [
            s1_poly[j] if j < len(s1_poly) else Q(0),
            s2_poly[j] if j < len(s2_poly) else Q(0),
        ]
        for j in range(width)
    ]
    rhs = [Q(1)] + [Q(0)] * (width - 1)
    s1, s2 = exact.solve(rows, rhs)
    return degrees, (u1.scale(s1), u2.scale(s2))


def lagrange_basis(n_channels):
    """Modified Lagrange generators of S1+...+SN for step-1/N sampling."""
    if n_channels < 2:
        raise ValueError("lagrange basis needs at least two channels")
    gens = []
    for q in range(1, n_channels + 1):
        poly = (Q(1),)
        for pnode in range(0, n_channels + 1):
            if pnode == q:
                continue
            poly = poly_mul(
                poly, (Q(-pnode, q - pnode), Q(n_channels, q - pnode))
            )
        if q < n_channels:
            gens.append(PiecewisePoly(0, [poly]))
        else:
            gens.append(PiecewisePoly(0, [poly, poly_reflect(poly)]))
    degrees = tuple(range(1, n_channels + 1))
    channels = tuple(f"v@{Fraction(q, n_channels)}" for q in range(1, n_channels + 1))
    return degrees, tuple(gens), channels


def _kronecker_conditions(space_len, grid, channel, order_of, at):
    """Interpolation conditions over a value/derivative grid on [0, space_len].

    grid lists (order, offset) channel descriptors; the generator for
    ``channel`` takes value 1 at ``at`` for its own descriptor and 0 at
    every other grid point of every descriptor.
    """
    conds = []
    for ci, (order, offset) in enumerate(grid):
        k = 0
        while k + offset <= space_len:
            x = k + offset
            if x >= 0:
                side = -1 if x == space_len else 1
                want = Q(1) if (ci == channel and x == at) else Q(0)
                conds.append((order, x, side, want))
            k += 1
    return conds


def interpolatory_family(p):
    """Direct value/slope interpolators of S2+...+S_{2p+1} at step 1/p.

    Returns (degrees, gens, channels, shifts): one value and one slope
    generator per offset q/p.  Existence is not guaranteed a priori; the
    exact solve raises if the conditions cannot be met.
    """
    degrees = tuple(range(2, 2 * p + 2))
    grid = []
    for q in range(p):
        grid.append((0, Q(q, p)))
        grid.append((1, Q(q, p)))
    gens, channels, shifts = [], [], []
    long_space = compact_space_basis(degrees, 2)
    short_space = compact_space_basis(degrees, 1)
    for ci, (order, offset) in enumerate(grid):
        if offset == 0:
            space, length, at, shift = long_space, 2, Q(1), -1
        else:
            space, length, at, shift = short_space, 1, offset, 0
        g = solve_in_span(space, _kronecker_conditions(length, grid, ci, order, at))
        gens.append(g.shift(shift))
        channels.append(("v@" if order == 0 else "d1@") + str(offset))
        shifts.append(shift)
    return degrees, tuple(gens), tuple(channels)


def _mixed_s2s3s4():
    degrees = (2, 3, 4)
    grid = [(0, Q(0)), (1, Q(0)), (0, Q(1, 2))]
    long_space = compact_space_basis(degrees, 2)
    short_space = compact_space_basis(degrees, 1)
    eta1 = solve_in_span(long_space, _kronecker_conditions(2, grid, 0, 0, Q(1)))
    eta2 = solve_in_span(long_space, _kronecker_conditions(2, grid, 1, 1, Q(1)))
    eta3 = solve_in_span(short_space, _kronecker_conditions(1, grid, 2, 0, Q(1, 2)))
    gens = (eta1.shift(-1), eta2.shift(-1), eta3)
    return degrees, gens, ("v@0", "d1@0", "v@1/2")


def _bezier_quadratic():
    degrees = (1, 2)
    grid = [(0, Q(0)), (1, Q(0))]  # slope conditions are left-sided below
    long_space = compact_space_basis(degrees, 2)
    short_space = compact_space_basis(degrees, 1)
    eta1 = solve_in_span(
        long_space,
        [(0, 0, 1, 0), (0, 1, 1, 1), (0, 2, -1, 0), (1, 1, -1, 0), (1, 2, -1, 0)],
    )
    eta2 = solve_in_span(short_space, [(1, 1, -1, 1)])
    return degrees, (eta1.shift(-1), eta2.shift(-1)), ("v@0", "d1-@0")


def _bezier_cubic():
    degrees = (1, 2, 3)
    long_space = compact_space_basis(degrees, 2)
    short_space = compact_space_basis(degrees, 1)
    eta1 = solve_in_span(
        long_space,
        [
            (0, 0, 1, 0),
            (0, 1, 1, 1),
            (0, 2, -1, 0),
            (1, 1, -1, 0),
            (1, 2, -1, 0),
            (1, 0, 1, 0),
            (1, 1, 1, 0),
        ],
    )
    eta2 = solve_in_span(short_space, [(1, 1, -1, 1), (1, 0, 1, 0)])
    eta3 = solve_in_span(short_space, [(1, 1, -1, 0), (1, 0, 1, 1)])
    return degrees, (eta1.shift(-1), eta2.shift(-1), eta3), ("v@0", "d1-@0", "d1+@0")


# ---------------------------------------------------------------------------


def degrees_to_named(degrees):
    """Practical named form for a degree vector, when one exists."""
    degrees = tuple(int(d) for d in degrees)
    if len(degrees) == 2:
        a, b = degrees
        if b == a + 1 and a % 2 == 0 and 1 <= a // 2 <= 4:
            return f"derivative_sampling({a // 2})"
        if b == a + 1 and a % 2 == 1 and 1 <= (a - 1) // 2 <= 3:
            return f"bispline_interp({(a - 1) // 2})"
        if a == 0 and b >= 1:
            return f"hybrid(0,{b})"
    return None


_PAREN = re.compile(r"^([a-z_0-9]+)\((.*)\)$")


def parse_name(name):
    name = name.strip().replace(" ", "")
    m = _PAREN.match(name)
    if not m:
        return name, ()
    return m.group(1), tuple(int(x) for x in m.group(2).split(","))


def named_basis(name):
    """Build a named generator basis; see the module docstring for ids."""
    kind, args = parse_name(name)

    if kind == "hermite_cubic":
        degrees, (e1, e2) = derivative_sampling_pair(1)
        gens = (e1.shift(-1), e2.shift(-1))
        channels = ("v@0", "d1@0")
    elif kind == "derivative_sampling":
        (p,) = args
        if not 1 <= p <= 4:
            raise ValueError("derivative_sampling supports p in 1..4")
        degrees, gens = derivative_sampling_pair(p)
        channels = ("v@0", "d1@0")
    elif kind == "bispline_interp":
        (p,) = args
        if not 1 <= p <= 3:
            raise ValueError("bispline_interp supports p in 1..3")
        degrees, gens = bispline_pair(p)
        channels = ("v@0", "v@-1/2")
    elif kind == "lagrange":
        (n,) = args
        degrees, gens, channels = lagrange_basis(n)
    elif kind == "bezier_quadratic":
        degrees, gens, channels = _bezier_quadratic()
    elif kind == "bezier_cubic":
        degrees, gens, channels = _bezier_cubic()
    elif kind == "mixed_s2s3s4":
        degrees, gens, channels = _mixed_s2s3s4()
    elif kind == "direct_s2345":
        degrees, gens, channels = interpolatory_family(2)
    elif kind == "hybrid":
        lo, p = args
        if lo != 0 or p < 1:
            raise ValueError("hybrid bases have the form hybrid(0,p) with p >= 1")
        raw = build_mb_spline((0, p))
        identity = tuple(((Q(1), i, 0),) for i in range(raw.n))
        return GeneratorSet(
            raw.degrees,
            raw.gens,
            repro_coeffs=raw.repro_coeffs,
            postprocess=identity,
            channels=None,
        )
    else:
        raise ValueError(f"unknown basis id: {name!r}")

    raw = build_mb_spline(degrees)
    return _attach_postprocess(raw, gens, degrees, channels)

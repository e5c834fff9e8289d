"""Generalized sampling: measure, invert the system filter, reconstruct.

The measurement model is one sequence per analysis channel,
``g_p[n] = f^(d_p)(n + tau_p)``.  Measuring the generator tuple gives an
exact matrix Laurent filter; its inverse splits into the transposed
cofactor matrix (FIR, exact) and the reciprocal determinant, applied as
cascaded causal/anti-causal single-pole recursions in the classical
B-spline prefiltering style.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .analysis import smoothness_order
from .named import named_basis
from .piecewise import Q


class NonInvertibleSystem(ValueError):
    """The measurement filter has a determinant root on the unit circle."""


# ---------------------------------------------------------------------------
# analysis functionals


@dataclass(frozen=True)
class AnalysisFunctional:
    """Point measurement channel: order-th derivative at offset tau.

    ``side`` 0 is the ordinary two-sided measurement (the generators must
    be smooth enough for it); -1/+1 request an explicit one-sided limit,
    which is how the split Bezier slope channels are expressed.
    """

    order: int = 0
    offset: Fraction = Q(0)
    side: int = 0

    def __post_init__(self):
        object.__setattr__(self, "offset", Q(self.offset))
        if self.order < 0:
            raise ValueError("derivative order must be >= 0")
        if self.side not in (-1, 0, 1):
            raise ValueError("side must be -1, 0 or +1")

    def apply(self, f, n=0):
        """Measure a piecewise polynomial or reconstruction at index n."""
        return f(self.offset + n, order=self.order, side=self.side or 1)

    def token(self):
        head = "v" if self.order == 0 else f"d{self.order}"
        if self.side < 0:
            head += "-"
        elif self.side > 0:
            head += "+"
        return f"{head}@{self.offset}"

    def __str__(self):
        return self.token()


_TOKEN = re.compile(r"^(v|d(\d+))([+-]?)@(-?\d+(?:/\d+)?)$")


def parse_functional(token):
    """Parse a channel token like ``v@0``, ``d1@1/2`` or ``d1-@0``."""
    m = _TOKEN.match(token.strip().replace(" ", ""))
    if not m:
        raise ValueError(f"bad functional token: {token!r}")
    order = 0 if m.group(1) == "v" else int(m.group(2))
    side = {"-": -1, "+": 1, "": 0}[m.group(3)]
    return AnalysisFunctional(order, Q(m.group(4)), side)


def parse_functionals(tokens):
    if isinstance(tokens, str):
        tokens = [t for t in tokens.split(",") if t]
    return tuple(parse_functional(t) for t in tokens)


# ---------------------------------------------------------------------------
# Laurent polynomial matrices


class LaurentPolyMatrix:
    """Square matrix of Laurent polynomials in z^-1 with exact coefficients.

    Entry (p, q) maps integer powers n to the coefficient of z^-n.
    """

    def __init__(self, n, entries=None):
        self.n = n
        self.entries = {(p, q): {} for p in range(n) for q in range(n)}
        if entries:
            for key, poly in entries.items():
                self.entries[key] = {
                    int(k): Q(v) for k, v in poly.items() if v != 0
                }

    def entry(self, p, q):
        return self.entries[(p, q)]

    def set(self, p, q, poly):
        self.entries[(p, q)] = {int(k): Q(v) for k, v in poly.items() if v != 0}

    @staticmethod
    def _mul(a, b):
        out = {}
        for i, x in a.items():
            for j, y in b.items():
                out[i + j] = out.get(i + j, Q(0)) + x * y
        return {k: v for k, v in out.items() if v != 0}

    @staticmethod
    def _add(a, b):
        out = dict(a)
        for k, v in b.items():
            out[k] = out.get(k, Q(0)) + v
        return {k: v for k, v in out.items() if v != 0}

    @staticmethod
    def _scale(a, s):
        return {k: v * s for k, v in a.items() if v * s != 0}

    def _minor(self, row, col):
        idx = [i for i in range(self.n) if i != row]
        jdx = [j for j in range(self.n) if j != col]
        sub = LaurentPolyMatrix(self.n - 1)
        for a, i in enumerate(idx):
            for b, j in enumerate(jdx):
                sub.set(a, b, self.entries[(i, j)])
        return sub

    def det(self):
        """Exact determinant as a Laurent polynomial, by cofactor expansion."""
        if self.n == 1:
            return dict(self.entries[(0, 0)])
        out = {}
        for j in range(self.n):
            e = self.entries[(0, j)]
            if not e:
                continue
            term = self._mul(e, self._minor(0, j).det())
            if j % 2:
                term = self._scale(term, Q(-1))
            out = self._add(out, term)
        return out

    def adjugate(self):
        """Transposed cofactor matrix, so that A * adj(A) = det(A) * I."""
        adj = LaurentPolyMatrix(self.n)
        if self.n == 1:
            adj.set(0, 0, {0: Q(1)})
            return adj
        for p in range(self.n):
            for q in range(self.n):
                minor_det = self._minor(p, q).det()
                if (p + q) % 2:
                    minor_det = self._scale(minor_det, Q(-1))
                adj.set(q, p, minor_det)
        return adj

    def is_identity(self):
        for p in range(self.n):
            for q in range(self.n):
                want = {0: Q(1)} if p == q else {}
                if self.entries[(p, q)] != want:
                    return False
        return True

    def eval_exact(self, z):
        """Matrix value at an exact rational z (as nested Fractions)."""
        z = Q(z)
        return [
            [
                sum((c * z ** (-k) for k, c in self.entries[(p, q)].items()), Q(0))
                for q in range(self.n)
            ]
            for p in range(self.n)
        ]

    def to_json(self):
        return {
            "n": self.n,
            "entries": {
                f"{p},{q}": {
                    str(k): [str(v.numerator), str(v.denominator)]
                    for k, v in self.entries[(p, q)].items()
                }
                for p in range(self.n)
                for q in range(self.n)
                if self.entries[(p, q)]
            },
        }

    @classmethod
    def from_json(cls, obj):
        m = cls(int(obj["n"]))
        for key, poly in obj["entries"].items():
            p, q = (int(x) for x in key.split(","))
            m.set(p, q, {int(k): Q(int(n), int(d)) for k, (n, d) in poly.items()})
        return m


def system_matrix(gs, functionals):
    """Measurement filter A with entry (p, q) = sum_n psi_p(gen_q(. + n)) z^-n.

    Entries are the exact generator samples gen_q^(d_p)(n + tau_p).
    Two-sided derivative channels require the generators to be at least
    that smooth.
    """
    functionals = tuple(functionals)
    if len(functionals) != gs.n:
        raise ValueError("need exactly one analysis functional per generator")
    for psi in functionals:
        if psi.order > 0 and psi.side == 0:
            for g in gs.gens:
                if smoothness_order(g) < psi.order:
                    raise ValueError(
                        f"generators are not C^{psi.order}: "
                        "derivative measurements are ill-defined"
                    )
    mat = LaurentPolyMatrix(gs.n)
    for p, psi in enumerate(functionals):
        for q, g in enumerate(gs.gens):
            poly = {}
            lo = math.floor(g.start - psi.offset) - 1
            hi = math.ceil(g.end - psi.offset) + 1
            for n in range(lo, hi + 1):
                v = psi.apply(g, n)
                if v != 0:
                    poly[n] = v
            mat.set(p, q, poly)
    return mat


# ---------------------------------------------------------------------------
# filter inversion


@dataclass(frozen=True)
class IIRFilterSpec:
    """Factorized inverse of a measurement filter.

    Applying it means: convolve with the FIR adjugate, advance by
    ``delay`` samples, run one symmetric pole pair per entry of
    ``poles``, and divide by ``gain``; altogether this realizes
    adj(A) / det(A).
    """

    fir: LaurentPolyMatrix
    gain: Fraction
    poles: tuple
    delay: int

    def to_json(self):
        return {
            "fir": self.fir.to_json(),
            "gain": [str(self.gain.numerator), str(self.gain.denominator)],
            "poles": [repr(p) for p in self.poles],
            "delay": self.delay,
        }


def _newton_polish(coeffs, r):
    """One exact-arithmetic Newton step on sum c_i w^i from a float seed."""
    w = Q(r).limit_denominator(10**15)
    p = sum((c * w**i for i, c in enumerate(coeffs)), Q(0))
    dp = sum((i * c * w ** (i - 1) for i, c in enumerate(coeffs) if i), Q(0))
    if dp == 0:
        return r
    return float(w - p / dp)


def invert_filter(mat, unit_circle_tol=1e-9, pair_tol=1e-8):
    """Factorize the inverse filter adj(A)/det(A) for recursive application.

    The determinant is expanded exactly; after pulling out its leading
    monomial the remaining roots must pair up as (z0, 1/z0) with z0 real
    and off the unit circle, which holds for the symmetric bases used
    here.
    """
    d = mat.det()
    if not d:
        raise NonInvertibleSystem("determinant is identically zero")
    lo, hi = min(d), max(d)
    gain = d[lo]
    delay = lo
    deg = hi - lo
    adj = mat.adjugate()
    if deg == 0:
        return IIRFilterSpec(adj, gain, (), delay)

    coeffs = [d.get(lo + i, Q(0)) / gain for i in range(deg + 1)]
    roots = np.roots([float(c) for c in reversed(coeffs)])
    poles = []
    cleaned = []
    for r in roots:
        if abs(r.imag) > 1e-8 * (1 + abs(r.real)):
            raise ValueError(
                "complex determinant roots are not supported by the "
                "real pole-pair implementation"
            )
        cleaned.append(_newton_polish(coeffs, r.real))
    for r in cleaned:
        if abs(abs(r) - 1.0) < unit_circle_tol:
            raise NonInvertibleSystem(
                f"determinant root {r!r} lies on the unit circle"
            )
    unmatched = sorted(cleaned, key=abs)
    while unmatched:
        r = unmatched.pop(0)
        if abs(r) >= 1:
            raise ValueError(f"unpaired determinant root {r!r}")
        partner = min(unmatched, key=lambda s: abs(s * r - 1.0), default=None)
        if partner is None or abs(partner * r - 1.0) > pair_tol:
            raise ValueError(f"determinant root {r!r} has no reciprocal partner")
        unmatched.remove(partner)
        poles.append(r)

    # cross-check the factorization against the exact determinant
    z = Q(17, 10)
    exact_val = sum((c * z ** (-k) for k, c in d.items()), Q(0))
    approx = float(gain) * float(z) ** (-delay)
    for z0 in poles:
        approx *= (1 - z0 / float(z)) * (1 - 1 / (z0 * float(z)))
    if abs(float(exact_val) - approx) > 1e-8 * max(1.0, abs(approx)):
        raise AssertionError("pole factorization does not reproduce the determinant")
    return IIRFilterSpec(adj, gain, tuple(poles), delay)


# ---------------------------------------------------------------------------
# filtering


@dataclass
class Measurements:
    """Equal-length per-channel sample sequences plus a boundary policy."""

    channels: list
    boundary: str = "mirror"

    def __post_init__(self):
        self.channels = [np.asarray(ch, dtype=float) for ch in self.channels]
        if len({len(ch) for ch in self.channels}) > 1:
            raise ValueError("all channels must have the same length")
        if self.boundary not in ("mirror", "periodic", "zero"):
            raise ValueError("boundary must be mirror, periodic or zero")

    def __len__(self):
        return len(self.channels[0]) if self.channels else 0


def _ext(x, i, policy):
    """Sample x[i] under the boundary extension policy."""
    n = len(x)
    if 0 <= i < n:
        return x[i]
    if policy == "zero":
        return 0.0
    if policy == "periodic":
        return x[i % n]
    if n == 1:
        return x[0]
    period = 2 * n - 2  # whole-sample mirror
    i %= period
    return x[i] if i < n else x[period - i]


def _pole_pair(x, z0, policy):
    """Apply 1 / ((1 - z0 z^-1)(1 - z0^-1 z^-1)) with stable recursions.

    Causal pass y[n] = x[n] + z0 y[n-1], then anti-causal
    w[n] = z0 (w[n+1] - y[n+1]); boundary values seed both recursions
    from the extension policy.
    """
    n = len(x)
    horizon = max(n, int(math.ceil(math.log(1e-17) / math.log(abs(z0)))))
    y = np.empty(n)
    acc = x[0]
    for m in range(1, horizon + 1):
        acc += (z0**m) * _ext(x, -m, policy)
    y[0] = acc
    for m in range(1, n):
        y[m] = x[m] + z0 * y[m - 1]
    w = np.empty(n)
    acc = 0.0
    for m in range(1, horizon + 1):
        acc -= (z0**m) * _ext(y, n - 1 + m, policy)
    w[n - 1] = acc
    for m in range(n - 2, -1, -1):
        w[m] = z0 * (w[m + 1] - y[m + 1])
    return w


def apply_filter(spec, measurements):
    """Coefficient sequences c = Q * g, same length as the input."""
    g = measurements.channels
    n_ch = len(g)
    if n_ch != spec.fir.n:
        raise ValueError("channel count does not match the filter")
    length = len(measurements)
    if length < 2 * len(spec.poles) + 1:
        raise ValueError("sequence too short for stable boundary initialization")
    policy = measurements.boundary
    out = []
    for p in range(n_ch):
        y = np.zeros(length)
        for q in range(n_ch):
            for j, coeff in spec.fir.entry(p, q).items():
                c = float(coeff)
                for m in range(length):
                    y[m] += c * _ext(g[q], m - j, policy)
        if spec.delay:
            y = np.array(
                [_ext(y, m + spec.delay, policy) for m in range(length)]
            )
        for z0 in spec.poles:
            y = _pole_pair(y, z0, policy)
        out.append(y / float(spec.gain))
    return out


# ---------------------------------------------------------------------------
# reconstruction


class Reconstruction:
    """Callable multi-spline curve built from coefficient sequences."""

    def __init__(self, gs, coefficients, start=0):
        if len(coefficients) != gs.n:
            raise ValueError("one coefficient sequence per generator required")
        self.gs = gs
        self.coefficients = [np.asarray(c, dtype=float) for c in coefficients]
        lengths = {len(c) for c in self.coefficients}
        if len(lengths) != 1:
            raise ValueError("coefficient sequences must have equal length")
        self.start = int(start)
        self.length = lengths.pop()
        self._deriv_cache = {}

    @property
    def domain(self):
        return (self.start, self.start + self.length - 1)

    def _gen(self, q, order):
        key = (q, order)
        if key not in self._deriv_cache:
            self._deriv_cache[key] = self.gs.gens[q].derivative(order)
        return self._deriv_cache[key]

    def __call__(self, x, order=0, side=1):
        lo, hi = self.domain
        xf = float(x)
        if not (lo - 1e-9 <= xf <= hi + 1e-9):
            raise ValueError(f"x={x} outside the covered interval [{lo}, {hi}]")
        total = 0.0
        for q in range(self.gs.n):
            g = self._gen(q, order)
            if g.is_zero():
                continue
            k_lo = math.floor(xf - g.end) + 1
            k_hi = math.ceil(xf - g.start)
            for k in range(k_lo, k_hi + 1):
                idx = k - self.start
                if 0 <= idx < self.length:
                    c = self.coefficients[q][idx]
                    if c:
                        total += c * g(xf - k, side=side)
        return total

    def dense(self, per_unit):
        """Evaluate on the regular grid with per_unit points per knot interval."""
        lo, hi = self.domain
        count = (hi - lo) * per_unit
        xs = [lo + i / per_unit for i in range(count + 1)]
        return xs, [self(x) for x in xs]


def reconstruct(gs, coefficients, start=0):
    """Evaluator for sum_k c[k]^T gens(. - k)."""
    return Reconstruction(gs, coefficients, start)


def measure(f, functionals, length, start=0):
    """Sample an evaluator through the analysis channels at integer indices."""
    chans = []
    for psi in functionals:
        chans.append(
            [float(psi.apply(f, n)) for n in range(start, start + length)]
        )
    return chans


def consistency_check(recon, functionals, measurements, margin=None):
    """Max deviation between given and re-measured samples on the interior."""
    if margin is None:
        margin = recon.gs.max_span()
    dev = 0.0
    length = len(measurements)
    for psi, g in zip(functionals, measurements.channels):
        for n in range(margin, length - margin):
            x = float(psi.offset) + n
            lo, hi = recon.domain
            if not (lo <= x <= hi):
                continue
            dev = max(dev, abs(float(psi.apply(recon, n)) - g[n]))
    return dev


def solve_coefficients(gs, functionals, measurements):
    """Measurements -> coefficients, choosing direct or filtered inversion."""
    mat = system_matrix(gs, functionals)
    if mat.is_identity():
        return [np.asarray(ch, dtype=float) for ch in measurements.channels], None
    spec = invert_filter(mat)
    return apply_filter(spec, measurements), spec


def reconstruct_from_measurements(gs, functionals, measurements, start=0):
    coeffs, spec = solve_coefficients(gs, functionals, measurements)
    return Reconstruction(gs, coeffs, start), spec


def direct_formulas(name, data, boundary="mirror"):
    """Filter-free reconstruction for the interpolatory named systems."""
    gs = named_basis(name)
    if gs.channels is None:
        raise ValueError(f"{name!r} has no direct interpolation formula")
    functionals = parse_functionals(gs.channels)
    if len(data) != gs.n:
        raise ValueError(
            f"{name} expects {gs.n} channels, got {len(data)}"
        )
    mat = system_matrix(gs, functionals)
    if not mat.is_identity():
        raise ValueError(f"{name!r} is not a direct interpolation system")
    meas = Measurements([np.asarray(ch, float) for ch in data], boundary)
    return Reconstruction(gs, meas.channels, 0)


# ---------------------------------------------------------------------------
# order-of-accuracy experiment


def refinement_errors(gs, functionals, derivs, interval, step, margin):
    """Interior sup error when reconstructing from step-h samples.

    derivs maps derivative order to a callable; the reconstruction space
    is used at unit knots for the rescaled function g(u) = f(h u).
    """
    h = Q(step)
    length = int(Q(interval) / h) + 1
    chans = []
    for psi in functionals:
        rate = float(h) ** psi.order
        chans.append(
            [
                rate * derivs[psi.order](float(h * (n + psi.offset)))
                for n in range(length)
            ]
        )
    meas = Measurements(chans, "mirror")
    recon, _ = reconstruct_from_measurements(gs, functionals, meas)
    xs = np.linspace(margin, interval - margin, 400)
    return max(abs(recon(x / float(h)) - derivs[0](x)) for x in xs)


def log2_slope(steps, errors):
    """Least-squares slope of log2(error) against log2(step)."""
    xs = np.log2([float(s) for s in steps])
    ys = np.log2(errors)
    return float(np.polyfit(xs, ys, 1)[0])

"""Exact piecewise polynomials on the integer knot lattice.

A :class:`PiecewisePoly` stores one polynomial per unit interval
``[k, k+1)`` in the local variable ``t = x - k``, with all coefficients
kept as :class:`fractions.Fraction`.  The representation is tight: the
first and last stored pieces are nonzero.  All construction-path
arithmetic stays rational; floats only appear when a float argument is
evaluated.

Conventions:

* pieces are half open, ``[k, k+1)``; evaluating at the right support
  endpoint gives 0,
* only integer shifts exist; rational offsets are handled by rational
  evaluation, never by moving the knot grid.
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import comb

Q = Fraction

# ---------------------------------------------------------------------------
# local polynomials: tuples of Fractions, ascending degree, no trailing zeros


def poly_normalize(coeffs):
    c = [Q(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_add(a, b):
    n = max(len(a), len(b))
    return poly_normalize(
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
    )


def poly_scale(a, s):
    return poly_normalize(x * s for x in a)


def poly_mul(a, b):
    if not a or not b:
        return ()
    out = [Q(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return poly_normalize(out)


def poly_eval(a, t):
    v = Q(0) if not isinstance(t, float) else 0.0
    for c in reversed(a):
        v = v * t + (c if not isinstance(t, float) else float(c))
    return v


def poly_derivative(a, order=1):
    for _ in range(order):
        a = poly_normalize(a[i] * i for i in range(1, len(a)))
    return a


def poly_antiderivative(a):
    """Local antiderivative vanishing at t = 0."""
    return poly_normalize([Q(0)] + [Q(a[i], i + 1) for i in range(len(a))])


def poly_integral(a):
    """Integral over one unit interval [0, 1)."""
    return sum((Q(a[i], i + 1) for i in range(len(a))), Q(0))


def poly_compose_affine(a, alpha, beta):
    """Coefficients of p(alpha*t + beta)."""
    out = [Q(0)] * max(len(a), 1)
    for j, cj in enumerate(a):
        # cj * (alpha t + beta)^j
        for m in range(j + 1):
            out[m] += cj * comb(j, m) * (Q(alpha) ** m) * (Q(beta) ** (j - m))
    return poly_normalize(out)


def poly_reflect(a):
    """p(1 - t), the unit-interval reflection of a piece."""
    return poly_compose_affine(a, -1, 1)


# ---------------------------------------------------------------------------


class PiecewisePoly:
    """Compactly supported piecewise polynomial with integer knots."""

    __slots__ = ("start", "pieces", "_float_pieces")

    def __init__(self, start, pieces):
        pieces = [poly_normalize(p) for p in pieces]
        while pieces and not pieces[0]:
            pieces.pop(0)
            start += 1
        while pieces and not pieces[-1]:
            pieces.pop()
        if not pieces:
            start = 0
        self.start = int(start)
        self.pieces = tuple(pieces)
        self._float_pieces = None

    # -- basics -----------------------------------------------------------

    @classmethod
    def zero(cls):
        return cls(0, [])

    @classmethod
    def box(cls):
        """Indicator of [0, 1)."""
        return cls(0, [(Q(1),)])

    @property
    def end(self):
        return self.start + len(self.pieces)

    def is_zero(self):
        return not self.pieces

    def piece(self, k):
        """Local polynomial on [k, k+1), () outside."""
        i = k - self.start
        return self.pieces[i] if 0 <= i < len(self.pieces) else ()

    def support_size(self):
        """Measure of the support closure: the number of nonzero pieces."""
        return sum(1 for p in self.pieces if p)

    def degree(self):
        return max((len(p) - 1 for p in self.pieces if p), default=-1)

    def __bool__(self):
        return bool(self.pieces)

    def __eq__(self, other):
        return (
            isinstance(other, PiecewisePoly)
            and self.start == other.start
            and self.pieces == other.pieces
        )

    def __hash__(self):
        return hash((self.start, self.pieces))

    def __repr__(self):
        if not self.pieces:
            return "PiecewisePoly.zero()"
        return f"PiecewisePoly(start={self.start}, degree={self.degree()}, support=[{self.start},{self.end}])"

    # -- evaluation ---------------------------------------------------------

    def __call__(self, x, order=0, side=1):
        """Value (or one-sided derivative value) at x.

        Rational x gives an exact Fraction, float x a float.  ``side=-1``
        evaluates the left limit, which differs from the default only at
        knots.
        """
        if order:
            return self.derivative(order)(x, side=side)
        if isinstance(x, float):
            if self._float_pieces is None:
                self._float_pieces = tuple(
                    tuple(float(c) for c in p) for p in self.pieces
                )
            k = math.floor(x)
            t = x - k
            if side < 0 and t == 0.0:
                k, t = k - 1, 1.0
            i = k - self.start
            if 0 <= i < len(self._float_pieces):
                return poly_eval(self._float_pieces[i], t)
            return 0.0
        x = Q(x)
        k = x.numerator // x.denominator
        t = x - k
        if side < 0 and t == 0:
            k, t = k - 1, Q(1)
        p = self.piece(k)
        return poly_eval(p, t) if p else Q(0)

    # -- algebra ------------------------------------------------------------

    def shift(self, k):
        """f(x - k) for integer k."""
        if k != int(k):
            raise ValueError("only integer shifts are representable")
        return PiecewisePoly(self.start + int(k), self.pieces)

    def scale(self, s):
        return PiecewisePoly(self.start, [poly_scale(p, Q(s)) for p in self.pieces])

    def __neg__(self):
        return self.scale(-1)

    def __add__(self, other):
        if not isinstance(other, PiecewisePoly):
            return NotImplemented
        if not self.pieces:
            return other
        if not other.pieces:
            return self
        s = min(self.start, other.start)
        e = max(self.end, other.end)
        return PiecewisePoly(
            s, [poly_add(self.piece(k), other.piece(k)) for k in range(s, e)]
        )

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, s):
        return self.scale(s)

    __rmul__ = __mul__

    def reflect(self, c2):
        """f(c2 - x); c2 must be an integer (twice the mirror center)."""
        out = {}
        for i, p in enumerate(self.pieces):
            out[c2 - (self.start + i) - 1] = poly_reflect(p)
        if not out:
            return PiecewisePoly.zero()
        s = min(out)
        return PiecewisePoly(s, [out.get(k, ()) for k in range(s, max(out) + 1)])

    # -- calculus -----------------------------------------------------------

    def derivative(self, order=1):
        """Formal piecewise derivative; no distributional terms at knots."""
        if order < 0:
            raise ValueError("order must be >= 0")
        if order == 0:
            return self
        return PiecewisePoly(
            self.start, [poly_derivative(p, order) for p in self.pieces]
        )

    def antiderivative(self):
        """Exact antiderivative vanishing at -infinity, with its constant tail."""
        acc = Q(0)
        out = []
        for p in self.pieces:
            out.append(poly_add(poly_antiderivative(p), (acc,)))
            acc += poly_integral(p)
        return TailedPiecewisePoly(self.start, out, acc)

    def integral(self):
        return sum((poly_integral(p) for p in self.pieces), Q(0))

    def slices(self):
        """All nonzero slices as (k, local polynomial) pairs."""
        return [
            (self.start + i, p) for i, p in enumerate(self.pieces) if p
        ]

    # -- serialization --------------------------------------------------------

    def to_json(self):
        """Canonical JSON form with arbitrary-precision decimal strings."""
        return {
            "start": self.start,
            "pieces": [
                [[str(c.numerator), str(c.denominator)] for c in p]
                for p in self.pieces
            ],
        }

    @classmethod
    def from_json(cls, obj):
        return cls(
            int(obj["start"]),
            [[Q(int(n), int(d)) for n, d in p] for p in obj["pieces"]],
        )


class TailedPiecewisePoly:
    """A piecewise polynomial that is constant (= tail) right of its pieces.

    Produced by :meth:`PiecewisePoly.antiderivative`; the tail equals the
    total integral of the integrated function.
    """

    __slots__ = ("start", "pieces", "tail")

    def __init__(self, start, pieces, tail):
        self.start = int(start)
        self.pieces = tuple(poly_normalize(p) for p in pieces)
        self.tail = Q(tail)

    @property
    def end(self):
        return self.start + len(self.pieces)

    def piece_or_tail(self, k):
        """Local polynomial on [k, k+1), honoring the constant tail."""
        if k >= self.end:
            return (self.tail,) if self.tail else ()
        i = k - self.start
        return self.pieces[i] if i >= 0 else ()

    def compact(self):
        """The underlying compact function; requires a zero tail."""
        if self.tail != 0:
            raise ValueError("nonzero tail: function is not compactly supported")
        return PiecewisePoly(self.start, self.pieces)

    def __sub__(self, other):
        """Difference of two tailed functions with equal tails is compact."""
        if not isinstance(other, TailedPiecewisePoly):
            return NotImplemented
        if self.tail != other.tail:
            raise ValueError("tails differ; difference is not compact")
        s = min(self.start, other.start)
        e = max(self.end, other.end)
        return PiecewisePoly(
            s,
            [
                poly_add(self.piece_or_tail(k), poly_scale(other.piece_or_tail(k), -1))
                for k in range(s, e)
            ],
        )

    def minus_step(self):
        """Subtract the unit step at the support start; needs tail 1.

        This is the closed form for "integrate(f - delta)" used when a
        generator with unit integral joins a Dirac channel.
        """
        if self.tail != 1:
            raise ValueError("minus_step needs a unit tail")
        return PiecewisePoly(
            self.start, [poly_add(p, (Q(-1),)) for p in self.pieces]
        )


def finite_difference(f):
    """Delta{f} = f - f(.-1); accepts tailed input (the tail cancels)."""
    if isinstance(f, PiecewisePoly):
        return f - f.shift(1)
    out = []
    for k in range(f.start, f.end + 1):
        out.append(
            poly_add(f.piece_or_tail(k), poly_scale(f.piece_or_tail(k - 1), -1))
        )
    return PiecewisePoly(f.start, out)


def inner_product(f, g, lag=0):
    """Exact integral of f(t) * g(t - lag) over the real line."""
    lag = int(lag)
    total = Q(0)
    for k in range(max(f.start, g.start + lag), min(f.end, g.end + lag)):
        total += poly_integral(poly_mul(f.piece(k), g.piece(k - lag)))
    return total


def combine(coeffs, fs, shifts=None):
    """Sum of c_i * f_i(. - s_i), tight-support normalized."""
    shifts = [0] * len(fs) if shifts is None else list(shifts)
    if not (len(coeffs) == len(fs) == len(shifts)):
        raise ValueError("coeffs, functions and shifts must have equal length")
    out = PiecewisePoly.zero()
    for c, f, s in zip(coeffs, fs, shifts):
        out = out + f.shift(s).scale(c)
    return out


def monomial(m, lo, hi):
    """x**m restricted to [lo, hi) as a PiecewisePoly."""
    if hi <= lo:
        raise ValueError("empty interval")
    pieces = []
    for k in range(lo, hi):
        # (t + k)^m in the local variable
        pieces.append(poly_compose_affine(tuple([Q(0)] * m + [Q(1)]), 1, k))
    return PiecewisePoly(lo, pieces)

"""Construction of shortest-support generator bases for multi-spline spaces.

The two elementary transformations are the increment step (integrate all
generators, finite-difference the shortest one with nonzero mean) and the
insertion step (adjoin a piecewise-constant channel in closed form).
Chaining them per the recursive schedule yields, for any strictly
increasing degree vector, a generator tuple whose supports sum to
``max(degrees) + 1``, the provable minimum.

Generator sets also carry the causal coefficient sequences that reproduce
the B-splines of their degrees; the steps update these exactly, which is
what makes the recursion self-sustaining.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from . import exact
from .piecewise import (
    PiecewisePoly,
    Q,
    combine,
    finite_difference,
)


class ReproductionError(ValueError):
    """A target function is not reproducible by the generator set."""

    def __init__(self, interval, msg=None):
        self.interval = interval
        super().__init__(msg or f"reproduction fails on interval [{interval}, {interval + 1})")


@dataclass(frozen=True)
class CoeffSeq:
    """Finitely supported vector coefficient sequence, one entry per channel."""

    channels: int
    data: dict  # k -> tuple of Fractions, length == channels

    @property
    def causal(self):
        return all(k >= 0 for k, v in self.data.items() if any(c != 0 for c in v))

    @property
    def finitely_supported(self):
        return True

    def vector(self, k):
        return self.data.get(k, (Q(0),) * self.channels)

    def channel(self, n):
        return {k: v[n] for k, v in self.data.items() if v[n] != 0}

    def support(self):
        keys = [k for k, v in self.data.items() if any(c != 0 for c in v)]
        return (min(keys), max(keys)) if keys else None

    @classmethod
    def delta(cls, channels, n):
        v = tuple(Q(1 if i == n else 0) for i in range(channels))
        return cls(channels, {0: v})


@dataclass(frozen=True)
class GeneratorSet:
    """An ordered tuple of generators for S_{n_1} + ... + S_{n_N}."""

    degrees: tuple
    gens: tuple
    repro_coeffs: dict | None = None
    postprocess: tuple | None = None  # ((coeff, channel, shift), ...) per generator
    channels: tuple | None = None  # default measurement tokens for named systems

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        object.__setattr__(self, "gens", tuple(self.gens))
        if not self.degrees:
            raise ValueError("a generator set needs at least one channel")
        if len(self.degrees) != len(self.gens):
            raise ValueError("one degree per generator required")

    @property
    def n(self):
        return len(self.gens)

    def support_sum(self):
        return sum(g.support_size() for g in self.gens)

    def max_span(self):
        return max((g.end - g.start for g in self.gens if g.pieces), default=0)

    def is_standardized(self):
        return all(
            g.start == 0 and g.integral() in (0, 1) for g in self.gens
        )

    def max_degree(self):
        return self.degrees[-1]


@functools.lru_cache(maxsize=None)
def bspline(n):
    """Causal B-spline of degree n, support [0, n+1]."""
    if n < 0:
        raise ValueError("degree must be >= 0")
    b = PiecewisePoly.box()
    for _ in range(n):
        b = finite_difference(b.antiderivative())
    return b


def standardize(gs):
    """Rescale to unit (or zero) integral and shift supports to start at 0."""
    gens, shifts, scales = [], [], []
    for g in gs.gens:
        integral = g.integral()
        r = Q(1) / integral if integral != 0 else Q(1)
        gens.append(g.scale(r).shift(-g.start))
        shifts.append(g.start)
        scales.append(r)
    coeffs = None
    if gs.repro_coeffs is not None:
        coeffs = {}
        for d, cs in gs.repro_coeffs.items():
            data = {}
            for k, vec in cs.data.items():
                for n, c in enumerate(vec):
                    if c == 0:
                        continue
                    key = k + shifts[n]
                    row = list(data.get(key, (Q(0),) * gs.n))
                    row[n] += c / scales[n]
                    data[key] = tuple(row)
            coeffs[d] = CoeffSeq(gs.n, data)
    return GeneratorSet(gs.degrees, gens, coeffs)


def _require_standardized(gs):
    if not gs.is_standardized():
        raise ValueError("generator set must be standardized first")


def _difference(cs):
    """Per-channel first difference c[k] - c[k-1] of a CoeffSeq."""
    keys = set(cs.data) | {k + 1 for k in cs.data}
    out = {}
    for k in sorted(keys):
        a = cs.vector(k)
        b = cs.vector(k - 1)
        out[k] = tuple(x - y for x, y in zip(a, b))
    return out


def _cumsum_channel(diff, pick):
    """Running sum over k of pick(diff[k]); must telescope back to zero."""
    acc = Q(0)
    out = {}
    for k in sorted(diff):
        acc += pick(diff[k])
        out[k] = acc
    if acc != 0:
        raise ReproductionError(None, "coefficient bookkeeping does not telescope")
    return out


def increment_step(gs):
    """Raise every degree by one while keeping the support sum minimal.

    Integrates each generator, then restores compact support: the shortest
    generator with nonzero integral is finite-differenced, every other
    unit-integral generator gets that antiderivative subtracted.
    """
    _require_standardized(gs)
    ints = [g.integral() for g in gs.gens]
    nonzero = [(gs.gens[i].support_size(), i) for i in range(gs.n) if ints[i] != 0]
    if not nonzero:
        raise ValueError(
            "every generator has zero mean: the set cannot reproduce B-splines"
        )
    s0 = min(nonzero)[1]
    H = [g.antiderivative() for g in gs.gens]
    gens = []
    for s in range(gs.n):
        if s == s0:
            gens.append(finite_difference(H[s]))
        elif ints[s] == 0:
            gens.append(H[s].compact())
        else:
            gens.append(H[s] - H[s0])
    out = GeneratorSet(tuple(d + 1 for d in gs.degrees), gens)
    if out.support_sum() != gs.support_sum() + 1:
        raise ValueError("non-compact result: input was not a shortest-support basis")
    if gs.repro_coeffs is not None:
        unit = [t for t in range(gs.n) if ints[t] != 0 and t != s0]
        coeffs = {}
        for d, cs in gs.repro_coeffs.items():
            diff = _difference(cs)
            cum = _cumsum_channel(
                diff, lambda v: v[s0] + sum((v[t] for t in unit), Q(0))
            )
            data = {}
            for k in diff:
                vec = list(diff[k])
                vec[s0] = cum[k]
                if any(c != 0 for c in vec):
                    data[k] = tuple(vec)
            coeffs[d + 1] = CoeffSeq(gs.n, data)
        out = GeneratorSet(out.degrees, out.gens, coeffs)
    return out


def insertion_step(gs):
    """Adjoin a degree-0 channel, in closed form, before raising degrees.

    Formally this is the increment step applied to (delta, gens...); the
    Dirac never materializes because its channel collapses to the unit box
    and the unit steps it spawns cancel exactly against unit-integral
    antiderivatives.
    """
    _require_standardized(gs)
    ints = [g.integral() for g in gs.gens]
    gens = [PiecewisePoly.box()]
    for s, g in enumerate(gs.gens):
        H = g.antiderivative()
        gens.append(H.compact() if ints[s] == 0 else H.minus_step())
    out = GeneratorSet((0,) + tuple(d + 1 for d in gs.degrees), gens)
    if out.support_sum() != gs.support_sum() + 1:
        raise ValueError("non-compact result: input was not a shortest-support basis")
    if gs.repro_coeffs is not None:
        coeffs = {0: CoeffSeq(gs.n + 1, {0: (Q(1),) + (Q(0),) * gs.n})}
        unit = [t for t in range(gs.n) if ints[t] != 0]
        for d, cs in gs.repro_coeffs.items():
            diff = _difference(cs)
            cum = _cumsum_channel(diff, lambda v: sum((v[t] for t in unit), Q(0)))
            data = {}
            for k in diff:
                vec = (cum[k],) + diff[k]
                if any(c != 0 for c in vec):
                    data[k] = vec
            coeffs[d + 1] = CoeffSeq(gs.n + 1, data)
        out = GeneratorSet(out.degrees, out.gens, coeffs)
    return out


def build_mb_spline(degrees):
    """Shortest-support basis of S_{n_1} + ... + S_{n_N}.

    Runs the full recursive schedule: seed with the B-spline of degree
    n_N - n_{N-1} - 1, then alternate one insertion step with a run of
    increment steps for each remaining degree gap.  The result is
    standardized and carries causal B-spline reproduction coefficients.
    """
    degrees = tuple(int(d) for d in degrees)
    if not degrees:
        raise ValueError("degree vector must be nonempty")
    if any(d < 0 for d in degrees):
        raise ValueError("degrees must be nonnegative")
    if any(a >= b for a, b in zip(degrees, degrees[1:])):
        raise ValueError("degrees must be strictly increasing")

    ext = (-1,) + degrees
    seed = degrees[-1] if len(degrees) == 1 else degrees[-1] - degrees[-2] - 1
    gs = GeneratorSet((seed,), (bspline(seed),), {seed: CoeffSeq.delta(1, 0)})
    for j in range(len(degrees) - 1, 0, -1):
        gs = insertion_step(standardize(gs))
        for _ in range(ext[j] - ext[j - 1] - 1):
            gs = increment_step(standardize(gs))
    gs = standardize(gs)

    if gs.degrees != degrees:
        raise AssertionError(f"schedule produced {gs.degrees}, wanted {degrees}")
    if gs.support_sum() != degrees[-1] + 1:
        raise AssertionError("support sum does not attain the minimal value")
    return gs


# ---------------------------------------------------------------------------
# reproduction solving


def slices_independent(gs):
    """Exact linear independence of all nonzero generator slices."""
    rows = []
    width = gs.max_degree() + 1
    for g in gs.gens:
        for _, p in g.slices():
            rows.append([p[i] if i < len(p) else Q(0) for i in range(max(width, len(p)))])
    if not rows:
        return True
    ncols = max(len(r) for r in rows)
    rows = [r + [Q(0)] * (ncols - len(r)) for r in rows]
    return exact.rank(rows, ncols) == len(rows)


def reproduction_coeffs(gs, target, window=None):
    """Coefficients c with target = sum_k c[k]^T gens(. - k), solved slicewise.

    ``window=None`` reproduces a compact target everywhere (detecting the
    causal/finite structure); an integer K solves on [0, K); a (lo, hi)
    pair solves on that interval range.  Raises ReproductionError with the
    first failing interval if the target is not in the space there.
    """
    if not slices_independent(gs):
        raise ValueError("generator slices are linearly dependent")
    span = gs.max_span()
    if window is None:
        if target.is_zero():
            return CoeffSeq(gs.n, {})
        lo, hi = target.start - span, target.end + span
    elif isinstance(window, int):
        lo, hi = 0, window
    else:
        lo, hi = window

    solved = {}
    for m in range(lo, hi):
        active = []
        for n, g in enumerate(gs.gens):
            for s_idx, _ in g.slices():
                k = m - s_idx
                if k + g.start < hi and k + g.end > lo:
                    active.append((n, k))
        new = [u for u in active if u not in solved]
        rhs_poly = list(target.piece(m))
        width = max(
            [len(rhs_poly)]
            + [len(gs.gens[n].piece(m - k)) for n, k in active]
            + [1]
        )
        rhs = [(rhs_poly[j] if j < len(rhs_poly) else Q(0)) for j in range(width)]
        for n, k in active:
            if (n, k) in solved:
                p = gs.gens[n].piece(m - k)
                c = solved[(n, k)]
                for j in range(len(p)):
                    rhs[j] -= c * p[j]
        if not new:
            if any(rhs):
                raise ReproductionError(m)
            continue
        rows = []
        for j in range(width):
            rows.append(
                [
                    (gs.gens[n].piece(m - k)[j] if j < len(gs.gens[n].piece(m - k)) else Q(0))
                    for n, k in new
                ]
            )
        try:
            sol = exact.solve(rows, rhs)
        except exact.InconsistentSystem:
            raise ReproductionError(m) from None
        except exact.UnderdeterminedSystem:
            raise ReproductionError(
                m, f"underdetermined system at interval {m}"
            ) from None
        for u, c in zip(new, sol):
            solved[u] = c

    data = {}
    for (n, k), c in solved.items():
        if c == 0:
            continue
        row = list(data.get(k, (Q(0),) * gs.n))
        row[n] = c
        data[k] = tuple(row)
    return CoeffSeq(gs.n, data)


def reassemble(gs, coeffs):
    """Evaluate sum_k c[k]^T gens(. - k) exactly as a PiecewisePoly."""
    out = PiecewisePoly.zero()
    for k, vec in coeffs.data.items():
        for n, c in enumerate(vec):
            if c != 0:
                out = out + gs.gens[n].shift(k).scale(c)
    return out


# ---------------------------------------------------------------------------
# compactly supported subspaces


def _continuity_orders(degrees):
    """Derivative orders that cannot jump at knots for members of the space."""
    allowed = set(degrees)
    return [v for v in range(max(degrees) + 1) if v not in allowed]


def compact_space_basis(degrees, length):
    """Exact basis of the space members supported inside [0, length].

    A piecewise polynomial of degree <= max(degrees) lies in the sum of
    spline spaces iff each derivative order that no component can supply a
    jump for is continuous at every knot (zero outside the window).
    """
    degrees = tuple(int(d) for d in degrees)
    M = degrees[-1]
    cont = _continuity_orders(degrees)
    ncols = length * (M + 1)
    fact = [1] * (M + 2)
    for i in range(1, M + 2):
        fact[i] = fact[i - 1] * i

    def deriv_row(piece, t, order):
        row = [Q(0)] * ncols
        for j in range(order, M + 1):
            row[piece * (M + 1) + j] = Q(fact[j], fact[j - order]) * (Q(t) ** (j - order))
        return row

    rows = []
    for knot in range(length + 1):
        for v in cont:
            row = [Q(0)] * ncols
            if knot > 0:
                for c, x in enumerate(deriv_row(knot - 1, 1, v)):
                    row[c] += x
            if knot < length:
                for c, x in enumerate(deriv_row(knot, 0, v)):
                    row[c] -= x
            if any(row):
                rows.append(row)
    basis = []
    for v in exact.nullspace(rows, ncols):
        pieces = [v[i * (M + 1): (i + 1) * (M + 1)] for i in range(length)]
        basis.append(PiecewisePoly(0, pieces))
    return basis


def solve_in_span(basis, conditions):
    """Unique element of span(basis) satisfying exact pointwise conditions.

    Conditions are (order, x, side, value) tuples; the system may be
    overdetermined but must be consistent and have a unique solution.
    """
    rows, rhs = [], []
    for order, x, side, value in conditions:
        rows.append([b(Q(x), order=order, side=side) for b in basis])
        rhs.append(Q(value))
    sol = exact.solve(rows, rhs)
    return combine(sol, basis)

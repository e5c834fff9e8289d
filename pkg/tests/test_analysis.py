"""Gramian/Riesz diagnostics, slice independence, dimensions, reproduction."""

import itertools
import math
from fractions import Fraction as F

import numpy as np
import pytest

from multispline import (
    GeneratorSet,
    PiecewisePoly,
    bspline,
    build_mb_spline,
    compact_dim,
    gramian,
    named_basis,
    overlap_count,
    riesz_bounds,
    slice_independence,
    smoothness_order,
    verify_reproduction,
)

BOX = PiecewisePoly.box()


def two_rectangles(alpha):
    return GeneratorSet((0,), (PiecewisePoly(0, [[1], [F(alpha)]]),))


# -- gramian ---------------------------------------------------------------------


def test_gramian_box_orthonormal():
    for omega in (0.0, 1.3, math.pi):
        g = gramian(GeneratorSet((0,), (BOX,)), omega)
        assert np.allclose(g.matrix, [[1.0]])


def test_gramian_bspline_pair_singular_at_zero():
    gs = GeneratorSet((2, 3), (bspline(2), bspline(3)))
    report = riesz_bounds(gs, 256)
    assert report.det_zero_exact == 0
    assert report.A == 0.0


def test_gramian_hermitian_on_grid():
    gs = named_basis("hermite_cubic")
    for omega in np.linspace(0, 2 * math.pi, 17):
        g = gramian(gs, float(omega)).matrix
        assert np.allclose(g, g.conj().T, atol=1e-12)


def test_gramian_spectrum_symmetry():
    gs = build_mb_spline((2, 3))
    for omega in (0.3, 1.1, 2.9):
        a = np.linalg.eigvalsh(gramian(gs, omega).matrix)
        b = np.linalg.eigvalsh(gramian(gs, 2 * math.pi - omega).matrix)
        assert np.allclose(a, b, atol=1e-12)


# -- riesz bounds -----------------------------------------------------------------


def test_riesz_box_exact():
    report = riesz_bounds(GeneratorSet((0,), (BOX,)), 64)
    assert report.A == pytest.approx(1.0, abs=1e-12)
    assert report.B == pytest.approx(1.0, abs=1e-12)


def test_riesz_two_rectangle_counterexample():
    # Gramian is (1 + a^2) + 2 a cos(w): bounds 1 - a and 1 + a
    report = riesz_bounds(two_rectangles(F(1, 2)), 1024)
    assert report.A == pytest.approx(0.5, abs=1e-6)
    assert report.B == pytest.approx(1.5, abs=1e-6)


def test_riesz_positive_for_shortest_basis():
    report = riesz_bounds(build_mb_spline((2, 3)), 512)
    assert report.A > 1e-6


def test_riesz_monotone_under_grid_refinement():
    gs = build_mb_spline((1, 3))
    coarse = riesz_bounds(gs, 256)
    fine = riesz_bounds(gs, 512)  # nested grid: extrema can only widen
    assert fine.A <= coarse.A + 1e-15
    assert fine.B >= coarse.B - 1e-15


# -- slices -----------------------------------------------------------------------


def test_slice_independence_of_built_bases():
    assert slice_independence(build_mb_spline((4, 5))).independent
    assert slice_independence(GeneratorSet((0,), (BOX,))).independent


def test_slice_dependence_of_counterexample():
    cert = slice_independence(two_rectangles(F(1, 2)))
    assert not cert.independent
    assert cert.rank == 1 and cert.count == 2


def test_slice_dependence_of_bspline_pair():
    cert = slice_independence(GeneratorSet((2, 3), (bspline(2), bspline(3))))
    assert not cert.independent


# -- overlap ----------------------------------------------------------------------


def test_overlap_counts():
    assert overlap_count(GeneratorSet((2,), (bspline(2),)), F(1, 2)) == 3
    assert overlap_count(build_mb_spline((4, 5)), F(1, 3)) == 6
    assert overlap_count(GeneratorSet((0, 3), (BOX, bspline(3))), F(1, 2)) == 5


def test_overlap_constant_over_points():
    gs = build_mb_spline((2, 5))
    values = {overlap_count(gs, F(2 * j + 1, 256)) for j in range(128)}
    assert values == {6}


def test_overlap_requires_unit_interval():
    with pytest.raises(ValueError):
        overlap_count(GeneratorSet((0,), (BOX,)), F(3, 2))


# -- smoothness --------------------------------------------------------------------


def test_smoothness_orders():
    assert smoothness_order(BOX) == -1
    assert smoothness_order(bspline(3)) == 2
    assert smoothness_order(named_basis("derivative_sampling(2)").gens[0]) == 3
    assert smoothness_order(PiecewisePoly.zero()) == math.inf


# -- dimension oracles ---------------------------------------------------------------


def test_compact_dim_reference_values():
    assert compact_dim(3, 1, 4) == 1
    assert compact_dim(3, 1, 3) == 0
    assert compact_dim(2, 2, 2) == 2


def test_compact_dim_formula_vs_rank_oracle():
    for n, n_ch, length in itertools.product(range(7), range(1, 4), range(6)):
        assert compact_dim(n, n_ch, length) == max(0, length * n_ch - n)


# -- reproduction ---------------------------------------------------------------------


def test_reproduction_of_built_basis():
    report = verify_reproduction(build_mb_spline((2, 3)), 3, 16)
    assert report.ok
    assert report.max_residual == 0


def test_reproduction_failure_for_box():
    report = verify_reproduction(GeneratorSet((0,), (BOX,)), 1, 16)
    assert not report.ok
    assert report.witness_degree == 1


def test_reproduction_lagrange3():
    report = verify_reproduction(named_basis("lagrange(3)"), 3, 16)
    assert report.ok


def test_built_basis_full_suite():
    gs = build_mb_spline((1, 2, 5))
    assert slice_independence(gs).independent
    assert riesz_bounds(gs, 256).A > 1e-6
    assert verify_reproduction(gs, 5, 24).ok
    assert min(smoothness_order(g) for g in gs.gens) >= 0

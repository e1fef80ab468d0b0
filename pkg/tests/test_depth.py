import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import ndtr

from depthgeom import depth
from depthgeom.depth import (classify_max_depth, halfspace_depth, hd_analytic, hd_empirical_2d,
                             hd_empirical_brute, hd_polygonal)
from depthgeom.errors import InputError, UnsupportedMeasure
from depthgeom.geom import Halfspace, regular_polygon
from depthgeom.measures import (Empirical, Gaussian, UniformBall, UniformPolygonal, UnitSquare,
                                ball_marginal_cdf, cauchy_1sym, fig_difference, halfspace_prob,
                                tancer, triangle)

small = st.integers(-3, 3).map(float)
lattice = st.lists(st.tuples(small, small), min_size=1, max_size=25).map(np.array)


# -- measures -------------------------------------------------------------------------

def test_halfspace_prob_complement():
    h = Halfspace([1.0, 2.0], 0.3)
    for m in (Gaussian.standard(2), UnitSquare(), triangle(), UniformBall(2), cauchy_1sym()):
        assert halfspace_prob(m, h) + halfspace_prob(m, h.complement()) == pytest.approx(1.0, abs=1e-12)


def test_empirical_boundary_mass_counts_twice():
    m = Empirical([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0], [3.0, 0.0]])
    h = Halfspace([1.0, 0.0], 1.0)
    assert halfspace_prob(m, h) + halfspace_prob(m, h.complement()) == pytest.approx(1.25)


def test_quantiles():
    sq = UnitSquare()
    assert sq.projection_quantile([1.0, 0.0], 0.3) == pytest.approx(0.3, abs=1e-12)
    g = Gaussian([1.0, -1.0], [[4.0, 0.0], [0.0, 1.0]])
    assert g.projection_quantile([1.0, 0.0], ndtr(1.0)) == pytest.approx(3.0)
    m = Empirical([[0.0], [1.0], [2.0], [3.0]])
    assert m.projection_quantile([1.0], 0.5) == 1.0
    assert m.upper_quantile([1.0], 0.5) == 2.0


def test_ball_marginal_cdf_disk():
    s = 0.4
    cap = (math.acos(s) - s * math.sqrt(1 - s * s)) / math.pi
    assert ball_marginal_cdf(2, s) == pytest.approx(1 - cap, abs=1e-14)


def test_samples_reproducible():
    for m in (Gaussian.standard(2), triangle(), UniformBall(2), fig_difference()):
        assert np.array_equal(m.sample(50, 4), m.sample(50, 4))


# -- closed forms -------------------------------------------------------------------------

def test_gaussian_depth_and_direction():
    r = hd_analytic([1.0, 0.0], Gaussian.standard(2))
    assert r.value == pytest.approx(ndtr(-1.0), abs=1e-15)
    assert np.allclose(r.directions[0], [1.0, 0.0])


def test_square_and_triangle_polygonal():
    assert hd_polygonal([0.25, 0.5], UnitSquare()).value == pytest.approx(0.25, abs=1e-12)
    # centroid of a triangle has depth 4/9
    assert hd_polygonal([1 / 3, 1 / 3], triangle()).value == pytest.approx(4 / 9, abs=1e-9)


def test_tancer_segment_depth():
    for e in (-0.5, 0.0, 0.3, 0.5):
        assert hd_polygonal([e, 0.0], tancer()).value == pytest.approx(0.2, abs=1e-9)


def test_outside_support_has_depth_zero():
    assert hd_polygonal([2.0, 2.0], UnitSquare()).value == 0.0
    assert hd_empirical_2d([9.0, 9.0], [[0, 0], [1, 0], [0, 1]]).value == 0.0


def test_cauchy_depth():
    # alpha = 1 gives the sup-norm of x as the projection scale
    v = hd_analytic([1.0, 0.5], cauchy_1sym()).value
    assert v == pytest.approx(0.5 - math.atan(1.0) / math.pi, abs=1e-12)


# -- empirical ----------------------------------------------------------------------------

@settings(max_examples=80, deadline=None)
@given(lattice, small, small)
def test_empirical_fast_equals_brute(pts, x0, x1):
    a = hd_empirical_2d([x0, x1], pts)
    b = hd_empirical_brute([x0, x1], pts)
    assert a.count == b.count


@settings(max_examples=40, deadline=None)
@given(lattice, small, small, st.floats(0.2, 3.0), st.floats(-2, 2))
def test_empirical_affine_invariance(pts, x0, x1, s, shear):
    A = np.array([[s, shear], [0.0, 1.0 / s]])
    b = np.array([0.5, -1.0])
    x = np.array([x0, x1])
    assert hd_empirical_2d(x, pts).count == hd_empirical_2d(A @ x + b, pts @ A.T + b).count


def test_brute_in_three_dimensions():
    pts = np.array([[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, -1]], dtype=float)
    assert hd_empirical_brute([0.0, 0.0, 0.0], pts).value == 0.25
    with pytest.raises(InputError):
        hd_empirical_brute(np.zeros(2), np.zeros((61, 2)))


def test_dispatch():
    assert halfspace_depth([0.5, 0.5], UnitSquare()).value == pytest.approx(0.5)
    assert halfspace_depth([0.0, 0.0], Empirical([[0, 1], [1, 0], [-1, -1]])).value == pytest.approx(1 / 3)


# -- other depths -------------------------------------------------------------------------

def test_mahalanobis():
    mu, sigma = np.array([1.0, 0.0]), np.array([[4.0, 0.0], [0.0, 1.0]])
    assert depth.mahalanobis_distance([3.0, 0.0], mu, sigma) == pytest.approx(1.0)
    assert depth.mahalanobis_depth([3.0, 0.0], mu, sigma) == pytest.approx(0.5)
    e = depth.mahalanobis_region(mu, sigma, 0.5)
    assert np.allclose(e.center, mu)


def test_oja_centroid_body_against_monte_carlo():
    disk = UniformPolygonal(regular_polygon(1024))
    exact = depth.oja_via_centroid_body(disk, [0.0, 0.0])
    # closed form 1 / (1 + 16 / (9 pi)) for the disk centre
    assert exact == pytest.approx(1 / (1 + 16 / (9 * math.pi)), abs=1e-4)
    mc = depth.oja_depth_mc([0.0, 0.0], disk, trials=200_000, seed=3)
    assert abs(mc.value - exact) < 5 * mc.stderr + 1e-4


def test_oja_mc_reproducible():
    a = depth.oja_depth_mc([0.1, 0.0], triangle(), trials=5000, seed=1)
    b = depth.oja_depth_mc([0.1, 0.0], triangle(), trials=5000, seed=1)
    assert a.value == b.value


def test_classify():
    a = Empirical([[0, 0], [1, 0], [0, 1], [1, 1]])
    b = Empirical([[2, 0], [3, 0], [2, 1], [3, 1]])
    assert classify_max_depth([0.5, 0.5], a, b) == 1
    assert classify_max_depth([2.5, 0.5], a, b) == 2
    assert classify_max_depth([9.0, 9.0], a, b) == "unclassified"


def test_unsupported():
    with pytest.raises(UnsupportedMeasure):
        hd_analytic([0.0, 0.0], triangle())
    with pytest.raises(UnsupportedMeasure):
        hd_polygonal([0.0, 0.0], Gaussian.standard(2))

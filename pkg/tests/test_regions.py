import math

import numpy as np
import pytest
from scipy.special import ndtri

from depthgeom import regions
from depthgeom.errors import InputError, UnsupportedMeasure
from depthgeom.geom import Halfspace, boundary_distance, hausdorff, regular_polygon
from depthgeom.measures import (Empirical, Gaussian, UniformBall, UniformPolygonal, UnitSquare,
                                fig_difference, halfspace_prob, tancer, triangle)


def test_gaussian_region_is_ellipse():
    d = 0.16
    reg = regions.central_region(Gaussian.standard(2), d, 512)
    r = -ndtri(d)
    radii = np.linalg.norm(reg.polygon.vertices, axis=1)
    # outer polygon: every vertex at or just beyond the circle
    assert radii.min() >= r - 1e-9
    assert radii.max() <= r * (1 + 1e-4)
    assert reg.inner is not None and hausdorff(reg.inner, reg.polygon) <= reg.bound + 1e-12


def test_four_atoms_median_region_is_origin():
    m = Empirical([[1, 1], [1, -1], [-1, 1], [-1, -1]])
    reg = regions.central_region(m, 0.5)
    assert reg.exact
    # a point, up to the 1e-9 * scale geometric tolerance
    assert np.allclose(reg.polygon.vertices, 0.0, atol=1e-8)


def test_fig_difference_intervals():
    m = fig_difference()
    lo, hi = regions.central_region(m, 0.25).interval
    assert lo == pytest.approx(0.0, abs=1e-12) and hi == pytest.approx(11 / 3)
    lo, hi = regions.convex_floating_body(m, 0.25).interval
    assert lo == pytest.approx(1.0, abs=1e-12) and hi == pytest.approx(11 / 3)


def test_square_central_region_equals_floating_body():
    sq = UnitSquare()
    d = regions.central_region(sq, 0.2, 256)
    p = regions.convex_floating_body(sq, 0.2, 256)
    assert hausdorff(d.polygon, p.polygon) < 1e-12


def test_square_region_vertices_have_the_level_depth():
    reg = regions.central_region(UnitSquare(), 0.25, 512, refine_tol=1e-7)
    v = reg.polygon.vertices
    val = 2 * np.minimum(v[:, 0], 1 - v[:, 0]) * np.minimum(v[:, 1], 1 - v[:, 1])
    assert np.max(np.abs(val - 0.25)) <= 1e-6


def test_nested_regions():
    m = triangle()
    outer = regions.central_region(m, 0.1, 256)
    inner = regions.central_region(m, 0.3, 256)
    assert np.all(outer.polygon.contains(inner.polygon.vertices, tol=1e-12))


def test_triangle_median_and_emptiness():
    med = regions.halfspace_median(triangle())
    assert med.depth == pytest.approx(4 / 9, abs=1e-5)
    assert med.unique and np.allclose(med.point, [1 / 3, 1 / 3], atol=1e-4)
    assert regions.central_region(triangle(), 0.45).is_empty
    assert regions.winternitz(triangle()) == pytest.approx(0.8, abs=1e-4)


def test_empirical_median_non_unique():
    med = regions.halfspace_median(Empirical([[0, 0], [1, 0], [0, 1]]))
    assert med.depth == pytest.approx(1 / 3)
    assert not med.unique and med.point is None


def test_floating_body_existence():
    sq = regions.floating_body_exists(UnitSquare(), 0.1)
    assert sq.exists and sq.max_deviation < 1e-7
    tri = regions.floating_body_exists(triangle(), 0.1)
    assert not tri.exists
    # frozen from the 4096-normal run; a 3000^2 raster oracle gives 0.034 delta
    assert tri.max_deviation == pytest.approx(0.00279, abs=2e-4)


def test_dupin_curves():
    assert regions.dupin_curve(UnitSquare(), 0.1).convex
    assert not regions.dupin_curve(triangle(), 0.1).convex
    disk = UniformPolygonal(regular_polygon(512))
    c = regions.dupin_curve(disk, 0.1)
    assert c.convex
    reg = regions.convex_floating_body(disk, 0.1, 512)
    assert regions.dupin_boundary_gap(c, reg) < 1e-3


def test_tancer_strict_convexity_failure():
    reg = regions.convex_floating_body(tancer(), 0.2, 1024)
    seg = np.column_stack([np.linspace(-0.5, 0.5, 11), np.zeros(11)])
    assert np.max(boundary_distance(seg, reg.polygon)) < 1e-6


def test_symmetry_report():
    sq = regions.symmetry_report(UnitSquare())
    assert sq.central and sq.angular and sq.halfspace
    tri = regions.symmetry_report(triangle())
    assert not tri.central and not tri.halfspace
    g = regions.symmetry_report(Gaussian([1.0, 2.0], [[2.0, 0.5], [0.5, 1.0]]))
    assert g.central and g.halfspace and np.allclose(g.center, [1.0, 2.0], atol=1e-6)


def test_minimal_directions_and_ray_basis():
    dirs = regions.minimal_directions([0.5, 0.5], UnitSquare())
    assert len(dirs) >= 3
    assert regions.ray_basis_check([0.5, 0.5], UnitSquare(), dirs)
    off = regions.minimal_directions([0.2, 0.5], UnitSquare())
    assert not regions.ray_basis_check([0.2, 0.5], UnitSquare(), off)


def test_dupin_barycenter():
    ok = regions.dupin_barycenter_check([0.5, 0.3], UnitSquare())
    assert ok.max_deviation < 1e-6
    bad = regions.dupin_barycenter_check([0.3, 0.0], tancer())
    assert bad.barycenter_fails and bad.max_deviation == pytest.approx(0.3, abs=1e-6)


@pytest.mark.parametrize("m", [Gaussian.standard(2), UnitSquare(), UniformBall(2)])
def test_reconstruction(m):
    rng = np.random.default_rng(11)
    c = m.center()
    for _ in range(8):
        t = rng.uniform(0, 2 * math.pi)
        u = np.array([math.cos(t), math.sin(t)])
        h = Halfspace(u, float(u @ c) + rng.uniform(-0.4, 0.4))
        assert regions.reconstruct_halfspace_prob(h, m) == pytest.approx(halfspace_prob(m, h), abs=1e-5)


def test_reconstruction_rejects_unqualified():
    with pytest.raises(UnsupportedMeasure):
        regions.reconstruct_halfspace_prob(Halfspace([1.0, 0.0], 0.3), triangle())


def test_isotropic_sandwich():
    r = regions.isotropic_sandwich_check(Gaussian.standard(2), 0.05)
    assert r.holds
    # (1/e - delta) times the isotropic constant (2 pi)^(-1/2)
    assert r.r_inner == pytest.approx((1 / math.e - 0.05) / math.sqrt(2 * math.pi), rel=1e-9)


def test_depth_centroid_map_gaussian():
    c = regions.depth_centroid_map(Gaussian([0.5, -0.5], np.eye(2)), 0.2)
    assert np.allclose(c, [0.5, -0.5], atol=1e-6)


def test_level_validation():
    with pytest.raises(InputError):
        regions.central_region(UnitSquare(), 0.0)
    with pytest.raises(InputError):
        regions.convex_floating_body(UnitSquare(), 1.0)

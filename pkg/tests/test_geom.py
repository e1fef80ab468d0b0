import math
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.spatial import ConvexHull

from depthgeom import _kernels_py, geom, kernels
from depthgeom.errors import InputError
from depthgeom.geom import Halfspace, Polygon, box, convex_hull, regular_polygon

try:
    from depthgeom import _kernels as compiled
except ImportError:
    compiled = None

needs_ext = pytest.mark.skipif(compiled is None, reason="compiled kernels not built")

coord = st.floats(-10, 10, allow_nan=False, allow_infinity=False)
cloud = st.lists(st.tuples(coord, coord), min_size=3, max_size=40).map(lambda p: np.array(p))


def _random_convex(rng, k=12):
    return convex_hull(rng.normal(size=(k, 2)))


# -- halfspaces and polygons -----------------------------------------------------------

def test_halfspace_normalizes():
    h = Halfspace([3.0, 4.0], 10.0)
    assert np.allclose(h.normal, [0.6, 0.8])
    assert h.offset == pytest.approx(2.0)
    assert h.contains([[0.0, 0.0]])[0]
    with pytest.raises(InputError):
        Halfspace([0.0, 0.0], 1.0)


def test_polygon_basic():
    sq = box(0, 0, 2, 1)
    assert sq.area == pytest.approx(2.0)
    assert sq.convex
    assert sq.diameter == pytest.approx(math.sqrt(5))
    assert np.allclose(geom.centroid(sq), [1.0, 0.5])
    assert list(sq.contains([[1, 0.5], [3, 0], [2, 1]])) == [True, False, True]


def test_clip_halfplane_square():
    sq = box(0, 0, 1, 1)
    cut = geom.clip_halfplane(sq, Halfspace([1.0, 1.0], 1.0))
    assert cut.area == pytest.approx(0.5)
    assert geom.clip_halfplane(sq, Halfspace([1.0, 0.0], -1.0)).is_empty


def test_intersect_halfplanes_square():
    hs = [Halfspace([1, 0], 1), Halfspace([-1, 0], 1), Halfspace([0, 1], 1), Halfspace([0, -1], 1)]
    p = geom.intersect_halfplanes(hs)
    assert p.area == pytest.approx(4.0)


def test_polar_of_centered_square_is_diamond():
    sq = box(-1, -1, 1, 1)
    pol = geom.polar_body(sq)
    assert pol.area == pytest.approx(2.0)
    assert geom.hausdorff(pol, Polygon([[1, 0], [0, 1], [-1, 0], [0, -1]])) < 1e-12


def test_support_function_and_hausdorff():
    p = regular_polygon(4, radius=1.0)
    assert geom.support_function(p, [1.0, 0.0]) == pytest.approx(1.0)
    assert geom.hausdorff(p, p.translate([0.3, 0.0])) == pytest.approx(0.3)


def test_chord_barycenter_symmetric():
    sq = box(-1, -1, 1, 1)
    b = geom.chord_barycenter(sq, Halfspace([0.0, 1.0], 0.25))
    assert np.allclose(b, [0.0, 0.25])


def test_symdiff_and_intersection_area():
    a, b = box(0, 0, 2, 2), box(1, 1, 3, 3)
    assert geom.intersection_area(a, b) == pytest.approx(1.0)
    assert geom.symdiff_area(a, b) == pytest.approx(6.0)


@settings(max_examples=60, deadline=None)
@given(cloud)
def test_hull_matches_scipy(pts):
    try:
        ref = ConvexHull(pts).volume
    except Exception:
        return  # degenerate input; scipy refuses it
    assert convex_hull(pts).area == pytest.approx(ref, rel=1e-9, abs=1e-9)
    assert kernels.hull_area(pts) == pytest.approx(ref, rel=1e-9, abs=1e-9)


@settings(max_examples=60, deadline=None)
@given(cloud, st.floats(0, 2 * math.pi), st.floats(-5, 5))
def test_clip_complements_add_up(pts, theta, c):
    poly = convex_hull(pts)
    if poly.area <= 1e-9:
        return
    u = np.array([math.cos(theta), math.sin(theta)])
    lo = geom.clip_halfplane(poly, Halfspace(u, c)).area
    hi = geom.clip_halfplane(poly, Halfspace(-u, -c)).area
    assert lo + hi == pytest.approx(poly.area, rel=1e-9, abs=1e-9)


@settings(max_examples=40, deadline=None)
@given(cloud)
def test_hull_contains_its_points(pts):
    poly = convex_hull(pts)
    if poly.area <= 1e-9:
        return
    assert np.all(poly.contains(pts, tol=1e-9 * poly.scale))


# -- kernels ----------------------------------------------------------------------------

@needs_ext
def test_compiled_and_python_kernels_agree():
    rng = np.random.default_rng(0)
    for _ in range(50):
        v = np.ascontiguousarray(_random_convex(rng).vertices)
        th = rng.uniform(0, 2 * math.pi)
        nx, ny, c = math.cos(th), math.sin(th), float(rng.normal())
        assert compiled.clip_area(v, nx, ny, c) == pytest.approx(_kernels_py.clip_area(v, nx, ny, c),
                                                                 abs=1e-12)
        m1, m2 = compiled.clip_moments(v, nx, ny, c), _kernels_py.clip_moments(v, nx, ny, c)
        assert np.allclose(m1, m2, atol=1e-12)
        a1, a2 = np.asarray(compiled.clip(v, nx, ny, c)), np.asarray(_kernels_py.clip(v, nx, ny, c))
        assert a1.shape == a2.shape and np.allclose(a1, a2, atol=1e-12)
        ang = np.sort(rng.uniform(0, 2 * math.pi, 32))
        p = rng.normal(size=2) * 0.3
        s1 = compiled.sweep_areas(v, float(p[0]), float(p[1]), ang)
        s2 = _kernels_py.sweep_areas(v, float(p[0]), float(p[1]), ang)
        assert np.allclose(s1, s2, atol=1e-12)
        pts = rng.normal(size=(40, 2))
        srt = np.ascontiguousarray(pts[np.lexsort((pts[:, 1], pts[:, 0]))])
        assert compiled.hull_area(srt) == pytest.approx(_kernels_py.hull_area(srt), abs=1e-12)


def test_pure_python_switch():
    env = dict(os.environ, DEPTHGEOM_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from depthgeom import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"

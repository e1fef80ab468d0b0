import math

import numpy as np
import pytest

from depthgeom import asa, geom, smooth
from depthgeom.errors import InputError
from depthgeom.measures import LogConcave


def test_asa_disk_and_ellipse():
    assert asa.affine_surface_area(smooth.disk()) == pytest.approx(2 * math.pi, abs=1e-12)
    # affine image of the disk: as scales with det^(1/3)
    assert asa.affine_surface_area(smooth.ellipse(3.0, 0.5)) == pytest.approx(2 * math.pi * 1.5 ** (1 / 3),
                                                                              rel=1e-10)
    assert asa.affine_surface_area(geom.regular_polygon(7)) == 0.0


@pytest.mark.parametrize("body", [smooth.disk(), smooth.ellipse(2.0, 0.7), smooth.perturbed_disk(0.08, 3)])
def test_lp_endpoints(body):
    assert asa.lp_affine_surface_area(body, 0) == pytest.approx(2 * body.area, rel=1e-10)
    assert asa.lp_affine_surface_area(body, 1) == pytest.approx(asa.affine_surface_area(body), rel=1e-10)


def test_lp_infinity_is_polar_area():
    e = smooth.ellipse(2.0, 0.5)
    assert asa.lp_affine_surface_area(e, math.inf) == pytest.approx(2 * asa.polar_area(e), rel=1e-10)
    with pytest.raises(InputError):
        asa.lp_affine_surface_area(e, -2)


def test_isoperimetric_margin():
    assert abs(asa.affine_isoperimetric_check(smooth.ellipse(4.0, 0.25))) < 1e-12
    assert asa.affine_isoperimetric_check(smooth.perturbed_disk(0.1, 3)) > 0.01


def test_santalo():
    sq = asa.blaschke_santalo_check(geom.box(-1, -1, 1, 1), start=[0.2, -0.1])
    assert np.allclose(sq.point, 0.0, atol=1e-5)
    assert sq.product == pytest.approx(8.0, rel=1e-8)
    d = asa.blaschke_santalo_check(smooth.disk(), start=[0.1, 0.1])
    assert d.product == pytest.approx(math.pi ** 2, rel=1e-8)


def test_spectral_floating_area_converges_on_the_disk():
    delta = 1e-3
    h = asa.floating_body_area(smooth.disk(), delta)
    # the disk floating body is a concentric disk; solve the cap area for its radius
    s = smooth.disk().cap_offset(np.array([1.0, 0.0]), delta)
    assert h == pytest.approx(math.pi * s * s, rel=1e-10)


def test_floating_limit_disk():
    lim = asa.asa_via_floating(smooth.disk())
    assert lim.limit == pytest.approx(math.pi * 1.5 ** (2 / 3), rel=1e-5)


def test_flag_asymptotics():
    sq = asa.polytope_flag_asymptotic(geom.box(0, 0, 1, 1), (1e-4,))
    exact = asa.square_floating_loss(1e-4) / (1e-4 * math.log(1e4))
    assert sq.values[0] == pytest.approx(exact, abs=5e-4)
    hexagon = asa.polytope_flag_asymptotic(geom.regular_polygon(6), (1e-4, 1e-5))
    assert hexagon.flags == 12
    assert np.all(np.diff(hexagon.values) < 0)


def test_curvature_probes():
    d = asa.generalized_curvature_probe(smooth.disk(), 0.0)
    assert d.estimate == pytest.approx(1.0, abs=1e-3)
    saw = asa.generalized_curvature_probe(asa.sawtooth_profile(), 0.0)
    assert saw.estimate == pytest.approx(2.0, abs=1e-3)
    edge = asa.generalized_curvature_probe(geom.box(0, 0, 1, 1), [0.5, 0.0])
    # flat edge: heights equal delta, so the probe is (32/9) delta and tends to 0
    assert np.allclose(edge.values, 32 / 9 * edge.deltas, rtol=1e-9)


def _gaussian_gauge():
    return LogConcave(lambda x: 0.5 * float(np.dot(x, x)), lambda x: np.asarray(x, dtype=float),
                      lambda x: np.eye(2), 2)


def test_logconcave_asa():
    for d in (1, 2):
        assert asa.asa_logconcave(LogConcave.standard_gaussian(d)) == pytest.approx(1.0, abs=1e-9)
    g = _gaussian_gauge()
    assert asa.lambda_asa(g, 0.0) == pytest.approx(2 * math.pi, rel=1e-9)
    assert asa.lambda_asa(g, 0.25) == pytest.approx(asa.asa_logconcave(g), rel=1e-9)
    assert asa.lambda_asa(g, 1 / 3) == pytest.approx(asa.lp_affine_surface_area(smooth.disk(), 1),
                                                     rel=1e-8)


def test_floating_function_parabola():
    f = asa.ConvexFunction1D(lambda x: 0.5 * np.asarray(x) ** 2, lambda x: np.asarray(x, dtype=float),
                             lambda x: np.ones_like(np.asarray(x, dtype=float)))
    delta = 1e-2
    g = asa.floating_function_1d(f, delta)
    shift = 0.5 * (1.5 * delta) ** (2 / 3)
    for x in (-1.0, 0.0, 0.7):
        assert g(x) - 0.5 * x * x == pytest.approx(shift, rel=1e-8)
        assert g.slope(x) == pytest.approx(x, abs=1e-8)


def test_floating_function_affine_piece_is_unchanged():
    f = asa.ConvexFunction1D(lambda x: np.abs(np.asarray(x, dtype=float)),
                             lambda x: np.sign(np.asarray(x, dtype=float)),
                             lambda x: np.zeros_like(np.asarray(x, dtype=float)))
    g = asa.floating_function_1d(f, 1e-2)
    assert g(3.0) == pytest.approx(3.0)


def test_convexity_check():
    with pytest.raises(InputError):
        asa.ConvexFunction1D(lambda x: -np.asarray(x) ** 2, lambda x: -2 * np.asarray(x),
                             lambda x: -2 * np.ones_like(np.asarray(x, dtype=float)))

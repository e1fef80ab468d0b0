import math

import numpy as np
import pytest

from depthgeom import approx, geom, smooth
from depthgeom.errors import InputError, UnsupportedMeasure
from depthgeom.measures import Gaussian, UnitSquare


def test_greedy_square_at_the_largest_level():
    sq = geom.box(0, 0, 1, 1)
    g = approx.floating_body_algorithm(sq, 1 / (4 * math.e ** 4))
    assert g.inner_ok and g.outer_ok and g.n == 4


def test_greedy_disk_scaling():
    disk = smooth.disk().polygon(4096)
    runs = [approx.floating_body_algorithm(disk, d) for d in (8e-3, 1e-3, 1.25e-4)]
    assert all(r.inner_ok and r.outer_ok for r in runs)
    ns = [r.n for r in runs]
    # N grows like delta^(-1/3): dividing delta by 8 doubles N
    for a, b in zip(ns, ns[1:]):
        assert 1.8 < b / a < 2.2
    deficits = [disk.area - r.polygon.area for r in runs]
    for a, b in zip(deficits, deficits[1:]):
        assert 3.5 < a / b < 4.5


def test_greedy_rejects_large_delta():
    with pytest.raises(InputError):
        approx.floating_body_algorithm(geom.box(0, 0, 1, 1), 0.1)


def test_random_polytope_runs_are_seeded():
    a = approx.random_polytope_deficit(smooth.disk(), 32, 30, seed=4)
    b = approx.random_polytope_deficit(smooth.disk(), 32, 30, seed=4)
    c = approx.random_polytope_deficit(smooth.disk(), 32, 30, seed=5)
    assert np.array_equal(a.deficits, b.deficits)
    assert not np.array_equal(a.deficits, c.deficits)
    assert np.all(a.deficits > 0)


def test_square_interior_deficit_log_rate():
    sq = geom.box(0, 0, 1, 1)
    for n in (64, 256):
        r = approx.random_polytope_deficit(sq, n, 200, seed=n)
        # expected deficit for the square is (8/3) log(n) / n asymptotically
        assert 2.2 < r.mean * n / math.log(n) < 2.9


def test_deficit_series_and_sandwich():
    disk = smooth.disk()
    runs = [approx.random_polytope_deficit(disk, n, 150, seed=1) for n in (16, 32, 64, 128)]
    s = approx.deficit_series(runs)
    assert abs(s.slope + 2 / 3) < 0.1
    assert s.trend_tau == pytest.approx(-1.0)
    assert len(s.table()) == 4
    assert 1.0 < approx.sandwich_ratio(disk, runs[-1]) < 1.4


def test_boundary_densities():
    e = smooth.ellipse(3.0, 1.0)
    fa = approx.random_boundary_polytope(e, "f_as", 128, 200, seed=2)
    un = approx.random_boundary_polytope(e, "uniform", 128, 200, seed=3)
    assert fa.mean < un.mean
    with pytest.raises(InputError):
        approx.random_boundary_polytope(e, "weird", 16, 2, seed=0)


def test_hull_experiment_inputs():
    with pytest.raises(UnsupportedMeasure):
        approx.gnedenko_experiment(UnitSquare(), (10, 100), runs=1)


@pytest.mark.slow
def test_gaussian_hull_tracks_the_reference_rate():
    # the reference rate is nearly flat for n <= 1e5, so only its order is checked
    res = approx.gnedenko_experiment(Gaussian.standard(2), (100, 1000, 10_000, 100_000), runs=20, seed=0)
    for row in res.rows:
        ratio = row.distances.mean() / row.reference
        assert 0.5 < ratio < 2.0

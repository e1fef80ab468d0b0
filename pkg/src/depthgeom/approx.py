"""Polygonal approximation of planar convex bodies.

Greedy floating-body polytopes, random polytopes from interior or boundary
samples, and the convex hull of Gaussian samples against the depth region
of level 1/n. Monte Carlo runs draw every trial from its own child of a
``SeedSequence``, so results depend only on the seed and the trial count.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import stats
from scipy.special import ndtri

from . import kernels
from .asa import floating_body_area
from .errors import InputError, UnsupportedMeasure
from .geom import Polygon, convex_hull
from .measures import Gaussian, UniformPolygonal
from .regions import convex_floating_body
from .smooth import SmoothBody2D

_TWO_PI = 2.0 * math.pi


@dataclass
class ApproxRun:
    body: str
    n: int
    mean: float
    stderr: float
    seed: int
    trials: int
    deficits: np.ndarray = field(repr=False, default=None)


def _summarize(body, n, seed, d) -> ApproxRun:
    d = np.asarray(d, dtype=float)
    se = float(d.std(ddof=1) / math.sqrt(len(d))) if len(d) > 1 else 0.0
    return ApproxRun(body, int(n), float(d.mean()), se, int(seed), len(d), d)


def _streams(seed: int, trials: int):
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(trials)]


# -- greedy floating-body polytope ----------------------------------------------------

@dataclass
class GreedyPolytope:
    vertices: np.ndarray
    polygon: Polygon
    delta: float
    floating: Polygon
    inner_ok: bool
    outer_ok: bool

    @property
    def n(self) -> int:
        return len(self.polygon)


def _boundary_table(poly: Polygon, m: int):
    v = poly.vertices
    e = np.roll(v, -1, axis=0) - v
    lens = np.linalg.norm(e, axis=1)
    cum = np.concatenate([[0.0], np.cumsum(lens)])
    s = np.linspace(0.0, cum[-1], m, endpoint=False)
    s = np.unique(np.concatenate([s, cum[:-1]]))
    k = np.clip(np.searchsorted(cum, s, side="right") - 1, 0, len(v) - 1)
    r = (s - cum[k]) / np.where(lens[k] > 0, lens[k], 1.0)
    return v[k] + r[:, None] * e[k]


def floating_body_algorithm(body: Polygon, delta: float, table: int = 16384,
                            directions: int = 1024) -> GreedyPolytope:
    """Greedy polygon P_N with vertices on the boundary of K and K_delta in P_N.

    Starting at the first vertex of K and walking the boundary by arclength,
    each new vertex is the farthest boundary point whose chord from the
    previous vertex cuts off a cap of area at most delta. Every edge of P_N
    then bounds a halfplane whose complement has area at most delta, which is
    exactly the condition for K_delta to lie in P_N. Cap areas come from
    prefix sums of the shoelace terms along the boundary table, which holds
    every vertex of K, so they are exact up to rounding.
    """
    if not body.convex or body.rank < 2:
        raise InputError("body must be a convex polygon with interior")
    vol = body.area
    if not 0.0 < delta <= vol / (4.0 * math.e ** 4):
        raise InputError("delta must lie in (0, vol K / (4 e^4)]")
    pts = _boundary_table(body, table)
    n = len(pts)
    ring = np.concatenate([pts, pts, pts[:1]])
    cr = ring[:-1, 0] * ring[1:, 1] - ring[:-1, 1] * ring[1:, 0]
    pre = np.concatenate([[0.0], np.cumsum(cr)])

    def cap(a, b):
        # area between the boundary arc a -> b and the chord b -> a
        return 0.5 * (pre[b] - pre[a] + ring[b, 0] * ring[a, 1] - ring[b, 1] * ring[a, 0])

    limit = delta * (1.0 - 1e-12)
    chosen = [0]
    a = 0
    while True:
        lo, hi = a + 1, min(a + n, n)
        # cap(a, .) grows along the arc; find the last index within the limit
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if cap(a, mid) <= limit:
                lo = mid
            else:
                hi = mid - 1
        if lo >= n:
            break
        chosen.append(lo)
        a = lo
    verts = pts[chosen]
    poly = convex_hull(verts)
    v = poly.vertices
    nrm = poly.outward_normals()
    caps = np.array([vol - kernels.clip_area(body.vertices, float(u[0]), float(u[1]), float(u @ x))
                     for u, x in zip(nrm, v)])
    fb = convex_floating_body(UniformPolygonal(body), delta / vol, directions, augment=len(body) <= 64)
    probe = fb.inner if fb.inner is not None and not fb.inner.is_empty else fb.polygon
    inner_ok = bool(np.all(caps <= delta * (1 + 1e-9)) and
                    np.all(poly.contains(probe.vertices, tol=1e-12 * body.scale)))
    outer_ok = bool(np.all(body.contains(poly.vertices, tol=1e-9 * body.scale)))
    return GreedyPolytope(verts, poly, delta, probe, inner_ok, outer_ok)


# -- random polytopes ----------------------------------------------------------------------

def random_polytope_deficit(body, n: int, trials: int = 200, seed: int = 0) -> ApproxRun:
    """vol K - vol conv(X_1..X_n) for n uniform points in a convex polygon."""
    if n < 3:
        raise InputError("need at least 3 points in the plane")
    if isinstance(body, SmoothBody2D):
        poly = body.polygon(4096)
        name = body.name
    elif isinstance(body, Polygon):
        poly, name = body, f"polygon[{len(body)}]"
    else:
        raise InputError("body must be a Polygon or SmoothBody2D")
    m = UniformPolygonal(poly)
    out = []
    for rng in _streams(seed, trials):
        x = m.sample(n, rng)
        out.append(poly.area - kernels.hull_area(x))
    return _summarize(name, n, seed, out)


def _arclength_table(body: SmoothBody2D, density: str, size: int = 16384):
    t = np.arange(size + 1) / size
    w = body.speed(t)
    if density == "f_as":
        w = w * np.maximum(body.curvature(t), 0.0) ** (1.0 / 3.0)
    elif density != "uniform":
        raise InputError("density must be 'uniform' or 'f_as'")
    cdf = np.concatenate([[0.0], np.cumsum(0.5 * (w[1:] + w[:-1]))])
    return t, cdf / cdf[-1]


def random_boundary_polytope(body: SmoothBody2D, density: str, n: int, trials: int = 200,
                             seed: int = 0) -> ApproxRun:
    """Deficit of the hull of n boundary points drawn with arclength density
    (``uniform``) or proportional to curvature^(1/3) (``f_as``)."""
    if n < 3:
        raise InputError("need at least 3 points in the plane")
    body.require_convex()
    t, cdf = _arclength_table(body, density)
    vol = body.area
    out = []
    for rng in _streams(seed, trials):
        q = np.interp(rng.random(n), cdf, t)
        out.append(vol - kernels.hull_area(body.gamma(q)))
    return _summarize(f"{body.name}:{density}", n, seed, out)


@dataclass
class DeficitSeries:
    runs: list
    slope: float
    slope_se: float
    trend_tau: float
    trend_p: float

    def table(self):
        return [(r.n, r.mean, r.stderr, self.slope) for r in self.runs]


def deficit_series(runs) -> DeficitSeries:
    """Log-log slope of mean deficit against N and a Mann-Kendall trend test."""
    n = np.log([r.n for r in runs])
    d = np.array([r.mean for r in runs])
    if np.any(d <= 0):
        raise InputError("deficits must be positive for a log-log fit")
    fit = stats.linregress(n, np.log(d))
    tau = stats.kendalltau(np.arange(len(d)), d)
    return DeficitSeries(list(runs), float(fit.slope), float(fit.stderr), float(tau.statistic),
                         float(tau.pvalue))


def sandwich_ratio(body, run: ApproxRun) -> float:
    """Random-polytope deficit over vol K - vol K_{vol K / N}."""
    poly = body.polygon(4096) if isinstance(body, SmoothBody2D) else body
    loss = poly.area - floating_body_area(poly, poly.area / run.n)
    return run.mean / loss


# -- Gaussian hulls -----------------------------------------------------------------------

@dataclass
class GnedenkoRow:
    n: int
    distances: np.ndarray
    reference: float


@dataclass
class GnedenkoResult:
    rows: list
    decreasing_runs: int
    runs: int


def _gaussian_support(m: Gaussian, U, r):
    return U @ m.mu + r * np.sqrt(np.einsum("ij,jk,ik->i", U, m.cov, U))


def gnedenko_experiment(m: Gaussian, ns=(100, 1000, 10000), runs: int = 20, seed: int = 0,
                        directions: int = 4096) -> GnedenkoResult:
    """Hausdorff distance between the hull of n samples and the depth region D_{1/n}.

    For a Gaussian, D_{1/n} is the ellipse of Mahalanobis radius -Phi^-1(1/n),
    and the distance of two convex sets is the sup-norm gap of their support
    functions, taken over a direction grid plus the hull's vertex and edge
    normals. The reference rate is (log log n) / (log n)^(1/2).
    """
    if not isinstance(m, Gaussian) or m.dim != 2:
        raise UnsupportedMeasure("the hull experiment is implemented for planar Gaussians")
    ns = sorted(int(n) for n in ns)
    base = _TWO_PI * np.arange(directions) / directions
    dist = np.zeros((runs, len(ns)))
    streams = np.random.SeedSequence(seed).spawn(runs)
    for i, ss in enumerate(streams):
        rng = np.random.default_rng(ss)
        for j, n in enumerate(ns):
            x = m.sample(n, rng)
            hull = convex_hull(x)
            v = hull.vertices
            nrm = hull.outward_normals()
            extra = np.arctan2(nrm[:, 1], nrm[:, 0])
            cm = v - m.mu
            extra = np.concatenate([extra, np.arctan2(cm[:, 1], cm[:, 0])])
            ang = np.concatenate([base, extra])
            U = np.stack([np.cos(ang), np.sin(ang)], axis=1)
            hp = np.max(v @ U.T, axis=0)
            hd = _gaussian_support(m, U, -float(ndtri(1.0 / n)))
            dist[i, j] = float(np.max(np.abs(hp - hd)))
    rows = [GnedenkoRow(n, dist[:, j], math.log(math.log(n)) / math.sqrt(math.log(n)))
            for j, n in enumerate(ns)]
    dec = int(np.sum(np.all(np.diff(dist, axis=1) < 0, axis=1)))
    return GnedenkoResult(rows, dec, runs)

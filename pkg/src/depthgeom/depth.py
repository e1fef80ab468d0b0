"""Halfspace depth and related depth functions.

Minimizing directions follow one convention throughout: a direction ``u`` is
reported when the closed halfspace ``{z : <z - x, u> >= 0}`` attains the depth,
so ``u`` points into the light side.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize, special

from . import kernels
from .errors import InputError, UnsupportedMeasure
from .geom import Halfspace, Polygon, intersect_offsets
from .measures import (AlphaSymmetric, Empirical, Gaussian, Measure, UniformBall,
                       UniformIntervals, UniformPolygonal, UnitSquare, _alpha_norm)

_TWO_PI = 2.0 * math.pi


@dataclass
class DepthResult:
    value: float
    directions: list = field(default_factory=list)
    method: str = "exact"
    bound: float = 0.0
    count: int | None = None  # numerator k of value = k/n for empirical measures

    def __float__(self):
        return float(self.value)

    def halfspaces(self, x):
        """Minimal halfspaces as lower halfspaces {<z, -u> <= <x, -u>}."""
        return [Halfspace.through(x, -np.asarray(u)) for u in self.directions]


def _as_point(x, d=None) -> np.ndarray:
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if d is not None and x.shape != (d,):
        raise InputError(f"expected a point of dimension {d}, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise InputError("point must be finite")
    return x


def _unit2(theta):
    return np.array([math.cos(theta), math.sin(theta)])


# -- empirical -----------------------------------------------------------------------

def hd_empirical_2d(x, pts) -> DepthResult:
    """Exact depth of ``x`` w.r.t. the empirical measure of planar ``pts``, O(n log n)."""
    pts = np.asarray(pts.points if isinstance(pts, Empirical) else pts, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) == 0:
        raise InputError("need a non-empty (n, 2) array of points")
    x = _as_point(x, 2)
    n = len(pts)
    diff = pts - x
    scale = max(1.0, float(np.max(np.abs(pts))), float(np.max(np.abs(x))))
    at_x = np.hypot(diff[:, 0], diff[:, 1]) <= 1e-12 * scale
    k0 = int(np.count_nonzero(at_x))
    diff = diff[~at_x]
    if len(diff) == 0:
        return DepthResult(1.0, [], "exact", 0.0, n)
    phi = np.sort(np.mod(np.arctan2(diff[:, 1], diff[:, 0]), _TWO_PI))
    crit = np.sort(np.mod(np.concatenate([phi, phi - math.pi]), _TWO_PI))
    keep = np.concatenate([[True], np.diff(crit) > 1e-12])
    crit = crit[keep]
    if len(crit) > 1 and crit[-1] - crit[0] > _TWO_PI - 1e-12:
        crit = crit[:-1]
    nxt = np.concatenate([crit[1:], [crit[0] + _TWO_PI]])
    starts = np.mod(0.5 * (crit + nxt), _TWO_PI)
    # points with angle in the open arc (s, s + pi); no point sits on an endpoint
    ext = np.concatenate([phi, phi + _TWO_PI])
    counts = np.searchsorted(ext, starts + math.pi) - np.searchsorted(ext, starts)
    best = int(counts.min())
    dirs = [_unit2(s + 0.5 * math.pi) for s in starts[counts == best]]
    k = k0 + best
    return DepthResult(k / n, dirs, "exact", 0.0, k)


def hd_empirical_brute(x, pts, d: int | None = None) -> DepthResult:
    """Exact depth in any dimension by enumerating hyperplanes through ``x`` and
    d-1 atoms, with infinitesimal rotations deciding the atoms on the hyperplane.

    Exponential in d; limited to n <= 60.
    """
    pts = np.asarray(pts, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    n, dim = pts.shape
    if d is not None and d != dim:
        raise InputError(f"points have dimension {dim}, expected {d}")
    if n > 60:
        raise InputError("brute-force depth is limited to n <= 60 points")
    x = _as_point(x, dim)
    diff = pts - x
    scale = max(1.0, float(np.max(np.abs(pts))), float(np.max(np.abs(x))))
    tol = 1e-12 * scale
    norms = np.linalg.norm(diff, axis=1)
    at_x = norms <= tol
    k0 = int(np.count_nonzero(at_x))
    rest = diff[~at_x]
    if len(rest) == 0:
        return DepthResult(1.0, [], "exact", 0.0, n)
    if dim == 1:
        lo = int(np.count_nonzero(rest[:, 0] < 0))
        hi = len(rest) - lo
        best = min(lo, hi)
        dirs = ([np.array([-1.0])] if lo == best else []) + ([np.array([1.0])] if hi == best else [])
        return DepthResult((k0 + best) / n, dirs, "exact", 0.0, k0 + best)

    rnorm = np.linalg.norm(rest, axis=1)
    best, best_dirs = len(rest) + 1, []

    def consider(u, w=None):
        # closed count of {<p, u'> >= 0} for u' = u + eps * w with eps -> 0+
        nonlocal best, best_dirs
        s = rest @ u
        if w is None:
            cnt = int(np.count_nonzero(s >= 0))
        else:
            on = np.abs(s) <= tol * rnorm
            cnt = int(np.count_nonzero((s > 0) & ~on)) + int(np.count_nonzero(on & (rest @ w >= -tol)))
            u = u + 1e-7 * w / max(1.0, float(np.linalg.norm(w)))
        if cnt < best:
            best, best_dirs = cnt, [u / np.linalg.norm(u)]
        elif cnt == best:
            best_dirs.append(u / np.linalg.norm(u))

    for idx in itertools.combinations(range(len(rest)), dim - 1):
        V = rest[list(idx)]
        _, sv, vt = np.linalg.svd(np.vstack([V, np.zeros(dim)]))
        if sv[dim - 2] <= 1e-12 * max(1.0, sv[0]):
            continue
        u = vt[-1]
        G = np.linalg.pinv(V)
        for sgn in (1.0, -1.0):
            for sigma in itertools.product((1.0, -1.0), repeat=dim - 1):
                consider(sgn * u, G @ np.array(sigma))
    rng = np.random.default_rng(0)
    for u in np.vstack([np.eye(dim), -np.eye(dim), rng.standard_normal((64, dim))]):
        consider(u)
    return DepthResult((k0 + best) / n, best_dirs, "exact", 0.0, k0 + best)


# -- analytic ------------------------------------------------------------------------

def hd_analytic(x, m: Measure) -> DepthResult:
    """Closed-form depth for Gaussian, alpha-symmetric, uniform-ball and unit-square laws."""
    x = _as_point(x, m.dim)
    if isinstance(m, UnitSquare):
        a = min(x[0], 1.0 - x[0])
        b = min(x[1], 1.0 - x[1])
        val = 2.0 * a * b if a >= 0 and b >= 0 else 0.0
        return DepthResult(val, [], "closed-form", 0.0)
    if isinstance(m, Gaussian):
        r = float(m.mahalanobis(x)[0])
        dirs = []
        if r > 0:
            u = np.linalg.solve(m.cov, x - m.mu)
            dirs = [u / np.linalg.norm(u)]
        return DepthResult(float(special.ndtr(-r)), dirs, "closed-form", 0.0)
    if isinstance(m, AlphaSymmetric):
        r = _alpha_norm(x, m.dual_exponent)
        return DepthResult(m.marginal.cdf(-r), _alpha_dirs(x, m), "closed-form", 0.0)
    raise UnsupportedMeasure(f"no closed-form depth for {type(m).__name__}")


def _alpha_dirs(x, m: AlphaSymmetric):
    if not np.any(x):
        return []
    a = m.alpha
    if isinstance(m, UniformBall) or a == 2.0:
        return [x / np.linalg.norm(x)]
    if a > 1.0:
        q = m.dual_exponent
        u = np.sign(x) * np.abs(x) ** (q - 1.0)
        return [u / np.linalg.norm(u)]
    k = int(np.argmax(np.abs(x)))
    if np.sum(np.abs(x) == abs(x[k])) > 1:
        return []
    u = np.zeros_like(x)
    u[k] = np.sign(x[k])
    return [u]


# -- polygonal -----------------------------------------------------------------------

def _lower_mass(m: UniformPolygonal, x, theta):
    c, s = math.cos(theta), math.sin(theta)
    return sum(d * kernels.clip_area(v, c, s, c * x[0] + s * x[1]) for v, d in zip(m._comps, m._dens))


def hd_polygonal(x, m: UniformPolygonal, grid: int = 256, report_tol: float = 1e-9) -> DepthResult:
    """Depth for a piecewise-uniform polygonal law, by minimizing the swept mass
    over normal angles. The mass is smooth between vertex bearings, so it is
    minimized bracket by bracket, skipping brackets whose Lipschitz lower bound
    cannot beat the incumbent."""
    if not isinstance(m, UniformPolygonal):
        raise UnsupportedMeasure("hd_polygonal needs a UniformPolygonal measure")
    x = _as_point(x, 2)
    verts = m.region.vertices()
    bear = np.arctan2(verts[:, 1] - x[1], verts[:, 0] - x[0])
    cand = np.concatenate([bear + 0.5 * math.pi, bear - 0.5 * math.pi,
                           _TWO_PI * np.arange(grid) / grid])
    cand = np.unique(np.mod(cand, _TWO_PI))
    cand = cand[np.concatenate([[True], np.diff(cand) > 1e-13])]
    vals = np.zeros(len(cand))
    for v, d in zip(m._comps, m._dens):
        vals += d * kernels.sweep_areas(v, x[0], x[1], cand)
    radii = [float(np.max(np.hypot(v[:, 0] - x[0], v[:, 1] - x[1]))) for v in m._comps]
    lip = sum(d * r * r for d, r in zip(m._dens, radii))
    a = cand
    b = np.concatenate([cand[1:], [cand[0] + _TWO_PI]])
    fa = vals
    fb = np.concatenate([vals[1:], vals[:1]])
    best = float(vals.min())
    found = [(float(v), float(t)) for v, t in zip(vals, cand) if v <= best + report_tol]
    order = np.argsort(np.minimum(fa, fb))
    f = lambda t: _lower_mass(m, x, t)
    for i in order:
        lower = 0.5 * (fa[i] + fb[i] - lip * (b[i] - a[i]))
        if lower > best + report_tol:
            continue
        res = optimize.minimize_scalar(f, bounds=(a[i], b[i]), method="bounded",
                                       options={"xatol": 1e-10})
        if res.fun < best:
            best = float(res.fun)
        if res.fun <= best + report_tol:
            found.append((float(res.fun), float(res.x)))
    best = max(0.0, best)
    thetas = sorted(np.mod(t, _TWO_PI) for v, t in found if v <= best + report_tol)
    dirs, last = [], None
    for t in thetas:
        if last is None or t - last > 1e-6:
            dirs.append(-_unit2(t))
            last = t
    if len(dirs) > 1 and (thetas[-1] - thetas[0]) > _TWO_PI - 1e-6:
        dirs.pop()
    bound = lip * 1e-10
    return DepthResult(best, dirs, "optimized", bound)


# -- generic dispatch ------------------------------------------------------------------

def _hd_numeric_2d(x, m: Measure, grid: int = 128) -> DepthResult:
    th = _TWO_PI * np.arange(grid) / grid
    f = lambda t: m.prob(Halfspace(_unit2(t), float(np.dot(_unit2(t), x))))
    vals = np.array([f(t) for t in th])
    best, best_t = float(vals.min()), float(th[np.argmin(vals)])
    h = _TWO_PI / grid
    for k in np.argsort(vals)[:4]:
        res = optimize.minimize_scalar(f, bounds=(th[k] - h, th[k] + h), method="bounded",
                                       options={"xatol": 1e-10})
        if res.fun < best:
            best, best_t = float(res.fun), float(res.x)
    return DepthResult(best, [-_unit2(best_t)], "optimized", 1e-8)


def halfspace_depth(x, m: Measure) -> DepthResult:
    """Depth of ``x`` w.r.t. ``m`` using the best available method."""
    if isinstance(m, Empirical):
        if m.dim == 2:
            return hd_empirical_2d(x, m.points)
        if m.n <= 60:
            return hd_empirical_brute(x, m.points)
        raise UnsupportedMeasure("exact empirical depth needs d = 2 or n <= 60")
    if isinstance(m, UniformPolygonal):
        if isinstance(m, UnitSquare):
            return hd_analytic(x, m)
        return hd_polygonal(x, m)
    if isinstance(m, (Gaussian, AlphaSymmetric)):
        return hd_analytic(x, m)
    x = _as_point(x, m.dim)
    if m.dim == 1:
        lo = m.prob(Halfspace([1.0], x[0]))
        hi = m.prob(Halfspace([-1.0], -x[0]))
        dirs = ([np.array([-1.0])] if lo <= hi else []) + ([np.array([1.0])] if hi <= lo else [])
        return DepthResult(min(lo, hi), dirs, "exact" if isinstance(m, UniformIntervals) else "optimized")
    if m.dim == 2:
        return _hd_numeric_2d(x, m)
    raise UnsupportedMeasure(f"depth not available for {type(m).__name__} in dimension {m.dim}")


def depth_values(points, m: Measure) -> np.ndarray:
    return np.array([halfspace_depth(p, m).value for p in np.atleast_2d(points)])


# -- Mahalanobis ---------------------------------------------------------------------

def _chol(sigma):
    sigma = np.atleast_2d(np.asarray(sigma, dtype=float))
    if not np.allclose(sigma, sigma.T):
        raise InputError("covariance must be symmetric")
    try:
        return np.linalg.cholesky(sigma)
    except np.linalg.LinAlgError as exc:
        raise InputError("covariance must be positive definite") from exc


def mahalanobis_distance(x, mu, sigma) -> float:
    L = _chol(sigma)
    z = np.linalg.solve(L, np.atleast_1d(np.asarray(x, dtype=float)) - np.asarray(mu, dtype=float))
    return float(np.linalg.norm(z))


def mahalanobis_depth(x, mu, sigma) -> float:
    return 1.0 / (1.0 + mahalanobis_distance(x, mu, sigma))


@dataclass(frozen=True)
class Ellipsoid:
    """{x : (x - center)^T shape^{-1} (x - center) <= radius^2}."""

    center: np.ndarray
    shape: np.ndarray
    radius: float

    def contains(self, points, tol: float = 1e-12) -> np.ndarray:
        L = np.linalg.cholesky(self.shape)
        z = np.linalg.solve(L, (np.atleast_2d(points) - self.center).T)
        return np.sqrt(np.sum(z * z, axis=0)) <= self.radius + tol

    def boundary(self, n: int = 256) -> np.ndarray:
        if len(self.center) != 2:
            raise InputError("boundary sampling is for planar ellipses")
        L = np.linalg.cholesky(self.shape)
        t = _TWO_PI * np.arange(n) / n
        return self.center + self.radius * np.stack([np.cos(t), np.sin(t)], axis=1) @ L.T


def mahalanobis_region(mu, sigma, delta: float) -> Ellipsoid:
    if not 0.0 < delta <= 1.0:
        raise InputError("delta must lie in (0, 1]")
    _chol(sigma)
    return Ellipsoid(np.asarray(mu, dtype=float), np.atleast_2d(np.asarray(sigma, dtype=float)),
                     (1.0 - delta) / delta)


# -- simplicial volume (Oja) depth -----------------------------------------------------

@dataclass
class OjaResult:
    value: float
    stderr: float
    mean_volume: float
    trials: int


def oja_depth_mc(x, m: Measure, trials: int = 100_000, seed=0, shards: int = 8) -> OjaResult:
    """Monte Carlo simplicial-volume depth. Trials are split into ``shards``
    independent streams derived from ``seed``, so the result depends only on
    (seed, trials, shards)."""
    d = m.dim
    x = _as_point(x, d)
    sigma = m.covariance()
    root_det = math.sqrt(float(np.linalg.det(sigma)))
    if not root_det > 0:
        raise InputError("covariance must be positive definite")
    if trials < 2:
        raise InputError("need at least two trials")
    sizes = [trials // shards + (1 if k < trials % shards else 0) for k in range(shards)]
    streams = np.random.SeedSequence(seed).spawn(shards)
    total, total_sq = 0.0, 0.0
    fact = math.factorial(d)
    for size, ss in zip(sizes, streams):
        if size == 0:
            continue
        pts = m.sample(size * d, np.random.default_rng(ss)).reshape(size, d, d) - x
        vol = np.abs(np.linalg.det(pts)) / fact
        total += float(vol.sum())
        total_sq += float(np.dot(vol, vol))
    mean = total / trials
    var = max(0.0, (total_sq - trials * mean * mean) / (trials - 1))
    se_mean = math.sqrt(var / trials)
    value = 1.0 / (1.0 + mean / root_det)
    return OjaResult(value, value * value * se_mean / root_det, mean, trials)


@dataclass
class CentroidBody2D:
    angles: np.ndarray
    support: np.ndarray
    polygon: Polygon
    volume: float


def _abs_projection_integral(m: UniformPolygonal, x, u):
    """Mass-weighted integral of |<y - x, u>| over the region, per unit mass."""
    ux = float(u[0] * x[0] + u[1] * x[1])
    out = 0.0
    for v, d in zip(m._comps, m._dens):
        a, sx, sy = kernels.clip_moments(v, -u[0], -u[1], -ux)
        A, Sx, Sy = kernels.clip_moments(v, 0.0, 0.0, 1.0)
        upper = sx * u[0] + sy * u[1] - a * ux
        total = Sx * u[0] + Sy * u[1] - A * ux
        out += d * (2.0 * upper - total)
    return out


def centroid_body_2d(m: UniformPolygonal, x=(0.0, 0.0), grid: int = 512) -> CentroidBody2D:
    """Centroid body of the law of Y - x, from exact per-direction integrals."""
    if not isinstance(m, UniformPolygonal):
        raise UnsupportedMeasure("centroid bodies are computed for polygonal uniform laws")
    if m.region.area <= 0:
        raise InputError("region has zero area")
    if grid % 2:
        grid += 1
    x = _as_point(x, 2)
    half = grid // 2
    th = _TWO_PI * np.arange(grid) / grid
    h = np.empty(grid)
    for k in range(half):
        h[k] = _abs_projection_integral(m, x, _unit2(th[k]))
    h[half:] = h[:half]
    poly = intersect_offsets(th, h)
    return CentroidBody2D(th, h, poly, poly.area)


def oja_via_centroid_body(m: UniformPolygonal, x, grid: int = 1024) -> float:
    """Simplicial-volume depth from the identity E vol[x, X1, X2] = vol(Z_x) / 4."""
    sigma = m.covariance()
    det = float(np.linalg.det(sigma))
    if not det > 0:
        raise InputError("covariance is degenerate")
    z = centroid_body_2d(m, x, grid)
    return 1.0 / (1.0 + z.volume / (4.0 * math.sqrt(det)))


# -- classification ----------------------------------------------------------------------

def classify_max_depth(x, m1: Measure, m2: Measure):
    """1 or 2 for the measure giving ``x`` the larger depth, else "unclassified"."""
    if m1.dim != m2.dim:
        raise InputError("measures must share a dimension")
    d1 = halfspace_depth(x, m1).value
    d2 = halfspace_depth(x, m2).value
    if (d1 == 0.0 and d2 == 0.0) or abs(d1 - d2) <= 1e-12:
        return "unclassified"
    return 1 if d1 > d2 else 2

"""Depth central regions, convex floating bodies, medians and symmetry.

Regions in the plane are intersections of halfplanes ``{<z,u> <= s_u}`` over
a finite set of directions. For the central region ``s_u`` is the upper
quantile (mass at least delta on ``<X,u> >= s_u``); for the convex floating
body it is the lower quantile at level 1 - delta. Intersecting over finitely
many directions always gives a superset; the certified inner polygon pulls
every line in by the amount the quantile and the polygon can move across a
grid gap.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize
from scipy.optimize import linear_sum_assignment

from .depth import halfspace_depth, hd_polygonal, DepthResult
from .errors import InputError, NumericalError, UnsupportedMeasure
from .geom import (EMPTY, Halfspace, Polygon, PolygonalRegion, boundary_distance, centroid,
                   chord_barycenter, convex_hull, hausdorff, intersect_offsets, intersection_area)
from .measures import (AlphaSymmetric, Empirical, Gaussian, LogConcave, Measure, UniformBall,
                       UniformIntervals, UniformPolygonal, UnitSquare)

_TWO_PI = 2.0 * math.pi


@dataclass
class DepthRegion:
    """A central region or floating body.

    ``polygon`` is the intersection over the direction set; it contains the
    true region and equals it when ``exact``. ``inner`` is contained in the
    true region, and ``bound`` is their Hausdorff distance. One-dimensional
    regions use ``interval`` instead.
    """

    delta: float
    kind: str
    polygon: Polygon | None = None
    inner: Polygon | None = None
    bound: float = 0.0
    exact: bool = False
    angles: np.ndarray | None = None
    offsets: np.ndarray | None = None
    interval: tuple | None = None

    @property
    def outer(self) -> Polygon | None:
        return self.polygon

    @property
    def is_empty(self) -> bool:
        if self.polygon is None:
            return self.interval is None
        return self.polygon.is_empty


def _dirs(angles):
    return np.stack([np.cos(angles), np.sin(angles)], axis=1)


def _offsets(m: Measure, kind: str, delta: float, U: np.ndarray) -> np.ndarray:
    if kind == "central":
        return np.asarray(m.upper_quantiles(U, delta), dtype=float)
    return np.asarray(m.projection_quantiles(U, 1.0 - delta), dtype=float)


def _pair_angles(points: np.ndarray) -> np.ndarray:
    i, j = np.triu_indices(len(points), k=1)
    d = points[j] - points[i]
    ok = np.hypot(d[:, 0], d[:, 1]) > 0
    a = np.arctan2(d[ok, 1], d[ok, 0]) + 0.5 * math.pi
    return np.concatenate([a, a + math.pi])


def _angle_set(m: Measure, directions: int, exact_limit: int, augment: bool):
    base = _TWO_PI * np.arange(directions) / directions
    exact = False
    extra = []
    if isinstance(m, Empirical) and m.n <= exact_limit:
        pts = np.unique(m.points, axis=0)
        extra.append(_pair_angles(pts))
        exact = True
    elif isinstance(m, UniformPolygonal) and augment:
        # Near a vertex, small cut-offs give hyperbolic arcs whose normals crowd
        # towards the edge normals; geometric spacing down to 1e-12 rad resolves them.
        edges = sum(len(c) for c in m.region.components)
        fan = np.geomspace(1e-12, 0.25 * math.pi, int(np.clip(8192 // edges, 4, 480)))
        fan = np.concatenate([[0.0], fan, -fan]) if edges <= 64 else np.zeros(1)
        for c in m.region.components:
            nrm = c.outward_normals()
            a = np.arctan2(nrm[:, 1], nrm[:, 0])
            a = np.concatenate([a, a + math.pi])
            extra.append((a[:, None] + fan[None, :]).ravel())
    ang = np.concatenate([base] + extra)
    ang = np.unique(np.round(np.mod(ang, _TWO_PI), 15))
    return ang, exact


def _support(poly: Polygon, U: np.ndarray) -> np.ndarray:
    """Support values of a convex polygon, located by edge-normal bearing."""
    v = poly.vertices
    if len(v) < 3 or len(v) * len(U) <= 1 << 20:
        return np.max(v @ U.T, axis=0)
    nrm = poly.outward_normals()
    a = np.unwrap(np.arctan2(nrm[:, 1], nrm[:, 0]))
    t = a[0] + np.mod(np.arctan2(U[:, 1], U[:, 0]) - a[0], _TWO_PI)
    k = np.searchsorted(a, t)
    # vertex k sits between edges k-1 and k; check neighbours against rounding
    cand = np.stack([k - 1, k, k + 1]) % len(v)
    vals = np.einsum("kij,ij->ki", v[cand], U)
    return vals.max(axis=0)


def _region_1d(m: Measure, delta: float, kind: str) -> DepthRegion:
    up = np.array([[1.0]])
    dn = np.array([[-1.0]])
    hi = float(_offsets(m, kind, delta, up)[0])
    lo = -float(_offsets(m, kind, delta, dn)[0])
    iv = (lo, hi) if lo <= hi + 1e-12 * max(1.0, abs(lo), abs(hi)) else None
    return DepthRegion(delta, kind, interval=iv, exact=True)


def _lipschitz(m: Measure, c: np.ndarray, ang: np.ndarray, off: np.ndarray) -> float:
    if isinstance(m, Empirical):
        return float(np.max(np.linalg.norm(m.points - c, axis=1)))
    if isinstance(m, UniformPolygonal):
        return float(np.max(np.linalg.norm(m.region.vertices() - c, axis=1)))
    t = off - _dirs(ang) @ c
    if not np.all(np.isfinite(t)) or len(t) < 3:
        return math.inf
    dt = np.abs(np.diff(np.concatenate([t, t[:1]])))
    da = np.diff(np.concatenate([ang, ang[:1] + _TWO_PI]))
    return 2.0 * float(np.max(dt / da))


def _build(m: Measure, delta: float, kind: str, directions: int, exact_limit: int,
           refine_tol: float | None, augment: bool, certify: bool) -> DepthRegion:
    if m.dim == 1:
        return _region_1d(m, delta, kind)
    if m.dim != 2:
        raise UnsupportedMeasure("regions are computed in dimension 1 and 2")
    ang, exact = _angle_set(m, directions, exact_limit, augment)
    off = _offsets(m, kind, delta, _dirs(ang))
    poly = intersect_offsets(ang, off)
    if poly.is_empty:
        return DepthRegion(delta, kind, EMPTY, EMPTY, 0.0, exact, ang, off)
    if refine_tol is not None and not exact:
        ang, off, poly = _refine(m, delta, kind, ang, off, poly, refine_tol)
        if poly.is_empty:
            return DepthRegion(delta, kind, EMPTY, EMPTY, 0.0, exact, ang, off)
    if exact or not certify:
        return DepthRegion(delta, kind, poly, poly if exact else None, 0.0, exact, ang, off)
    order = np.argsort(ang)
    ang, off = ang[order], off[order]
    c = np.mean(poly.vertices, axis=0)
    r_z = float(np.max(np.linalg.norm(poly.vertices - c, axis=1)))
    lip = _lipschitz(m, c, ang, off)
    gaps = np.diff(np.concatenate([ang, ang[:1] + _TWO_PI]))
    local = np.maximum(gaps, np.roll(gaps, 1))
    eps = (r_z + lip) * 0.5 * local
    inner = intersect_offsets(ang, off - eps, tol=0.0)
    if inner.is_empty or not inner.bounded:
        bound = poly.diameter if poly.bounded else math.inf
        inner = EMPTY
    else:
        bound = hausdorff(inner, poly) if poly.bounded else math.inf
    return DepthRegion(delta, kind, poly, inner, bound, False, ang, off)


def _refine(m, delta, kind, ang, off, poly, tol, max_rounds=24, max_dirs=200_000):
    for _ in range(max_rounds):
        order = np.argsort(ang)
        ang, off = ang[order], off[order]
        nxt = np.concatenate([ang[1:], ang[:1] + _TWO_PI])
        mids = np.mod(0.5 * (ang + nxt), _TWO_PI)
        U = _dirs(mids)
        h = _support(poly, U)
        cand = np.diff(np.concatenate([ang, ang[:1] + _TWO_PI])) > 1e-12
        s_mid = _offsets(m, kind, delta, U[cand])
        add = h[cand] - s_mid > tol
        if not np.any(add) or len(ang) > max_dirs:
            break
        new_a, new_o = mids[cand][add], s_mid[add]
        poly = intersect_offsets(new_a, new_o, start=poly.vertices)
        ang = np.concatenate([ang, new_a])
        off = np.concatenate([off, new_o])
        if poly.is_empty:
            break
    return ang, off, poly


def central_region(m: Measure, delta: float, directions: int = 512, *, exact_limit: int = 200,
                   refine_tol: float | None = None, augment: bool = True,
                   certify: bool = True) -> DepthRegion:
    """Depth central region {x : HD(x; m) >= delta}.

    Empirical measures with at most ``exact_limit`` distinct atoms get the
    exact region (all atom-pair normals are added to the grid). ``refine_tol``
    adaptively bisects grid gaps until the polygon's support exceeds the
    quantile by at most that much.
    """
    if not 0.0 < delta <= 1.0:
        raise InputError("delta must lie in (0, 1]")
    return _build(m, delta, "central", directions, exact_limit, refine_tol, augment, certify)


def convex_floating_body(m: Measure, delta: float, directions: int = 512, *, exact_limit: int = 200,
                         refine_tol: float | None = None, augment: bool = True,
                         certify: bool = True) -> DepthRegion:
    """Intersection of all closed halfspaces whose complement has mass at most delta."""
    if not 0.0 <= delta < 1.0:
        raise InputError("delta must lie in [0, 1)")
    if delta == 0.0:
        return _hull_of_support(m)
    return _build(m, delta, "floating", directions, exact_limit, refine_tol, augment, certify)


def _hull_of_support(m: Measure) -> DepthRegion:
    if isinstance(m, Empirical) and m.dim == 2:
        poly = convex_hull(m.points)
    elif isinstance(m, UniformPolygonal):
        poly = convex_hull(m.region.vertices())
    elif isinstance(m, UniformIntervals):
        return DepthRegion(0.0, "floating", interval=(float(m.intervals[0, 0]), float(m.intervals[-1, 1])),
                           exact=True)
    elif m.dim == 2:
        ang = _TWO_PI * np.arange(64) / 64
        off = np.array([m.support_value(u) for u in _dirs(ang)])
        poly = intersect_offsets(ang, off)
        return DepthRegion(0.0, "floating", poly, poly, 0.0, False, ang, off)
    else:
        raise UnsupportedMeasure("support hull not available")
    return DepthRegion(0.0, "floating", poly, poly, 0.0, True)


# -- floating bodies -----------------------------------------------------------------

@dataclass
class FloatingBodyCheck:
    exists: bool
    max_deviation: float
    worst_direction: np.ndarray
    region: DepthRegion


def _upper_masses(m: Measure, U: np.ndarray, t: np.ndarray) -> np.ndarray:
    if isinstance(m, UniformPolygonal):
        return m._masses(np.ascontiguousarray(-U[:, 0]), np.ascontiguousarray(-U[:, 1]),
                         np.ascontiguousarray(-t))
    return np.array([m.prob_upper(u, s) for u, s in zip(U, t)])


def floating_body_exists(m: Measure, delta: float, tol: float | None = None,
                         normals: int = 1024) -> FloatingBodyCheck:
    """Test whether every supporting halfplane of P_delta cuts off mass exactly delta."""
    if not 0.0 < delta < 0.5:
        raise InputError("delta must lie in (0, 1/2)")
    if tol is None:
        tol = 1e-4 * delta
    reg = convex_floating_body(m, delta, normals, certify=False)
    if reg.is_empty:
        raise InputError("the floating body is empty")
    ang = _TWO_PI * np.arange(normals) / normals
    U = _dirs(ang)
    h = _support(reg.polygon, U)
    dev = np.abs(_upper_masses(m, U, h) - delta)
    k = int(np.argmax(dev))
    return FloatingBodyCheck(bool(dev[k] < tol), float(dev[k]), U[k], reg)


@dataclass
class DupinCurve:
    points: np.ndarray
    angles: np.ndarray
    min_turn: float
    convex: bool


def dupin_curve(m: UniformPolygonal, delta: float, samples: int = 1024) -> DupinCurve:
    """Barycenters of the chords cutting off mass delta, one per normal direction."""
    if not isinstance(m, UniformPolygonal):
        raise UnsupportedMeasure("Dupin curves are computed for polygonal uniform laws")
    if not 0.0 < delta < 0.5:
        raise InputError("delta must lie in (0, 1/2)")
    ang = _TWO_PI * np.arange(samples) / samples
    U = _dirs(ang)
    s = m.upper_quantiles(U, delta)
    pts = np.array([chord_barycenter(m.region, Halfspace(u, t)) for u, t in zip(U, s)])
    e = np.roll(pts, -1, axis=0) - pts
    turn = e[:, 0] * np.roll(e, -1, axis=0)[:, 1] - e[:, 1] * np.roll(e, -1, axis=0)[:, 0]
    scale = max(1.0, float(np.max(np.abs(pts))))
    min_turn = float(turn.min())
    return DupinCurve(pts, ang, min_turn, bool(min_turn >= -1e-12 * scale * scale))


def dupin_boundary_gap(curve: DupinCurve, region: DepthRegion) -> float:
    """Largest distance from the Dupin curve to the boundary of a region polygon."""
    return float(boundary_distance(curve.points, region.polygon).max())


# -- medians -----------------------------------------------------------------------

@dataclass
class MedianResult:
    depth: float
    point: np.ndarray | None
    region: DepthRegion
    unique: bool
    diameter: float


def _nonempty(m, delta, directions, **kw):
    reg = central_region(m, delta, directions, certify=False, **kw)
    return reg, not reg.is_empty


def _region_point(reg: DepthRegion) -> np.ndarray:
    if reg.polygon is None:
        lo, hi = reg.interval
        return np.array([0.5 * (lo + hi)])
    p = reg.polygon
    if p.area > 0 and p.rank == 2:
        return centroid(p)
    return p.vertices.mean(axis=0)


def halfspace_median(m: Measure, directions: int = 512, *, centroid_convention: bool = False,
                     iterations: int = 60, **kw) -> MedianResult:
    """Maximal depth and the median set, by bisection on the region level.

    The median point is returned when the median set has diameter at most
    1e-6, or always when ``centroid_convention`` is set.
    """
    if isinstance(m, Empirical):
        n = m.n
        lo, hi = 1, n
        best = central_region(m, 1.0 / n, directions, certify=False, **kw)
        while lo < hi:
            mid = (lo + hi + 1) // 2
            reg, ok = _nonempty(m, mid / n, directions, **kw)
            if ok:
                lo, best = mid, reg
            else:
                hi = mid - 1
        md, reg = lo / n, best
    else:
        lo, hi = 0.0, 1.0
        reg = None
        for _ in range(iterations):
            mid = 0.5 * (lo + hi)
            r, ok = _nonempty(m, mid, directions, **kw)
            if ok:
                lo, reg = mid, r
            else:
                hi = mid
            if hi - lo < 1e-13:
                break
        if reg is None:
            raise NumericalError("every central region came back empty")
        md = lo
    if reg.polygon is None:
        a, b = reg.interval
        diam = b - a
    else:
        diam = reg.polygon.diameter
    unique = diam <= 1e-6
    point = _region_point(reg) if (unique or centroid_convention) else None
    return MedianResult(md, point, reg, unique, diam)


def max_depth(m: Measure, directions: int = 512, **kw) -> float:
    return halfspace_median(m, directions, **kw).depth


def winternitz(m: UniformPolygonal, directions: int = 512) -> float:
    """Winternitz measure of symmetry, MD / (1 - MD)."""
    md = max_depth(m, directions)
    if md >= 1.0:
        raise NumericalError("maximal depth must be below 1")
    return md / (1.0 - md)


def depth_centroid_map(m: Measure, delta: float, directions: int = 512) -> np.ndarray:
    """Centroid of the central region at level delta."""
    reg = central_region(m, delta, directions, refine_tol=1e-8, certify=False)
    if reg.is_empty:
        raise InputError("central region is empty at this level")
    return _region_point(reg)


# -- symmetry --------------------------------------------------------------------------

@dataclass
class SymmetryReport:
    central: bool
    angular: bool
    halfspace: bool
    center: np.ndarray
    max_depth: float
    center_depth: float
    witness: object = None
    notes: list = field(default_factory=list)


def _central_symmetric(m: Measure, c: np.ndarray):
    if isinstance(m, Empirical):
        p = m.points
        q = 2.0 * c - p
        cost = np.linalg.norm(p[:, None, :] - q[None, :, :], axis=2)
        r, k = linear_sum_assignment(cost)
        worst = int(np.argmax(cost[r, k]))
        ok = cost[r, k][worst] <= 1e-9 * m.scale
        return bool(ok), None if ok else p[r[worst]]
    if isinstance(m, UniformPolygonal):
        comps = m.region.components
        refl = [c_.transform(-np.eye(2), 2.0 * c) for c_ in comps]
        dens = m._dens
        overlap = 0.0
        for a, da in zip(comps, dens):
            for b, db in zip(refl, dens):
                overlap += min(da, db) * intersection_area(a, b)
        ok = 1.0 - overlap <= 1e-9
        return bool(ok), None if ok else float(1.0 - overlap)
    if isinstance(m, Gaussian):
        return bool(np.allclose(c, m.mu, atol=1e-9)), None
    if isinstance(m, AlphaSymmetric):
        return bool(np.allclose(c, 0.0, atol=1e-9)), None
    if isinstance(m, UniformIntervals):
        iv = m.intervals
        ok = np.allclose(np.sort(2 * c[0] - iv[:, ::-1], axis=0), iv, atol=1e-9) and \
            np.allclose(m.weights, m.weights[::-1], atol=1e-12)
        return bool(ok), None
    if isinstance(m, LogConcave):
        rng = np.random.default_rng(0)
        z = rng.standard_normal((64, m.dim)) * m.scale * 0.2
        diffs = [abs(m.psi(c + v) - m.psi(c - v)) for v in z]
        ok = max(diffs) <= 1e-8
        return bool(ok), None
    raise UnsupportedMeasure(f"central symmetry test not available for {type(m).__name__}")


def symmetry_report(m: Measure, directions: int = 512) -> SymmetryReport:
    """Central, angular and halfspace symmetry about the halfspace median."""
    med = halfspace_median(m, directions, centroid_convention=True)
    c = med.point
    notes = []
    if not med.unique:
        notes.append("median set is not a single point; its centroid is used as the center")
    hd = halfspace_depth(c, m).value
    exact = isinstance(m, (Empirical, Gaussian, AlphaSymmetric, UniformIntervals))
    tol = 1e-9 if exact else 1e-6
    atom = m.atom_mass(c)
    halfspace = med.depth >= 0.5 - tol
    angular = bool(abs(hd - 0.5 * (1.0 + atom)) <= tol)
    central, witness = _central_symmetric(m, c)
    return SymmetryReport(central, angular, halfspace, c, med.depth, hd, witness, notes)


# -- minimal directions ------------------------------------------------------------------

def minimal_directions(x, m: Measure, grid: int = 720, tol: float = 1e-9) -> list:
    """Directions u whose halfspace {<z - x, u> >= 0} attains the depth of x."""
    if isinstance(m, Empirical):
        raise UnsupportedMeasure("minimal halfspaces need not be attained for empirical measures")
    if m.dim != 2:
        raise UnsupportedMeasure("minimal directions are computed in the plane")
    x = np.asarray(x, dtype=float)
    res = halfspace_depth(x, m)
    ang = _TWO_PI * np.arange(grid) / grid
    U = _dirs(ang)
    g = _upper_masses(m, U, U @ x)
    dirs = [u for u, v in zip(U, g) if v <= res.value + tol]
    for u in res.directions:
        u = np.asarray(u, dtype=float)
        if m.prob_upper(u, float(u @ x)) <= res.value + tol:
            dirs.append(u / np.linalg.norm(u))
    return _dedupe(dirs)


def _dedupe(dirs, tol=1e-7):
    if not dirs:
        return []
    a = np.sort(np.mod([math.atan2(u[1], u[0]) for u in dirs], _TWO_PI))
    keep = [a[0]]
    for t in a[1:]:
        if t - keep[-1] > tol:
            keep.append(t)
    if len(keep) > 1 and keep[-1] - keep[0] > _TWO_PI - tol:
        keep.pop()
    return [np.array([math.cos(t), math.sin(t)]) for t in keep]


def ray_basis_check(x, m: Measure, dirs=None) -> bool:
    """True when the minimal halfspaces at x cover the plane, i.e. the origin is
    interior to the convex hull of the minimal directions."""
    if dirs is None:
        dirs = minimal_directions(x, m)
    if len(dirs) < 3:
        return False
    a = np.sort(np.mod([math.atan2(u[1], u[0]) for u in dirs], _TWO_PI))
    gaps = np.diff(np.concatenate([a, a[:1] + _TWO_PI]))
    return bool(gaps.max() < math.pi - 1e-9)


@dataclass
class BarycenterCheck:
    max_deviation: float
    deviations: list
    directions: list
    barycenter_fails: bool


def dupin_barycenter_check(x, m: UniformPolygonal, tol: float = 1e-6) -> BarycenterCheck:
    """Distance from x to the chord barycenter for each minimal halfplane at x."""
    if not isinstance(m, UniformPolygonal):
        raise UnsupportedMeasure("barycenter check needs a polygonal uniform law")
    x = np.asarray(x, dtype=float)
    res = hd_polygonal(x, m)
    if res.value <= 0:
        raise InputError("x must have positive depth")
    if not res.directions:
        raise NumericalError("no minimal direction found")
    devs = []
    for u in res.directions:
        b = chord_barycenter(m.region, Halfspace.through(x, u))
        devs.append(float(np.linalg.norm(b - x)))
    worst = max(devs)
    return BarycenterCheck(worst, devs, res.directions, worst > tol)


# -- reconstruction ---------------------------------------------------------------------

def _qualifies(m: Measure) -> bool:
    if isinstance(m, (Gaussian, UnitSquare, UniformBall)):
        return True
    return isinstance(m, AlphaSymmetric) and m.alpha > 1.0


def reconstruct_halfspace_prob(h: Halfspace, m: Measure, depth=None, median=None) -> float:
    """Recover P(H^-) from depth values alone.

    With x_P the median, P(H^-) is the supremum of the depth over the boundary
    line when x_P lies outside H^-, and one minus that supremum otherwise.
    Only measures whose floating bodies are known to exist are accepted.
    """
    if not _qualifies(m):
        raise UnsupportedMeasure("reconstruction is only justified for measures whose floating "
                                 "bodies exist (Gaussian, unit square, uniform ball, alpha > 1)")
    if m.dim != 2:
        raise UnsupportedMeasure("reconstruction is implemented in the plane")
    if depth is None:
        depth = lambda y: halfspace_depth(y, m).value
    if median is None:
        median = m.mu if isinstance(m, Gaussian) else (np.array([0.5, 0.5]) if isinstance(m, UnitSquare)
                                                        else np.zeros(2))
    u = h.normal
    w = np.array([-u[1], u[0]])
    base = h.offset * u
    median = np.asarray(median, dtype=float)
    r = 10.0 * (m.scale + float(np.linalg.norm(median))) + abs(float(median @ w))
    f = lambda t: -depth(base + t * w)
    ts = np.linspace(float(median @ w) - r, float(median @ w) + r, 257)
    vals = np.array([f(t) for t in ts])
    k = int(np.argmin(vals))
    if vals[k] == 0.0:
        sup = 0.0
    else:
        a, b = ts[max(k - 1, 0)], ts[min(k + 1, len(ts) - 1)]
        res = optimize.minimize_scalar(f, bounds=(a, b), method="bounded", options={"xatol": 1e-11})
        sup = max(-float(res.fun), -float(vals[k]))
    side = float(median @ u) - h.offset
    if abs(side) <= 1e-12 * max(1.0, abs(h.offset)):
        return sup
    return sup if side > 0 else 1.0 - sup


# -- isotropic sandwich ------------------------------------------------------------------

@dataclass
class SandwichReport:
    holds: bool
    r_inner: float
    r_outer: float
    inradius: float
    circumradius: float
    isotropic_constant: float


def isotropic_sandwich_check(m: Measure, delta: float, directions: int = 512) -> SandwichReport:
    """Check (1/e - delta) L B ⊆ P_delta ⊆ 17 log(1/delta) L B for an isotropic law,
    with L = (sup density)^(1/d)."""
    if not 0.0 < delta < 1.0 / math.e:
        raise InputError("delta must lie in (0, 1/e)")
    mu = np.asarray(m.mean(), dtype=float)
    cov = np.asarray(m.covariance(), dtype=float)
    if np.max(np.abs(mu)) > 1e-6 or np.max(np.abs(cov - np.eye(m.dim))) > 1e-6:
        raise InputError("measure is not isotropic (mean 0, covariance I)")
    L = m.density_sup() ** (1.0 / m.dim)
    r_in = (1.0 / math.e - delta) * L
    r_out = 17.0 * math.log(1.0 / delta) * L
    reg = convex_floating_body(m, delta, directions)
    if reg.inner is None or reg.inner.is_empty:
        return SandwichReport(False, r_in, r_out, 0.0, math.inf, L)
    v = reg.inner.vertices
    nrm = reg.inner.outward_normals()
    ok = np.linalg.norm(np.roll(v, -1, axis=0) - v, axis=1) > 0
    inradius = float(np.min(np.sum(nrm[ok] * v[ok], axis=1)))
    circ = float(np.max(np.linalg.norm(reg.polygon.vertices, axis=1)))
    return SandwichReport(inradius >= r_in and circ <= r_out, r_in, r_out, inradius, circ, L)

"""Planar geometry: halfspaces, polygons, clipping, hulls and metrics.

Conventions used throughout the package:

* A :class:`Halfspace` with unit normal ``u`` and offset ``alpha`` denotes
  the closed lower side ``{z : <z, u> <= alpha}``. Its complement is the
  closed upper side ``{z : <z, u> >= alpha}``.
* Polygons store their vertices counter-clockwise.
* Predicates use an absolute tolerance of ``EPS_GEO`` times the scale of
  the data involved.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import InputError

EPS_GEO = 1e-9


@dataclass(frozen=True, eq=False)
class Halfspace:
    """Closed halfspace ``{z : <z, normal> <= offset}``; the normal is normalized."""

    normal: np.ndarray
    offset: float

    def __post_init__(self):
        u = np.asarray(self.normal, dtype=float).reshape(-1)
        nrm = float(np.linalg.norm(u))
        if not np.isfinite(nrm) or nrm == 0.0:
            raise InputError("halfspace normal must be a non-zero finite vector")
        u = u / nrm
        u.setflags(write=False)
        object.__setattr__(self, "normal", u)
        object.__setattr__(self, "offset", float(self.offset) / nrm)

    @classmethod
    def through(cls, x, u) -> "Halfspace":
        """Halfspace with normal ``u`` whose boundary passes through ``x``."""
        u = np.asarray(u, dtype=float)
        u = u / np.linalg.norm(u)
        return cls(u, float(np.dot(np.asarray(x, dtype=float), u)))

    @classmethod
    def from_angle(cls, theta: float, offset: float) -> "Halfspace":
        return cls(np.array([math.cos(theta), math.sin(theta)]), offset)

    @property
    def dim(self) -> int:
        return self.normal.shape[0]

    def complement(self) -> "Halfspace":
        """The closed upper side, written as a lower side with flipped normal."""
        return Halfspace(-self.normal, -self.offset)

    def signed_distance(self, points) -> np.ndarray:
        return np.asarray(points, dtype=float) @ self.normal - self.offset

    def contains(self, points, tol: float = 0.0) -> np.ndarray:
        return self.signed_distance(points) <= tol


def _signed_area2(v: np.ndarray) -> float:
    if len(v) < 3:
        return 0.0
    a = v - v[0]
    b = np.roll(a, -1, axis=0)
    return float(np.sum(a[:, 0] * b[:, 1] - b[:, 0] * a[:, 1]))


class Polygon:
    """Simple polygon with counter-clockwise vertices.

    ``bounded`` is False only for outputs of :func:`intersect_halfplanes`
    whose true intersection is unbounded (the vertices are then those of the
    clipped bounding box). ``rank`` is the affine dimension of the vertex set,
    so convex hulls of collinear points come back as segments with rank 1.
    """

    __slots__ = ("vertices", "convex", "bounded", "rank", "_area")

    def __init__(self, vertices, convex: bool | None = None, *, bounded: bool = True,
                 rank: int | None = None):
        v = np.array(vertices, dtype=float).reshape(-1, 2)
        if len(v) > 1:
            keep = np.any(v != np.roll(v, 1, axis=0), axis=1)
            if not keep.any():
                keep[0] = True
            v = v[keep]
        a2 = _signed_area2(v)
        if a2 < 0:
            v = v[::-1].copy()
            a2 = -a2
        v = np.ascontiguousarray(v)
        v.setflags(write=False)
        self.vertices = v
        self._area = 0.5 * a2
        if rank is None:
            if len(v) == 0:
                rank = -1
            elif len(v) == 1:
                rank = 0
            elif self._area > 0:
                rank = 2
            else:
                rank = 1
        self.rank = rank
        self.bounded = bounded
        if convex is None:
            convex = _is_convex(v)
        self.convex = bool(convex)

    def __len__(self):
        return len(self.vertices)

    def __repr__(self):
        tag = "" if self.bounded else ", unbounded"
        return f"Polygon(n={len(self)}, area={self._area:.6g}{tag})"

    @property
    def is_empty(self) -> bool:
        return len(self.vertices) == 0

    @property
    def area(self) -> float:
        return self._area

    @property
    def scale(self) -> float:
        if self.is_empty:
            return 1.0
        return max(1.0, float(np.max(np.abs(self.vertices))))

    @property
    def diameter(self) -> float:
        if len(self.vertices) < 2:
            return 0.0
        v = self.vertices
        best = 0.0
        for i in range(0, len(v), 1024):
            d = v[i:i + 1024, None, :] - v[None, :, :]
            best = max(best, float(np.max(np.sum(d * d, axis=2))))
        return math.sqrt(best)

    def edges(self):
        """Edge start points and edge vectors."""
        v = self.vertices
        return v, np.roll(v, -1, axis=0) - v

    def outward_normals(self) -> np.ndarray:
        _, e = self.edges()
        n = np.stack([e[:, 1], -e[:, 0]], axis=1)
        lens = np.linalg.norm(n, axis=1)
        lens[lens == 0] = 1.0
        return n / lens[:, None]

    def transform(self, A, b=(0.0, 0.0)) -> "Polygon":
        A = np.asarray(A, dtype=float)
        return Polygon(self.vertices @ A.T + np.asarray(b, dtype=float), self.convex)

    def translate(self, t) -> "Polygon":
        return Polygon(self.vertices + np.asarray(t, dtype=float), self.convex)

    def contains(self, points, tol: float | None = None) -> np.ndarray:
        """Closed point-in-polygon test (convex polygons use half-plane tests)."""
        p = np.atleast_2d(np.asarray(points, dtype=float))
        if tol is None:
            tol = EPS_GEO * self.scale
        if self.rank < 2:
            return _dist_to_convex(p, self) <= tol
        if self.convex:
            v, e = self.edges()
            lens = np.linalg.norm(e, axis=1)
            ok = lens > 0
            v, e, lens = v[ok], e[ok], lens[ok]
            out = np.empty(len(p), dtype=bool)
            step = max(1, (1 << 22) // max(len(v), 1))
            for s in range(0, len(p), step):
                q = p[s:s + step]
                cr = (e[None, :, 0] * (q[:, None, 1] - v[None, :, 1])
                      - e[None, :, 1] * (q[:, None, 0] - v[None, :, 0])) / lens[None, :]
                out[s:s + step] = np.all(cr >= -tol, axis=1)
            return out
        return _winding_contains(p, self.vertices) | (_dist_to_boundary(p, self.vertices) <= tol)


EMPTY = Polygon(np.zeros((0, 2)), convex=True)


def _is_convex(v: np.ndarray) -> bool:
    if len(v) < 3:
        return True
    a = np.roll(v, -1, axis=0) - v
    b = np.roll(a, -1, axis=0)
    cr = a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0]
    scale = max(1.0, float(np.max(np.abs(v))))
    return bool(np.all(cr >= -1e-12 * scale * scale))


def polygon(vertices, convex: bool | None = None) -> Polygon:
    return Polygon(vertices, convex)


def box(x0: float, y0: float, x1: float, y1: float) -> Polygon:
    return Polygon([[x0, y0], [x1, y0], [x1, y1], [x0, y1]], convex=True)


def regular_polygon(n: int, radius: float = 1.0, center=(0.0, 0.0), phase: float = 0.0) -> Polygon:
    t = phase + 2.0 * np.pi * np.arange(n) / n
    v = np.stack([np.cos(t), np.sin(t)], axis=1) * radius + np.asarray(center, dtype=float)
    return Polygon(v, convex=True)


@dataclass(frozen=True, eq=False)
class PolygonalRegion:
    """Union of polygons with disjoint interiors and per-component masses.

    Without explicit weights the mass is proportional to area, i.e. the
    uniform distribution on the union.
    """

    components: tuple
    weights: tuple = None

    def __post_init__(self):
        comps = tuple(c if isinstance(c, Polygon) else Polygon(c) for c in self.components)
        if not comps:
            raise InputError("a polygonal region needs at least one component")
        if any(c.area <= 0 for c in comps):
            raise InputError("region components must have positive area")
        if self.weights is None:
            w = np.array([c.area for c in comps])
        else:
            w = np.asarray(self.weights, dtype=float)
            if w.shape != (len(comps),) or np.any(w <= 0):
                raise InputError("weights must be positive, one per component")
        w = w / w.sum()
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "weights", tuple(float(x) for x in w))

    @property
    def area(self) -> float:
        return float(sum(c.area for c in self.components))

    @property
    def is_uniform(self) -> bool:
        a = np.array([c.area for c in self.components])
        return bool(np.allclose(np.array(self.weights), a / a.sum(), rtol=1e-12, atol=0))

    def vertices(self) -> np.ndarray:
        return np.vstack([c.vertices for c in self.components])

    def transform(self, A, b=(0.0, 0.0)) -> "PolygonalRegion":
        return PolygonalRegion(tuple(c.transform(A, b) for c in self.components), self.weights)


# -- clipping, area, moments -------------------------------------------------

def clip_halfplane(poly: Polygon, h: Halfspace) -> Polygon:
    """``poly`` intersected with the closed halfspace ``h``."""
    if poly.is_empty:
        return EMPTY
    v = kernels.clip(poly.vertices, float(h.normal[0]), float(h.normal[1]), h.offset)
    if len(v) < 3:
        return Polygon(v, convex=True) if poly.convex else EMPTY
    return Polygon(v, convex=poly.convex or None)


def area(poly: Polygon) -> float:
    return poly.area


def moments(poly: Polygon):
    """Area and first moments (integrals of x and y) of a polygon."""
    v = poly.vertices
    if len(v) < 3:
        return 0.0, 0.0, 0.0
    a, sx, sy = kernels.clip_moments(v, 0.0, 0.0, 1.0)
    return float(a), float(sx), float(sy)


def centroid(poly: Polygon) -> np.ndarray:
    a, sx, sy = moments(poly)
    if a <= 0:
        raise InputError("centroid of a zero-area polygon is undefined")
    return np.array([sx / a, sy / a])


def second_moments(poly: Polygon) -> np.ndarray:
    """Matrix of integrals of x^2, xy, y^2 over the polygon (not centered)."""
    v = poly.vertices
    if len(v) < 3:
        return np.zeros((2, 2))
    x, y = v[:, 0], v[:, 1]
    x1, y1 = np.roll(x, -1), np.roll(y, -1)
    c = x * y1 - x1 * y
    ixx = np.sum((x * x + x * x1 + x1 * x1) * c) / 12.0
    iyy = np.sum((y * y + y * y1 + y1 * y1) * c) / 12.0
    ixy = np.sum((x * y1 + 2 * x * y + 2 * x1 * y1 + x1 * y) * c) / 24.0
    return np.array([[ixx, ixy], [ixy, iyy]])


# -- chords --------------------------------------------------------------------

def _chord_convex(poly: Polygon, base, w, tol):
    # Cyrus-Beck on the closed polygon; returns the parameter interval or None.
    v, e = poly.edges()
    n = np.stack([e[:, 1], -e[:, 0]], axis=1)
    lens = np.linalg.norm(n, axis=1)
    ok = lens > 0
    n = n[ok] / lens[ok, None]
    c = np.sum(n * v[ok], axis=1)
    a = n @ base - c
    b = n @ w
    lo, hi = -np.inf, np.inf
    for ai, bi in zip(a, b):
        if abs(bi) < 1e-15:
            if ai > tol:
                return None
            continue
        t = (tol - ai) / bi
        if bi > 0:
            hi = min(hi, t)
        else:
            lo = max(lo, t)
    if lo > hi:
        return None
    return lo, hi


def _chord_simple(poly: Polygon, base, w, u, alpha):
    v = poly.vertices
    nxt = np.roll(v, -1, axis=0)
    sa = v @ u - alpha
    sb = nxt @ u - alpha
    cross = (sa > 0) != (sb > 0)
    t = sa[cross] / (sa[cross] - sb[cross])
    pts = v[cross] + t[:, None] * (nxt[cross] - v[cross])
    params = np.sort((pts - base) @ w)
    return [(params[i], params[i + 1]) for i in range(0, len(params) - 1, 2)]


def chord_intervals(shape, h: Halfspace, tol: float | None = None):
    """Merged parameter intervals of ``shape`` on the boundary line of ``h``.

    The line is parametrized as ``offset * u + t * w`` with ``w`` the normal
    rotated by +90 degrees. ``shape`` is a Polygon or a PolygonalRegion; the
    chord of a region is the union of the chords of its components.
    """
    comps = shape.components if isinstance(shape, PolygonalRegion) else (shape,)
    u = h.normal
    w = np.array([-u[1], u[0]])
    base = h.offset * u
    if tol is None:
        tol = EPS_GEO * max(c.scale for c in comps)
    ivs = []
    for c in comps:
        if c.convex:
            iv = _chord_convex(c, base, w, tol)
            if iv is not None:
                ivs.append(iv)
        else:
            ivs.extend(_chord_simple(c, base, w, u, h.offset))
    ivs.sort()
    merged = []
    for lo, hi in ivs:
        if merged and lo <= merged[-1][1] + tol:
            merged[-1] = (merged[-1][0], max(merged[-1][1], hi))
        else:
            merged.append((lo, hi))
    return merged, base, w


def chord_barycenter(shape, h: Halfspace) -> np.ndarray:
    """Midpoint of mass of the chord ``shape`` ∩ boundary of ``h``."""
    ivs, base, w = chord_intervals(shape, h)
    lens = np.array([b - a for a, b in ivs])
    if len(ivs) == 0 or lens.sum() <= EPS_GEO:
        raise InputError("the line meets the polygon in an empty set or a single point")
    mids = np.array([(a + b) / 2 for a, b in ivs])
    t = float(np.dot(lens, mids) / lens.sum())
    return base + t * w


# -- halfplane intersection -----------------------------------------------------

def _spread_order(angles: np.ndarray) -> np.ndarray:
    # Visit directions in bit-reversed angular order so the first few clips
    # already bound the region; later clips then work at the region's scale.
    m = len(angles)
    ranks = np.argsort(angles, kind="stable")
    bits = max(1, int(math.ceil(math.log2(max(m, 2)))))
    r = np.arange(m)
    rev = np.zeros(m, dtype=np.int64)
    for b in range(bits):
        rev |= ((r >> b) & 1) << (bits - 1 - b)
    return ranks[np.argsort(rev, kind="stable")]


def intersect_halfplanes(hs, tol: float | None = None, scale: float | None = None) -> Polygon:
    """Convex polygon common to all halfplanes.

    An empty intersection returns :data:`EMPTY`; an unbounded one returns the
    intersection clipped to a large box, flagged ``bounded=False``.
    """
    hs = list(hs)
    if scale is None:
        scale = max([1.0] + [abs(h.offset) for h in hs])
    big = 1e6 * scale
    if tol is None:
        tol = EPS_GEO * scale
    cur = np.array([[-big, -big], [big, -big], [big, big], [-big, big]])
    if hs:
        normals = np.array([h.normal for h in hs])
        offsets = np.array([h.offset for h in hs])
        order = _spread_order(np.arctan2(normals[:, 1], normals[:, 0]))
        for i in order:
            cur = kernels.clip(cur, normals[i, 0], normals[i, 1], offsets[i] + tol)
            if len(cur) == 0:
                return EMPTY
    bounded = not np.any(np.abs(cur) >= big * (1 - 1e-9))
    return Polygon(cur, convex=True, bounded=bounded, rank=2 if _signed_area2(cur) > 0 else None)


def intersect_offsets(angles, offsets, tol: float | None = None, start: np.ndarray | None = None):
    """Like :func:`intersect_halfplanes` for normals given by angle.

    ``start`` may hold the vertices of a convex polygon already known to
    contain the result, which is then clipped further.
    """
    angles = np.asarray(angles, dtype=float)
    offsets = np.asarray(offsets, dtype=float)
    scale = max(1.0, float(np.max(np.abs(offsets[np.isfinite(offsets)]), initial=0.0)))
    if tol is None:
        tol = EPS_GEO * scale
    big = 1e6 * scale
    if start is None:
        cur = np.array([[-big, -big], [big, -big], [big, big], [-big, big]])
    else:
        cur = np.ascontiguousarray(start, dtype=float)
    cs, sn = np.cos(angles), np.sin(angles)
    for i in _spread_order(angles):
        if not np.isfinite(offsets[i]):
            if offsets[i] < 0:
                return EMPTY
            continue
        cur = kernels.clip(cur, cs[i], sn[i], offsets[i] + tol)
        if len(cur) == 0:
            return EMPTY
    bounded = not np.any(np.abs(cur) >= big * (1 - 1e-9))
    return Polygon(cur, convex=True, bounded=bounded, rank=2 if _signed_area2(cur) > 0 else None)


# -- hulls -----------------------------------------------------------------------

def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points) -> Polygon:
    """Counter-clockwise convex hull (Andrew's monotone chain).

    Collinear boundary points are dropped. Degenerate inputs come back with
    ``rank`` 0 (a single point) or 1 (a segment given by its endpoints).
    """
    p = np.unique(np.asarray(points, dtype=float).reshape(-1, 2), axis=0)
    if len(p) == 0:
        raise InputError("convex hull of an empty point set")
    if len(p) == 1:
        return Polygon(p, convex=True, rank=0)
    rows = p.tolist()
    lower, upper = [], []
    for q in rows:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], q) <= 0:
            lower.pop()
        lower.append(q)
    for q in reversed(rows):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], q) <= 0:
            upper.pop()
        upper.append(q)
    hull = np.array(lower[:-1] + upper[:-1])
    if len(hull) == 2:
        return Polygon(hull, convex=True, rank=1)
    return Polygon(hull, convex=True, rank=2)


# -- metrics -----------------------------------------------------------------------

def _segment_distances(p: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # distances from each point to each segment [a_j, b_j], shape (len(p), len(a))
    d = b - a
    dd = np.sum(d * d, axis=1)
    dd[dd == 0] = 1.0
    rel = p[:, None, :] - a[None, :, :]
    t = np.clip(np.sum(rel * d[None, :, :], axis=2) / dd[None, :], 0.0, 1.0)
    q = rel - t[:, :, None] * d[None, :, :]
    return np.sqrt(np.sum(q * q, axis=2))


def _dist_to_boundary(p: np.ndarray, v: np.ndarray) -> np.ndarray:
    out = np.empty(len(p))
    nxt = np.roll(v, -1, axis=0)
    step = max(1, (1 << 21) // max(len(v), 1))
    for s in range(0, len(p), step):
        out[s:s + step] = _segment_distances(p[s:s + step], v, nxt).min(axis=1)
    return out


def _dist_to_convex(p: np.ndarray, poly: Polygon) -> np.ndarray:
    v = poly.vertices
    if len(v) == 1:
        return np.linalg.norm(p - v[0], axis=1)
    if len(v) == 2 or poly.rank < 2:
        out = np.empty(len(p))
        for s in range(0, len(p), 256):
            out[s:s + 256] = _segment_distances(p[s:s + 256], v[:-1], v[1:]).min(axis=1)
        return out
    d = _dist_to_boundary(p, v)
    inside = poly.contains(p, tol=0.0)
    d[inside] = 0.0
    return d


def _winding_contains(p: np.ndarray, v: np.ndarray) -> np.ndarray:
    nxt = np.roll(v, -1, axis=0)
    x, y = p[:, 0][:, None], p[:, 1][:, None]
    y0, y1 = v[None, :, 1], nxt[None, :, 1]
    x0, x1 = v[None, :, 0], nxt[None, :, 0]
    straddle = (y0 > y) != (y1 > y)
    with np.errstate(divide="ignore", invalid="ignore"):
        xc = x0 + (y - y0) * (x1 - x0) / (y1 - y0)
    hits = straddle & (x < xc)
    return (np.sum(hits, axis=1) % 2) == 1


def hausdorff(a: Polygon, b: Polygon) -> float:
    """Hausdorff distance between two non-empty convex polygons."""
    if a.is_empty or b.is_empty:
        raise InputError("hausdorff distance needs non-empty polygons")
    return float(max(_dist_to_convex(a.vertices, b).max(), _dist_to_convex(b.vertices, a).max()))


def point_distance(points, poly: Polygon) -> np.ndarray:
    """Euclidean distance from points to a convex polygon (0 inside)."""
    return _dist_to_convex(np.atleast_2d(np.asarray(points, dtype=float)), poly)


def boundary_distance(points, poly: Polygon) -> np.ndarray:
    """Distance from points to the boundary curve of a polygon."""
    return _dist_to_boundary(np.atleast_2d(np.asarray(points, dtype=float)), poly.vertices)


def intersection_area(a: Polygon, b: Polygon) -> float:
    if a.is_empty or b.is_empty:
        return 0.0
    return _intersection_area(a, b)


def triangulate(poly: Polygon) -> np.ndarray:
    """Triangles (k, 3, 2) covering a simple polygon (fan for convex, ear clipping otherwise)."""
    v = poly.vertices
    n = len(v)
    if n < 3:
        return np.zeros((0, 3, 2))
    if poly.convex:
        idx = np.arange(1, n - 1)
        return np.stack([np.repeat(v[:1], n - 2, axis=0), v[idx], v[idx + 1]], axis=1)
    idx = list(range(n))
    tris = []
    guard = 0
    while len(idx) > 3 and guard < 10 * n * n:
        guard += 1
        m = len(idx)
        for k in range(m):
            i0, i1, i2 = idx[k - 1], idx[k], idx[(k + 1) % m]
            a, b, c = v[i0], v[i1], v[i2]
            if _cross(a, b, c) <= 0:
                continue
            others = [j for j in idx if j not in (i0, i1, i2)]
            if others:
                q = v[others]
                d1 = (b[0] - a[0]) * (q[:, 1] - a[1]) - (b[1] - a[1]) * (q[:, 0] - a[0])
                d2 = (c[0] - b[0]) * (q[:, 1] - b[1]) - (c[1] - b[1]) * (q[:, 0] - b[0])
                d3 = (a[0] - c[0]) * (q[:, 1] - c[1]) - (a[1] - c[1]) * (q[:, 0] - c[0])
                if np.any((d1 >= 0) & (d2 >= 0) & (d3 >= 0)):
                    continue
            tris.append((a, b, c))
            del idx[k]
            break
        else:
            raise InputError("ear clipping failed; polygon is not simple")
    tris.append(tuple(v[j] for j in idx))
    return np.array(tris)


def _intersection_area(a: Polygon, b: Polygon) -> float:
    if not b.convex and a.convex:
        a, b = b, a
    pieces = [b] if b.convex else [Polygon(t, convex=True) for t in triangulate(b)]
    total = 0.0
    for piece in pieces:
        cur = a.vertices
        for vi, ei in zip(*piece.edges()):
            nrm = np.array([ei[1], -ei[0]])
            ln = np.linalg.norm(nrm)
            if ln == 0:
                continue
            nrm /= ln
            cur = kernels.clip(cur, nrm[0], nrm[1], float(nrm @ vi))
            if len(cur) < 3:
                break
        else:
            total += abs(0.5 * _signed_area2(cur))
    return total


def symdiff_area(a: Polygon, b: Polygon) -> float:
    """Area of the symmetric difference of two simple polygons."""
    if a.is_empty or b.is_empty:
        return a.area + b.area
    return max(0.0, a.area + b.area - 2.0 * _intersection_area(a, b))


def support_function(poly: Polygon, u) -> float:
    """max over vertices of <v, u> for a direction ``u``."""
    if poly.is_empty:
        raise InputError("support function of an empty polygon")
    u = np.asarray(u, dtype=float)
    return float(np.max(poly.vertices @ u))


def polar_body(poly: Polygon, x0=(0.0, 0.0)) -> Polygon:
    """Polar of a convex polygon with respect to an interior point ``x0``.

    Returns ``{y : <y, v - x0> <= 1 for all vertices v}``. Each edge of the
    polygon yields one vertex of the polar.
    """
    if not poly.convex or poly.rank < 2:
        raise InputError("polar body needs a convex polygon with interior")
    x0 = np.asarray(x0, dtype=float)
    v = poly.vertices - x0
    nrm = poly.outward_normals()
    dist = np.sum(nrm * v, axis=1)
    lens = np.linalg.norm(np.roll(v, -1, axis=0) - v, axis=1)
    if np.any(dist[lens > 0] <= EPS_GEO * poly.scale):
        raise InputError("x0 must lie strictly inside the polygon")
    a, b = v, np.roll(v, -1, axis=0)
    a, b = a[lens > 0], b[lens > 0]
    det = a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0]
    y = np.stack([(b[:, 1] - a[:, 1]) / det, (a[:, 0] - b[:, 0]) / det], axis=1)
    return Polygon(y, convex=True)

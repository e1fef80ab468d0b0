"""Pure numpy implementations of the planar kernels.

Used when the compiled extension is unavailable, and as the reference the
compiled kernels are tested against.
"""
import numpy as np


def clip(v, nx, ny, c):
    v = np.asarray(v, dtype=float)
    n = len(v)
    if n == 0:
        return np.empty((0, 2))
    s = v[:, 0] * nx + v[:, 1] * ny - c
    inside = s <= 0.0
    if inside.all():
        return v.copy()
    if not inside.any():
        return np.empty((0, 2))
    nxt = np.roll(v, -1, axis=0)
    s1 = np.roll(s, -1)
    crossing = inside != (s1 <= 0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(crossing, s / (s - s1), 0.0)
    x = v + t[:, None] * (nxt - v)
    pts = np.stack([v, x], axis=1).reshape(-1, 2)
    keep = np.stack([inside, crossing], axis=1).reshape(-1)
    return pts[keep]


def _moments(p):
    if len(p) < 3:
        return 0.0, 0.0, 0.0
    o = p[0]
    a = p - o
    b = np.roll(a, -1, axis=0)
    cr = a[:, 0] * b[:, 1] - b[:, 0] * a[:, 1]
    area2 = cr.sum()
    sx = ((a[:, 0] + b[:, 0]) * cr).sum() / 6.0 + 0.5 * area2 * o[0]
    sy = ((a[:, 1] + b[:, 1]) * cr).sum() / 6.0 + 0.5 * area2 * o[1]
    return 0.5 * area2, sx, sy


def clip_moments(v, nx, ny, c):
    """Area and first moments of ``v`` clipped to ``nx*x + ny*y <= c``."""
    return _moments(clip(v, nx, ny, c))


def clip_area(v, nx, ny, c):
    return _moments(clip(v, nx, ny, c))[0]


def clip_areas(v, nx, ny, c):
    """Clipped areas for many halfplanes ``nx[k]*x + ny[k]*y <= c[k]``."""
    return np.array([clip_area(v, a, b, t) for a, b, t in zip(nx, ny, c)])


def sweep_areas(v, px, py, angles):
    """Areas of ``v`` intersected with {<z - p, u(theta)> <= 0} for each angle."""
    out = np.empty(len(angles))
    for k, th in enumerate(angles):
        nx, ny = np.cos(th), np.sin(th)
        out[k] = clip_area(v, nx, ny, nx * px + ny * py)
    return out


def _turn(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def hull_area(pts):
    """Area of the convex hull of lexicographically sorted points."""
    pts = np.asarray(pts, dtype=float)
    if len(pts) < 3:
        return 0.0
    rows = pts.tolist()
    lower, upper = [], []
    for p in rows:
        while len(lower) >= 2 and _turn(lower[-2], lower[-1], p) <= 0.0:
            lower.pop()
        lower.append(p)
    for p in reversed(rows):
        while len(upper) >= 2 and _turn(upper[-2], upper[-1], p) <= 0.0:
            upper.pop()
        upper.append(p)
    hull = np.array(lower[:-1] + upper[:-1])
    return _moments(hull)[0]

"""Smooth convex bodies in the plane given by a closed parametric boundary.

The parameter ``t`` runs over [0, 1) and the curve is traversed
counter-clockwise. Derivatives are taken with respect to ``t``.
"""
from __future__ import annotations

import math
from functools import cached_property

import numpy as np
from scipy import integrate, optimize

from .errors import InputError
from .geom import Polygon

_GL_X, _GL_W = np.polynomial.legendre.leggauss(48)
_TWO_PI = 2.0 * math.pi


def _cross(a, b):
    return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]


class SmoothBody2D:
    """Convex body with a C^2 boundary curve.

    ``gamma``, ``d1`` and ``d2`` map an array of parameters of shape (k,)
    to arrays of shape (k, 2).
    """

    def __init__(self, gamma, d1, d2, name="smooth", support=None, area=None, check=True):
        self._gamma, self._d1, self._d2 = gamma, d1, d2
        self.name = name
        self._support_exact = support
        self._area_exact = area
        if check:
            t = np.arange(4096) / 4096
            if np.min(np.linalg.norm(self.d1(t), axis=1)) <= 0:
                raise InputError("boundary parametrization must be regular")
            if self.signed_area() <= 0:
                raise InputError("boundary must be positively oriented")

    def __repr__(self):
        return f"SmoothBody2D({self.name})"

    # -- evaluators ---------------------------------------------------------------

    def gamma(self, t):
        return self._gamma(np.atleast_1d(np.asarray(t, dtype=float)) % 1.0)

    def d1(self, t):
        return self._d1(np.atleast_1d(np.asarray(t, dtype=float)) % 1.0)

    def d2(self, t):
        return self._d2(np.atleast_1d(np.asarray(t, dtype=float)) % 1.0)

    def speed(self, t):
        return np.linalg.norm(self.d1(t), axis=1)

    def curvature(self, t):
        g1, g2 = self.d1(t), self.d2(t)
        return _cross(g1, g2) / np.linalg.norm(g1, axis=1) ** 3

    def normal(self, t):
        """Outward unit normal."""
        g1 = self.d1(t)
        n = np.stack([g1[:, 1], -g1[:, 0]], axis=1)
        return n / np.linalg.norm(n, axis=1)[:, None]

    def is_convex(self, samples: int = 4096) -> bool:
        t = np.arange(samples) / samples
        return bool(np.min(self.curvature(t)) >= -1e-9)

    def require_convex(self):
        if not self.is_convex():
            raise InputError(f"{self.name} failed the convexity check (negative curvature sampled)")

    # -- global quantities --------------------------------------------------------

    def signed_area(self) -> float:
        # periodic trapezoid rule: spectrally accurate for smooth closed curves
        t = np.arange(4096) / 4096
        return 0.5 * float(np.mean(_cross(self.gamma(t), self.d1(t))))

    @cached_property
    def area(self) -> float:
        if self._area_exact is not None:
            return float(self._area_exact)
        f = lambda s: 0.5 * float(_cross(self.gamma(s), self.d1(s))[0])
        val, _ = integrate.quad(f, 0.0, 1.0, epsabs=1e-14, epsrel=1e-13, limit=400)
        return val

    def perimeter(self) -> float:
        val, _ = integrate.quad(lambda s: float(self.speed(s)[0]), 0.0, 1.0, epsrel=1e-12, limit=400)
        return val

    def _table(self, n=2048):
        t = np.arange(n) / n
        return t, self.gamma(t)

    def support_point(self, u) -> float:
        """Parameter of the boundary point with outward normal ``u``."""
        u = np.asarray(u, dtype=float)
        t, pts = self._table()
        k = int(np.argmax(pts @ u))
        h = 1.0 / len(t)
        res = optimize.minimize_scalar(lambda s: -float(self.gamma(s)[0] @ u),
                                       bounds=(t[k] - h, t[k] + h), method="bounded",
                                       options={"xatol": 1e-13})
        return float(res.x) % 1.0

    def support(self, u) -> float:
        u = np.asarray(u, dtype=float)
        u = u / np.linalg.norm(u)
        if self._support_exact is not None:
            return float(self._support_exact(u))
        return float(self.gamma(self.support_point(u))[0] @ u)

    def contains(self, points, tol: float = 1e-12) -> np.ndarray:
        """Membership test: inside the inscribed 4096-gon, or inside all sampled tangent lines."""
        p = np.atleast_2d(np.asarray(points, dtype=float))
        poly = self.polygon(4096)
        inside = poly.contains(p, tol=tol)
        rest = np.flatnonzero(~inside)
        if len(rest):
            t = np.arange(4096) / 4096
            g, n = self.gamma(t), self.normal(t)
            off = np.sum(g * n, axis=1)
            inside[rest] = np.all(p[rest] @ n.T <= off + tol, axis=1)
        return inside

    def polygon(self, n: int = 4096) -> Polygon:
        """Inscribed polygon through ``n`` equally spaced parameters."""
        return Polygon(self.gamma(np.arange(n) / n), convex=True)

    def sample(self, n: int, seed) -> np.ndarray:
        """Uniform points inside the body by rejection from the bounding box."""
        rng = np.random.default_rng(seed)
        _, pts = self._table()
        lo, hi = pts.min(axis=0) - 1e-9, pts.max(axis=0) + 1e-9
        out = []
        need = n
        while need > 0:
            cand = lo + rng.random((2 * need + 16, 2)) * (hi - lo)
            cand = cand[self.contains(cand, tol=0.0)]
            out.append(cand[:need])
            need -= len(out[-1])
        return np.concatenate(out)

    # -- caps -----------------------------------------------------------------------

    def chord_params(self, u, s, tmax=None):
        """Parameters (ta, tb) where the line <z,u> = s meets the boundary, ordered so the
        arc from ta to tb (increasing t) lies in {<z,u> >= s}."""
        u = np.asarray(u, dtype=float)
        if tmax is None:
            tmax = self.support_point(u)
        g = lambda t: float(self.gamma(t)[0] @ u) - s
        if g(tmax) <= 0:
            return None
        n = 512
        grid = tmax + np.arange(1, n) / n
        vals = self.gamma(grid) @ u - s
        neg = np.flatnonzero(vals < 0)
        if len(neg) == 0:
            raise InputError("the line does not cut the body")
        k1, k2 = neg[0], neg[-1]
        right_lo = tmax if k1 == 0 else grid[k1 - 1]
        tb = optimize.brentq(g, right_lo, grid[k1], xtol=1e-15, rtol=8.9e-16)
        left_hi = tmax + 1.0 if k2 == n - 2 else grid[k2 + 1]
        ta = optimize.brentq(g, grid[k2], left_hi, xtol=1e-15, rtol=8.9e-16) - 1.0
        return ta, tb

    def _cap(self, u, s, tmax, hi, lo):
        if s >= hi:
            return 0.0
        if s <= lo:
            return self.area
        ta, tb = self.chord_params(u, s, tmax)
        p1 = self.gamma(ta)[0]
        panels = max(1, math.ceil((tb - ta) / 0.05))
        edges = np.linspace(ta, tb, panels + 1)
        total = 0.0
        for a, b in zip(edges[:-1], edges[1:]):
            mid, half = 0.5 * (a + b), 0.5 * (b - a)
            t = mid + half * _GL_X
            total += 0.5 * half * float(np.sum(_GL_W * _cross(self.gamma(t) - p1, self.d1(t))))
        return total

    def cap_area(self, u, s) -> float:
        """Area of the body intersected with {<z,u> >= s}."""
        u = np.asarray(u, dtype=float)
        u = u / np.linalg.norm(u)
        return self._cap(u, s, self.support_point(u), self.support(u), -self.support(-u))

    def cap_offset(self, u, delta) -> float:
        """Offset s such that the cap {<z,u> >= s} has area ``delta``."""
        u = np.asarray(u, dtype=float)
        u = u / np.linalg.norm(u)
        if not 0.0 < delta < self.area:
            raise InputError("cap area must lie strictly between 0 and the body's area")
        tmax = self.support_point(u)
        hi = float(self.gamma(tmax)[0] @ u)
        lo = -self.support(-u)
        return optimize.brentq(lambda s: self._cap(u, s, tmax, hi, lo) - delta, lo, hi,
                               xtol=1e-15, rtol=8.9e-16)

    def floating_support(self, delta, m: int = 512):
        """Support function of the convex floating body on ``m`` equally spaced angles."""
        th = _TWO_PI * np.arange(m) / m
        return th, np.array([self.cap_offset((math.cos(a), math.sin(a)), delta) for a in th])

    def transform(self, A, b=None) -> "SmoothBody2D":
        A = np.asarray(A, dtype=float)
        b = np.zeros(2) if b is None else np.asarray(b, dtype=float)
        det = float(np.linalg.det(A))
        if det == 0:
            raise InputError("affine map must be non-singular")
        if det < 0:
            flip = lambda t: (1.0 - t) % 1.0
            return SmoothBody2D(lambda t: self._gamma(flip(t)) @ A.T + b,
                                lambda t: -self._d1(flip(t)) @ A.T,
                                lambda t: self._d2(flip(t)) @ A.T, name=f"T({self.name})",
                                area=self.area * abs(det))
        return SmoothBody2D(lambda t: self._gamma(t) @ A.T + b, lambda t: self._d1(t) @ A.T,
                            lambda t: self._d2(t) @ A.T, name=f"T({self.name})", area=self.area * det)


def _circle_terms(t):
    th = _TWO_PI * t
    return np.cos(th), np.sin(th)


def disk(r: float = 1.0, center=(0.0, 0.0)) -> SmoothBody2D:
    c0 = np.asarray(center, dtype=float)
    w = _TWO_PI

    def g(t):
        c, s = _circle_terms(t)
        return c0 + r * np.stack([c, s], axis=1)

    def g1(t):
        c, s = _circle_terms(t)
        return r * w * np.stack([-s, c], axis=1)

    def g2(t):
        c, s = _circle_terms(t)
        return -r * w * w * np.stack([c, s], axis=1)

    return SmoothBody2D(g, g1, g2, name=f"disk({r:g})", support=lambda u: r + float(u @ c0),
                        area=math.pi * r * r)


def ellipse(a: float, b: float) -> SmoothBody2D:
    if a <= 0 or b <= 0:
        raise InputError("ellipse semi-axes must be positive")
    w = _TWO_PI

    def g(t):
        c, s = _circle_terms(t)
        return np.stack([a * c, b * s], axis=1)

    def g1(t):
        c, s = _circle_terms(t)
        return w * np.stack([-a * s, b * c], axis=1)

    def g2(t):
        c, s = _circle_terms(t)
        return -w * w * np.stack([a * c, b * s], axis=1)

    return SmoothBody2D(g, g1, g2, name=f"ellipse({a:g},{b:g})",
                        support=lambda u: math.hypot(a * u[0], b * u[1]), area=math.pi * a * b)


def perturbed_disk(amp: float, freq: int) -> SmoothBody2D:
    """Radial graph r(theta) = 1 + amp * cos(freq * theta)."""
    freq = int(freq)
    w = _TWO_PI

    def parts(t):
        th = w * t
        r = 1.0 + amp * np.cos(freq * th)
        r1 = -amp * freq * np.sin(freq * th)
        r2 = -amp * freq * freq * np.cos(freq * th)
        return np.cos(th), np.sin(th), r, r1, r2

    def g(t):
        c, s, r, _, _ = parts(t)
        return np.stack([r * c, r * s], axis=1)

    def g1(t):
        c, s, r, r1, _ = parts(t)
        return w * np.stack([r1 * c - r * s, r1 * s + r * c], axis=1)

    def g2(t):
        c, s, r, r1, r2 = parts(t)
        return w * w * np.stack([r2 * c - 2 * r1 * s - r * c, r2 * s + 2 * r1 * c - r * s], axis=1)

    if abs(amp) >= 1:
        raise InputError("perturbation amplitude must be below 1")
    area = math.pi * (1.0 + 0.5 * amp * amp) if freq != 0 else math.pi * (1 + amp) ** 2
    return SmoothBody2D(g, g1, g2, name=f"perturbed-disk({amp:g},{freq})", area=area)

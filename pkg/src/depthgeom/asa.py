"""Affine surface area in the plane and its log-concave analogues.

Smooth bodies are integrated along their parametrization with the periodic
trapezoid rule, which converges geometrically for analytic closed curves;
the node count is doubled until two successive values agree.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate, optimize

from .errors import InputError, NumericalError
from .geom import Polygon, area, convex_hull, polar_body
from .measures import LogConcave, UniformPolygonal
from .regions import convex_floating_body
from .smooth import SmoothBody2D

_TWO_PI = 2.0 * math.pi
# (1/2) (3 / vol_1(B^1))^(2/3) in the plane
FLOATING_CONSTANT = 0.5 * 1.5 ** (2.0 / 3.0)
# 2^(d+1) (vol_{d-1}(B^{d-1}) / (d+1))^2 with d = 2
CAP_CONSTANT = 32.0 / 9.0


def _periodic(f, n0: int = 256, rtol: float = 1e-13, nmax: int = 1 << 16) -> float:
    """Integral over t in [0, 1) of a periodic integrand.

    Trapezoid sums with doubled node counts; integrands that are not smooth
    (curvature touching zero under a fractional power) fall back to QUADPACK.
    """
    n = n0
    prev = float(np.mean(f(np.arange(n) / n)))
    while n < nmax:
        n *= 2
        cur = float(np.mean(f(np.arange(n) / n)))
        if abs(cur - prev) <= rtol * max(1.0, abs(cur)):
            return cur
        prev = cur
    val, err = integrate.quad(lambda t: float(f(np.array([t]))[0]), 0.0, 1.0, limit=2000,
                              epsabs=1e-13, epsrel=1e-11)
    if not np.isfinite(val) or err > 1e-7 * max(1.0, abs(val)):
        raise NumericalError("boundary quadrature did not converge")
    return val


@dataclass
class CurvatureSample:
    t: np.ndarray
    point: np.ndarray
    kappa: np.ndarray
    weight: np.ndarray


def curvature_samples(body: SmoothBody2D, n: int = 1024) -> CurvatureSample:
    """Curvature on ``n`` equally spaced parameters; ``weight`` is the arclength element."""
    t = np.arange(n) / n
    return CurvatureSample(t, body.gamma(t), body.curvature(t), body.speed(t) / n)


def affine_surface_area(body) -> float:
    """as(K), the integral of curvature^(1/3) over the boundary. Zero for polygons."""
    if isinstance(body, Polygon):
        if not body.convex:
            raise InputError("polygon must be convex")
        return 0.0
    body.require_convex()
    return _periodic(lambda t: np.maximum(body.curvature(t), 0.0) ** (1.0 / 3.0) * body.speed(t))


def _support_distance(body: SmoothBody2D, t, x0=(0.0, 0.0)):
    return np.sum((body.gamma(t) - np.asarray(x0, dtype=float)) * body.normal(t), axis=1)


def lp_affine_surface_area(body: SmoothBody2D, p: float) -> float:
    """L_p affine surface area with respect to the origin; ``p`` may be +-inf."""
    if p == -2:
        raise InputError("p = -2 is excluded")
    body.require_convex()
    t = np.arange(4096) / 4096
    if np.min(_support_distance(body, t)) <= 0:
        raise InputError("the origin must be interior to the body")
    if math.isinf(p):
        a, b = 1.0, 2.0
    else:
        a, b = p / (2.0 + p), 2.0 * (p - 1.0) / (2.0 + p)

    def f(s):
        k = np.maximum(body.curvature(s), 0.0)
        return k ** a / _support_distance(body, s) ** b * body.speed(s)

    return _periodic(f)


def polar_area(body, x0=(0.0, 0.0)) -> float:
    """Area of the polar body with respect to an interior point."""
    if isinstance(body, Polygon):
        return area(polar_body(body, x0))
    return 0.5 * _periodic(lambda s: body.curvature(s) / _support_distance(body, s, x0) ** 2
                           * body.speed(s))


def affine_isoperimetric_check(body) -> float:
    """(vol K / vol B)^(1/3) - as(K) / as(B); nonnegative, zero only for ellipses."""
    vol = body.area
    return (vol / math.pi) ** (1.0 / 3.0) - affine_surface_area(body) / _TWO_PI


@dataclass
class SantaloResult:
    point: np.ndarray
    polar_area: float
    product: float
    margin: float


def blaschke_santalo_check(body, start=None, tol: float = 1e-8) -> SantaloResult:
    """Locate the Santalo point by simplex search and check vol K vol K^s <= pi^2."""
    if isinstance(body, Polygon):
        if not body.convex or body.rank < 2:
            raise InputError("polygon must be convex with interior")
        vol = body.area
        x_init = body.vertices.mean(axis=0) if start is None else np.asarray(start, dtype=float)
        v, nrm = body.vertices, body.outward_normals()
        off = np.sum(v * nrm, axis=1)
        inside = lambda x: bool(np.all(off - nrm @ x > 1e-12 * body.scale))
    else:
        vol = body.area
        pts = body.polygon(1024).vertices
        x_init = pts.mean(axis=0) if start is None else np.asarray(start, dtype=float)
        t = np.arange(1024) / 1024
        g, nrm = body.gamma(t), body.normal(t)
        off = np.sum(g * nrm, axis=1)
        inside = lambda x: bool(np.all(off - nrm @ x > 1e-9))

    def f(x):
        if not inside(x):
            return math.inf
        try:
            return polar_area(body, x)
        except InputError:
            return math.inf

    res = optimize.minimize(f, x_init, method="Nelder-Mead",
                            options={"xatol": tol, "fatol": tol * 1e-2, "maxiter": 4000})
    if not (res.success and np.isfinite(res.fun)):
        raise NumericalError(f"Santalo search diverged: {res.message}")
    prod = vol * float(res.fun)
    return SantaloResult(np.asarray(res.x), float(res.fun), prod, math.pi ** 2 - prod)


# -- floating-body limits ---------------------------------------------------------

def _spectral_area(h: np.ndarray) -> float:
    """Area of the body with support values h on equally spaced angles,
    (1/2) integral of h^2 - h'^2, evaluated on the Fourier side."""
    m = len(h)
    c = np.fft.fft(h) / m
    k = np.fft.fftfreq(m, d=1.0 / m)
    if m % 2 == 0:
        c[m // 2] = 0.0
    return float(math.pi * np.sum((1.0 - k * k) * np.abs(c) ** 2))


def floating_body_area(body, delta: float, directions: int = 256) -> float:
    """Area of the convex floating body K_delta, delta being the cut-off area."""
    if isinstance(body, Polygon):
        m = UniformPolygonal(body)
        reg = convex_floating_body(m, delta / body.area, max(directions, 512), certify=False)
        if reg.is_empty:
            raise InputError("delta too large: the floating body is empty")
        return reg.polygon.area
    if not 0.0 < delta < body.area / 2:
        raise InputError("delta too large: the floating body is empty")
    _, s = body.floating_support(delta, directions)
    return _spectral_area(s)


def _neville(x: np.ndarray, y: np.ndarray) -> float:
    """Value at 0 of the interpolating polynomial through (x, y)."""
    p = list(map(float, y))
    n = len(x)
    for k in range(1, n):
        for i in range(n - k):
            p[i] = (x[i + k] * p[i] - x[i] * p[i + 1]) / (x[i + k] - x[i])
    return p[0]


@dataclass
class FloatingLimit:
    deltas: np.ndarray
    values: np.ndarray
    limit: float
    predicted: float | None


def asa_via_floating(body, deltas=(1e-4, 1e-5, 1e-6), directions: int = 256) -> FloatingLimit:
    """(vol K - vol K_delta) / delta^(2/3) and its extrapolation to delta -> 0.

    Extrapolation is polynomial in delta^(2/3), the order of the first
    correction for smooth bodies. For smooth bodies the predicted limit is
    (1/2)(3/2)^(2/3) as(K).
    """
    d = np.asarray(sorted(deltas, reverse=True), dtype=float)
    if np.any(d <= 0):
        raise InputError("deltas must be positive")
    vol = body.area
    vals = np.array([(vol - floating_body_area(body, x, directions)) / x ** (2.0 / 3.0) for x in d])
    lim = _neville(d ** (2.0 / 3.0), vals) if len(d) > 1 else float(vals[0])
    pred = None if isinstance(body, Polygon) else FLOATING_CONSTANT * affine_surface_area(body)
    return FloatingLimit(d, vals, lim, pred)


@dataclass
class FlagAsymptotic:
    deltas: np.ndarray
    values: np.ndarray
    flags: int
    predicted: float


def polytope_flag_asymptotic(poly: Polygon, deltas=(1e-4, 1e-5, 1e-6),
                             directions: int = 1024) -> FlagAsymptotic:
    """(vol S - vol S_delta) / (delta log(1/delta)) against fl(S) / 4 in the plane."""
    if not poly.convex or poly.rank < 2:
        raise InputError("polygon must be convex with interior")
    hull = convex_hull(poly.vertices)
    flags = 2 * len(hull)
    d = np.asarray(sorted(deltas, reverse=True), dtype=float)
    vals = np.array([(poly.area - floating_body_area(poly, x, directions)) / (x * math.log(1.0 / x))
                     for x in d])
    return FlagAsymptotic(d, vals, flags, flags / 4.0)


def square_floating_loss(delta: float) -> float:
    """Exact area lost by the unit square's floating body, 2 delta (1 - ln 2 delta)."""
    if not 0.0 < delta < 0.125:
        raise InputError("formula holds for delta < 1/8")
    return 2.0 * delta * (1.0 - math.log(2.0 * delta))


# -- generalized curvature ------------------------------------------------------------

@dataclass
class CurvatureProbe:
    estimate: float
    deltas: np.ndarray
    heights: np.ndarray
    values: np.ndarray


def _profile_height(f, x0: float, delta: float, span: float) -> float:
    # cap {y <= h} above a convex profile with f(x0) = 0 and horizontal support
    def cap(h):
        if h <= 0:
            return 0.0
        g = lambda s: h - f(s)
        lo = optimize.brentq(g, x0 - span, x0) if g(x0 - span) < 0 else x0 - span
        hi = optimize.brentq(g, x0, x0 + span) if g(x0 + span) < 0 else x0 + span
        pts = [p for p in _kinks(f, lo, hi)]
        # epsrel 1e-12 is out of reach on kinked profiles; quad still returns its best value
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            val, _ = integrate.quad(g, lo, hi, points=pts or None, limit=400, epsabs=1e-300, epsrel=1e-12)
        return val

    hi = 1e-12
    while cap(hi) < delta:
        hi *= 2.0
        if hi > 1e6:
            raise InputError("cap area never reaches delta")
    return optimize.brentq(lambda h: cap(h) - delta, 0.0, hi, xtol=1e-300, rtol=1e-14)


def _kinks(f, lo, hi):
    k = getattr(f, "kinks", None)
    if k is None:
        return []
    return [p for p in k(lo, hi) if lo < p < hi][:300]


def sawtooth_profile():
    """Piecewise linear interpolant of x^2 at the nodes +-1/n, as a convex profile."""

    def f(x):
        a = abs(float(x))
        if a == 0.0:
            return 0.0
        if a >= 1.0:
            return a * a
        n = math.floor(1.0 / a)
        if a * n == 1.0:
            return a * a
        return (2 * n + 1) / (n * (n + 1)) * a - 1.0 / (n * (n + 1))

    def kinks(lo, hi):
        m = max(abs(lo), abs(hi), 1e-300)
        lo_n = max(1, math.ceil(1.0 / m))
        out = []
        for n in range(lo_n, lo_n + 150):
            out += [1.0 / n, -1.0 / n]
        return out

    f.kinks = kinks
    return f


def generalized_curvature_probe(body, x, deltas=(1e-3, 1e-4, 1e-5, 1e-6)) -> CurvatureProbe:
    """c_2 Delta(x, delta)^3 / delta^2 for shrinking cap areas delta.

    ``body`` is a SmoothBody2D with ``x`` a boundary parameter, a convex
    Polygon with ``x`` a boundary point in the relative interior of an edge,
    or a convex profile function f with minimum f(x) = 0 (the body is its
    epigraph, capped near x).
    """
    d = np.asarray(sorted(deltas, reverse=True), dtype=float)
    if isinstance(body, SmoothBody2D):
        t = float(x)
        u = body.normal(t)[0]
        s = float(body.gamma(t)[0] @ u)
        heights = np.array([s - body.cap_offset(u, dl) for dl in d])
    elif isinstance(body, Polygon):
        x = np.asarray(x, dtype=float)
        v, nrm = body.vertices, body.outward_normals()
        e = np.roll(v, -1, axis=0) - v
        dist = np.abs(np.sum((x - v) * nrm, axis=1))
        k = int(np.argmin(dist))
        rel = float(np.dot(x - v[k], e[k]) / np.dot(e[k], e[k]))
        if not 1e-9 < rel < 1 - 1e-9:
            raise InputError("x must lie inside an edge (unique supporting line)")
        m = UniformPolygonal(body)
        u = nrm[k]
        heights = np.array([float(v[k] @ u) - m.upper_quantile(u, dl / body.area) for dl in d])
    elif callable(body):
        x0 = float(x)
        heights = np.array([_profile_height(body, x0, dl, 1.0) for dl in d])
    else:
        raise InputError("unsupported body type")
    vals = CAP_CONSTANT * heights ** 3 / d ** 2
    return CurvatureProbe(float(vals[-1]), d, heights, vals)


# -- log-concave measures --------------------------------------------------------------

def _det_hess(m: LogConcave, x) -> float:
    h = np.atleast_2d(np.asarray(m.hess(x), dtype=float))
    return float(np.linalg.det(h))


def asa_logconcave(m: LogConcave) -> float:
    """Integral of (det Hess psi)^(1/(d+2)) exp(-psi)."""
    e = 1.0 / (m.dim + 2)
    return m._integrate(lambda x: max(_det_hess(m, x), 0.0) ** e * math.exp(-m.psi(x)))


def lambda_asa(m: LogConcave, lam: float) -> float:
    """Integral of exp(lam (2 psi - <x, grad psi>)) (det Hess psi)^lam exp(-psi)."""

    def f(x):
        det = _det_hess(m, x)
        if lam == 0:
            w = 1.0
        elif det <= 0:
            if lam < 0:
                raise InputError("Hessian must be invertible when lambda < 0")
            return 0.0
        else:
            w = det ** lam
        psi = m.psi(x)
        g = float(np.dot(x, np.asarray(m.grad(x), dtype=float)))
        return math.exp(lam * (2.0 * psi - g) - psi) * w

    return m._integrate(f)


@dataclass
class ConvexFunction1D:
    """Convex function on an interval; the callables must accept numpy arrays."""

    psi: object
    d1: object
    d2: object
    domain: tuple = (-math.inf, math.inf)

    def __post_init__(self):
        lo, hi = self.domain
        a = max(lo, -50.0) if math.isinf(lo) else lo
        b = min(hi, 50.0) if math.isinf(hi) else hi
        xs = np.linspace(a, b, 2001)[1:-1]
        if np.min(self.d2(xs)) < -1e-9:
            raise InputError("function is not convex (negative second derivative sampled)")


class FloatingFunction:
    """psi_delta: the boundary of the floating set of the epigraph of psi.

    Lines are parametrized by their tangent point a and lifted by the height
    h(a) that makes the cut area exactly delta. The floating set touches such
    a line at the midpoint of its chord, so psi_delta(x) is the value at x of
    the line whose chord midpoint is x. Functions that are affine near x cut
    off infinite area with every lifted line, and there psi_delta = psi.
    """

    _GL = np.polynomial.legendre.leggauss(64)

    def __init__(self, f: ConvexFunction1D, delta: float):
        if delta <= 0:
            raise InputError("delta must be positive")
        self.f = f
        self.delta = float(delta)

    def _gap(self, a, h, s):
        return float(self.f.psi(a)) + float(self.f.d1(a)) * (s - a) + h - self.f.psi(s)

    def _chord(self, a: float, h: float):
        lo_d, hi_d = self.f.domain
        out = []
        for sgn in (-1.0, 1.0):
            w = 1e-3
            while self._gap(a, h, a + sgn * w) > 0:
                w *= 2.0
                if not lo_d < a + sgn * w < hi_d:
                    raise InputError("delta too large: a cut of area delta leaves the domain")
                if w > 1e8:
                    return None
            lo, hi = sorted((a + 0.5 * sgn * w if w > 1e-3 else a, a + sgn * w))
            out.append(optimize.brentq(lambda s: self._gap(a, h, s), lo, hi, xtol=1e-15, rtol=8.9e-16))
        return out

    def _cap(self, a: float, h: float):
        e = self._chord(a, h)
        if e is None:
            return math.inf, e
        x, w = self._GL
        s = 0.5 * (e[0] + e[1]) + 0.5 * (e[1] - e[0]) * x
        return 0.5 * (e[1] - e[0]) * float(np.sum(w * self._gap(a, h, s))), e

    def _height(self, a: float):
        """Lift h(a) and the chord endpoints; h = 0 and no chord when the cut is unbounded."""
        k = float(self.f.d2(np.array([a]))[0])
        probe = 1e-9 * (1.0 + abs(float(self.f.psi(a))))
        if k <= 0 and self._chord(a, probe) is None:
            return 0.0, None
        h = 0.5 * (1.5 * self.delta * math.sqrt(max(k, 1e-300))) ** (2.0 / 3.0) if k > 0 else 1.0
        for _ in range(30):
            area, e = self._cap(a, h)
            if e is None:
                return 0.0, None
            step = (area - self.delta) / (e[1] - e[0])
            h_new = h - step if h - step > 0 else 0.5 * h
            if abs(h_new - h) <= 1e-14 * h:
                return h_new, self._chord(a, h_new)
            h = h_new
        hi = h
        while self._cap(a, hi)[0] < self.delta:
            hi *= 2.0
        h = optimize.brentq(lambda t: self._cap(a, t)[0] - self.delta, 0.0, hi, xtol=1e-16, rtol=1e-13)
        return h, self._chord(a, h)

    def _line(self, a: float, x: float) -> float:
        h, _ = self._height(a)
        return float(self.f.psi(a)) + float(self.f.d1(a)) * (x - a) + h

    def _tangent_point(self, x: float):
        def mid(a):
            h, e = self._height(a)
            return math.nan if e is None else 0.5 * (e[0] + e[1]) - x

        g0 = mid(x)
        if math.isnan(g0):
            return None
        if g0 == 0.0:
            return x
        w = 1e-3
        sgn = -1.0 if g0 > 0 else 1.0
        while True:
            g1 = mid(x + sgn * w)
            if math.isnan(g1):
                return None
            if g1 * g0 <= 0:
                break
            w *= 2.0
            if w > 1e6:
                raise NumericalError("no cap chord is centred at x")
        lo, hi = sorted((x, x + sgn * w))
        return optimize.brentq(mid, lo, hi, xtol=1e-14, rtol=1e-14)

    def __call__(self, x) -> float:
        x = float(x)
        a = self._tangent_point(x)
        if a is None:
            return float(self.f.psi(x))
        return self._line(a, x)

    def slope(self, x) -> float:
        """Derivative of psi_delta, the slope of the touching line."""
        a = self._tangent_point(float(x))
        return float(self.f.d1(float(x) if a is None else a))


def floating_function_1d(f: ConvexFunction1D, delta: float) -> FloatingFunction:
    return FloatingFunction(f, delta)


def floating_mass_loss(f: ConvexFunction1D, delta: float, lo: float = -12.0, hi: float = 12.0) -> float:
    """Integral of exp(-psi) - exp(-psi_delta) over [lo, hi]."""
    g = floating_function_1d(f, delta)
    val, _ = integrate.quad(lambda x: math.exp(-float(f.psi(x))) - math.exp(-g(x)), lo, hi,
                            epsabs=1e-12, epsrel=1e-7, limit=200)
    return val

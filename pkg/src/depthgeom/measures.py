"""Probability measures with a halfspace-probability oracle.

Every measure answers ``prob(h)``, the mass of the closed halfspace
``{<z, u> <= alpha}``, and the two projection quantiles that the region code
needs. The lower quantile is ``inf{t : P(<X,u> <= t) >= p}``. The upper
quantile is ``sup{t : P(<X,u> >= t) >= delta}``. The two coincide for
continuous projections and differ on atoms and on gaps in the support.
"""
from __future__ import annotations

import math
from abc import ABC, abstractmethod
from functools import cached_property

import numpy as np
from scipy import integrate, optimize, special, stats

from . import kernels
from .errors import InputError, NumericalError, UnsupportedMeasure
from .geom import Halfspace, Polygon, PolygonalRegion, box, second_moments, triangulate


def _unit(u) -> np.ndarray:
    u = np.asarray(u, dtype=float).reshape(-1)
    n = np.linalg.norm(u)
    if n == 0 or not np.isfinite(n):
        raise InputError("direction must be a non-zero finite vector")
    return u / n


def _rng(seed):
    return np.random.default_rng(seed)


# -- one-dimensional marginals ------------------------------------------------------

def ball_marginal_cdf(d: int, s: float) -> float:
    """CDF of one coordinate of the uniform distribution on the unit ball in R^d."""
    if d < 1:
        raise InputError("dimension must be at least 1")
    if s <= -1.0:
        return 0.0
    if s >= 1.0:
        return 1.0
    c = math.exp(math.lgamma((d + 2) / 2) - math.lgamma((d + 1) / 2)) / math.sqrt(math.pi)
    e = (d - 1) / 2.0
    half, _ = integrate.quad(lambda t: (1.0 - t * t) ** e, 0.0, abs(s), epsabs=1e-15, epsrel=1e-13,
                             limit=200)
    return 0.5 + math.copysign(c * half, s)


class MarginalCDF(ABC):
    """Symmetric one-dimensional distribution of a projection."""

    name = "marginal"

    @abstractmethod
    def cdf(self, s: float) -> float: ...

    @abstractmethod
    def quantile(self, p: float) -> float: ...

    def upper(self, delta: float) -> float:
        """sup{s : P(S >= s) >= delta}, which equals -quantile(delta) by symmetry."""
        return -self.quantile(delta)


class GaussianMarginal(MarginalCDF):
    name = "gaussian"

    def cdf(self, s):
        return float(special.ndtr(s))

    def quantile(self, p):
        return float(special.ndtri(p))


class CauchyMarginal(MarginalCDF):
    name = "cauchy"

    def cdf(self, s):
        return 0.5 + math.atan(s) / math.pi

    def quantile(self, p):
        return math.tan(math.pi * (p - 0.5))


class BallMarginal(MarginalCDF):
    name = "ball"

    def __init__(self, d: int):
        self.d = int(d)

    def cdf(self, s):
        return ball_marginal_cdf(self.d, s)

    def quantile(self, p):
        if p <= 0:
            return -1.0
        if p >= 1:
            return 1.0
        return optimize.brentq(lambda s: self.cdf(s) - p, -1.0, 1.0, xtol=1e-15, rtol=8.9e-16)


# -- threshold searches --------------------------------------------------------------

def _inf_ge(f, target, lo, hi, iters=200):
    """inf{t : f(t) >= target} for non-decreasing f with f(lo) < target <= f(hi)."""
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if f(mid) >= target:
            hi = mid
        else:
            lo = mid
    return hi


def _sup_ge(g, target, lo, hi, iters=200):
    """sup{t : g(t) >= target} for non-increasing g with g(lo) >= target > g(hi)."""
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if g(mid) >= target:
            lo = mid
        else:
            hi = mid
    return lo


def _root_or_threshold(g, target, lo, hi, decreasing, scale):
    """Threshold of a monotone continuous function, using Brent when it is
    strictly monotone near the crossing and bisection when it is flat there."""
    glo, ghi = g(lo) - target, g(hi) - target
    if glo == 0.0 and not decreasing:
        return lo
    if ghi == 0.0 and decreasing:
        return hi
    if glo * ghi < 0:
        t = optimize.brentq(lambda s: g(s) - target, lo, hi, xtol=1e-15 * scale, rtol=8.9e-16,
                            maxiter=200)
        eta = 1e-9 * scale
        left, right = g(max(lo, t - eta)) - target, g(min(hi, t + eta)) - target
        if (left > 0 > right) if decreasing else (left < 0 < right):
            return t
    if decreasing:
        return _sup_ge(g, target, lo, hi)
    return _inf_ge(g, target, lo, hi)


# -- measures ------------------------------------------------------------------------

class Measure(ABC):
    """Base class; subclasses implement ``prob`` and usually faster quantiles."""

    dim: int = 2
    has_atoms = False

    @abstractmethod
    def prob(self, h: Halfspace) -> float:
        """Mass of the closed halfspace {<z,u> <= alpha}."""

    def prob_upper(self, u, t: float) -> float:
        """P(<X,u> >= t)."""
        u = _unit(u)
        return self.prob(Halfspace(-u, -t))

    def center(self) -> np.ndarray:
        return np.zeros(self.dim)

    @property
    def scale(self) -> float:
        return 1.0

    def _bracket(self, u):
        c = float(np.dot(self.center(), u))
        r = 10.0 * (self.scale + abs(c))
        return c - r, c + r

    def _expand(self, f, u, target):
        lo, hi = self._bracket(u)
        for _ in range(60):
            if f(lo) < target <= f(hi):
                return lo, hi
            w = hi - lo
            lo, hi = lo - w, hi + w
        raise NumericalError("could not bracket the projection quantile")

    def projection_quantile(self, u, p: float) -> float:
        """inf{t : P(<X,u> <= t) >= p}."""
        if not 0.0 < p <= 1.0:
            raise InputError("quantile level must lie in (0, 1]")
        u = _unit(u)
        f = lambda t: self.prob(Halfspace(u, t))
        if p == 1.0:
            return self.support_value(u)
        lo, hi = self._expand(f, u, p)
        return _root_or_threshold(f, p, lo, hi, False, max(1.0, abs(lo), abs(hi)))

    def upper_quantile(self, u, delta: float) -> float:
        """sup{t : P(<X,u> >= t) >= delta}."""
        if not 0.0 < delta <= 1.0:
            raise InputError("depth level must lie in (0, 1]")
        u = _unit(u)
        g = lambda t: self.prob_upper(u, t)
        lo, hi = self._bracket(u)
        for _ in range(60):
            if g(lo) >= delta > g(hi):
                break
            w = hi - lo
            lo, hi = lo - w, hi + w
        else:
            raise NumericalError("could not bracket the upper quantile")
        return _root_or_threshold(g, delta, lo, hi, True, max(1.0, abs(lo), abs(hi)))

    def support_value(self, u) -> float:
        """Essential supremum of <X,u> (may be +inf)."""
        return math.inf

    def projection_quantiles(self, U, p: float) -> np.ndarray:
        return np.array([self.projection_quantile(u, p) for u in U])

    def upper_quantiles(self, U, delta: float) -> np.ndarray:
        return np.array([self.upper_quantile(u, delta) for u in U])

    def sample(self, n: int, seed) -> np.ndarray:
        raise UnsupportedMeasure(f"sampling is not available for {type(self).__name__}")

    def mean(self) -> np.ndarray:
        raise UnsupportedMeasure(f"mean is not available for {type(self).__name__}")

    def covariance(self) -> np.ndarray:
        raise UnsupportedMeasure(f"covariance is not available for {type(self).__name__}")

    def density_sup(self) -> float:
        raise UnsupportedMeasure(f"{type(self).__name__} has no bounded density")

    def atom_mass(self, x) -> float:
        return 0.0


def halfspace_prob(m: Measure, h: Halfspace) -> float:
    if h.dim != m.dim:
        raise InputError(f"halfspace has dimension {h.dim}, measure has {m.dim}")
    return m.prob(h)


def projection_quantile(m: Measure, u, p: float) -> float:
    return m.projection_quantile(u, p)


def sample(m: Measure, n: int, seed) -> np.ndarray:
    if n < 1:
        raise InputError("sample size must be positive")
    return m.sample(n, seed)


class Empirical(Measure):
    """Equal-weight atoms."""

    has_atoms = True

    def __init__(self, points):
        p = np.asarray(points, dtype=float)
        if p.ndim == 1:
            p = p[:, None]
        if p.ndim != 2 or len(p) == 0:
            raise InputError("an empirical measure needs at least one point")
        if not np.all(np.isfinite(p)):
            raise InputError("points must be finite")
        self.points = p
        self.dim = p.shape[1]

    def __repr__(self):
        return f"Empirical(n={len(self.points)}, d={self.dim})"

    @property
    def n(self) -> int:
        return len(self.points)

    @cached_property
    def scale(self) -> float:
        return max(1.0, float(np.max(np.abs(self.points))))

    @property
    def tol(self) -> float:
        return 1e-12 * self.scale

    def center(self):
        return self.points.mean(axis=0)

    def prob(self, h):
        return float(np.count_nonzero(self.points @ h.normal <= h.offset + self.tol)) / self.n

    def prob_upper(self, u, t):
        u = _unit(u)
        return float(np.count_nonzero(self.points @ u >= t - self.tol)) / self.n

    def _order_stat(self, U, k, largest):
        proj = np.atleast_2d(U) @ self.points.T
        n = self.n
        idx = n - k if largest else k - 1
        return np.partition(proj, idx, axis=1)[:, idx]

    def projection_quantiles(self, U, p):
        if not 0.0 < p <= 1.0:
            raise InputError("quantile level must lie in (0, 1]")
        k = max(1, math.ceil(p * self.n - 1e-9))
        return self._order_stat(U, k, largest=False)

    def upper_quantiles(self, U, delta):
        if not 0.0 < delta <= 1.0:
            raise InputError("depth level must lie in (0, 1]")
        k = max(1, math.ceil(delta * self.n - 1e-9))
        return self._order_stat(U, k, largest=True)

    def projection_quantile(self, u, p):
        return float(self.projection_quantiles(_unit(u)[None, :], p)[0])

    def upper_quantile(self, u, delta):
        return float(self.upper_quantiles(_unit(u)[None, :], delta)[0])

    def support_value(self, u):
        return float(np.max(self.points @ _unit(u)))

    def sample(self, n, seed):
        idx = _rng(seed).integers(0, self.n, size=n)
        return self.points[idx]

    def mean(self):
        return self.points.mean(axis=0)

    def covariance(self):
        c = self.points - self.points.mean(axis=0)
        return c.T @ c / self.n

    def atom_mass(self, x):
        d = np.linalg.norm(self.points - np.asarray(x, dtype=float), axis=1)
        return float(np.count_nonzero(d <= 1e-9 * self.scale)) / self.n

    def pushforward(self, A, b=None) -> "Empirical":
        A = np.asarray(A, dtype=float)
        b = np.zeros(self.dim) if b is None else np.asarray(b, dtype=float)
        return Empirical(self.points @ A.T + b)


class UniformPolygonal(Measure):
    """Piecewise-uniform law on a :class:`PolygonalRegion`."""

    dim = 2

    def __init__(self, region):
        if isinstance(region, Polygon):
            region = PolygonalRegion((region,))
        elif not isinstance(region, PolygonalRegion):
            region = PolygonalRegion(tuple(region))
        self.region = region
        self._comps = [c.vertices for c in region.components]
        self._dens = [w / c.area for c, w in zip(region.components, region.weights)]

    def __repr__(self):
        return f"UniformPolygonal(components={len(self._comps)})"

    @cached_property
    def scale(self) -> float:
        return max(1.0, float(np.max(np.abs(self.region.vertices()))))

    def center(self):
        return self.mean()

    def _lower(self, nx, ny, t):
        return sum(d * kernels.clip_area(v, nx, ny, t) for v, d in zip(self._comps, self._dens))

    def prob(self, h):
        p = self._lower(float(h.normal[0]), float(h.normal[1]), h.offset)
        return min(1.0, max(0.0, p))

    def prob_upper(self, u, t):
        u = _unit(u)
        return min(1.0, max(0.0, self._lower(-u[0], -u[1], -t)))

    def _range(self, u):
        pr = self.region.vertices() @ u
        return float(pr.min()), float(pr.max())

    def support_value(self, u):
        return self._range(_unit(u))[1]

    def upper_quantile(self, u, delta):
        if not 0.0 < delta <= 1.0:
            raise InputError("depth level must lie in (0, 1]")
        u = _unit(u)
        lo, hi = self._range(u)
        g = lambda t: self._lower(-u[0], -u[1], -t)
        if delta >= 1.0:
            return _inf_ge(lambda t: -g(t), -1.0, lo - 1.0, hi) if g(lo) < 1.0 else lo
        return _root_or_threshold(g, delta, lo, hi, True, self.scale)

    def projection_quantile(self, u, p):
        if not 0.0 < p <= 1.0:
            raise InputError("quantile level must lie in (0, 1]")
        u = _unit(u)
        lo, hi = self._range(u)
        if p >= 1.0:
            return hi
        if p > 0.5:
            # inf{t : P(<X,u> > t) <= 1 - p}, evaluated on the small tail
            g = lambda t: -self._lower(-u[0], -u[1], -t)
            return _root_or_threshold(g, -(1.0 - p), lo, hi, False, self.scale)
        f = lambda t: self._lower(u[0], u[1], t)
        return _root_or_threshold(f, p, lo, hi, False, self.scale)

    def _masses(self, nx, ny, c):
        out = np.zeros(len(c))
        for v, d in zip(self._comps, self._dens):
            out += d * kernels.clip_areas(v, nx, ny, c)
        return out

    def _ranges(self, U):
        pr = self.region.vertices() @ U.T
        return pr.min(axis=0), pr.max(axis=0)

    @staticmethod
    def _bisect(ok, lo, hi, keep_lo):
        # vectorized bisection keeping ok(lo) true (keep_lo) or ok(hi) true
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            if np.all((mid <= lo) | (mid >= hi)):
                break
            good = ok(mid)
            if keep_lo:
                lo = np.where(good, mid, lo)
                hi = np.where(good, hi, mid)
            else:
                hi = np.where(good, mid, hi)
                lo = np.where(good, lo, mid)
        return lo if keep_lo else hi

    def upper_quantiles(self, U, delta):
        if not 0.0 < delta <= 1.0:
            raise InputError("depth level must lie in (0, 1]")
        U = np.atleast_2d(np.asarray(U, dtype=float))
        U = U / np.linalg.norm(U, axis=1)[:, None]
        lo, hi = self._ranges(U)
        if delta >= 1.0:
            return lo
        nx, ny = np.ascontiguousarray(-U[:, 0]), np.ascontiguousarray(-U[:, 1])
        return self._bisect(lambda t: self._masses(nx, ny, -t) >= delta, lo, hi, keep_lo=True)

    def projection_quantiles(self, U, p):
        if not 0.0 < p <= 1.0:
            raise InputError("quantile level must lie in (0, 1]")
        U = np.atleast_2d(np.asarray(U, dtype=float))
        U = U / np.linalg.norm(U, axis=1)[:, None]
        lo, hi = self._ranges(U)
        if p >= 1.0:
            return hi
        if p > 0.5:
            nx, ny = np.ascontiguousarray(-U[:, 0]), np.ascontiguousarray(-U[:, 1])
            return self._bisect(lambda t: self._masses(nx, ny, -t) <= 1.0 - p, lo, hi, keep_lo=False)
        nx, ny = np.ascontiguousarray(U[:, 0]), np.ascontiguousarray(U[:, 1])
        return self._bisect(lambda t: self._masses(nx, ny, t) >= p, lo, hi, keep_lo=False)

    def sample(self, n, seed):
        rng = _rng(seed)
        tris, probs = [], []
        for c, w in zip(self.region.components, self.region.weights):
            t = triangulate(c)
            a = 0.5 * np.abs((t[:, 1, 0] - t[:, 0, 0]) * (t[:, 2, 1] - t[:, 0, 1])
                             - (t[:, 2, 0] - t[:, 0, 0]) * (t[:, 1, 1] - t[:, 0, 1]))
            tris.append(t)
            probs.append(w * a / a.sum())
        tris = np.concatenate(tris)
        probs = np.concatenate(probs)
        k = rng.choice(len(tris), size=n, p=probs / probs.sum())
        r1 = np.sqrt(rng.random(n))
        r2 = rng.random(n)
        a, b, c = tris[k, 0], tris[k, 1], tris[k, 2]
        return ((1 - r1)[:, None] * a + (r1 * (1 - r2))[:, None] * b + (r1 * r2)[:, None] * c)

    def mean(self):
        m = np.zeros(2)
        for c, w in zip(self.region.components, self.region.weights):
            a, sx, sy = kernels.clip_moments(c.vertices, 0.0, 0.0, 1.0)
            m += w * np.array([sx, sy]) / a
        return m

    def covariance(self):
        mu = self.mean()
        s = np.zeros((2, 2))
        for c, w in zip(self.region.components, self.region.weights):
            s += w * second_moments(c) / c.area
        return s - np.outer(mu, mu)

    def density_sup(self):
        return max(self._dens)

    def pushforward(self, A, b=None) -> "UniformPolygonal":
        b = np.zeros(2) if b is None else b
        return UniformPolygonal(self.region.transform(A, b))


class UnitSquare(UniformPolygonal):
    """Uniform distribution on [0, 1]^2."""

    def __init__(self):
        super().__init__(box(0.0, 0.0, 1.0, 1.0))

    def __repr__(self):
        return "UnitSquare()"


class Gaussian(Measure):
    def __init__(self, mean, cov):
        mu = np.atleast_1d(np.asarray(mean, dtype=float))
        cov = np.atleast_2d(np.asarray(cov, dtype=float))
        if cov.shape != (len(mu), len(mu)) or not np.allclose(cov, cov.T):
            raise InputError("covariance must be a symmetric d x d matrix")
        try:
            self._chol = np.linalg.cholesky(cov)
        except np.linalg.LinAlgError as exc:
            raise InputError("covariance must be positive definite") from exc
        self.mu = mu
        self.cov = cov
        self.dim = len(mu)

    def __repr__(self):
        return f"Gaussian(mean={self.mu.tolist()}, cov={self.cov.tolist()})"

    @classmethod
    def standard(cls, d: int = 2) -> "Gaussian":
        return cls(np.zeros(d), np.eye(d))

    @property
    def scale(self):
        return float(np.sqrt(np.max(np.diag(self.cov))))

    def center(self):
        return self.mu

    def _sd(self, u):
        return float(np.sqrt(u @ self.cov @ u))

    def prob(self, h):
        u = h.normal
        return float(special.ndtr((h.offset - u @ self.mu) / self._sd(u)))

    def prob_upper(self, u, t):
        u = _unit(u)
        return float(special.ndtr((u @ self.mu - t) / self._sd(u)))

    def projection_quantile(self, u, p):
        if not 0.0 < p <= 1.0:
            raise InputError("quantile level must lie in (0, 1]")
        u = _unit(u)
        return float(u @ self.mu + self._sd(u) * special.ndtri(p))

    def upper_quantile(self, u, delta):
        if not 0.0 < delta <= 1.0:
            raise InputError("depth level must lie in (0, 1]")
        u = _unit(u)
        return float(u @ self.mu - self._sd(u) * special.ndtri(delta))

    def projection_quantiles(self, U, p):
        U = np.atleast_2d(U)
        sd = np.sqrt(np.einsum("ij,jk,ik->i", U, self.cov, U))
        return U @ self.mu + sd * special.ndtri(p)

    def upper_quantiles(self, U, delta):
        U = np.atleast_2d(U)
        sd = np.sqrt(np.einsum("ij,jk,ik->i", U, self.cov, U))
        return U @ self.mu - sd * special.ndtri(delta)

    def mahalanobis(self, x) -> np.ndarray:
        z = np.linalg.solve(self._chol, (np.atleast_2d(x) - self.mu).T)
        return np.sqrt(np.sum(z * z, axis=0))

    def sample(self, n, seed):
        z = _rng(seed).standard_normal((n, self.dim))
        return self.mu + z @ self._chol.T

    def mean(self):
        return self.mu

    def covariance(self):
        return self.cov

    def density_sup(self):
        return float(1.0 / math.sqrt((2 * math.pi) ** self.dim * np.linalg.det(self.cov)))

    def pushforward(self, A, b=None) -> "Gaussian":
        A = np.asarray(A, dtype=float)
        b = np.zeros(self.dim) if b is None else np.asarray(b, dtype=float)
        return Gaussian(A @ self.mu + b, A @ self.cov @ A.T)


def _alpha_norm(u: np.ndarray, alpha: float) -> float:
    if math.isinf(alpha):
        return float(np.max(np.abs(u)))
    return float(np.sum(np.abs(u) ** alpha) ** (1.0 / alpha))


class AlphaSymmetric(Measure):
    """Law with <X,u> distributed as ||u||_alpha * S for a symmetric S ~ F1."""

    def __init__(self, alpha: float, marginal: MarginalCDF, dim: int = 2):
        if not 0.0 < alpha <= 2.0:
            raise InputError("alpha must lie in (0, 2]")
        self.alpha = float(alpha)
        self.marginal = marginal
        self.dim = int(dim)

    def __repr__(self):
        return f"AlphaSymmetric(alpha={self.alpha}, marginal={self.marginal.name}, d={self.dim})"

    @property
    def dual_exponent(self) -> float:
        return math.inf if self.alpha <= 1.0 else self.alpha / (self.alpha - 1.0)

    def _norm(self, u):
        return _alpha_norm(u, self.alpha)

    def prob(self, h):
        return self.marginal.cdf(h.offset / self._norm(h.normal))

    def prob_upper(self, u, t):
        u = _unit(u)
        return self.marginal.cdf(-t / self._norm(u))

    def projection_quantile(self, u, p):
        if not 0.0 < p <= 1.0:
            raise InputError("quantile level must lie in (0, 1]")
        u = _unit(u)
        if p == 1.0:
            return self.support_value(u)
        return self._norm(u) * self.marginal.quantile(p)

    def upper_quantile(self, u, delta):
        if not 0.0 < delta <= 1.0:
            raise InputError("depth level must lie in (0, 1]")
        u = _unit(u)
        return self._norm(u) * self.marginal.upper(delta)

    def support_value(self, u):
        return self._norm(_unit(u)) * self.marginal.quantile(1.0)

    def sample(self, n, seed):
        rng = _rng(seed)
        if self.alpha == 2.0 and isinstance(self.marginal, GaussianMarginal):
            return rng.standard_normal((n, self.dim))
        if self.alpha == 1.0 and isinstance(self.marginal, CauchyMarginal):
            return rng.standard_cauchy((n, self.dim))
        raise UnsupportedMeasure("alpha-symmetric sampling is implemented for the Gaussian "
                                 "(alpha=2) and Cauchy (alpha=1) cases only")

    def mean(self):
        if isinstance(self.marginal, CauchyMarginal):
            raise UnsupportedMeasure("the Cauchy law has no mean")
        return np.zeros(self.dim)

    def covariance(self):
        if self.alpha == 2.0 and isinstance(self.marginal, GaussianMarginal):
            return np.eye(self.dim)
        raise UnsupportedMeasure("covariance is only available for the Gaussian case")

    def density_sup(self):
        if self.alpha == 2.0 and isinstance(self.marginal, GaussianMarginal):
            return (2 * math.pi) ** (-self.dim / 2)
        raise UnsupportedMeasure("density bound not available")


class UniformBall(AlphaSymmetric):
    """Uniform distribution on the Euclidean unit ball in R^d."""

    def __init__(self, d: int = 2):
        super().__init__(2.0, BallMarginal(d), d)

    def __repr__(self):
        return f"UniformBall(d={self.dim})"

    def sample(self, n, seed):
        rng = _rng(seed)
        z = rng.standard_normal((n, self.dim))
        z /= np.linalg.norm(z, axis=1)[:, None]
        return z * rng.random(n)[:, None] ** (1.0 / self.dim)

    def mean(self):
        return np.zeros(self.dim)

    def covariance(self):
        return np.eye(self.dim) / (self.dim + 2)

    def density_sup(self):
        vol = math.pi ** (self.dim / 2) / math.gamma(self.dim / 2 + 1)
        return 1.0 / vol


class UniformIntervals(Measure):
    """Piecewise-uniform law on disjoint intervals of the real line."""

    dim = 1

    def __init__(self, intervals, weights=None):
        iv = np.asarray(intervals, dtype=float).reshape(-1, 2)
        order = np.argsort(iv[:, 0])
        iv = iv[order]
        if np.any(iv[:, 1] <= iv[:, 0]) or np.any(iv[1:, 0] < iv[:-1, 1]):
            raise InputError("intervals must be non-degenerate and disjoint")
        w = iv[:, 1] - iv[:, 0] if weights is None else np.asarray(weights, dtype=float)[order]
        if np.any(w <= 0):
            raise InputError("weights must be positive")
        self.intervals = iv
        self.weights = w / w.sum()
        self._cum = np.concatenate([[0.0], np.cumsum(self.weights)])
        self._cum[-1] = 1.0

    def __repr__(self):
        return f"UniformIntervals({self.intervals.tolist()}, weights={self.weights.tolist()})"

    @property
    def scale(self):
        return max(1.0, float(np.max(np.abs(self.intervals))))

    def center(self):
        return self.mean()

    def cdf(self, t: float) -> float:
        a, b = self.intervals[:, 0], self.intervals[:, 1]
        frac = np.clip((t - a) / (b - a), 0.0, 1.0)
        return float(np.dot(self.weights, frac))

    def _inf_ge(self, q):
        # inf{t : F(t) >= q}
        if q <= 0:
            return -math.inf
        k = int(np.searchsorted(self._cum, q, side="left")) - 1
        k = min(max(k, 0), len(self.weights) - 1)
        a, b = self.intervals[k]
        return float(a + (q - self._cum[k]) / self.weights[k] * (b - a))

    def _sup_le(self, q):
        # sup{t : F(t) <= q}
        if q >= 1:
            return math.inf
        k = int(np.searchsorted(self._cum, q, side="right")) - 1
        k = min(max(k, 0), len(self.weights) - 1)
        a, b = self.intervals[k]
        return float(a + (q - self._cum[k]) / self.weights[k] * (b - a))

    def prob(self, h):
        if h.normal[0] > 0:
            return self.cdf(h.offset)
        return 1.0 - self.cdf(-h.offset)

    def projection_quantile(self, u, p):
        if not 0.0 < p <= 1.0:
            raise InputError("quantile level must lie in (0, 1]")
        if _unit(u)[0] > 0:
            return self._inf_ge(p) if p < 1 else float(self.intervals[-1, 1])
        return -self._sup_le(1.0 - p) if p < 1 else -float(self.intervals[0, 0])

    def upper_quantile(self, u, delta):
        if not 0.0 < delta <= 1.0:
            raise InputError("depth level must lie in (0, 1]")
        if _unit(u)[0] > 0:
            return self._sup_le(1.0 - delta) if delta < 1 else float(self.intervals[0, 0])
        return -self._inf_ge(delta) if delta < 1 else -float(self.intervals[-1, 1])

    def support_value(self, u):
        return float(self.intervals[-1, 1]) if _unit(u)[0] > 0 else -float(self.intervals[0, 0])

    def sample(self, n, seed):
        rng = _rng(seed)
        k = rng.choice(len(self.weights), size=n, p=self.weights)
        a, b = self.intervals[k, 0], self.intervals[k, 1]
        return (a + rng.random(n) * (b - a))[:, None]

    def mean(self):
        return np.array([float(np.dot(self.weights, self.intervals.mean(axis=1)))])

    def covariance(self):
        a, b = self.intervals[:, 0], self.intervals[:, 1]
        m2 = float(np.dot(self.weights, (a * a + a * b + b * b) / 3.0))
        mu = self.mean()[0]
        return np.array([[m2 - mu * mu]])

    def density_sup(self):
        return float(np.max(self.weights / (self.intervals[:, 1] - self.intervals[:, 0])))


class LogConcave(Measure):
    """Density proportional to exp(-psi) in dimension 1 or 2.

    ``psi``, ``grad`` and ``hess`` take a point of shape (d,). Integrals are
    computed by adaptive quadrature on the box where the density exceeds
    1e-14 times its peak, optionally intersected with ``domain``, given as
    (lo, hi) per coordinate.
    """

    def __init__(self, psi, grad, hess, dim: int, domain=None, name: str = "log-concave"):
        if dim not in (1, 2):
            raise InputError("log-concave measures are supported in dimension 1 and 2")
        self.psi, self.grad, self.hess = psi, grad, hess
        self.dim = dim
        self.domain = None if domain is None else np.asarray(domain, dtype=float).reshape(dim, 2)
        self.name = name
        z = self.total_mass
        if not (np.isfinite(z) and z > 0):
            raise InputError("exp(-psi) must have finite positive integral")

    def __repr__(self):
        return f"LogConcave({self.name}, d={self.dim})"

    @classmethod
    def standard_gaussian(cls, d: int = 1) -> "LogConcave":
        c = 0.5 * d * math.log(2 * math.pi)
        return cls(lambda x: 0.5 * float(np.dot(x, x)) + c, lambda x: np.asarray(x, dtype=float),
                   lambda x: np.eye(d), d, name="standard-gaussian")

    @cached_property
    def mode(self) -> np.ndarray:
        x0 = np.zeros(self.dim) if self.domain is None else self.domain.mean(axis=1)
        bounds = None if self.domain is None else [tuple(r) for r in self.domain]
        res = optimize.minimize(lambda x: self.psi(x), x0, jac=lambda x: np.asarray(self.grad(x)),
                                bounds=bounds, method="L-BFGS-B", options={"gtol": 1e-12, "ftol": 1e-15})
        return np.asarray(res.x, dtype=float)

    @cached_property
    def box(self) -> np.ndarray:
        """Integration box [lo, hi] per coordinate."""
        c = self.mode
        p0 = self.psi(c)
        cut = math.log(1e14)
        out = np.zeros((self.dim, 2))
        for k in range(self.dim):
            for j, sgn in enumerate((-1.0, 1.0)):
                if self.domain is not None and np.isfinite(self.domain[k, j]):
                    out[k, j] = self.domain[k, j]
                    continue
                r = 1.0
                e = np.zeros(self.dim)
                e[k] = sgn
                while self.psi(c + r * e) - p0 < cut:
                    r *= 1.5
                    if r > 1e8:
                        raise InputError("psi does not grow; density is not integrable")
                out[k, j] = c[k] + sgn * r * (1.5 if self.dim == 2 else 1.0)
        return out

    def density(self, x) -> float:
        return math.exp(-self.psi(np.asarray(x, dtype=float)))

    def _integrate(self, f, lo=None, hi=None):
        b = self.box
        if self.dim == 1:
            a0 = b[0, 0] if lo is None else max(lo, b[0, 0])
            a1 = b[0, 1] if hi is None else min(hi, b[0, 1])
            if a1 <= a0:
                return 0.0
            val, _ = integrate.quad(lambda s: f(np.array([s])), a0, a1, epsabs=1e-14, epsrel=1e-10,
                                    limit=400)
            return val
        val, _ = integrate.dblquad(lambda y, x: f(np.array([x, y])), b[0, 0], b[0, 1], b[1, 0], b[1, 1],
                                   epsabs=1e-13, epsrel=1e-10)
        return val

    @cached_property
    def total_mass(self) -> float:
        return self._integrate(lambda x: math.exp(-self.psi(x)))

    def prob(self, h):
        u, a = h.normal, h.offset
        z = self.total_mass
        if self.dim == 1:
            if u[0] > 0:
                return self._integrate(lambda x: math.exp(-self.psi(x)), hi=a) / z
            return self._integrate(lambda x: math.exp(-self.psi(x)), lo=-a) / z
        w = np.array([-u[1], u[0]])
        corners = np.array([[x, y] for x in self.box[0] for y in self.box[1]])
        s_lo, s_hi = float(np.min(corners @ u)), float(np.max(corners @ u))
        t_lo, t_hi = float(np.min(corners @ w)), float(np.max(corners @ w))
        top = min(a, s_hi)
        if top <= s_lo:
            return 0.0
        inside = (lambda x: True) if self.domain is None else (
            lambda x: bool(np.all(x >= self.domain[:, 0]) and np.all(x <= self.domain[:, 1])))

        def f(t, s):
            x = s * u + t * w
            return math.exp(-self.psi(x)) if inside(x) else 0.0

        val, _ = integrate.dblquad(f, s_lo, top, t_lo, t_hi, epsabs=1e-13, epsrel=1e-10)
        return min(1.0, max(0.0, val / z))

    def center(self):
        return self.mode

    @property
    def scale(self):
        return float(np.max(np.abs(self.box)))

    def mean(self):
        z = self.total_mass
        return np.array([self._integrate(lambda x, k=k: x[k] * math.exp(-self.psi(x))) / z
                         for k in range(self.dim)])

    def covariance(self):
        z = self.total_mass
        mu = self.mean()
        c = np.zeros((self.dim, self.dim))
        for i in range(self.dim):
            for j in range(i, self.dim):
                c[i, j] = c[j, i] = self._integrate(
                    lambda x, i=i, j=j: (x[i] - mu[i]) * (x[j] - mu[j]) * math.exp(-self.psi(x))) / z
        return c

    def density_sup(self):
        return math.exp(-self.psi(self.mode)) / self.total_mass


# -- named measures -----------------------------------------------------------------

def triangle() -> UniformPolygonal:
    """Uniform law on the triangle (0,0), (1,0), (0,1)."""
    return UniformPolygonal(Polygon([[0, 0], [1, 0], [0, 1]], convex=True))


def tancer() -> UniformPolygonal:
    """Uniform law on [-1,1]x[0,2] union [-2,2]x[-4,0]; the small square has mass 1/5."""
    return UniformPolygonal(PolygonalRegion((box(-1, 0, 1, 2), box(-2, -4, 2, 0))))


def fig_difference() -> UniformIntervals:
    """Mass 1/4 uniform on [-2,0] and 3/4 uniform on [1,5]."""
    return UniformIntervals([(-2.0, 0.0), (1.0, 5.0)], weights=[0.25, 0.75])


def cauchy_1sym(d: int = 2) -> AlphaSymmetric:
    return AlphaSymmetric(1.0, CauchyMarginal(), d)

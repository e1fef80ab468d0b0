# Compiled versions of the hot planar loops. Signatures and results match
# _kernels_py exactly; kernels.py picks one of the two at import.
import numpy as np
cimport numpy as cnp
from libc.math cimport cos, sin
from libc.stdlib cimport malloc, free

cnp.import_array()


cdef struct Moments:
    double area
    double sx
    double sy


cdef inline void _emit(double qx, double qy, int *count, double *ox, double *oy,
                       double *px, double *py, Moments *m) nogil:
    cdef double ax, ay, bx, by, cr
    if count[0] == 0:
        ox[0] = qx
        oy[0] = qy
    else:
        ax = px[0] - ox[0]
        ay = py[0] - oy[0]
        bx = qx - ox[0]
        by = qy - oy[0]
        cr = ax * by - bx * ay
        m.area += cr
        m.sx += (ax + bx) * cr
        m.sy += (ay + by) * cr
    px[0] = qx
    py[0] = qy
    count[0] += 1


cdef Moments _clip_moments(const double[:, ::1] v, double nx, double ny, double c) nogil:
    # Sutherland-Hodgman against {nx*x + ny*y <= c}, accumulating the shoelace
    # sums relative to the first emitted vertex to limit cancellation.
    cdef Py_ssize_t n = v.shape[0]
    cdef Py_ssize_t i, j
    cdef double sa, sb, t, ax, ay, bx, by
    cdef double ox = 0.0, oy = 0.0, px = 0.0, py = 0.0
    cdef int count = 0
    cdef bint ina, inb
    cdef Moments m
    m.area = 0.0
    m.sx = 0.0
    m.sy = 0.0
    if n < 3:
        return m
    for i in range(n):
        j = i + 1
        if j == n:
            j = 0
        ax = v[i, 0]
        ay = v[i, 1]
        bx = v[j, 0]
        by = v[j, 1]
        sa = nx * ax + ny * ay - c
        sb = nx * bx + ny * by - c
        ina = sa <= 0.0
        inb = sb <= 0.0
        if ina:
            _emit(ax, ay, &count, &ox, &oy, &px, &py, &m)
        if ina != inb:
            t = sa / (sa - sb)
            _emit(ax + t * (bx - ax), ay + t * (by - ay), &count, &ox, &oy, &px, &py, &m)
    if count < 3:
        m.area = 0.0
        m.sx = 0.0
        m.sy = 0.0
        return m
    m.sx = m.sx / 6.0 + 0.5 * m.area * ox
    m.sy = m.sy / 6.0 + 0.5 * m.area * oy
    m.area = 0.5 * m.area
    return m


def clip_moments(const double[:, ::1] v, double nx, double ny, double c):
    """Area and first moments of ``v`` clipped to ``nx*x + ny*y <= c``."""
    cdef Moments m = _clip_moments(v, nx, ny, c)
    return m.area, m.sx, m.sy


def clip_area(const double[:, ::1] v, double nx, double ny, double c):
    return _clip_moments(v, nx, ny, c).area


def sweep_areas(const double[:, ::1] v, double px, double py, const double[::1] angles):
    """Areas of ``v`` intersected with {<z - p, u(theta)> <= 0} for each angle."""
    cdef Py_ssize_t k, m = angles.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(m)
    cdef double nx, ny
    for k in range(m):
        nx = cos(angles[k])
        ny = sin(angles[k])
        out[k] = _clip_moments(v, nx, ny, nx * px + ny * py).area
    return out


def clip_areas(const double[:, ::1] v, const double[::1] nx, const double[::1] ny,
               const double[::1] c):
    """Clipped areas for many halfplanes ``nx[k]*x + ny[k]*y <= c[k]``."""
    cdef Py_ssize_t k, m = nx.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(m)
    for k in range(m):
        out[k] = _clip_moments(v, nx[k], ny[k], c[k]).area
    return out


def clip(const double[:, ::1] v, double nx, double ny, double c):
    """Vertices of ``v`` clipped to ``nx*x + ny*y <= c`` (closed side)."""
    cdef Py_ssize_t n = v.shape[0]
    cdef Py_ssize_t i, j, k = 0
    cdef double sa, sb, t
    cdef bint ina, inb
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.empty((2 * n, 2))
    for i in range(n):
        j = i + 1
        if j == n:
            j = 0
        sa = nx * v[i, 0] + ny * v[i, 1] - c
        sb = nx * v[j, 0] + ny * v[j, 1] - c
        ina = sa <= 0.0
        inb = sb <= 0.0
        if ina:
            out[k, 0] = v[i, 0]
            out[k, 1] = v[i, 1]
            k += 1
        if ina != inb:
            t = sa / (sa - sb)
            out[k, 0] = v[i, 0] + t * (v[j, 0] - v[i, 0])
            out[k, 1] = v[i, 1] + t * (v[j, 1] - v[i, 1])
            k += 1
    return out[:k].copy()


cdef inline double _turn(double ox, double oy, double ax, double ay, double bx, double by) nogil:
    return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox)


def hull_area(const double[:, ::1] pts):
    """Area of the convex hull of lexicographically sorted points."""
    cdef Py_ssize_t n = pts.shape[0]
    cdef Py_ssize_t i, k = 0, lower
    cdef double a = 0.0
    if n < 3:
        return 0.0
    cdef Py_ssize_t *h = <Py_ssize_t *> malloc(2 * n * sizeof(Py_ssize_t))
    if h == NULL:
        raise MemoryError()
    try:
        for i in range(n):
            while k >= 2 and _turn(pts[h[k - 2], 0], pts[h[k - 2], 1], pts[h[k - 1], 0],
                                   pts[h[k - 1], 1], pts[i, 0], pts[i, 1]) <= 0.0:
                k -= 1
            h[k] = i
            k += 1
        lower = k + 1
        for i in range(n - 2, -1, -1):
            while k >= lower and _turn(pts[h[k - 2], 0], pts[h[k - 2], 1], pts[h[k - 1], 0],
                                       pts[h[k - 1], 1], pts[i, 0], pts[i, 1]) <= 0.0:
                k -= 1
            h[k] = i
            k += 1
        # h[k-1] repeats h[0]
        for i in range(k - 1):
            a += (pts[h[i], 0] - pts[h[0], 0]) * (pts[h[i + 1], 1] - pts[h[0], 1]) \
                - (pts[h[i + 1], 0] - pts[h[0], 0]) * (pts[h[i], 1] - pts[h[0], 1])
    finally:
        free(h)
    return 0.5 * a

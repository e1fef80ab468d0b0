"""Backend selection for the planar kernels.

The compiled extension is used when it imports cleanly; setting
``DEPTHGEOM_PURE_PYTHON=1`` forces the numpy fallback.
"""
import os

from . import _kernels_py

if os.environ.get("DEPTHGEOM_PURE_PYTHON"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND = "compiled" if _impl is not _kernels_py else "python"

clip = _impl.clip
clip_area = _impl.clip_area
clip_areas = _impl.clip_areas
clip_moments = _impl.clip_moments
sweep_areas = _impl.sweep_areas
_hull_area_sorted = _impl.hull_area


def hull_area(points):
    """Area of the convex hull of an (n, 2) point array."""
    import numpy as np

    p = np.ascontiguousarray(points, dtype=float)
    order = np.lexsort((p[:, 1], p[:, 0]))
    return _hull_area_sorted(np.ascontiguousarray(p[order]))

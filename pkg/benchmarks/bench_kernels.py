"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Each kernel is timed on the same inputs with both backends and the speedup
printed. A region build is timed end to end in a subprocess per backend,
since the backend is chosen at import time.
"""
import argparse
import math
import os
import subprocess
import sys
import timeit

import numpy as np

from depthgeom import _kernels_py
from depthgeom.geom import regular_polygon

try:
    from depthgeom import _kernels as compiled
except ImportError:
    compiled = None

REGION_SNIPPET = (
    "import time; from depthgeom import regions, kernels; from depthgeom.measures import triangle;"
    "t = time.perf_counter(); regions.central_region(triangle(), 0.2, 1024);"
    "print(kernels.BACKEND, time.perf_counter() - t)"
)


def cases(rng):
    v = np.ascontiguousarray(regular_polygon(64).vertices)
    th = rng.uniform(0, 2 * math.pi)
    nx, ny = math.cos(th), math.sin(th)
    ang = np.sort(rng.uniform(0, 2 * math.pi, 4096))
    pts = rng.normal(size=(20_000, 2))
    srt = np.ascontiguousarray(pts[np.lexsort((pts[:, 1], pts[:, 0]))])
    return {
        "clip_area (64-gon)": lambda k: k.clip_area(v, nx, ny, 0.1),
        "clip_moments (64-gon)": lambda k: k.clip_moments(v, nx, ny, 0.1),
        "sweep_areas (4096 angles)": lambda k: k.sweep_areas(v, 0.1, -0.2, ang),
        "hull_area (20000 points)": lambda k: k.hull_area(srt),
    }


def best_time(fn, repeat):
    t = timeit.Timer(fn)
    n, _ = t.autorange()
    return min(t.repeat(repeat, n)) / n


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if compiled is None:
        print("compiled kernels are not built; only the fallback can be timed")
    rng = np.random.default_rng(0)
    print(f"{'kernel':28s} {'python':>12s} {'compiled':>12s} {'speedup':>8s}")
    for name, call in cases(rng).items():
        tp = best_time(lambda: call(_kernels_py), args.repeat)
        if compiled is None:
            print(f"{name:28s} {tp * 1e6:10.1f}us")
            continue
        tc = best_time(lambda: call(compiled), args.repeat)
        print(f"{name:28s} {tp * 1e6:10.1f}us {tc * 1e6:10.1f}us {tp / tc:7.1f}x")

    print("\ncentral_region(triangle, 0.2, 1024 directions), end to end")
    for pure in (False, True):
        env = dict(os.environ)
        env.pop("DEPTHGEOM_PURE_PYTHON", None)
        if pure:
            env["DEPTHGEOM_PURE_PYTHON"] = "1"
        out = subprocess.run([sys.executable, "-c", REGION_SNIPPET], env=env,
                             capture_output=True, text=True, check=True).stdout.split()
        print(f"  {out[0]:9s} {float(out[1]):.3f}s")


if __name__ == "__main__":
    main()

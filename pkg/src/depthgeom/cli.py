"""Command-line front end.

Every subcommand accepts ``--config FILE`` (INI, section ``[run]``); flags
given on the command line win over the file. When ``--out`` is set the
resolved settings are written next to it as ``<out>.config.ini``.
Exit codes: 0 success, 2 input error, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import math
import re
import sys

import numpy as np

from . import approx, asa, depth, geom, measures, regions, smooth
from .errors import InputError, NumericalError, UnsupportedMeasure
from .io import Scene, emit_svg, fmt, parse_points_csv, read_config, write_config, write_table

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 2, 3

_DEFAULTS = {"directions": 512, "tol": 1e-7, "trials": 200, "kind": "central", "density": "f_as"}

_CALL = re.compile(r"^\s*([a-z0-9\-]+)\s*(?:\((.*)\))?\s*$")


def _numbers(s: str) -> list:
    return [float(x) for x in re.split(r"[,\s]+", s.strip()) if x]


def parse_measure(desc: str):
    """Named measures: square, triangle, hexagon, tancer, fig-difference,
    cauchy-1sym, disk or disk(d), gaussian or gaussian(m1,m2;s11,s12,s21,s22)."""
    m = _CALL.match(desc or "")
    if not m:
        raise InputError(f"cannot parse measure {desc!r}")
    name, args = m.group(1), m.group(2)
    if name == "square":
        return measures.UnitSquare()
    if name == "triangle":
        return measures.triangle()
    if name == "hexagon":
        return measures.UniformPolygonal(geom.regular_polygon(6))
    if name == "tancer":
        return measures.tancer()
    if name == "fig-difference":
        return measures.fig_difference()
    if name == "cauchy-1sym":
        return measures.cauchy_1sym(int(args) if args else 2)
    if name == "disk":
        return measures.UniformBall(int(args) if args else 2)
    if name == "gaussian":
        if not args:
            return measures.Gaussian.standard(2)
        parts = args.split(";")
        mu = _numbers(parts[0])
        d = len(mu)
        cov = np.array(_numbers(parts[1])).reshape(d, d) if len(parts) > 1 else np.eye(d)
        return measures.Gaussian(mu, cov)
    raise InputError(f"unknown measure {name!r}")


def parse_body(desc: str):
    """Convex bodies: disk, ellipse(a,b), perturbed(amp,freq), or a polygonal measure name."""
    m = _CALL.match(desc or "")
    if not m:
        raise InputError(f"cannot parse body {desc!r}")
    name, args = m.group(1), m.group(2)
    vals = _numbers(args) if args else []
    if name == "disk":
        return smooth.disk(vals[0] if vals else 1.0)
    if name == "ellipse":
        if len(vals) != 2:
            raise InputError("ellipse needs (a,b)")
        return smooth.ellipse(*vals)
    if name == "perturbed":
        if len(vals) != 2:
            raise InputError("perturbed needs (amp,freq)")
        return smooth.perturbed_disk(vals[0], int(vals[1]))
    if name == "square":
        return geom.box(0.0, 0.0, 1.0, 1.0)
    if name == "triangle":
        return measures.triangle().region.components[0]
    if name == "hexagon":
        return geom.regular_polygon(6)
    if name == "polygon":
        return geom.regular_polygon(int(vals[0]) if vals else 4096)
    raise InputError(f"unknown body {name!r}")


# -- argument handling -------------------------------------------------------------------

def _common(p: argparse.ArgumentParser):
    p.add_argument("--config", help="INI file with a [run] section")
    p.add_argument("--measure", help="named measure or body")
    p.add_argument("--points", help="CSV point table (empirical measure)")
    p.add_argument("--delta", help="level, or comma-separated levels")
    p.add_argument("--directions", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--p", type=float, dest="p")
    p.add_argument("--lambda", type=float, dest="lam")
    p.add_argument("--n", help="sample size, or comma-separated sizes")
    p.add_argument("--trials", type=int)
    p.add_argument("--out", help="CSV output path")
    p.add_argument("--svg", help="SVG output path")
    p.add_argument("--tol", type=float)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="depthgeom", description="Halfspace depth and floating bodies")
    sub = ap.add_subparsers(dest="command", required=True)
    cmds = {
        "depth": "depth of query points",
        "region": "central region or floating body polygon",
        "median": "halfspace median and maximal depth",
        "symmetry": "central, angular and halfspace symmetry",
        "winternitz": "Winternitz measure of symmetry",
        "asa": "affine surface area and floating-body limit",
        "lp-asa": "L_p affine surface area",
        "flags": "polygon floating-body flag asymptotics",
        "approx": "random polytope deficits",
        "reconstruct": "halfspace probability from depth",
        "classify": "maximal-depth classification",
        "plot": "SVG of regions, Dupin curves and data",
    }
    subs = {}
    for name, help_ in cmds.items():
        sp = sub.add_parser(name, help=help_)
        _common(sp)
        subs[name] = sp
    subs["depth"].add_argument("--query", help="CSV of query points")
    subs["depth"].add_argument("--at", help="single query point, comma-separated")
    subs["region"].add_argument("--kind", choices=["central", "floating"])
    subs["approx"].add_argument("--density", choices=["interior", "uniform", "f_as"])
    subs["reconstruct"].add_argument("--halfspace", help="u1,u2,offset of {<z,u> <= offset}")
    for k in ("train-a", "train-b", "query"):
        subs["classify"].add_argument(f"--{k}", required=False)
    subs["plot"].add_argument("--dupin", action="store_true", help="overlay Dupin curves")
    return ap


class Settings(dict):
    def __getattr__(self, k):
        return self.get(k)


def resolve(args: argparse.Namespace) -> Settings:
    vals = {k: v for k, v in vars(args).items() if k != "config"}
    merged = dict(_DEFAULTS)
    if args.config:
        cfg = read_config(args.config)
        for k, v in cfg.items():
            merged[k.replace("lambda", "lam")] = v
    for k, v in vals.items():
        if v is not None:
            merged[k] = v
    for k, conv in (("directions", int), ("seed", int), ("trials", int), ("p", float),
                    ("lam", float), ("tol", float)):
        if merged.get(k) is not None and isinstance(merged[k], str):
            merged[k] = conv(merged[k])
    return Settings(merged)


def _deltas(s: Settings, default=None) -> list:
    if s.delta is None:
        if default is None:
            raise InputError("--delta is required")
        return list(default)
    return _numbers(str(s.delta))


def _sizes(s: Settings) -> list:
    if s.n is None:
        raise InputError("--n is required")
    return [int(x) for x in _numbers(str(s.n))]


def _measure(s: Settings):
    if s.points:
        t = parse_points_csv(s.points)
        return measures.Empirical(t.points)
    if s.measure:
        return parse_measure(s.measure)
    raise InputError("give --measure or --points")


def _emit(out, s: Settings, header, rows, summary: dict):
    for k, v in summary.items():
        print(f"{k}={fmt(v)}", file=out)
    if s.out:
        write_table(s.out, header, rows)
        write_config(s.out + ".config.ini", {k: v for k, v in s.items() if k != "command"} |
                     {"command": s.command})


# -- subcommands --------------------------------------------------------------------------

def cmd_depth(s, out):
    m = _measure(s)
    if s.query:
        q = parse_points_csv(s.query).points
    elif s.at:
        q = np.array([_numbers(s.at)])
    else:
        raise InputError("give --query or --at")
    vals = [depth.halfspace_depth(x, m).value for x in q]
    header = [f"x{i + 1}" for i in range(q.shape[1])] + ["depth"]
    rows = [list(x) + [v] for x, v in zip(q, vals)]
    _emit(out, s, header, rows, {"points": len(rows)})
    if not s.out:
        for r in rows:
            print(",".join(fmt(x) for x in r), file=out)


def _region(m, s, delta, kind):
    fn = regions.central_region if kind == "central" else regions.convex_floating_body
    return fn(m, delta, s.directions, refine_tol=s.tol)


def cmd_region(s, out):
    m = _measure(s)
    (delta,) = _deltas(s)[:1]
    reg = _region(m, s, delta, s.kind)
    if reg.interval is not None or m.dim == 1:
        iv = reg.interval
        rows = [] if iv is None else [[iv[0]], [iv[1]]]
        _emit(out, s, ["x"], rows, {"delta": delta, "kind": s.kind, "empty": iv is None, "bound": 0.0})
        return
    rows = reg.polygon.vertices.tolist() if not reg.is_empty else []
    _emit(out, s, ["x", "y"], rows, {"delta": delta, "kind": s.kind, "empty": reg.is_empty,
                                      "vertices": len(rows), "exact": reg.exact, "bound": reg.bound})
    if s.svg and rows:
        sc = Scene(title=f"{s.kind} region {fmt(delta)}")
        sc.add_region(reg.polygon.vertices, f"delta={fmt(delta)}")
        if isinstance(m, measures.Empirical):
            sc.add_points(m.points, "data")
        emit_svg(sc, s.svg)


def cmd_median(s, out):
    m = _measure(s)
    med = regions.halfspace_median(m, s.directions)
    rows = [] if med.point is None else [list(med.point)]
    summary = {"max_depth": med.depth, "unique": med.unique, "diameter": med.diameter}
    if med.point is not None:
        summary["point"] = " ".join(fmt(x) for x in med.point)
    _emit(out, s, [f"x{i + 1}" for i in range(m.dim)], rows, summary)


def cmd_symmetry(s, out):
    m = _measure(s)
    r = regions.symmetry_report(m, s.directions)
    _emit(out, s, ["property", "holds"], [["central", r.central], ["angular", r.angular],
                                         ["halfspace", r.halfspace]],
          {"central": r.central, "angular": r.angular, "halfspace": r.halfspace,
           "max_depth": r.max_depth, "center": " ".join(fmt(x) for x in r.center)})


def cmd_winternitz(s, out):
    m = _measure(s)
    if not isinstance(m, measures.UniformPolygonal):
        raise UnsupportedMeasure("Winternitz measure needs a uniform polygonal measure")
    w = regions.winternitz(m, s.directions)
    _emit(out, s, ["winternitz"], [[w]], {"winternitz": w, "max_depth": w / (1 + w)})


def cmd_asa(s, out):
    body = parse_body(s.measure or "disk")
    a = asa.affine_surface_area(body)
    summary = {"affine_surface_area": a}
    rows = []
    if not isinstance(body, geom.Polygon) or s.delta is not None:
        lim = asa.asa_via_floating(body, _deltas(s, (1e-4, 1e-5, 1e-6)))
        rows = [[d, v] for d, v in zip(lim.deltas, lim.values)]
        summary["floating_limit"] = lim.limit
        if lim.predicted is not None:
            summary["predicted"] = lim.predicted
    _emit(out, s, ["delta", "ratio"], rows, summary)


def cmd_lp_asa(s, out):
    body = parse_body(s.measure or "disk")
    if s.p is None:
        raise InputError("--p is required")
    v = asa.lp_affine_surface_area(body, s.p)
    _emit(out, s, ["p", "lp_asa"], [[s.p, v]], {"p": s.p, "lp_asa": v})


def cmd_flags(s, out):
    body = parse_body(s.measure or "square")
    if not isinstance(body, geom.Polygon):
        raise InputError("flag asymptotics need a polygon")
    r = asa.polytope_flag_asymptotic(body, _deltas(s, (1e-4, 1e-5, 1e-6)))
    _emit(out, s, ["delta", "ratio"], [[d, v] for d, v in zip(r.deltas, r.values)],
          {"flags": r.flags, "predicted": r.predicted})


def cmd_approx(s, out):
    if s.seed is None:
        raise InputError("--seed is required for Monte Carlo runs")
    body = parse_body(s.measure or "disk")
    dens = s.density
    runs = []
    for n in _sizes(s):
        if dens == "interior":
            runs.append(approx.random_polytope_deficit(body, n, s.trials, s.seed))
        else:
            if isinstance(body, geom.Polygon):
                raise InputError("boundary sampling needs a smooth body")
            runs.append(approx.random_boundary_polytope(body, dens, n, s.trials, s.seed))
    slope = approx.deficit_series(runs).slope if len(runs) > 1 else math.nan
    rows = [[r.n, r.mean, r.stderr, slope] for r in runs]
    _emit(out, s, ["N", "deficit_mean", "deficit_se", "slope_est"], rows, {"slope_est": slope})


def cmd_reconstruct(s, out):
    m = _measure(s)
    if not s.halfspace:
        raise InputError("--halfspace u1,u2,offset is required")
    v = _numbers(s.halfspace)
    h = geom.Halfspace(v[:-1], v[-1])
    p = regions.reconstruct_halfspace_prob(h, m)
    exact = measures.halfspace_prob(m, h)
    _emit(out, s, ["reconstructed", "direct"], [[p, exact]], {"reconstructed": p, "direct": exact})


def cmd_classify(s, out):
    if not (s.train_a and s.train_b and s.query):
        raise InputError("classify needs --train-a, --train-b and --query")
    a = measures.Empirical(parse_points_csv(s.train_a).points)
    b = measures.Empirical(parse_points_csv(s.train_b).points)
    q = parse_points_csv(s.query).points
    labels = []
    for x in q:
        c = depth.classify_max_depth(x, a, b)
        labels.append({1: "a", 2: "b"}.get(c, "unclassified"))
    header = [f"x{i + 1}" for i in range(q.shape[1])] + ["label"]
    rows = [list(x) + [lab] for x, lab in zip(q, labels)]
    _emit(out, s, header, rows, {lab: labels.count(lab) for lab in ("a", "b", "unclassified")})
    if not s.out:
        for r in rows:
            print(",".join(fmt(x) for x in r), file=out)


def cmd_plot(s, out):
    if not s.svg:
        raise InputError("--svg is required")
    m = _measure(s)
    if m.dim != 2:
        raise UnsupportedMeasure("plots are planar")
    sc = Scene(title="depth regions")
    for d in _deltas(s, (0.1, 0.2, 0.3, 0.4)):
        reg = regions.central_region(m, d, s.directions, certify=False)
        if not reg.is_empty:
            sc.add_region(reg.polygon.vertices, f"D {fmt(d)}")
        if s.dupin and isinstance(m, measures.UniformPolygonal) and d < 0.5:
            sc.add_curve(regions.dupin_curve(m, d, 512).points, f"Dupin {fmt(d)}")
    if isinstance(m, measures.Empirical):
        sc.add_points(m.points, "data")
    elif isinstance(m, measures.UniformPolygonal):
        for c in m.region.components:
            sc.add_curve(c.vertices, "support")
    emit_svg(sc, s.svg)
    print(f"svg={s.svg}", file=out)


COMMANDS = {"depth": cmd_depth, "region": cmd_region, "median": cmd_median, "symmetry": cmd_symmetry,
            "winternitz": cmd_winternitz, "asa": cmd_asa, "lp-asa": cmd_lp_asa, "flags": cmd_flags,
            "approx": cmd_approx, "reconstruct": cmd_reconstruct, "classify": cmd_classify,
            "plot": cmd_plot}


def run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INPUT
    try:
        s = resolve(args)
        COMMANDS[args.command](s, out)
    except (InputError, UnsupportedMeasure, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except NumericalError as e:
        print(f"numerical failure: {e}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()

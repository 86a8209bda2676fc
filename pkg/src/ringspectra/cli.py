"""The ``rings`` command line: one entry point over all modules.

Subcommands emit delimited data (csv/json/text, or the curve ``poly``
triple format), can render a matplotlib figure next to it via --fig,
and map errors to exit codes: 0 success, 1 domain error, 2 numeric
failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from pathlib import Path

import numpy as np

from . import charpoly as cp
from . import consensus as cons
from . import curves as cv
from . import dynamics as dyn
from . import topology as topo
from . import weighted as wt
from .errors import DomainError, NumericFailureError, RingsError
from .svg import emit_svg

#: built-in locus presets: necklace vectors for the named curves
CURVE_PRESETS = {
    "circle": (1,),
    "cassini": (2, 1),
    "sextic1": (2, 1, 1),
    "sextic2": (2, 2, 1),
}

_FORMAT_WORDS = {"csv", "json", "text", "svg", "poly"}


class _Parser(argparse.ArgumentParser):
    """Argument errors are domain errors: exit 1 instead of argparse's 2."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # accept values like "-1,1" (negative point coordinates) unquoted
        self._negative_number_matcher = re.compile(r"^-\d+[\d.,jeE+-]*$")

    def error(self, message):
        self.print_usage(sys.stderr)
        raise DomainError(message)


def parse_necklace(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise DomainError(f"malformed necklace {text!r}; expected e.g. 2,1")


def parse_floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in text.split(","))
    except ValueError:
        raise DomainError(f"malformed coefficient list {text!r}; expected e.g. 0,2,1")


def parse_point(text: str) -> complex:
    parts = parse_floats(text)
    if len(parts) != 2:
        raise DomainError(f"a point needs two components re,im, got {text!r}")
    return complex(parts[0], parts[1])


def _topology_from_args(args) -> topo.RingTopology:
    if getattr(args, "topology", None):
        return topo.RingTopology.from_json(Path(args.topology).read_text())
    if not getattr(args, "necklace", None):
        raise DomainError("give --necklace (with --m) or --topology FILE")
    return topo.build_ring(parse_necklace(args.necklace), getattr(args, "m", 1))


def _fv_from_args(args) -> cons.FrequencyVariable:
    if not getattr(args, "a", None):
        raise DomainError("give the agent polynomials via --a and --b")
    return cons.FrequencyVariable(parse_floats(args.a), parse_floats(args.b or "1"))


def _normalize_out(args) -> None:
    # tolerate `--out csv` style shorthand: a bare format word selects the
    # format and keeps stdout as destination
    out = getattr(args, "out", None)
    if out and out in _FORMAT_WORDS and hasattr(args, "format"):
        args.format = out
        args.out = "-"


def write_text(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        Path(out).write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")


def rows_to_csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def points_csv(points) -> str:
    pts = np.asarray(points, dtype=complex).ravel()
    return rows_to_csv(("re", "im"), [(f"{p.real:.12g}", f"{p.imag:.12g}") for p in pts])


def _maybe_figure(args, points=None, boundary=None, times=None, disagreement=None,
                  title=None) -> None:
    fig_path = getattr(args, "fig", None)
    if not fig_path:
        return
    from . import figures

    if times is not None:
        fig = figures.disagreement_figure(times, disagreement, title=title)
    else:
        fig = figures.spectrum_figure(points, boundary, title=title)
    figures.save_figure(fig, fig_path)


# ---------------------------------------------------------------------------
# subcommand handlers

def cmd_count(args) -> int:
    write_text(str(topo.count_simple_rings(args.N)), args.out)
    return 0


def cmd_enumerate(args) -> int:
    reps = topo.enumerate_simple_rings(args.n)
    if args.format == "json":
        write_text(json.dumps([list(r) for r in reps]), args.out)
    else:
        write_text("\n".join(",".join(str(e) for e in r) for r in reps), args.out)
    return 0


def cmd_laplacian(args) -> int:
    topology = _topology_from_args(args)
    L = topology.laplacian()
    if args.format == "json":
        write_text(json.dumps({"topology": json.loads(topology.to_json()),
                               "laplacian": L.tolist()}), args.out)
    else:
        write_text(rows_to_csv([f"c{i}" for i in range(L.shape[1])], L.tolist()), args.out)
    return 0


def cmd_charpoly(args) -> int:
    topology = _topology_from_args(args)
    poly = cp.char_poly(topology)
    if args.format == "json":
        write_text(json.dumps({"coefficients": list(poly.coeffs), "degree": poly.degree}),
                   args.out)
    else:
        write_text(" ".join(str(c) for c in poly.coeffs), args.out)
    return 0


def cmd_locus(args) -> int:
    topology = _topology_from_args(args)
    P = cp.macro_polynomial(topology.necklace)
    pts = cp.locus_points(P, topology.m)
    order = np.lexsort((pts.imag, pts.real))
    pts = pts[order]
    if args.format == "json":
        write_text(json.dumps([[p.real, p.imag] for p in pts]), args.out)
    else:
        write_text(points_csv(pts), args.out)
    if getattr(args, "fig", None):
        _maybe_figure(args, points=pts,
                      boundary=cv.trace_curve(P, 720, workers=args.threads),
                      title=f"Laplacian spectrum, necklace "
                            f"{list(topology.necklace)}, m={topology.m}")
    return 0


def _macro_from_curve_args(args):
    if getattr(args, "curve", None):
        necklace = CURVE_PRESETS[args.curve]
    elif getattr(args, "necklace", None):
        necklace = parse_necklace(args.necklace)
    else:
        raise DomainError(f"give --necklace or --curve {{{','.join(sorted(CURVE_PRESETS))}}}")
    return cp.macro_polynomial(necklace)


def cmd_curve(args) -> int:
    P = _macro_from_curve_args(args)
    if args.format == "poly":
        f = cv.derive_curve(P)
        write_text("\n".join(f"{c} {i} {j}" for i, j, c in f.sorted_terms()), args.out)
        _maybe_figure(args, points=cv.trace_curve(P, args.samples, workers=args.threads))
        return 0
    pts = cv.trace_curve(P, args.samples, workers=args.threads)
    if args.format == "svg":
        doc = emit_svg(pts)
        write_text(doc, args.out)
    else:
        write_text(points_csv(pts), args.out)
    _maybe_figure(args, points=pts, title="spectrum locus")
    return 0


def cmd_weighted(args) -> int:
    ring = wt.WeightedRing(args.N, args.c)
    spectrum = wt.weighted_spectrum(ring)
    if args.format == "json":
        write_text(json.dumps([[p.real, p.imag] for p in spectrum]), args.out)
    else:
        write_text(points_csv(spectrum), args.out)
    theta = np.linspace(0.0, 2.0 * np.pi, 361)
    ellipse = np.array([wt.ellipse_point(args.c, t) for t in theta])
    _maybe_figure(args, points=spectrum, boundary=ellipse,
                  title=f"weighted ring spectrum, N={args.N}, c={args.c}")
    return 0


def cmd_drop(args) -> int:
    xs = np.linspace(0.0, 4.0, args.samples)
    upper = [(x, wt.drop_boundary(x)) for x in xs]
    lower = [(x, -y if y else 0.0) for x, y in reversed(upper)]
    boundary = upper + lower
    write_text(rows_to_csv(("x", "y"), [(f"{x:.12g}", f"{y:.12g}") for x, y in boundary]),
               args.out)
    _maybe_figure(args, boundary=np.array([complex(x, y) for x, y in boundary]),
                  title="drop region boundary")
    return 0


def cmd_omega(args) -> int:
    fv = _fv_from_args(args)
    point = parse_point(getattr(args, "lam"))
    v = cons.in_omega(fv, point, eps=args.eps)
    state = "boundary" if v.on_boundary else ("inside" if v.inside else "outside")
    write_text(f"{state} max_root_real_part={v.max_root_real_part:.6e}", args.out)
    return 0


def _omega_boundary_span(fv, points) -> np.ndarray:
    """phi(j*omega) sampled over a range wide enough to frame the points."""
    radius = 1.5 * max(1e-6, float(np.abs(points).max()))
    w = 1.0
    for _ in range(60):
        if abs(fv.phi(1j * w)) > radius:
            break
        w *= 1.3
    grid = np.linspace(-w, w, 801)
    return cons.omega_boundary(fv, grid)


def cmd_check(args) -> int:
    topology = _topology_from_args(args)
    fv = _fv_from_args(args)
    L = topology.laplacian()
    eigs = cons.reflect_scale(np.linalg.eigvals(L.astype(float)), args.r)
    ok = cons.criterion_spectrum(fv, eigs, eps=args.eps, zero_tol=args.zero_tol)
    if args.report:
        from .report import spectrum_report

        rep = spectrum_report(topology, fv, args.r, eps=args.eps,
                              zero_tol=args.zero_tol)
        rows = [(f"{re:.12g}", f"{im:.12g}", f"{res:.6e}", inside, f"{worst:.6e}")
                for re, im, res, inside, worst in rep.rows()]
        Path(args.report).write_text(
            rows_to_csv(("re", "im", "curve_residual", "inside", "max_root_real_part"),
                        rows), encoding="utf-8")
    nonzero = eigs[np.abs(eigs) > args.zero_tol]
    if ok:
        message = (f"CONSENSUS (N={topology.N}: all {nonzero.size} nonzero eigenvalues "
                   f"of -rL inside the consensus region)")
    else:
        margins = cons.max_root_real_parts(fv, nonzero)
        worst = nonzero[int(np.argmax(margins))]
        message = (f"NO CONSENSUS (N={topology.N} exceeds threshold: eigenvalue "
                   f"{worst.real:.6g}{worst.imag:+.6g}j outside the consensus region)")
    write_text(message, args.out)
    _maybe_figure(args, points=eigs, boundary=_omega_boundary_span(fv, eigs),
                  title="spectrum of -rL vs consensus region")
    return 0


def cmd_critical(args) -> int:
    gamma = args.gamma
    if getattr(args, "a", None):
        fv = _fv_from_args(args)
        default_bracket = (0.05, 4.0)
    elif args.fv == "nonminimum":
        fv = cons.nonminimum_phase(gamma)
        default_bracket = (0.05 / gamma, 1.0 / gamma)
    else:
        fv = cons.absolute_velocity(gamma)
        default_bracket = (0.1 * gamma ** 2, 2.5 * gamma ** 2)
    P = _macro_from_curve_args(args)
    r_lo = args.r_lo if args.r_lo is not None else default_bracket[0]
    r_hi = args.r_hi if args.r_hi is not None else default_bracket[1]
    r_star = cons.critical_gain(fv, P, r_lo, r_hi, tol=args.tol, samples=args.samples)
    write_text(f"{r_star:.6f}", args.out)
    return 0


def cmd_simulate(args) -> int:
    topology = _topology_from_args(args)
    if topology.N < 2:
        raise DomainError("simulation needs N >= 2 (a single node has no disagreement)")
    fv = _fv_from_args(args)
    model = dyn.AgentModel.from_frequency_variable(fv)
    system = dyn.build_closed_loop(model, topology.laplacian(), args.r)
    size = topology.N * model.d
    xi0 = dyn.random_initial_state(size, args.seed)
    traj = dyn.integrate(system, xi0, T=args.T, h=args.step, agent_dim=model.d,
                         seed=args.seed)
    outcome = dyn.verdict(traj)
    print(f"verdict={outcome} seed={args.seed} N={topology.N} d={model.d} "
          f"initial={traj.initial_disagreement:.6g} final={traj.final_disagreement:.6g}"
          + (" diverged" if traj.diverged else ""),
          file=sys.stderr)
    header = ["t", "disagreement"]
    rows = []
    for k, t in enumerate(traj.times):
        row = [f"{t:.6f}", f"{traj.disagreement[k]:.12g}"]
        if args.states:
            row.extend(f"{v:.12g}" for v in traj.states[k])
        rows.append(row)
    if args.states:
        header.extend(f"x{i}" for i in range(size))
    write_text(rows_to_csv(header, rows), args.out)
    _maybe_figure(args, times=traj.times, disagreement=traj.disagreement,
                  title=f"disagreement, verdict: {outcome}")
    return 0


def _read_csv_points(path) -> tuple[np.ndarray, list[str]]:
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        header = next(reader)
        rows = [row for row in reader if row]
    cols = [h.strip().lower() for h in header]
    data = np.asarray([[float(v) for v in row[: len(cols)]] for row in rows])
    return data, cols


def cmd_plot(args) -> int:
    data, cols = _read_csv_points(args.points)
    times = disagreement = points = None
    if cols[:2] == ["t", "disagreement"]:
        times, disagreement = data[:, 0], data[:, 1]
    else:
        points = data[:, 0] + 1j * data[:, 1]
    boundary = None
    if args.boundary:
        bdata, _ = _read_csv_points(args.boundary)
        boundary = bdata[:, 0] + 1j * bdata[:, 1]
    out = Path(args.out)
    if out.suffix == ".svg":
        if points is None:
            raise DomainError("svg plotting needs point data (re,im or x,y columns)")
        emit_svg(points, boundary, out)
        return 0
    from . import figures

    if times is not None:
        fig = figures.disagreement_figure(times, disagreement)
    else:
        fig = figures.spectrum_figure(points, boundary)
    figures.save_figure(fig, out)
    return 0


# ---------------------------------------------------------------------------
# parser assembly

def _add_common(sub, fig: bool = False):
    sub.add_argument("--out", default="-", help="output path, or - for stdout")
    sub.add_argument("--config", default=None, help="JSON file with default options")
    sub.add_argument("--threads", type=int, default=1,
                     help="worker threads for curve tracing")
    if fig:
        sub.add_argument("--fig", default=None,
                         help="render a matplotlib figure to this file")


def _add_topology(sub):
    sub.add_argument("--necklace", default=None, help="comma-separated entries, e.g. 2,1")
    sub.add_argument("--m", type=int, default=1, help="macro-vertex replication count")
    sub.add_argument("--topology", default=None,
                     help='JSON topology file, e.g. {"necklace": [2, 1], "m": 4}')


def _add_agent(sub):
    sub.add_argument("--a", default=None,
                     help="ascending coefficients of the monic agent polynomial a(s)")
    sub.add_argument("--b", default="1",
                     help="ascending coefficients of the coupling polynomial b(s)")


def build_parser() -> _Parser:
    parser = _Parser(prog="rings", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)

    s = subs.add_parser("count", help="number of simple-ring classes on N nodes")
    s.add_argument("--N", type=int, required=True)
    _add_common(s)
    s.set_defaults(func=cmd_count, _parser=s)

    s = subs.add_parser("enumerate", help="canonical simple-ring necklaces on n nodes")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--format", choices=["text", "csv", "json"], default="text")
    _add_common(s)
    s.set_defaults(func=cmd_enumerate, _parser=s)

    s = subs.add_parser("laplacian", help="Laplacian matrix of a ring topology")
    _add_topology(s)
    s.add_argument("--format", choices=["csv", "json"], default="csv")
    _add_common(s)
    s.set_defaults(func=cmd_laplacian, _parser=s)

    s = subs.add_parser("charpoly", help="exact characteristic polynomial coefficients")
    _add_topology(s)
    s.add_argument("--format", choices=["text", "json"], default="text")
    _add_common(s)
    s.set_defaults(func=cmd_charpoly, _parser=s)

    s = subs.add_parser("locus", help="Laplacian eigenvalues of the replicated topology")
    _add_topology(s)
    s.add_argument("--format", choices=["csv", "json"], default="csv")
    _add_common(s, fig=True)
    s.set_defaults(func=cmd_locus, _parser=s)

    s = subs.add_parser("curve", help="spectrum-locus curve: coefficients or traced points")
    _add_topology(s)
    s.add_argument("--curve", choices=sorted(CURVE_PRESETS), default=None,
                   help="named preset instead of --necklace")
    s.add_argument("--format", choices=["poly", "csv", "svg"], default="poly")
    s.add_argument("--samples", type=int, default=720)
    _add_common(s, fig=True)
    s.set_defaults(func=cmd_curve, _parser=s)

    s = subs.add_parser("weighted", help="spectrum of the two-cycle weighted ring")
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--c", type=float, required=True)
    s.add_argument("--format", choices=["csv", "json"], default="csv")
    _add_common(s, fig=True)
    s.set_defaults(func=cmd_weighted, _parser=s)

    s = subs.add_parser("drop", help="drop-region boundary points")
    s.add_argument("--samples", type=int, default=400)
    s.add_argument("--format", choices=["csv"], default="csv")
    _add_common(s, fig=True)
    s.set_defaults(func=cmd_drop, _parser=s)

    s = subs.add_parser("omega", help="consensus-region membership of one point")
    _add_agent(s)
    s.add_argument("--lambda", dest="lam", required=True, help="point as re,im")
    s.add_argument("--eps", type=float, default=cons.EPS)
    _add_common(s)
    s.set_defaults(func=cmd_omega, _parser=s)

    s = subs.add_parser("check", help="consensus criterion for one topology and agent model")
    _add_topology(s)
    _add_agent(s)
    s.add_argument("--r", type=float, default=1.0)
    s.add_argument("--eps", type=float, default=cons.EPS)
    s.add_argument("--zero-tol", dest="zero_tol", type=float, default=cons.ZERO_TOL)
    s.add_argument("--report", default=None,
                   help="write a per-eigenvalue CSV (curve residual, region verdict)")
    _add_common(s, fig=True)
    s.set_defaults(func=cmd_check, _parser=s)

    s = subs.add_parser("critical", help="bisect the critical gain r* on a locus curve")
    s.add_argument("--curve", choices=sorted(CURVE_PRESETS), default=None)
    s.add_argument("--necklace", default=None)
    s.add_argument("--gamma", type=float, default=1.0)
    s.add_argument("--fv", choices=["absolute", "nonminimum"], default="absolute",
                   help="agent family (ignored when --a is given)")
    _add_agent(s)
    s.add_argument("--r-lo", dest="r_lo", type=float, default=None)
    s.add_argument("--r-hi", dest="r_hi", type=float, default=None)
    s.add_argument("--tol", type=float, default=1e-4)
    s.add_argument("--samples", type=int, default=1024)
    _add_common(s)
    s.set_defaults(func=cmd_critical, _parser=s)

    s = subs.add_parser("simulate", help="integrate the closed loop and judge consensus")
    _add_topology(s)
    _add_agent(s)
    s.add_argument("--r", type=float, default=1.0)
    s.add_argument("--T", type=float, default=60.0)
    s.add_argument("--h", dest="step", type=float, default=1e-3)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--states", action="store_true", help="append state columns to the CSV")
    _add_common(s, fig=True)
    s.set_defaults(func=cmd_simulate, _parser=s)

    s = subs.add_parser("plot", help="render a figure from CSV written by other subcommands")
    s.add_argument("--points", required=True, help="CSV with re,im / x,y / t,disagreement")
    s.add_argument("--boundary", default=None, help="CSV with boundary polyline points")
    s.add_argument("--out", required=True, help=".svg uses the deterministic SVG writer; "
                   "other extensions go through matplotlib")
    s.add_argument("--config", default=None)
    s.set_defaults(func=cmd_plot, _parser=s)

    return parser


def _apply_config(args) -> None:
    path = getattr(args, "config", None)
    if not path:
        return
    with open(path, encoding="utf-8") as f:
        config = json.load(f)
    if not isinstance(config, dict):
        raise DomainError("config file must hold a JSON object of option values")
    parser = args._parser
    for key, value in config.items():
        dest = key.replace("-", "_")
        if not hasattr(args, dest):
            raise DomainError(f"unknown config option {key!r}")
        # explicit command-line values win over config values
        if getattr(args, dest) == parser.get_default(dest):
            setattr(args, dest, value)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _apply_config(args)
        _normalize_out(args)
        return args.func(args)
    except NumericFailureError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 2
    except (DomainError, RingsError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

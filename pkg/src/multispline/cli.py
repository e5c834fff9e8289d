"""Command-line front end and the editor's reconstruction endpoint.

Subcommands:

* ``build``        construct a basis, write canonical JSON and a slice CSV
* ``check``        run the validation suite on a basis; nonzero exit on failure
* ``reconstruct``  samples CSV -> dense curve CSV through the inverse filter
* ``order``        h-refinement experiment, reports the log2 error slope
* ``serve``        HTTP endpoint POST /reconstruct for the interactive editor

Spaces are named basis ids (``hermite_cubic``), degree vectors
(``4,5``) or paths to an exported basis JSON.  Analysis channels use the
tokens ``v@tau`` and ``d<k>@tau``.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from . import analysis, io as msio, sampling
from .builder import build_mb_spline
from .named import NAMED_PATTERNS, degrees_to_named, named_basis
from .piecewise import Q

DEFAULT_OMEGA_GRID = int(os.environ.get("MULTISPLINE_OMEGA_GRID", "1024"))


def resolve_space(token, raw=False):
    """Named id, comma-separated degree vector, or basis JSON path.

    Degree vectors resolve to their practical named form when one exists
    (symmetric pairs etc.); pass raw=True for the untouched algorithm
    output.
    """
    token = str(token).strip()
    if os.path.exists(token):
        return msio.load_basis(token)
    if token and all(c.isdigit() or c in ", " for c in token):
        degrees = tuple(int(x) for x in token.split(","))
        name = None if raw else degrees_to_named(degrees)
        return named_basis(name) if name else build_mb_spline(degrees)
    return named_basis(token)


def default_functionals(gs, override=None):
    if override:
        return sampling.parse_functionals(override)
    if gs.channels:
        return sampling.parse_functionals(gs.channels)
    raise SystemExit("this space has no default channels; pass --functionals")


# ---------------------------------------------------------------------------


def cmd_build(args):
    gs = resolve_space(args.degrees, raw=args.raw)
    msio.save_basis(gs, args.out)
    csv_path = args.csv or (os.path.splitext(args.out)[0] + "_slices.csv")
    with open(csv_path, "w") as fh:
        fh.write(msio.slice_table_csv(gs))
    print(f"wrote {args.out} and {csv_path}")
    print(f"degrees {list(gs.degrees)}, support sum {gs.support_sum()}")
    return 0


def run_checks(gs, omega_grid):
    """Validation report plus the first failed invariant, if any."""
    failure = None

    def fail(msg):
        nonlocal failure
        if failure is None:
            failure = msg

    n1, nN = gs.degrees[0], gs.degrees[-1]
    support = gs.support_sum()
    if support != nN + 1:
        fail(f"support sum {support} != {nN + 1}: not a shortest-support basis")
    smooth = min(analysis.smoothness_order(g) for g in gs.gens)
    if smooth < n1 - 1:
        fail(f"smoothness C^{smooth} below the C^{n1 - 1} the space requires")
    if max(g.degree() for g in gs.gens) > nN:
        fail("piece degree exceeds the space degree")
    ranks = analysis.slice_independence(gs)
    if not ranks.independent:
        fail(f"slices dependent: rank {ranks.rank} of {ranks.count}")
    # unit-norm generators: the certificate must not depend on scaling
    riesz = analysis.riesz_bounds(gs, omega_grid, normalize=True)
    if not riesz.A > 1e-6:
        fail(f"no Riesz lower bound: min det {riesz.min_det:.3e}")
    window = 4 * (nN + 1)
    repro_degree = None
    if ranks.independent:
        repro = analysis.verify_reproduction(gs, nN, window)
        if repro.ok:
            repro_degree = nN
        else:
            fail(
                f"monomial degree {repro.witness_degree} not reproduced "
                f"(interval {repro.witness_interval})"
            )
            repro_degree = (repro.witness_degree or 0) - 1
    report = {
        "support_sum": support,
        "riesz": {"A": riesz.A, "B": riesz.B},
        "min_det": riesz.min_det,
        "slice_rank": [ranks.rank, ranks.count],
        "repro_degree": repro_degree,
        "smoothness": smooth if math.isfinite(smooth) else None,
    }
    return report, failure


def cmd_check(args):
    try:
        gs = resolve_space(args.basis)
    except Exception as err:  # malformed file or unknown id
        print(f"cannot load basis: {err}", file=sys.stderr)
        return 2
    report, failure = run_checks(gs, args.omega_grid)
    print(json.dumps(report, indent=1))
    rows = [
        ("degrees", ",".join(map(str, gs.degrees))),
        ("support sum", f"{report['support_sum']} (minimum {gs.degrees[-1] + 1})"),
        ("riesz bounds", f"A={report['riesz']['A']:.6g}  B={report['riesz']['B']:.6g}"),
        ("slice rank", f"{report['slice_rank'][0]}/{report['slice_rank'][1]}"),
        ("reproduces degree", str(report["repro_degree"])),
        ("smoothness", f"C^{report['smoothness']}" if report["smoothness"] is not None else "C^inf"),
    ]
    width = max(len(k) for k, _ in rows)
    for key, val in rows:
        print(f"{key:<{width}}  {val}")
    if failure:
        print(f"FAIL: {failure}")
        return 1
    print("PASS")
    return 0


def reconstruct_job(gs, functionals, dims, grid, boundary, start=0, coefficients=False):
    """Shared reconstruction path for the CLI and the HTTP endpoint.

    With coefficients=True the channel sequences are used directly as
    expansion coefficients (the mode for spaces without an invertible
    sampling design, like the jump-plus-smooth hybrids).
    """
    curves = []
    consistency = 0.0 if not coefficients else None
    xs = None
    for channels in dims:
        if coefficients:
            recon = sampling.Reconstruction(gs, channels, start)
        else:
            meas = sampling.Measurements(channels, boundary)
            recon, _ = sampling.reconstruct_from_measurements(
                gs, functionals, meas, start
            )
            dev = sampling.consistency_check(recon, functionals, meas)
            consistency = max(consistency, dev)
        xs, ys = recon.dense(grid)
        curves.append(ys)
    labels = None
    if len(curves) > 1:
        labels = [f"f{i + 1}" for i in range(len(curves))]
    csv_text = msio.curve_csv(xs, curves, labels)
    return xs, curves, consistency, csv_text


def cmd_reconstruct(args):
    gs = resolve_space(args.space)
    functionals = None
    if not args.coefficients:
        functionals = default_functionals(gs, args.functionals)
    channels = msio.read_measurements_csv(args.samples)
    if len(channels) != gs.n:
        print(
            f"channel mismatch: basis has {gs.n} channels, CSV has {len(channels)}",
            file=sys.stderr,
        )
        return 2
    try:
        if args.filter_json:
            mat = sampling.system_matrix(gs, functionals)
            spec = sampling.invert_filter(mat)
            with open(args.filter_json, "w") as fh:
                json.dump(spec.to_json(), fh, indent=1)
                fh.write("\n")
        _, _, consistency, csv_text = reconstruct_job(
            gs,
            functionals,
            [channels],
            args.grid,
            args.boundary,
            args.start,
            args.coefficients,
        )
    except sampling.NonInvertibleSystem as err:
        print(f"non-invertible system: {err}", file=sys.stderr)
        return 1
    except ValueError as err:
        print(str(err), file=sys.stderr)
        return 2
    with open(args.out, "w") as fh:
        fh.write(csv_text)
    if consistency is not None:
        print(f"consistency deviation {msio.fmt_float(consistency)}")
    return 0


_ORDER_FUNCS = {
    "sin": {0: math.sin, 1: math.cos},
    "cos": {0: math.cos, 1: lambda x: -math.sin(x)},
    "cubic": {0: lambda x: x**3 / 64.0, 1: lambda x: 3 * x**2 / 64.0},
}


def cmd_order(args):
    gs = resolve_space(args.space)
    functionals = default_functionals(gs, args.functionals)
    derivs = _ORDER_FUNCS[args.function]
    steps = [Q(s) for s in args.steps.split(",")]
    if len(steps) < 3:
        print("need at least 3 refinement steps", file=sys.stderr)
        return 2
    errors = [
        sampling.refinement_errors(
            gs, functionals, derivs, args.interval, h, args.margin
        )
        for h in steps
    ]
    for h, e in zip(steps, errors):
        print(f"h={h}: sup error {msio.fmt_float(e)}")
    if max(errors) < 1e-12:
        print("slope: exact (function lies in the reconstruction space)")
    else:
        slope = sampling.log2_slope(steps, errors)
        print(f"slope: {msio.fmt_float(slope)}")
    return 0


# ---------------------------------------------------------------------------
# HTTP endpoint


def handle_reconstruct_request(payload):
    space = payload["space"]
    if isinstance(space, list):
        gs = build_mb_spline(tuple(space))
    else:
        gs = resolve_space(str(space))
    coefficients = payload.get("mode", "samples") == "coefficients"
    functionals = None
    if not coefficients:
        functionals = default_functionals(gs, payload.get("functionals"))
    dims = payload.get("dims")
    if dims is None:
        dims = [payload["channels"]]
    dims = [d["channels"] if isinstance(d, dict) else d for d in dims]
    for channels in dims:
        if len(channels) != gs.n:
            raise ValueError(
                f"channel mismatch: space has {gs.n} channels, got {len(channels)}"
            )
    grid = int(payload.get("grid", 16))
    if grid < 2:
        raise ValueError("grid density must be >= 2")
    boundary = payload.get("boundary", "mirror")
    start = int(payload.get("start", 0))
    xs, curves, consistency, csv_text = reconstruct_job(
        gs, functionals, dims, grid, boundary, start, coefficients
    )
    return {
        "x": list(xs),
        "y": [list(c) for c in curves],
        "consistency": consistency,
        "csv": csv_text,
    }


class _Handler(BaseHTTPRequestHandler):
    def _send(self, code, obj):
        body = json.dumps(obj).encode()
        self.send_response(code)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.end_headers()
        self.wfile.write(body)

    def do_OPTIONS(self):
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.end_headers()

    def do_POST(self):
        if self.path != "/reconstruct":
            self._send(404, {"error": "unknown endpoint"})
            return
        try:
            length = int(self.headers.get("Content-Length", "0"))
            payload = json.loads(self.rfile.read(length) or b"{}")
            self._send(200, handle_reconstruct_request(payload))
        except (KeyError, ValueError, TypeError) as err:
            self._send(400, {"error": str(err)})
        except Exception as err:  # keep the server alive for the editor
            self._send(500, {"error": f"{type(err).__name__}: {err}"})

    def log_message(self, fmt, *args):  # quiet by default
        if os.environ.get("MULTISPLINE_SERVE_VERBOSE"):
            super().log_message(fmt, *args)


def cmd_serve(args):
    try:
        server = ThreadingHTTPServer((args.host, args.port), _Handler)
    except OSError as err:
        print(f"cannot bind {args.host}:{args.port}: {err}", file=sys.stderr)
        return 1
    print(f"serving on http://{args.host}:{server.server_address[1]}/reconstruct")
    sys.stdout.flush()
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    return 0


# ---------------------------------------------------------------------------


def make_parser():
    p = argparse.ArgumentParser(
        prog="multispline",
        description="shortest-support multi-spline bases and generalized sampling",
        epilog="named spaces: " + "; ".join(NAMED_PATTERNS),
    )
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="construct a basis and export it")
    b.add_argument("degrees", help="degree vector like 4,5 or a named id")
    b.add_argument("--out", default="basis.json")
    b.add_argument("--csv", default=None, help="slice table path")
    b.add_argument(
        "--raw",
        action="store_true",
        help="raw recursion output, without the practical post-processing",
    )
    b.set_defaults(func=cmd_build)

    c = sub.add_parser("check", help="validate a basis")
    c.add_argument("basis", help="space id, degree vector or basis JSON path")
    c.add_argument("--omega-grid", type=int, default=DEFAULT_OMEGA_GRID)
    c.set_defaults(func=cmd_check)

    r = sub.add_parser("reconstruct", help="reconstruct a curve from samples")
    r.add_argument("--space", required=True)
    r.add_argument("--samples", required=True, help="CSV with header k,g1,...,gN")
    r.add_argument("--functionals", default=None, help="tokens like v@0,d1@0")
    r.add_argument("--grid", type=int, default=16, help="points per knot interval")
    r.add_argument("--boundary", default="mirror", choices=["mirror", "periodic", "zero"])
    r.add_argument("--start", type=int, default=0)
    r.add_argument("--out", required=True)
    r.add_argument("--filter-json", default=None, help="dump the inverse filter spec")
    r.add_argument(
        "--coefficients",
        action="store_true",
        help="treat the CSV columns as expansion coefficients (no filtering)",
    )
    r.set_defaults(func=cmd_reconstruct)

    o = sub.add_parser("order", help="h-refinement order-of-accuracy experiment")
    o.add_argument("--space", required=True)
    o.add_argument("--functionals", default=None)
    o.add_argument("--function", default="sin", choices=sorted(_ORDER_FUNCS))
    o.add_argument("--steps", default="1/2,1/4,1/8")
    o.add_argument("--interval", type=float, default=8.0)
    o.add_argument("--margin", type=float, default=3.0)
    o.set_defaults(func=cmd_order)

    s = sub.add_parser("serve", help="HTTP reconstruction endpoint for the editor")
    s.add_argument("--port", type=int, default=8642)
    s.add_argument("--host", default="127.0.0.1")
    s.set_defaults(func=cmd_serve)
    return p


def main(argv=None):
    args = make_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

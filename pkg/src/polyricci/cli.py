"""Command-line front end.

Exit codes: 0 success, 2 bad input, 3 a mode that does not apply to the input.
Data goes to stdout unless ``--output-dir`` is given; diagnostics go to stderr.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .bloch import bloch_report
from .curvature import curvature_report
from .dispersion import all_dispersions, dispersion, dispersion_csv
from .errors import MisuseError, PolyRicciError
from .faces import DEFAULT_MAX_CYCLE_DEGREE, DEFAULT_MAX_SIMPLEX_DIM, census, fill_faces
from .flow import FlowConfig, run_flow
from .ingest import complex_to_json, load_complex, parse_coordinates
from .weights import SCHEMES

log = logging.getLogger("polyricci")

EXIT_INPUT = 2
EXIT_MISUSE = 3


def _sha256(path: str) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def manifest(args: argparse.Namespace) -> dict:
    options = {k: v for k, v in sorted(vars(args).items()) if k != "func"}
    inputs = [p for p in (args.input, getattr(args, "coords", None)) if p]
    return {
        "subcommand": args.command,
        "inputs": inputs,
        "input_sha256": {p: _sha256(p) for p in inputs},
        "options": options,
        "version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }


class Output:
    """Routes named outputs to files in ``output_dir`` or to stdout."""

    def __init__(self, args):
        self.args = args
        self.dir = Path(args.output_dir) if args.output_dir else None
        if self.dir:
            self.dir.mkdir(parents=True, exist_ok=True)

    def emit(self, name: str, text: str, stdout: bool = True) -> None:
        if self.dir:
            (self.dir / name).write_text(text)
        elif stdout:
            sys.stdout.write(text)

    def finish(self) -> None:
        if self.dir:
            (self.dir / "manifest.json").write_text(json.dumps(manifest(self.args), indent=1) + "\n")


def _load(args, default_degree=None):
    """Input complex: JSON as-is, edge lists filled per the face flags."""
    c, raw = load_complex(args.input)
    is_json = Path(args.input).read_text().lstrip().startswith("{")
    degree = args.faces_max_degree if args.faces_max_degree is not None else default_degree
    if not is_json and degree is not None:
        coords = None
        if getattr(args, "coords", None):
            table = parse_coordinates(Path(args.coords).read_text())
            coords = {i: table[lab] for i, lab in enumerate(c.labels) if lab in table}
        c = fill_faces(
            c,
            max_cycle_degree=degree,
            max_simplex_dim=args.simplex_max_dim if args.simplex_max_dim is not None else DEFAULT_MAX_SIMPLEX_DIM,
            scheme=args.face_weights,
            coords=coords,
            strict=not args.lenient,
            threads=args.threads,
        )
    return c, raw


def cmd_stats(args) -> int:
    degree = args.faces_max_degree if args.faces_max_degree is not None else DEFAULT_MAX_CYCLE_DEGREE
    top_n = args.simplex_max_dim if args.simplex_max_dim is not None else DEFAULT_MAX_SIMPLEX_DIM
    args.faces_max_degree, args.simplex_max_dim = degree, top_n
    c, raw = _load(args, degree)
    cen = census(c, degree, top_n)
    header = ["nodes", "edges"]
    row = [c.vertex_count, c.edge_count]
    for d, n in sorted(cen.face_counts.items()):
        header.append(f"faces_{d}")
        row.append(n)
    for d, n in sorted(cen.simplex_counts.items()):
        header.append(f"simplices_{d}")
        row.append(n)
    header += ["avg_degree", "raw_nodes", "raw_edges"]
    row += [f"{cen.average_degree:.4f}", raw["vertices"], raw["edges"]]
    out = Output(args)
    out.emit("stats.csv", ",".join(header) + "\n" + ",".join(map(str, row)) + "\n")
    out.emit("faces.csv", cen.face_csv(), stdout=False)
    out.emit("simplices.csv", cen.simplex_csv(), stdout=False)
    out.finish()
    return 0


def cmd_fill(args) -> int:
    c, _ = _load(args, DEFAULT_MAX_CYCLE_DEGREE)
    out = Output(args)
    out.emit("complex.json", complex_to_json(c))
    out.finish()
    return 0


def cmd_curvature(args) -> int:
    c, _ = _load(args)
    report = curvature_report(c, args.mode)
    out = Output(args)
    out.emit("curvature.csv", report.to_csv(c))
    out.emit("curvature_summary.json", report.summary_json(), stdout=False)
    out.finish()
    return 0


def cmd_bloch(args) -> int:
    c, _ = _load(args)
    out = Output(args)
    out.emit("bloch.json", bloch_report(c).to_json())
    out.finish()
    return 0


def cmd_chi(args) -> int:
    c, _ = _load(args)
    rep = bloch_report(c)
    full = rep.to_dict()
    summary = {
        "vertices": c.vertex_count,
        "edges": c.edge_count,
        "faces": c.face_count,
        "triangles": rep.triangles,
        "chi_gb": full["chi_gb"],
        "chi_comb": full["chi_comb"],
        "mean_chi": full["mean_chi"],
        "sign": (rep.chi_gb > 0) - (rep.chi_gb < 0),
        "prototype": rep.prototype,
        "mean_r1": full["mean_r1"],
        "mean_a1": full["mean_a1"],
        "mean_b1": full["mean_b1"],
        "criteria": full["criteria"],
    }
    out = Output(args)
    out.emit("chi.json", json.dumps(summary, indent=1) + "\n")
    out.finish()
    return 0


def cmd_flow(args) -> int:
    c, _ = _load(args)
    config = FlowConfig(
        epsilon=args.epsilon,
        max_iter=args.max_iter,
        threshold=args.threshold,
        normalized=args.mode != "shortterm",
        renormalize=not args.no_renormalize,
        tol=args.tol,
        curvature="r1" if args.mode == "r1" else "forman",
        def10_sign=args.def10_sign,
        strict=args.strict,
    )
    trace = run_flow(c, config, snapshot_every=args.snapshot_every or 0, keep_weights=False)
    out = Output(args)
    summary = json.dumps(trace.summary(), indent=None if out.dir is None else 1)
    if out.dir:
        out.emit("trace.jsonl", trace.jsonl())
        out.emit("summary.json", summary + "\n")
        for t, text in trace.snapshot_json():
            out.emit(f"snapshot_{t:06d}.json", text)
    else:
        sys.stdout.write(trace.jsonl())
        sys.stdout.write(json.dumps({"summary": trace.summary()}) + "\n")
    out.finish()
    return 0


def cmd_dispersion(args) -> int:
    c, _ = _load(args)
    if args.pair:
        ids = {lab: i for i, lab in enumerate(c.labels)}
        missing = [x for x in args.pair if x not in ids]
        if missing:
            raise KeyError(f"unknown vertex label(s): {', '.join(missing)}")
        u, v = (ids[x] for x in args.pair)
        if u == v:
            raise KeyError("dispersion needs two distinct vertices")
        values = [dispersion(c, u, v, literal=args.literal)]
    else:
        values = all_dispersions(c, literal=args.literal)
    out = Output(args)
    out.emit("dispersion.csv", dispersion_csv(c, values))
    out.finish()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polyricci", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, faces=True):
        p.add_argument("--input", "-i", required=True, help="edge list or complex JSON")
        p.add_argument("--output-dir", "-o", default=None)
        p.add_argument("--threads", type=int, default=1, help="worker cap for face enumeration")
        p.add_argument("--faces-max-degree", "-L", type=int, default=None,
                       help="fill triangles and chordless cycles up to this length (edge-list input only)")
        p.add_argument("--simplex-max-dim", "-N", type=int, default=None)
        p.add_argument("--face-weights", choices=SCHEMES, default="unit")
        p.add_argument("--coords", default=None, help="'label x y' file for shoelace weights")
        p.add_argument("--lenient", action="store_true",
                       help="clamp degenerate or nonpositive weights instead of failing")
        p.add_argument("-v", "--verbose", action="store_true")

    p = sub.add_parser("stats", help="node/edge counts and face census")
    common(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("fill", help="write the filled complex as JSON")
    common(p)
    p.set_defaults(func=cmd_fill)

    p = sub.add_parser("curvature", help="Forman-Ricci curvature per edge")
    common(p)
    p.add_argument("--mode", choices=("weighted", "combinatorial", "1d"), default="combinatorial")
    p.set_defaults(func=cmd_curvature)

    p = sub.add_parser("bloch", help="curvature functions R0/R1/R2 and Euler characteristic")
    common(p)
    p.set_defaults(func=cmd_bloch)

    p = sub.add_parser("chi", help="Euler characteristic and prototype class")
    common(p)
    p.set_defaults(func=cmd_chi)

    p = sub.add_parser("flow", help="run the Ricci flow on edge weights")
    common(p)
    p.add_argument("--mode", choices=("normalized", "shortterm", "r1"), default="normalized")
    p.add_argument("--epsilon", type=float, default=0.1)
    p.add_argument("--threshold", type=float, default=0.05)
    p.add_argument("--max-iter", type=int, default=500)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--no-renormalize", action="store_true")
    p.add_argument("--snapshot-every", type=int, default=0)
    p.add_argument("--def10-sign", action="store_true",
                   help="R1 flow: grow above-average edges instead of shrinking them")
    p.add_argument("--strict", action="store_true",
                   help="fail when a step makes a weight nonpositive instead of clamping and pruning it")
    p.set_defaults(func=cmd_flow)

    p = sub.add_parser("dispersion", help="edge dispersion")
    common(p)
    p.add_argument("--pair", nargs=2, metavar=("U", "V"), default=None)
    p.add_argument("--literal", action="store_true", help="use the unrestricted common-neighbour test")
    p.set_defaults(func=cmd_dispersion)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr, force=True)
    try:
        return args.func(args)
    except MisuseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISUSE
    except (PolyRicciError, OSError, KeyError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

    ricci-arg detect          --family petersen
    ricci-arg curvature lly   --input graph.txt
    ricci-arg curvature be    --family shrikhande --signature plus
    ricci-arg verify          --family hypercube --params 4 --format table
    ricci-arg gen rook 4 > rook4.txt

Exit codes: 0 on success, 1 when an asserted bound fails, 2 on usage or
input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import graph as gc
from .bakry_emery import (
    ClosedFormInputs,
    Signature,
    closed_form_minus,
    closed_form_plus,
    is_balanced,
    vertex_curvatures,
)
from .bounds import SPECTRAL_TOL, reports_to_json, reports_to_table, verify_all
from .spectra import local_spectrum
from .transport import edge_curvatures, fmt_rational

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    graph: gc.Graph
    signs: dict | None
    signature: str
    signature_file: str | None
    fmt: str
    tol: float
    jobs: int
    seed: int


def _source_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    src = p.add_argument_group("graph source")
    src.add_argument("--input", metavar="FILE", help="edge-list file, '-' for stdin (the default)")
    src.add_argument("--family", metavar="NAME", help=f"named family: {', '.join(sorted(gc.FAMILIES))}")
    src.add_argument("--params", metavar="N", nargs="*", type=int, default=[], help="family parameters")
    p.add_argument("--format", choices=("json", "table"), default="table")
    p.add_argument("--seed", type=int, default=42, help="seed for sampled checks (default 42)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--tol", type=float, default=SPECTRAL_TOL, help=f"spectral tolerance, at most {SPECTRAL_TOL}")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ricci-arg", description="Ricci curvature tools for amply regular graphs.")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _source_parser()

    sub.add_parser("detect", parents=[common], help="amply regular parameters (n, d, alpha, beta)")

    curv = sub.add_parser("curvature", help="curvature tables")
    kinds = curv.add_subparsers(dest="kind", required=True)
    kinds.add_parser("lly", parents=[common], help="Lin-Lu-Yau curvature per edge (exact)")
    be = kinds.add_parser("be", parents=[common], help="Bakry-Emery curvature per vertex")
    be.add_argument(
        "--signature",
        nargs="+",
        metavar="plus|minus|file PATH",
        default=["plus"],
        help="edge signature: plus, minus, or 'file PATH' (sign column of a graph file)",
    )

    sub.add_parser("verify", parents=[common], help="check every bound; exit 1 on failure")

    gen = sub.add_parser("gen", help="write a named graph in edge-list format")
    gen.add_argument("family", choices=sorted(gc.FAMILIES))
    gen.add_argument("params", nargs="*", type=int)
    return parser


def _load_graph(args) -> tuple[gc.Graph, dict | None]:
    if args.family is not None and args.input is not None:
        raise UsageError("give either --input or --family, not both")
    if args.family is not None:
        try:
            return gc.generate(args.family, *args.params), None
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if args.params:
        raise UsageError("--params requires --family")
    if args.input in (None, "-"):
        text, name = sys.stdin.read(), "<stdin>"
    else:
        try:
            with open(args.input) as fh:
                text, name = fh.read(), args.input
        except OSError as exc:
            raise UsageError(f"cannot read {args.input}: {exc.strerror}") from None
    try:
        return gc.parse_graph(text)
    except gc.GraphFormatError as exc:
        raise UsageError(f"{name}: {exc}") from None


def _signature(cfg: RunConfig) -> Signature:
    g = cfg.graph
    if cfg.signature == "plus":
        return Signature.plus(g)
    if cfg.signature == "minus":
        return Signature.minus(g)
    try:
        with open(cfg.signature_file) as fh:
            sg, signs = gc.parse_graph(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {cfg.signature_file}: {exc.strerror}") from None
    except gc.GraphFormatError as exc:
        raise UsageError(f"{cfg.signature_file}: {exc}") from None
    if signs is None:
        raise UsageError(f"{cfg.signature_file}: no sign column")
    if sg.vertex_count != g.vertex_count or sg.edges() != g.edges():
        raise UsageError(f"{cfg.signature_file}: edge set differs from the input graph")
    return Signature(g, signs)


def _config(args) -> RunConfig:
    if not 0 < args.tol <= SPECTRAL_TOL:
        raise UsageError(f"--tol may only tighten the default {SPECTRAL_TOL}")
    if args.jobs < 1:
        raise UsageError("--jobs must be positive")
    sig, sig_file = "plus", None
    spec = getattr(args, "signature", None)
    if spec is not None:
        if spec == ["plus"] or spec == ["minus"]:
            sig = spec[0]
        elif len(spec) == 2 and spec[0] == "file":
            sig, sig_file = "file", spec[1]
        else:
            raise UsageError("--signature takes plus, minus, or 'file PATH'")
    g, signs = _load_graph(args)
    command = args.command if args.command != "curvature" else f"curvature-{args.kind}"
    return RunConfig(command, g, signs, sig, sig_file, args.format, args.tol, args.jobs, args.seed)


# --- commands -----------------------------------------------------------------------


def _be_value(k: float) -> float:
    """Ten significant digits, with rounding noise around zero removed."""
    return 0.0 if abs(k) < 1e-12 else float(f"{k:.10g}")


def cmd_detect(cfg: RunConfig, out) -> int:
    try:
        res = gc.detect_arg(cfg.graph)
    except gc.NotAmplyRegular as exc:
        payload = {"amply_regular": False, "reason": str(exc)}
    else:
        if isinstance(res, gc.ArgViolation):
            payload = {
                "amply_regular": False,
                "reason": res.reason,
                "pair": list(res.pair) if res.pair else None,
                "found": res.found,
                "expected": res.expected,
            }
        else:
            payload = {"amply_regular": True, "n": res.n, "d": res.d, "alpha": res.alpha, "beta": res.beta}
    if cfg.fmt == "json":
        out.write(json.dumps(payload) + "\n")
    else:
        for k, v in payload.items():
            out.write(f"{k}: {v}\n")
    return EXIT_OK


def _require_regular(g: gc.Graph) -> None:
    if g.regular_degree() is None:
        raise UsageError("curvature tables need a regular graph")
    if g.edge_count == 0:
        raise UsageError("graph has no edges")


def cmd_curvature_lly(cfg: RunConfig, out) -> int:
    _require_regular(cfg.graph)
    if not cfg.graph.is_connected():
        raise UsageError("graph is disconnected")
    kappa = edge_curvatures(cfg.graph, cfg.jobs)
    if cfg.fmt == "json":
        rows = [{"u": u, "v": v, "kappa": fmt_rational(k)} for (u, v), k in sorted(kappa.items())]
        out.write(json.dumps(rows) + "\n")
    else:
        out.write("u\tv\tkappa_lly\n")
        for (u, v), k in sorted(kappa.items()):
            out.write(f"{u}\t{v}\t{fmt_rational(k)}\n")
    return EXIT_OK


def _closed_forms(g: gc.Graph, sigma: Signature) -> list[float] | None:
    """Closed-form K_BE per vertex when g is amply regular and sigma is
    switching equivalent to all +1 or all -1."""
    try:
        params = gc.detect_arg(g)
    except gc.NotAmplyRegular:
        return None
    if isinstance(params, gc.ArgViolation):
        return None
    if is_balanced(sigma):
        formula = closed_form_plus
    elif is_balanced(Signature(g, {e: -s for e, s in sigma.as_dict().items()})):
        formula = closed_form_minus
    else:
        return None
    return [formula(ClosedFormInputs(params, local_spectrum(g, x))) for x in range(g.vertex_count)]


def cmd_curvature_be(cfg: RunConfig, out) -> int:
    _require_regular(cfg.graph)
    sigma = _signature(cfg)
    ks = vertex_curvatures(cfg.graph, sigma, cfg.jobs)
    cf = _closed_forms(cfg.graph, sigma)
    if cfg.fmt == "json":
        rows = []
        for x, k in enumerate(ks):
            row = {"vertex": x, "k_be": _be_value(k)}
            if cf is not None:
                row["closed_form"] = _be_value(cf[x])
            rows.append(row)
        out.write(json.dumps(rows) + "\n")
    else:
        out.write("vertex\tk_be" + ("\tclosed_form" if cf is not None else "") + "\n")
        for x, k in enumerate(ks):
            extra = f"\t{_be_value(cf[x])!r}" if cf is not None else ""
            out.write(f"{x}\t{_be_value(k)!r}{extra}\n")
    return EXIT_OK


def cmd_verify(cfg: RunConfig, out, err) -> int:
    if not cfg.graph.is_connected():
        raise UsageError("graph is disconnected")
    reports = verify_all(cfg.graph, jobs=cfg.jobs, seed=cfg.seed, tol=cfg.tol)
    out.write(reports_to_json(reports) + "\n" if cfg.fmt == "json" else reports_to_table(reports))
    failed = [r for r in reports if r.failed]
    if failed:
        err.write("verification failed: " + json.dumps(failed[0].to_json()) + "\n")
        return EXIT_FAILED
    return EXIT_OK


def cmd_gen(args, out) -> int:
    try:
        g = gc.generate(args.family, *args.params)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out.write(gc.write_graph(g))
    return EXIT_OK


def main(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "gen":
            return cmd_gen(args, out)
        cfg = _config(args)
        if cfg.command == "detect":
            return cmd_detect(cfg, out)
        if cfg.command == "curvature-lly":
            return cmd_curvature_lly(cfg, out)
        if cfg.command == "curvature-be":
            return cmd_curvature_be(cfg, out)
        return cmd_verify(cfg, out, err)
    except UsageError as exc:
        err.write(f"ricci-arg: error: {exc}\n")
        return EXIT_USAGE

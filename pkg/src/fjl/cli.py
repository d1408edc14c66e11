"""Command line entry point: ``fjl verify|measure|tree|orbit|render``."""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from fjl import dynamics, render, tree, verify
from fjl.exact import QBox, QPoint, rat

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return rat(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _viewport(text: str) -> QBox:
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("viewport is x_lo,x_hi,y_lo,y_hi")
    return QBox(*(_rational(p) for p in parts))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fjl", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run every check and write a JSON report")
    v.add_argument("--jmax", type=_positive_int, default=32)
    v.add_argument("--lattice", type=_positive_int, default=16)
    v.add_argument("--series-n", type=int, default=64)
    v.add_argument("--report", type=Path, help="write the JSON report here")
    v.add_argument("--quiet", action="store_true", help="print only the summary line")

    m = sub.add_parser("measure", help="measure bounds")
    msub = m.add_subparsers(dest="what", required=True)
    mc = msub.add_parser("complement", help="meas(C minus P) as a double series")
    mc.add_argument("--n", type=int, default=64)
    ml = msub.add_parser("lower-bound", help="certified lower bound for meas(T)")
    ml.add_argument("--depth", type=_positive_int, default=6)
    msub.add_parser("root", help="measure of R^1_{1,1} against the total loss")

    t = sub.add_parser("tree", help="per-level summary of the Cantor tree as JSON lines")
    t.add_argument("--depth", type=_positive_int, default=8)
    t.add_argument("--enumerate", action="store_true",
                   help="cross-check closed forms by explicit enumeration")
    t.add_argument("--cap", type=_positive_int, default=16 ** 4)

    o = sub.add_parser("orbit", help="iterate the model map, JSON line per step")
    o.add_argument("--x", type=_rational, required=True)
    o.add_argument("--y", type=_rational, required=True)
    o.add_argument("--steps", type=int, default=10)

    r = sub.add_parser("render", help="draw figures")
    rsub = r.add_subparsers(dest="figure", required=True)
    ro = rsub.add_parser("overview", help="P squares and Q^3 squares")
    ro.add_argument("--viewport", type=_viewport, default=_viewport("-3,9,-3,5"))
    rz = rsub.add_parser("zoom", help="nested Q and R squares at index j")
    rz.add_argument("--j", type=_positive_int, required=True)
    rz.add_argument("--exaggerate", type=_positive_int, default=1)
    rt = rsub.add_parser("tree", help="depth-d nodes of the Cantor tree")
    rt.add_argument("--depth", type=_positive_int, default=3)
    rt.add_argument("--cap", type=_positive_int, default=16 ** 4)
    for fig in (ro, rz, rt):
        fig.add_argument("--out", type=Path, required=True)
        fig.add_argument("--format", choices=("svg", "ppm"), default=None,
                         help="defaults to the --out suffix, else svg")
        fig.add_argument("--ppu", type=_rational, default=render.DEFAULT_PPU,
                         help="pixels per unit length")
    return p


def _cmd_verify(args) -> int:
    cfg = verify.VerifyConfig(jmax=args.jmax, lattice=args.lattice, series_n=args.series_n)
    reports = verify.run_all(cfg)
    doc = verify.dumps_report(reports)
    if args.report:
        args.report.write_text(doc, encoding="utf-8")
    failed = [r for r in reports if not r.passed]
    if not args.quiet:
        for r in failed:
            print(f"FAIL {r.id}{list(r.params)} margin={r.margin}")
    print(f"{len(reports) - len(failed)} passed, {len(failed)} failed")
    return EXIT_FAIL if failed else EXIT_OK


def _cmd_measure(args) -> int:
    if args.what == "complement":
        res = verify.measure_complement(args.n)
        out = res.to_json()
        out["error"] = str(res.closed_form - res.partial_sum)
    elif args.what == "lower-bound":
        lb = tree.measure_lower_bound(args.depth)
        out = {"depth": args.depth, "lower_bound": str(lb),
               "approx": verify.decimal_str(lb)}
    else:
        root = tree.level_measure(1)
        total = Fraction(1, 512)
        out = {"root_measure": str(root), "total_loss_bound": str(total),
               "gap": str(root - total)}
    print(json.dumps(out))
    return EXIT_OK


def _cmd_tree(args) -> int:
    for j in range(1, args.depth + 1):
        s = tree.level_summary(j)
        line = s.to_json(tree.measure_lower_bound(j))
        if args.enumerate and s.node_count <= args.cap:
            nodes = tree.enumerate_level(j, cap=args.cap)
            line["enumerated_measure"] = str(sum(n.rect.area for n in nodes))
        print(json.dumps(line))
    return EXIT_OK


def _cmd_orbit(args) -> int:
    if args.steps < 0:
        raise UsageError("--steps must be non-negative")
    rec = dynamics.orbit(QPoint(args.x, args.y), args.steps)
    for line in rec.json_lines():
        print(line)
    return EXIT_OK


def _cmd_render(args) -> int:
    if args.figure == "overview":
        scene = render.render_overview(args.viewport, args.ppu)
    elif args.figure == "zoom":
        scene = render.render_q_zoom(args.j, args.exaggerate, args.ppu)
    else:
        scene = render.render_tree(args.depth, args.cap, args.ppu)
    fmt = args.format or ("ppm" if args.out.suffix.lower() == ".ppm" else "svg")
    if fmt == "svg":
        args.out.write_text(render.to_svg(scene, verify.report_precision()), encoding="utf-8")
    else:
        args.out.write_bytes(render.to_ppm(scene))
    print(json.dumps({"out": str(args.out), "shapes": len(scene.shapes), **scene.metadata}))
    return EXIT_OK


COMMANDS = {"verify": _cmd_verify, "measure": _cmd_measure, "tree": _cmd_tree,
            "orbit": _cmd_orbit, "render": _cmd_render}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, tree.TreeCapExceeded, ValueError) as exc:
        print(f"fjl: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface: ``polyrespace <subcommand> [flags]``.

Exit status is 0 on success, 1 on I/O failure and 2 on invalid input or flags.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import curveio
from .curve import length, respace, respace_with_spacing
from .errors import RespacingError
from .iteration import IterationConfig, StopReason, iterate, respace_sequence
from .oracle import GENERATOR_KINDS, GeneratorSpec, generate

PAPER_ROWS = (0, 1, 2, 3, 5, 10, 15)

EXIT_OK = 0
EXIT_IO = 1
EXIT_INVALID = 2


class _InvalidInput(Exception):
    pass


def _read_curve(path):
    data = Path(path).read_bytes()
    try:
        return curveio.read_csv(data)
    except RespacingError as exc:
        raise _InvalidInput(f"{path}: {exc}") from None


def _write(path, text: str):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def cmd_respace(args) -> int:
    if args.iterations < 1:
        raise _InvalidInput("--iterations must be >= 1")
    C = _read_curve(args.input)
    if args.delta is not None:
        if not args.delta > 0:
            raise _InvalidInput("--delta must be positive")
        out = respace_with_spacing(C, args.delta)
        for _ in range(args.iterations - 1):
            out = respace(out)
    else:
        out = C
        for _ in range(args.iterations):
            out = respace(out)
    _write(args.output, curveio.write_csv(out))
    print(f"length before: {curveio.fmt(length(C))}")
    print(f"length after:  {curveio.fmt(length(out))}")
    return EXIT_OK


def cmd_iterate(args) -> int:
    C = _read_curve(args.input)
    try:
        cfg = IterationConfig(
            max_iters=args.max_iters,
            tol_displacement=args.tol_displacement,
            tol_sigma=args.tol_sigma,
        )
    except ValueError as exc:
        raise _InvalidInput(str(exc)) from None
    final, trace = iterate(C, cfg)
    _write(args.output, curveio.write_csv(final))
    if args.trace:
        _write(args.trace, curveio.write_trace_csv(trace))
    print(f"stop reason: {trace.stop_reason}")
    print(f"iterations: {trace.iterations}")
    print(f"length: {curveio.fmt(trace.records[-1].length)}")
    if trace.stop_reason is StopReason.MAX_ITERS:
        print(
            f"warning: stopped after {cfg.max_iters} iterations before reaching the "
            "displacement tolerance",
            file=sys.stderr,
        )
    return EXIT_OK


def _cell(x, width=12):
    return ("-" if x is None else f"{x:.6f}").rjust(width)


def cmd_stats(args) -> int:
    if args.iterations < 0:
        raise _InvalidInput("--iterations must be >= 0")
    C = _read_curve(args.input)
    trace = respace_sequence(C, args.iterations)
    rows = range(args.iterations + 1) if args.all else [n for n in PAPER_ROWS if n <= args.iterations]
    ratios = trace.sigma_ratios()
    print("n".rjust(4) + "".join(h.rjust(12) for h in ("sigma", "sigma_ratio", "max", "min")))
    for n in rows:
        rec = trace[n]
        st = rec.stats
        print(str(n).rjust(4) + _cell(st.sigma) + _cell(ratios[n]) + _cell(st.max) + _cell(st.min))
    if args.csv:
        _write(args.csv, curveio.write_trace_csv(trace, rows))
    return EXIT_OK


_GEN_FLAGS = {
    "random-walk": ("vertices", "step"),
    "regular-polygon": ("k", "side"),
    "isosceles": ("apex_angle", "leg"),
    "parallelogram": ("side_a", "side_b", "angle"),
    "collinear": ("n_steps",),
    "noisy-blob": ("points", "noise_amplitude"),
}


def cmd_generate(args) -> int:
    params = {name: getattr(args, name) for name in _GEN_FLAGS[args.kind] if getattr(args, name) is not None}
    spec = GeneratorSpec(args.kind, params, seed=args.seed, dim=args.dim)
    try:
        C = generate(spec)
    except RespacingError as exc:
        raise _InvalidInput(str(exc)) from None
    _write(args.output, curveio.write_csv(C))
    print(f"points: {len(C)}")
    print(f"length: {curveio.fmt(length(C))}")
    return EXIT_OK


def _parse_axes(text):
    try:
        i, j = (int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected two comma-separated axis indices, e.g. 0,2") from None
    return i, j


def cmd_render(args) -> int:
    curves = [_read_curve(p) for p in args.inputs]
    colors = args.colors.split(",") if args.colors else []
    items = []
    for i, C in enumerate(curves):
        style = curveio.default_style(i)
        if i < len(colors) and colors[i]:
            style = curveio.SvgStyle(stroke=colors[i])
        items.append((C, style))
    opts = curveio.RenderOptions(
        width=args.width,
        vertex_radius=args.vertex_radius,
        project=args.project,
        layout="overlay" if args.overlay else "row",
    )
    try:
        svg = curveio.render_svg(items, opts)
    except RespacingError as exc:
        raise _InvalidInput(str(exc)) from None
    _write(args.output, svg)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polyrespace", description="Arclength respacing of polygonal curves.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("respace", help="respace a curve a fixed number of times")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--iterations", type=int, default=1)
    p.add_argument("--delta", type=float, default=None, help="target spacing; changes the vertex count")
    p.set_defaults(func=cmd_respace)

    p = sub.add_parser("iterate", help="respace until convergence")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--trace", default=None, help="write the per-iteration table here")
    p.add_argument("--max-iters", type=int, default=1000)
    p.add_argument("--tol-displacement", type=float, default=1e-12)
    p.add_argument("--tol-sigma", type=float, default=0.0)
    p.set_defaults(func=cmd_iterate)

    p = sub.add_parser("stats", help="print spacing statistics per iteration")
    p.add_argument("input")
    p.add_argument("--iterations", type=int, default=15)
    p.add_argument("--all", action="store_true", help="print every iteration, not only 0,1,2,3,5,10,15")
    p.add_argument("--csv", default=None)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("generate", help="write a synthetic curve")
    p.add_argument("output")
    p.add_argument("--kind", required=True, choices=GENERATOR_KINDS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--vertices", type=int)
    p.add_argument("--step", type=float)
    p.add_argument("--k", type=int)
    p.add_argument("--side", type=float)
    p.add_argument("--apex", dest="apex_angle", type=float)
    p.add_argument("--leg", type=float)
    p.add_argument("--side-a", type=float)
    p.add_argument("--side-b", type=float)
    p.add_argument("--angle", type=float)
    p.add_argument("--n", dest="n_steps", type=int)
    p.add_argument("--points", type=int)
    p.add_argument("--noise", dest="noise_amplitude", type=float)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("render", help="draw curves as SVG")
    p.add_argument("inputs", nargs="+")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--colors", default=None, help="comma-separated stroke colours, one per input")
    p.add_argument("--project", type=_parse_axes, default=None, help="two axes to draw, e.g. 0,1")
    p.add_argument("--overlay", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--width", type=float, default=600.0)
    p.add_argument("--vertex-radius", type=float, default=3.0)
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _InvalidInput as exc:
        print(f"polyrespace: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"polyrespace: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

"""Command line front end: eval, check, render and animate figure documents.

Exit codes: 0 success, 1 usage or parse error, 2 empty solutions or failed
assertions.
"""
import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from . import document
from .cycle import num_normalize
from .figure import GHOST_GEN, Figure, FigureError
from .relations import RelationKind
from .render import Viewport, animate, render_svg
from .tolerance import epsilon as epsilon_context
from .tolerance import get_epsilon

EXIT_OK, EXIT_ERROR, EXIT_FAIL = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def fmt_number(z, eps=None) -> str:
    eps = get_epsilon() if eps is None else eps
    z = complex(z)
    re_, im = z.real, z.imag
    if abs(re_) < eps:
        re_ = 0.0
    s = "%.12g" % (re_ + 0.0)
    if abs(im) >= eps:
        s = "%s%+.12gj" % (s, im)
    return s


RESIDUAL_FLOOR = 1e-12


def fmt_residual(x) -> str:
    """Residuals at rounding level print as a bound, which keeps reports stable across platforms."""
    return "<%.0e" % RESIDUAL_FLOOR if x < RESIDUAL_FLOOR else "%.3g" % x


def fmt_cycle(C) -> str:
    C = num_normalize(C)
    return "(%s, [%s], %s)" % (fmt_number(C.k), ", ".join(fmt_number(x) for x in C.l), fmt_number(C.m))


def parent_summary(nd) -> str:
    if nd.is_subfigure():
        return "%s(%s)" % (nd.parents.name or "subfigure", ",".join(nd.parents.inputs))
    if nd.point is not None and nd.parents:
        return "point"
    if not nd.parents:
        return "given" if nd.generation >= 0 else "predefined"
    parts = []
    for r in nd.parents:
        s = "%s|%s" % (r.parent, r.kind.value)
        if r.parameter is not None and r.kind not in (RelationKind.MOEBIUS, RelationKind.SL2, RelationKind.ONLY_REALS):
            s += "(%s)" % (r.parameter if not isinstance(r.parameter, (int, float)) else "%.12g" % r.parameter)
        if not r.use_cycle_metric:
            s += "|pm"
        parts.append(s)
    return ",".join(parts)


def eval_table(F: Figure) -> str:
    lines = []
    with epsilon_context(F.epsilon):
        for key, nd in F.nodes.items():
            if nd.generation == GHOST_GEN:
                continue
            cycles = "{%s}" % "; ".join(fmt_cycle(C) for C in nd.cycles)
            lines.append("%s\t%d\t%s\t%s" % (key, nd.generation, cycles, parent_summary(nd)))
    return "\n".join(lines) + "\n"


def _match(values, expected):
    """Largest deviation between measured and expected values.

    A bare number is met by the nearest measured value.  A list holds one
    expected value (a number or an [re, im] pair) per measured value and is
    paired one to one, in any order.
    """
    if not values:
        return float("inf")
    if not isinstance(expected, list):
        return min(abs(v - complex(expected)) for v in values)
    if len(values) != len(expected):
        return float("inf")
    vals = list(values)
    worst = 0.0
    for e in expected:
        e = complex(e[0], e[1]) if isinstance(e, list) else complex(e)
        i = int(np.argmin([abs(v - e) for v in vals]))
        worst = max(worst, abs(vals.pop(i) - e))
    return worst


def run_assertions(F: Figure):
    """List of (passed, description, residual)."""
    eps = F.epsilon if F.epsilon is not None else get_epsilon()
    out = []
    for a in F.assertions:
        tol = float(a.get("tol", eps * 1e3))
        cm = a.get("cycle_metric", True)
        try:
            if "check" in a:
                kind = a["check"]
                vals = F.check_rel(a["a"], a["b"], kind, cm)
                res = max((abs(v) for v in vals), default=float("inf"))
                desc = "check %s(%s, %s)" % (kind, a["a"], a["b"])
            else:
                kind = a["measure"]
                vals = F.measure(a["a"], a["b"], kind, cm)
                res = _match(vals, a["expect"])
                desc = "measure %s(%s, %s) = {%s} expect %s" % (
                    kind, a["a"], a["b"], ", ".join(fmt_number(v) for v in vals), a["expect"])
        except ValueError as exc:
            out.append((False, "%s(%s, %s): %s" % (a.get("check", a.get("measure")), a["a"], a["b"], exc),
                        float("inf")))
            continue
        out.append((res < tol, desc, res))
    return out


def _load(name) -> Figure:
    p = Path(name)
    if not p.exists():
        shipped = document.shipped(name)
        if shipped.exists():
            p = shipped
        else:
            raise FigureError("no such document: %s" % name)
    return document.load(p)


def cmd_eval(args):
    F = _load(args.document)
    sys.stdout.write(eval_table(F))
    empty = F.empty_nodes()
    if empty:
        print("empty solutions: %s" % ", ".join(empty), file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_check(args):
    F = _load(args.document)
    if not F.assertions:
        raise FigureError("document has no assertions")
    results = run_assertions(F)
    for ok, desc, res in results:
        print("%s %s residual %s" % ("PASS" if ok else "FAIL", desc, fmt_residual(res)))
    failed = sum(not ok for ok, _, _ in results)
    print("%d passed, %d failed" % (len(results) - failed, failed))
    return EXIT_FAIL if failed else EXIT_OK


def _viewport(args):
    xmin, xmax, ymin, ymax = args.viewport
    return Viewport(xmin, xmax, ymin, ymax, args.size, args.grid)


def cmd_render(args):
    F = _load(args.document)
    svg = render_svg(F, _viewport(args), not args.no_real_line)
    Path(args.output).write_text(svg)
    return EXIT_OK


def cmd_animate(args):
    F = _load(args.document)
    if args.frames < 1:
        raise UsageError("--frames shall be positive")
    values = np.linspace(args.start, args.stop, args.frames) if args.frames > 1 else [args.start]
    frames = animate(F, args.param, values, _viewport(args), not args.no_real_line)
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    for i, svg in enumerate(frames):
        (out / ("frame_%03d.svg" % i)).write_text(svg)
    return EXIT_OK


def build_parser():
    p = _Parser(prog="cyclefig", description="Evaluate, check and draw figures of cycles.")
    p.add_argument("-v", "--verbose", action="store_true", help="log solver warnings")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("eval", help="print every node with its solved cycles")
    e.add_argument("document")
    e.set_defaults(func=cmd_eval)

    c = sub.add_parser("check", help="run the assertions of a document")
    c.add_argument("document")
    c.set_defaults(func=cmd_check)

    for name, func in (("render", cmd_render), ("animate", cmd_animate)):
        r = sub.add_parser(name, help="draw to SVG" if name == "render" else "draw one SVG per parameter value")
        r.add_argument("document")
        r.add_argument("-o", "--output", required=True)
        r.add_argument("--viewport", nargs=4, type=float, default=[-3.0, 3.0, -3.0, 3.0],
                       metavar=("XMIN", "XMAX", "YMIN", "YMAX"))
        r.add_argument("--size", type=int, default=300)
        r.add_argument("--grid", type=int, default=256)
        r.add_argument("--no-real-line", action="store_true")
        if name == "animate":
            r.add_argument("--param", required=True)
            r.add_argument("--from", dest="start", type=float, required=True)
            r.add_argument("--to", dest="stop", type=float, required=True)
            r.add_argument("--frames", type=int, required=True)
        r.set_defaults(func=func)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print("cyclefig: %s" % exc, file=sys.stderr)
        return EXIT_ERROR
    logging.basicConfig(level=logging.WARNING if args.verbose else logging.ERROR, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (UsageError, FigureError, ValueError, OSError) as exc:
        print("cyclefig: %s" % exc, file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

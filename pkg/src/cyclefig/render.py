"""SVG rendering of two-dimensional figures.

Each cycle is drawn by tracing the zero set of its quadric over a regular
grid (marching squares with linear interpolation along cell edges), so
circles, lines, hyperbolas and parabolas are handled alike.  Zero-radius
cycles are drawn as dots at their centres.
"""
import copy
import re
from dataclasses import dataclass
from typing import List, Optional
from xml.sax.saxutils import escape, quoteattr

import numpy as np

from .cycle import Cycle, center, cycle_product, num_normalize
from .figure import GHOST_GEN, INFINITY, REAL_LINE, Figure, FigureError
from .tolerance import is_less_than_epsilon

POINT_COLOR = "rgb(128,0,0)"
LINE_COLOR = "rgb(0,128,0)"
CONIC_COLOR = "rgb(0,0,128)"


@dataclass(frozen=True)
class Viewport:
    xmin: float = -3.0
    xmax: float = 3.0
    ymin: float = -3.0
    ymax: float = 3.0
    size_px: int = 300
    grid_resolution: int = 256

    def __post_init__(self):
        if not (self.xmin < self.xmax and self.ymin < self.ymax):
            raise ValueError("viewport needs xmin < xmax and ymin < ymax")
        if self.size_px <= 0:
            raise ValueError("size_px shall be positive")
        if self.grid_resolution < 32:
            raise ValueError("grid_resolution shall be at least 32")

    @property
    def width(self) -> int:
        return self.size_px

    @property
    def height(self) -> int:
        return max(1, int(round(self.size_px * (self.ymax - self.ymin) / (self.xmax - self.xmin))))

    def cell(self):
        return ((self.xmax - self.xmin) / self.grid_resolution, (self.ymax - self.ymin) / self.grid_resolution)

    def to_px(self, x, y):
        px = (x - self.xmin) / (self.xmax - self.xmin) * self.width
        py = (self.ymax - y) / (self.ymax - self.ymin) * self.height
        return px, py

    def contains(self, x, y) -> bool:
        return self.xmin <= x <= self.xmax and self.ymin <= y <= self.ymax


def quadric_values(C: Cycle, metric, X, Y):
    """Q on arrays of coordinates (real part, for a real cycle)."""
    s = np.asarray(metric.sigma, dtype=float)
    k, l, m = C.k.real, C.l.real, C.m.real
    return (-k * s[0] * X * X - 2 * l[0] * X + m) + (-k * s[1] * Y * Y - 2 * l[1] * Y)


# marching squares

def contour_paths(C: Cycle, metric, v: Viewport) -> List[List[tuple]]:
    """Polylines (lists of (x, y)) approximating Q = 0 inside the viewport."""
    n = v.grid_resolution
    xs = np.linspace(v.xmin, v.xmax, n + 1)
    ys = np.linspace(v.ymin, v.ymax, n + 1)
    Q = quadric_values(num_normalize(C), metric, xs[:, None], ys[None, :])
    pos = Q > 0
    # corners of cell (i, j): 0 = (i, j), 1 = (i+1, j), 2 = (i+1, j+1), 3 = (i, j+1)
    code = (pos[:-1, :-1].astype(int) | (pos[1:, :-1] << 1) | (pos[1:, 1:] << 2) | (pos[:-1, 1:] << 3))
    cells = np.argwhere((code != 0) & (code != 15))

    def point_on(edge):
        kind, i, j = edge
        if kind == "h":  # between (i, j) and (i+1, j)
            q0, q1 = Q[i, j], Q[i + 1, j]
            t = q0 / (q0 - q1)
            return (xs[i] + t * (xs[i + 1] - xs[i]), ys[j])
        q0, q1 = Q[i, j], Q[i, j + 1]
        t = q0 / (q0 - q1)
        return (xs[i], ys[j] + t * (ys[j + 1] - ys[j]))

    links = {}

    def link(a, b):
        links.setdefault(a, []).append(b)
        links.setdefault(b, []).append(a)

    for i, j in cells:
        i, j = int(i), int(j)
        c = int(code[i, j])
        e = [("h", i, j), ("v", i + 1, j), ("h", i, j + 1), ("v", i, j)]  # bottom, right, top, left
        crossing = [e[t] for t, (a, b) in enumerate(((0, 1), (1, 2), (2, 3), (3, 0)))
                    if ((c >> a) & 1) != ((c >> b) & 1)]
        if len(crossing) == 2:
            link(crossing[0], crossing[1])
        else:
            # saddle: decide by the value at the cell centre
            mid = Q[i:i + 2, j:j + 2].mean() > 0
            if mid == bool(c & 1):
                link(e[0], e[1])
                link(e[2], e[3])
            else:
                link(e[3], e[0])
                link(e[1], e[2])

    paths, seen = [], set()
    order = sorted(links)
    # open chains start at ends (degree 1), then the remaining closed loops
    starts = [a for a in order if len(links[a]) == 1] + order
    for s in starts:
        if s in seen:
            continue
        chain = [s]
        seen.add(s)
        prev, cur = None, s
        while True:
            nxt = [b for b in links[cur] if b != prev and b not in seen]
            if not nxt:
                if len(chain) > 2 and s in links[cur] and prev is not None:
                    chain.append(s)
                break
            prev, cur = cur, nxt[0]
            seen.add(cur)
            chain.append(cur)
        if len(chain) > 1:
            paths.append([point_on(p) for p in chain])
    return paths


# styles

_RGB = re.compile(r"rgb\(\s*([-\d.]+)\s*,\s*([-\d.]+)\s*,\s*([-\d.]+)\s*\)")


def parse_style(style: str, default_color: str):
    """Stroke colour, width and dash pattern from a style like "rgb(0,0,.8)+1" or "dashed"."""
    color, width, dash = default_color, 1.0, None
    for token in (t.strip() for t in (style or "").split("+")):
        if not token or token == "~":
            continue
        m = _RGB.fullmatch(token)
        if m:
            rgb = [min(255, max(0, int(round(float(x) * 255)))) for x in m.groups()]
            color = "rgb(%d,%d,%d)" % tuple(rgb)
        elif token in ("dashed", "dotted"):
            dash = "6,4" if token == "dashed" else "1,3"
        else:
            try:
                width = float(token)
            except ValueError:
                pass
    return color, width, dash


def classify(C: Cycle, point_metric) -> str:
    Cn = num_normalize(C)
    if is_less_than_epsilon(Cn.k):
        return "line"
    if is_less_than_epsilon(cycle_product(Cn, Cn, point_metric)):
        return "point"
    return "conic"


# documents

def _f(x):
    return "%.2f" % x


def render_svg(F: Figure, v: Optional[Viewport] = None, include_real_line=True, stamp=None) -> str:
    if F.dim != 2:
        raise FigureError("drawing is possible for two-dimensional figures only")
    v = Viewport() if v is None else v
    pm = F.point_metric
    cell = v.cell()
    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="%d" height="%d" viewBox="0 0 %d %d">'
           % (v.width, v.height, v.width, v.height),
           '<rect x="0" y="0" width="%d" height="%d" fill="white"/>' % (v.width, v.height)]
    for key, nd in F.nodes.items():
        if nd.generation == GHOST_GEN or key == INFINITY:
            continue
        if key == REAL_LINE and not include_real_line:
            continue
        multi = len(nd.cycles) > 1
        text = nd.label if nd.label is not None else key
        for i, C in enumerate(nd.cycles):
            ident = "%s#%d" % (key, i) if multi else key
            if not C.is_real():
                out.append("<!-- %s: imaginary cycle skipped -->" % escape(ident).replace("--", "- -"))
                continue
            kind = classify(C, pm)
            default = {"point": POINT_COLOR, "line": LINE_COLOR, "conic": CONIC_COLOR}[kind]
            color, width, dash = parse_style(nd.style, default)
            if kind == "point":
                x, y = (float(t.real) for t in center(C, pm))
                if not v.contains(x, y):
                    continue
                px, py = v.to_px(x, y)
                out.append('<circle id=%s cx="%s" cy="%s" r="2" fill="%s"/>' % (quoteattr(ident), _f(px), _f(py), color))
                anchor = (x, y)
            else:
                paths = contour_paths(C, pm, v)
                if not paths:
                    continue
                d = []
                for p in paths:
                    pts = [v.to_px(x, y) for x, y in p]
                    closed = len(p) > 2 and p[0] == p[-1]
                    if closed:
                        pts = pts[:-1]
                    d.append("M" + " L".join("%s %s" % (_f(a), _f(b)) for a, b in pts) + (" Z" if closed else ""))
                attrs = 'fill="none" stroke="%s" stroke-width="%s"' % (color, "%g" % width)
                if dash:
                    attrs += ' stroke-dasharray="%s"' % dash
                out.append('<path id=%s d="%s" %s/>' % (quoteattr(ident), " ".join(d), attrs))
                anchor = paths[0][0]
            if key != REAL_LINE:
                lx, ly = v.to_px(anchor[0] + cell[0], anchor[1] - cell[1])
                out.append('<text x="%s" y="%s" font-size="10" fill="%s">%s</text>'
                           % (_f(lx), _f(ly), color, escape(text)))
    if stamp:
        out.append('<text x="4" y="%d" font-size="10" fill="black">%s</text>' % (v.height - 4, escape(stamp)))
    out.append("</svg>")
    return "\n".join(out) + "\n"


def animate(F: Figure, param: str, values, v: Optional[Viewport] = None, include_real_line=True) -> List[str]:
    """One frame per value of the parameter, stamped "name=value" in the bottom-left corner."""
    if param not in F.parameters:
        raise FigureError("unknown parameter %r" % param)
    G = copy.deepcopy(F)
    G.frozen = False
    frames = []
    for val in values:
        G.set_parameter(param, val)
        frames.append(render_svg(G, v, include_real_line, stamp="%s=%.6g" % (param, val)))
    return frames

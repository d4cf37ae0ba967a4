import re

import numpy as np
import pytest

from cyclefig import Cycle, Metric, is_zero_radius, new_figure
from cyclefig import document
from cyclefig import relations as r
from cyclefig.figure import FigureError
from cyclefig.render import Viewport, animate, classify, contour_paths, parse_style, quadric_values, render_svg

E2 = Metric.elliptic(2)
H2 = Metric.hyperbolic()


def fidelity(C, metric, v):
    """Largest |Q| on path vertices relative to the allowed 4 * cell * |grad Q| bound."""
    paths = contour_paths(C, metric, v)
    s = np.array(metric.sigma, dtype=float)
    k, l = C.k.real, C.l.real
    h = max(v.cell())
    worst = 0.0
    for p in paths:
        for x, y in p:
            q = quadric_values(C, metric, np.array(x), np.array(y))
            # |grad Q| maximised over the surrounding cell
            corners = [(x + a, y + b) for a in (-h, h) for b in (-h, h)]
            grad = max(np.hypot(-2 * k * s[0] * cx - 2 * l[0], -2 * k * s[1] * cy - 2 * l[1]) for cx, cy in corners)
            worst = max(worst, abs(q) / (4 * h * grad))
    return paths, worst


def test_unit_circle_is_one_closed_path():
    v = Viewport(-2, 2, -2, 2, 300, 256)
    paths, worst = fidelity(Cycle(1, [0, 0], -1), E2, v)
    assert len(paths) == 1 and paths[0][0] == paths[0][-1]
    assert worst <= 1


def test_hyperbola_is_two_open_paths():
    C = Cycle(1, [0, 0], -1)
    v = Viewport(-3, 3, -3, 3, 300, 256)
    paths, worst = fidelity(C, H2, v)
    assert len(paths) == 2 and all(p[0] != p[-1] for p in paths)
    assert worst <= 1
    # the drawn curve is the zero set of value_at
    from cyclefig import value_at
    for p in paths:
        for x, y in p[::20]:
            assert abs(value_at(C, [x, y], H2)) < 0.1


@pytest.mark.parametrize("seed", range(20))
def test_contour_fidelity_random(seed):
    rng = np.random.default_rng(seed)
    metric = E2 if seed % 2 else H2
    C = Cycle(rng.uniform(-1, 1), rng.uniform(-1, 1, 2), rng.uniform(-2, 2))
    _, worst = fidelity(C, metric, Viewport(-3, 3, -3, 3, 200, 64 + 16 * seed))
    assert worst <= 1


def test_empty_figure():
    svg = render_svg(new_figure())
    assert svg.count("<path") == 1 and 'id="R"' in svg
    assert "<circle" not in svg
    svg = render_svg(new_figure(), include_real_line=False)
    assert "<path" not in svg


def test_hello_cycle_elements():
    F = document.load(document.shipped("hello_cycle"))
    svg = render_svg(F, Viewport(-3, 3, -3, 3, 300, 256))
    assert svg.count("<circle") == 2 and svg.count("<path") == 2
    assert re.search(r'<circle id="A"', svg) and re.search(r'<path id="a"', svg)
    svg = render_svg(F, Viewport(-3, 3, -3, 3, 300, 256), include_real_line=False)
    assert 'id="R"' not in svg


def test_dots_exactly_for_zero_radius():
    F = document.load(document.shipped("nine_points"))
    svg = render_svg(F, Viewport(-3, 3, -4, 2, 300, 128))
    dots = set(re.findall(r'<circle id="([^"]+)"', svg))
    v = Viewport(-3, 3, -4, 2, 300, 128)
    expected = set()
    for k in F.get_all_keys(-1):
        cyc = F.get_cycle(k)
        for i, C in enumerate(cyc):
            ident = "%s#%d" % (k, i) if len(cyc) > 1 else k
            if C.is_real() and abs(C.k) > 1e-9 and is_zero_radius(C, F.point_metric):
                x, y = (C.l / C.k).real
                if v.contains(x, y):
                    expected.add(ident)
    assert dots == expected and dots


def test_multi_valued_ids_and_imaginary_comment():
    F = new_figure()
    F.add_cycle(Cycle(1, [0, 0], -1), "u")
    F.add_cycle_rel([r.tangent("u"), r.orthogonal("R"), r.orthogonal(F.infinity)], "t")
    svg = render_svg(F)
    assert 'id="t#0"' in svg and 'id="t#1"' in svg
    G = new_figure()
    G.add_cycle(Cycle(1, [0, 1j], -1), "w")
    assert "imaginary cycle skipped" in render_svg(G)


def test_determinism():
    F = document.load(document.shipped("nine_points_hyperbolic"))
    v = Viewport(-3, 3, -4, 2, 300, 128)
    assert render_svg(F, v) == render_svg(F, v)


def test_styles():
    assert parse_style("rgb(0,0,.8)+1", "x") == ("rgb(0,0,204)", 1.0, None)
    assert parse_style("dashed", "rgb(1,2,3)") == ("rgb(1,2,3)", 1.0, "6,4")
    assert parse_style("", "c") == ("c", 1.0, None)
    assert classify(Cycle(0, [1, 0], 2), E2) == "line"
    assert classify(Cycle(1, [1, 1], 2), E2) == "point"
    assert classify(Cycle(1, [0, 0], -1), E2) == "conic"


def test_viewport_and_dimension_errors():
    with pytest.raises(ValueError):
        Viewport(1, 0, 0, 1)
    with pytest.raises(ValueError):
        Viewport(0, 1, 0, 1, 100, 16)
    with pytest.raises(ValueError):
        Viewport(0, 1, 0, 1, 0)
    with pytest.raises(FigureError):
        render_svg(new_figure([-1, -1, -1]))


def test_animation_frames():
    F = document.load(document.shipped("lobachevsky_anim"))
    v = Viewport(-3, 3, -3, 3, 200, 64)
    values = [(i + 2) / 30 for i in range(40)]
    frames = animate(F, "t", values, v)
    assert len(frames) == 40 and "t=0.0666667" in frames[0]
    single = animate(F, "t", [0.5], v)[0]
    G = F.copy()
    G.frozen = False
    G.set_parameter("t", 0.5)
    assert single == render_svg(G, v, stamp="t=0.5")
    with pytest.raises(FigureError):
        animate(F, "nope", [1], v)


def test_animation_through_degenerate_tangency():
    # a circle tangent to a moving line: solutions disappear once the line leaves it
    F = new_figure()
    F.parameters["s"] = 0.0
    F.add_cycle(Cycle(1, [0, 0], -1), "u")
    from cyclefig.figure import Param
    F.add_cycle((0, [0, 1], Param("s", 2.0, 0.0)), "line")
    F.add_cycle_rel([r.tangent("u"), r.tangent("line"), r.orthogonal("R"), r.only_reals("t")], "t")
    frames = animate(F, "s", np.linspace(0.5, 1.5, 5), Viewport(-3, 3, -3, 3, 100, 64))
    assert len(frames) == 5 and all(f.endswith("</svg>\n") for f in frames)

"""The nine-point circle, built from orthogonality alone.

Sides, altitudes and midpoints are all expressed through orthogonality
to a reference point N.  With N at infinity this is the Euclidean
picture; moving N to a finite point, or switching the metric to the
hyperbolic one, keeps every incidence and tangency of the theorem.
"""
from pathlib import Path

from cyclefig import Cycle, midpoint_constructor, new_figure
from cyclefig import relations as r
from cyclefig.render import Viewport, render_svg

OUT = Path(__file__).parent / "out"
o = r.orthogonal


def build(A=(-1, 0), B=(1, 0), C=(-0.2, -1.5), point_metric=(-1, -1), N=None):
    F = new_figure(list(point_metric))
    F.add_point(list(A), "A")
    F.add_point(list(B), "B")
    F.add_point(list(C), "C")
    if N is None:
        F.add_cycle(Cycle(0, [0, 0], 1), "N")  # the point at infinity
    else:
        F.add_point(list(N), "N")

    # sides through two vertices and N
    F.add_cycle_rel([o("B"), o("C"), o("N")], "a")
    F.add_cycle_rel([o("A"), o("C"), o("N")], "b")
    F.add_cycle_rel([o("A"), o("B"), o("N")], "c")
    # altitudes: through a vertex and N, orthogonal to the opposite side
    F.add_cycle_rel([o("A"), o("N"), o("a")], "h_a")
    F.add_cycle_rel([o("B"), o("N"), o("b")], "h_b")
    F.add_cycle_rel([o("C"), o("N"), o("c")], "h_c")
    # feet of the altitudes: self-orthogonal cycles on a side and its altitude, other than N
    F.add_cycle_rel([o("a"), o("h_a"), o("A_h"), r.adifferent("N")], "A_h")
    F.add_cycle_rel([o("b"), o("h_b"), r.adifferent("N"), o("B_h")], "B_h")
    F.add_cycle_rel([r.adifferent("N"), o("c"), o("h_c"), o("C_h")], "C_h")
    F.add_cycle_rel([o("A_h"), o("B_h"), o("C_h")], "p")

    midpoint = midpoint_constructor()
    F.add_subfigure(midpoint, ["B", "C", "N"], "A_m")
    F.add_subfigure(midpoint, ["C", "A", "N"], "B_m")
    F.add_subfigure(midpoint, ["A", "B", "N"], "C_m")
    # orthocentre, then midpoints between it and the vertices
    F.add_cycle_rel([o("h_a"), o("h_b"), o("O"), r.adifferent("N")], "O")
    F.add_subfigure(midpoint, ["O", "A", "N"], "A_d")
    F.add_subfigure(midpoint, ["B", "O", "N"], "B_d")
    F.add_subfigure(midpoint, ["C", "O", "N"], "C_d")
    # excircles touch one side from outside and the other two from inside
    F.add_cycle_rel([r.tangent_o("a"), r.tangent_i("b"), r.tangent_i("c")], "v_a")
    F.add_cycle_rel([r.tangent_i("a"), r.tangent_o("b"), r.tangent_i("c")], "v_b")
    F.add_cycle_rel([r.tangent_i("a"), r.tangent_i("b"), r.tangent_o("c")], "v_c")

    for k in "abc":
        F.set_style(k, "rgb(0,0,.8)+1")
        F.set_style("h_" + k, "dashed")
        F.set_style("v_" + k, "rgb(0.8,0,0)+.5")
    F.set_style("p", "rgb(0,.8,0)+1")
    return F


def report(F, title):
    inc = [abs(x) for k in ("A_m", "B_m", "C_m", "A_d", "B_d", "C_d") for x in F.check_rel("p", k)]
    tan = [abs(x) for k in ("v_a", "v_b", "v_c") for x in F.check_rel("p", k, "tangent")]
    print("%-28s largest incidence residual %.2e, largest tangency residual %.2e" % (title, max(inc), max(tan)))


if __name__ == "__main__":
    OUT.mkdir(exist_ok=True)
    F = build()
    report(F, "N at infinity:")
    F.move_point("N", [0.5, -2.5])
    report(F, "N at (1/2, -5/2):")
    (OUT / "nine_points.svg").write_text(render_svg(F, Viewport(-3, 3, -4, 2)))
    F.set_metric([-1, 1])
    report(F, "hyperbolic metric:")
    (OUT / "nine_points_hyperbolic.svg").write_text(render_svg(F, Viewport(-3, 3, -4, 2)))

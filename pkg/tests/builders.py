"""Figures built through the Python API, shared by several test modules."""
from cyclefig import Cycle, from_center_radius_sq, midpoint_constructor, new_figure
from cyclefig import relations as r

o = r.orthogonal


def nine_points(A=(-1, 0), B=(1, 0), C=(-0.2, -1.5), pm=(-1, -1), N=None, mode="signed"):
    """Nine-point construction; N=None puts the reference point at infinity."""
    F = new_figure(list(pm), tangent_mode=mode)
    F.add_point(list(A), "A")
    F.add_point(list(B), "B")
    F.add_point(list(C), "C")
    if N is None:
        F.add_cycle(Cycle(0, [0, 0], 1), "N")
    else:
        F.add_point(list(N), "N")
    F.add_cycle_rel([o("B"), o("C"), o("N")], "a")
    F.add_cycle_rel([o("A"), o("C"), o("N")], "b")
    F.add_cycle_rel([o("A"), o("B"), o("N")], "c")
    F.add_cycle_rel([o("A"), o("N"), o("a")], "h_a")
    F.add_cycle_rel([o("B"), o("N"), o("b")], "h_b")
    F.add_cycle_rel([o("C"), o("N"), o("c")], "h_c")
    F.add_cycle_rel([o("a"), o("h_a"), o("A_h"), r.adifferent("N")], "A_h")
    F.add_cycle_rel([o("b"), o("h_b"), r.adifferent("N"), o("B_h")], "B_h")
    F.add_cycle_rel([r.adifferent("N"), o("c"), o("h_c"), o("C_h")], "C_h")
    F.add_cycle_rel([o("A_h"), o("B_h"), o("C_h")], "p")
    SF = midpoint_constructor()
    F.add_subfigure(SF, ["B", "C", "N"], "A_m")
    F.add_subfigure(SF, ["C", "A", "N"], "B_m")
    F.add_subfigure(SF, ["A", "B", "N"], "C_m")
    F.add_cycle_rel([o("h_a"), o("h_b"), o("O"), r.adifferent("N")], "O")
    F.add_subfigure(SF, ["O", "A", "N"], "A_d")
    F.add_subfigure(SF, ["B", "O", "N"], "B_d")
    F.add_subfigure(SF, ["C", "O", "N"], "C_d")
    F.add_cycle_rel([r.tangent_o("a"), r.tangent_i("b"), r.tangent_i("c")], "v_a")
    F.add_cycle_rel([r.tangent_i("a"), r.tangent_o("b"), r.tangent_i("c")], "v_b")
    F.add_cycle_rel([r.tangent_i("a"), r.tangent_i("b"), r.tangent_o("c")], "v_c")
    return F


INCIDENT = ("A_m", "B_m", "C_m", "A_d", "B_d", "C_d")
TANGENT = ("v_a", "v_b", "v_c")


def nine_point_residuals(F):
    inc = [abs(x) for k in INCIDENT for x in F.check_rel("p", k)]
    tan = [abs(x) for k in TANGENT for x in F.check_rel("p", k, "tangent")]
    return inc, tan


def modular_group(steps=3, shifts=3):
    F = new_figure()
    F.add_cycle(from_center_radius_sq([0, 1.5], 0.25, F.point_metric), "a")
    F.add_cycle(from_center_radius_sq([0, 11 / 6], 1 / 36, F.point_metric), "c")
    for i in range(steps):
        for k in F.get_all_keys(2 * i, 2 * i):
            for t in range(-shifts, shifts + 1):
                if t != 0 or i == 0:
                    F.add_cycle_rel([r.moebius(k, (1, {"vector": [t, 0]}, 0, 1))], "%s.t%d" % (k, t))
        for k in F.get_all_keys(2 * i + 1, 2 * i + 1):
            F.add_cycle_rel([r.sl2(k, 0, -1, 1, 0)], "%s.s" % k)
    return F

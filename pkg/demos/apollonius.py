"""Spheres tangent to four given spheres.

Four spheres of radius sqrt(3)/2 sit at alternate vertices of a cube.
Every tangency splits into inner and outer touch, so the search space
has many branches; filtering by real coefficients and a real radius
leaves the genuine solutions, among them the two spheres centred at the
origin with radii sqrt(3) +- sqrt(3)/2.
"""
from cyclefig import from_center_radius_sq, new_figure
from cyclefig import relations as r

CENTRES = [(1, 1, 1), (-1, -1, 1), (1, -1, -1), (-1, 1, -1)]


def build(tangent_mode="signed"):
    F = new_figure([-1, -1, -1], tangent_mode=tangent_mode)
    for i, c in enumerate(CENTRES):
        F.add_cycle(from_center_radius_sq(c, 0.75, F.point_metric), "P%d" % (i + 1))
    touch = [r.tangent("P%d" % i) for i in range(1, 5)]
    F.add_cycle_rel(touch, "N3")
    F.add_cycle_rel(touch + [r.only_reals("N4"), r.real_cycle("N4")], "N4")
    return F


if __name__ == "__main__":
    for mode in ("signed", "abs"):
        F = build(mode)
        print("%-6s tangency: %d solutions, %d after filtering" % (mode, len(F.get_cycle("N3")),
                                                                 len(F.get_cycle("N4"))))
    for S in F.get_cycle("N4"):
        c = (S.l / S.k).real
        r2 = ((c @ c) - (S.m / S.k).real)
        print("centre (%+.3f, %+.3f, %+.3f)  radius^2 %.4f" % (*c, r2))

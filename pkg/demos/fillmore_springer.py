"""A constrained circle problem.

Find circles D that
  * have tangential distance 7 from the circle A of centre (7, 1) and radius 2,
  * meet the circle B of centre (5, 3) and radius 5 at the angle with cosine 4/5,
  * are orthogonal to the line 5u/13 + 12v/13 = 0,
  * are real circles.

Two of these conditions become quadratic once written in the cycle
coefficients; normalising D to unit self-product turns them into linear
equations plus one quadratic, which the solver handles directly.
"""
from cyclefig import Cycle, from_center_radius_sq, new_figure, num_normalize
from cyclefig import relations as r


def build():
    F = new_figure()
    F.add_cycle(from_center_radius_sq([7, 1], 4, F.point_metric), "A")
    F.add_cycle(from_center_radius_sq([5, 3], 25, F.point_metric), "B")
    F.add_cycle(Cycle(0, [5 / 13, 12 / 13], 0), "C")
    F.add_cycle_rel([r.tangential_distance("A", 7), r.angle("B", 0.8), r.orthogonal("C"), r.real_cycle("D")], "D")
    return F


if __name__ == "__main__":
    F = build()
    for D in F.get_cycle("D"):
        print("solution", num_normalize(D))
    print("squared tangential distance to A:", [round(v.real, 9) for v in F.measure("D", "A", "sq_t_distance")])
    print("squared cross tangential distance to A:",
          [round(v.real, 9) for v in F.measure("D", "A", "sq_cross_t_distance")])
    print("cosine of the angle with B:", [round(v.real, 9) for v in F.measure("D", "B", "angle")])

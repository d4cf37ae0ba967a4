"""Orbits of two circles under the modular group.

Each round shifts the newest circles by integer translations and then
applies the inversion z -> -1/z to the shifted ones, both written as
Moebius relations to the previous round.
"""
from pathlib import Path

from cyclefig import from_center_radius_sq, new_figure
from cyclefig import relations as r
from cyclefig.render import Viewport, render_svg

OUT = Path(__file__).parent / "out"


def build(steps=3, shifts=3):
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
    # younger generations are drawn thinner and lighter
    for k in F.get_all_keys(1):
        g = F.get_generation(k)
        colour = "rgb(0,0,%.2g)" if g % 2 else "rgb(0,0.7,%.2g)"
        F.set_style(k, (colour % (1 - g / 7)) + "+%.2g" % (1 / (g + 1)))
    return F


if __name__ == "__main__":
    F = build()
    print("%d cycles in %d generations" % (len(F.get_all_keys(0)), max(F.get_generation(k) for k in F.nodes)))
    print("inverted shifted circle a.t1.s:", F.get_cycle("a.t1.s"))
    OUT.mkdir(exist_ok=True)
    (OUT / "modular_group.svg").write_text(render_svg(F, Viewport(-3, 3, 0, 3, 600)))

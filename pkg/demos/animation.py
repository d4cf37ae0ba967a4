"""Animating a figure: one point moves along a line while the figure follows.

Coordinates may be affine in a named parameter; rebinding the parameter
re-solves every node that depends on it.
"""
from pathlib import Path

import numpy as np

from cyclefig import new_figure
from cyclefig import relations as r
from cyclefig.figure import Param
from cyclefig.render import Viewport, animate

OUT = Path(__file__).parent / "out" / "frames"


def build():
    F = new_figure()
    F.parameters["t"] = 2 / 30
    # A = (-t, t/2 + 1/2)
    F.add_point([Param("t", -1.0, 0.0), Param("t", 0.5, 0.5)], "A")
    F.add_point([1, 1.5], "B")
    F.add_cycle_rel([r.orthogonal("A"), r.orthogonal("B"), r.orthogonal("R")], "a")
    F.add_cycle_rel([r.orthogonal("A"), r.orthogonal("B"), r.orthogonal("infty")], "b")  # the Euclidean line
    return F


if __name__ == "__main__":
    F = build()
    values = [(i + 2) / 30 for i in range(40)]
    frames = animate(F, "t", values, Viewport(-3, 3, -3, 3, 300, 128))
    OUT.mkdir(parents=True, exist_ok=True)
    for i, svg in enumerate(frames):
        (OUT / ("frame_%03d.svg" % i)).write_text(svg)
    print("wrote %d frames to %s" % (len(frames), OUT))

    # the same sweep through the API: watch the centre of a travel along R
    for t in np.linspace(values[0], values[-1], 5):
        F.set_parameter("t", t)
        (a,) = F.get_cycle("a")
        print("t=%.3f  centre of a at u=%.4f" % (t, (a.l[0] / a.k).real))

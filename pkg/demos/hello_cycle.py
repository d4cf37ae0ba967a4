"""A first figure: two points and the line of the upper half plane through them.

In the half plane model the "lines" are circles orthogonal to the real
axis, so the only relation needed besides the points is orthogonality
to the real line R.
"""
from pathlib import Path

from cyclefig import new_figure, num_normalize
from cyclefig import relations as r
from cyclefig.render import Viewport, render_svg

OUT = Path(__file__).parent / "out"


def build():
    F = new_figure()  # Euclidean plane
    F.add_point([-1, 0.5], "A")
    F.add_point([1, 1.5], "B")
    F.add_cycle_rel([r.orthogonal("A"), r.orthogonal("B"), r.orthogonal("R")], "a")
    return F


if __name__ == "__main__":
    F = build()
    for key in F.get_all_keys():
        print(key, F.get_generation(key), [num_normalize(C) for C in F.get_cycle(key)])

    # the line passes through both points and meets R at a right angle
    print("a vs A:", F.check_rel("a", "A"))
    print("a vs R:", F.check_rel("a", "R"))

    OUT.mkdir(exist_ok=True)
    (OUT / "hello_cycle.svg").write_text(render_svg(F, Viewport(-3, 3, -3, 3)))
    print("wrote", OUT / "hello_cycle.svg")

"""Regenerate the JSON documents shipped with the package from the demo builders."""
import json
from pathlib import Path

from cyclefig import default_cycle_metric
from cyclefig.document import figure_to_dict

import animation
import apollonius
import hello_cycle
import modular_group
import nine_points

DOCS = Path(__file__).resolve().parent.parent / "src" / "cyclefig" / "documents"


def write(name, F, assertions=()):
    d = figure_to_dict(F, values=False)
    if F.cycle_metric == default_cycle_metric(F.point_metric):
        d.pop("cycle_metric")
    if assertions:
        d["assertions"] = list(assertions)
    # one node or assertion per line keeps the documents easy to diff
    lines = ["{"]
    items = list(d.items())
    for i, (k, v) in enumerate(items):
        end = "," if i < len(items) - 1 else ""
        if k in ("nodes", "assertions"):
            lines.append(' "%s": [' % k)
            lines += ["  " + json.dumps(x) + ("," if j < len(v) - 1 else "") for j, x in enumerate(v)]
            lines.append(" ]" + end)
        else:
            lines.append(' "%s": %s%s' % (k, json.dumps(v), end))
    lines.append("}")
    (DOCS / (name + ".json")).write_text("\n".join(lines) + "\n")
    print("wrote", name)


def check(kind, a, b, tol=None):
    d = {"check": kind, "a": a, "b": b}
    if tol:
        d["tol"] = tol
    return d


if __name__ == "__main__":
    write("hello_cycle", hello_cycle.build(), [check("orthogonal", "a", k) for k in ("A", "B", "R")])
    write("lobachevsky_anim", animation.build(), [check("orthogonal", "a", "A"), check("orthogonal", "b", "B")])
    nine = [check("orthogonal", "p", k, 1e-6) for k in ("A_m", "B_m", "C_m", "A_d", "B_d", "C_d", "A_h", "B_h", "C_h")]
    nine += [check("tangent", "p", k, 1e-6) for k in ("v_a", "v_b", "v_c")]
    write("nine_points", nine_points.build(N=(0.5, -2.5)), nine)
    write("nine_points_hyperbolic", nine_points.build(point_metric=(-1, 1), N=(0.5, -2.5)), nine)
    write("modular_group", modular_group.build(), [check("tangent", "a", "c"), check("tangent", "a", "a.t0"),
                                                   check("tangent", "a.t0", "a.t1"),
                                                   check("tangent", "a.t0.s", "a.t1.s")])
    write("apollonius3d", apollonius.build(), [check("tangent", "N4", "P%d" % i, 1e-6) for i in range(1, 5)])
    # fillmore_springer.json is written by hand from the problem statement

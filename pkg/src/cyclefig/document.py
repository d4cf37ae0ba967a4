"""JSON figure documents.

A document is an object

    {"dim": 2, "point_metric": [-1, -1], "cycle_metric": [...], "epsilon": 1e-8,
     "parameters": {"t": 0.5}, "nodes": [...], "assertions": [...]}

Nodes are {"key", "point": [x...]}, {"key", "cycle": {"k", "l", "m"}},
{"key", "relations": [{"kind", "to", "cycle_metric", "parameter"}]} or
{"key", "subfigure": "midpoint" | {inline document}, "inputs": [...]}, with
optional "style", "label" and solved "values".  Scalars are bare reals or
[re, im]; coordinates and parameters may be {"param", "scale", "offset"}.
"""
import json
from pathlib import Path

import numpy as np

from .cycle import Cycle
from .figure import GHOST_GEN, INFINITY, REAL_LINE, SUBFIGURES, Figure, FigureError, Param
from .relations import MATRIX_KINDS, RelationKind, RelationSpec

NODE_FORMS = ("point", "cycle", "relations", "subfigure")


class DocumentError(FigureError):
    pass


# scalars

def _num(v, where):
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise DocumentError("%s: expected a number, got %r" % (where, v))
    return float(v)


def parse_scalar(v, where, allow_param=True):
    if isinstance(v, dict):
        if not allow_param or "param" not in v:
            raise DocumentError("%s: expected a scalar, got %r" % (where, v))
        unknown = set(v) - {"param", "scale", "offset"}
        if unknown:
            raise DocumentError("%s: unknown fields %s" % (where, sorted(unknown)))
        return Param(str(v["param"]), _num(v.get("scale", 1.0), where + ".scale"),
                     _num(v.get("offset", 0.0), where + ".offset"))
    if isinstance(v, list):
        if len(v) != 2:
            raise DocumentError("%s: complex scalars are [re, im]" % where)
        z = complex(_num(v[0], where + "[0]"), _num(v[1], where + "[1]"))
        return z if z.imag else z.real
    return _num(v, where)


def dump_scalar(z):
    if isinstance(z, Param):
        return {"param": z.name, "scale": z.scale, "offset": z.offset}
    z = complex(z)
    return z.real if z.imag == 0 else [z.real, z.imag]


def _parse_cycle(obj, n, where):
    if not isinstance(obj, dict) or set(obj) != {"k", "l", "m"}:
        raise DocumentError("%s: a cycle is {\"k\", \"l\", \"m\"}" % where)
    l = obj["l"]
    if not isinstance(l, list) or len(l) != n:
        raise DocumentError("%s.l: expected %d entries" % (where, n))
    return (parse_scalar(obj["k"], where + ".k"),
            [parse_scalar(x, "%s.l[%d]" % (where, i)) for i, x in enumerate(l)],
            parse_scalar(obj["m"], where + ".m"))


def _dump_cycle(C: Cycle):
    return {"k": dump_scalar(C.k), "l": [dump_scalar(x) for x in C.l], "m": dump_scalar(C.m)}


def _parse_entry(e, where):
    if isinstance(e, dict) and "vector" in e:
        return {"vector": [parse_scalar(x, "%s.vector[%d]" % (where, i)) for i, x in enumerate(e["vector"])]}
    if isinstance(e, dict) and "blades" in e:
        return {"blades": {str(int(k)): parse_scalar(x, "%s.blades.%s" % (where, k))
                           for k, x in e["blades"].items()}}
    return parse_scalar(e, where)


def _dump_entry(e):
    if isinstance(e, dict) and "vector" in e:
        return {"vector": [dump_scalar(x) for x in e["vector"]]}
    if isinstance(e, dict) and "blades" in e:
        return {"blades": {k: dump_scalar(x) for k, x in e["blades"].items()}}
    if hasattr(e, "coeffs"):
        return {"blades": {str(i): dump_scalar(x) for i, x in enumerate(e.coeffs) if x != 0}}
    return dump_scalar(e)


def _parse_relation(obj, where):
    if not isinstance(obj, dict):
        raise DocumentError("%s: a relation is an object" % where)
    unknown = set(obj) - {"kind", "to", "cycle_metric", "parameter"}
    if unknown:
        raise DocumentError("%s: unknown fields %s" % (where, sorted(unknown)))
    try:
        kind = RelationKind(obj.get("kind"))
    except ValueError:
        raise DocumentError("%s.kind: unknown relation kind %r" % (where, obj.get("kind"))) from None
    if "to" not in obj:
        raise DocumentError("%s: missing field 'to'" % where)
    cm = obj.get("cycle_metric", True)
    if not isinstance(cm, bool):
        raise DocumentError("%s.cycle_metric: expected true or false" % where)
    p = obj.get("parameter")
    if p is not None:
        if kind in MATRIX_KINDS:
            if isinstance(p, list) and len(p) == 2 and all(isinstance(r, list) for r in p):
                p = p[0] + p[1]
            if not isinstance(p, list) or len(p) != 4:
                raise DocumentError("%s.parameter: expected four matrix entries" % where)
            p = tuple(_parse_entry(e, "%s.parameter[%d]" % (where, i)) for i, e in enumerate(p))
        else:
            p = parse_scalar(p, where + ".parameter")
    try:
        return RelationSpec(kind, str(obj["to"]), cm, p)
    except ValueError as exc:
        raise DocumentError("%s: %s" % (where, exc)) from None


def _dump_relation(r: RelationSpec):
    out = {"kind": r.kind.value, "to": r.parent}
    if not r.use_cycle_metric:
        out["cycle_metric"] = False
    if r.parameter is not None:
        if r.kind in MATRIX_KINDS:
            out["parameter"] = [_dump_entry(e) for e in r.parameter]
        elif not (r.kind == RelationKind.ONLY_REALS and r.parameter == 0):
            out["parameter"] = dump_scalar(r.parameter)
    return out


def _metric(v, where):
    if not isinstance(v, list) or not v:
        raise DocumentError("%s: expected a list of signature entries" % where)
    return [_num(x, "%s[%d]" % (where, i)) for i, x in enumerate(v)]


# documents

def figure_from_dict(doc, where="document") -> Figure:
    if not isinstance(doc, dict):
        raise DocumentError("%s: expected an object" % where)
    unknown = set(doc) - {"dim", "point_metric", "cycle_metric", "epsilon", "parameters",
                          "nodes", "assertions", "frozen", "name"}
    if unknown:
        raise DocumentError("%s: unknown fields %s" % (where, sorted(unknown)))
    if "point_metric" in doc:
        pm = _metric(doc["point_metric"], where + ".point_metric")
    elif "dim" in doc:
        pm = [-1.0] * int(doc["dim"])
    else:
        raise DocumentError("%s: needs 'dim' or 'point_metric'" % where)
    if "dim" in doc and int(doc["dim"]) != len(pm):
        raise DocumentError("%s.dim: does not match point_metric" % where)
    cm = _metric(doc["cycle_metric"], where + ".cycle_metric") if "cycle_metric" in doc else None
    eps = _num(doc["epsilon"], where + ".epsilon") if "epsilon" in doc else None
    try:
        F = Figure(pm, cm, eps, frozen=True)
    except ValueError as exc:
        raise DocumentError("%s: %s" % (where, exc)) from None
    F.template_name = str(doc.get("name", ""))
    params = doc.get("parameters", {})
    if not isinstance(params, dict):
        raise DocumentError("%s.parameters: expected an object" % where)
    F.parameters = {str(k): _num(v, "%s.parameters.%s" % (where, k)) for k, v in params.items()}
    nodes = doc.get("nodes", [])
    if not isinstance(nodes, list):
        raise DocumentError("%s.nodes: expected a list" % where)
    stored = {}
    for i, nd in enumerate(nodes):
        w = "%s.nodes[%d]" % (where, i)
        key = _add_node(F, nd, w)
        if "values" in nd:
            vals = nd["values"]
            if not isinstance(vals, list):
                raise DocumentError("%s.values: expected a list" % w)
            stored[key] = [_parse_cycle(c, F.dim, "%s.values[%d]" % (w, j)) for j, c in enumerate(vals)]
    assertions = doc.get("assertions", [])
    if not isinstance(assertions, list):
        raise DocumentError("%s.assertions: expected a list" % where)
    for i, a in enumerate(assertions):
        _check_assertion(F, a, "%s.assertions[%d]" % (where, i))
    F.assertions = list(assertions)
    frozen = bool(doc.get("frozen", False))
    if stored and len(stored) == len(nodes):
        for key, vals in stored.items():
            F.nodes[key].cycles = [Cycle(complex(k), np.array(l, dtype=complex), complex(m)) for k, l, m in vals]
        _refresh_ghosts(F)
        F.frozen = frozen
    elif not frozen:
        F.unfreeze()
    return F


def _refresh_ghosts(F):
    for key, nd in F.nodes.items():
        if nd.point is not None and nd.parents:
            xv = [float(x) for x in _resolve_point(F, nd.point)]
            for i in range(F.dim):
                F.nodes[F._ghost_key(key, i)].cycles = [F._ghost_cycle(i, xv[i])]


def _resolve_point(F, x):
    from .figure import resolve
    return resolve(x, F.parameters)


def _add_node(F, nd, where):
    if not isinstance(nd, dict):
        raise DocumentError("%s: a node is an object" % where)
    if "key" not in nd:
        raise DocumentError("%s: missing field 'key'" % where)
    key = nd["key"]
    if not isinstance(key, str) or not key:
        raise DocumentError("%s.key: expected a non-empty string" % where)
    forms = [f for f in NODE_FORMS if f in nd]
    if len(forms) != 1:
        raise DocumentError("%s: exactly one of %s is required" % (where, ", ".join(NODE_FORMS)))
    unknown = set(nd) - {"key", "style", "label", "values", "inputs"} - set(NODE_FORMS)
    if unknown:
        raise DocumentError("%s: unknown fields %s" % (where, sorted(unknown)))
    style = str(nd.get("style", ""))
    label = nd.get("label")
    form = forms[0]
    try:
        if form == "point":
            x = nd["point"]
            if not isinstance(x, list):
                raise DocumentError("%s.point: expected a list" % where)
            F.add_point([parse_scalar(v, "%s.point[%d]" % (where, i)) for i, v in enumerate(x)], key, style, label)
        elif form == "cycle":
            c = nd["cycle"]
            F.add_cycle(None if c is None else _parse_cycle(c, F.dim, where + ".cycle"), key, style, label)
        elif form == "relations":
            rels = nd["relations"]
            if not isinstance(rels, list):
                raise DocumentError("%s.relations: expected a list" % where)
            F.add_cycle_rel([_parse_relation(r, "%s.relations[%d]" % (where, i)) for i, r in enumerate(rels)],
                            key, style, label)
        else:
            sub = nd["subfigure"]
            if isinstance(sub, str):
                if sub not in SUBFIGURES:
                    raise DocumentError("%s.subfigure: unknown subfigure %r" % (where, sub))
                template = SUBFIGURES[sub]()
            else:
                template = figure_from_dict(sub, where + ".subfigure")
                template.frozen = True
            inputs = nd.get("inputs")
            if not isinstance(inputs, list):
                raise DocumentError("%s.inputs: expected a list of keys" % where)
            F.add_subfigure(template, [str(k) for k in inputs], key, style, label)
    except DocumentError:
        raise
    except (FigureError, ValueError) as exc:
        raise DocumentError("%s: %s" % (where, exc)) from None
    return key


def _is_real(x):
    return isinstance(x, (int, float)) and not isinstance(x, bool)


def _check_assertion(F, a, where):
    from .relations import CHECKS, MEASURES
    if not isinstance(a, dict):
        raise DocumentError("%s: an assertion is an object" % where)
    if "check" in a:
        if a["check"] not in CHECKS:
            raise DocumentError("%s.check: unknown check %r" % (where, a["check"]))
    elif "measure" in a:
        if a["measure"] not in MEASURES:
            raise DocumentError("%s.measure: unknown measure %r" % (where, a["measure"]))
        if "expect" not in a:
            raise DocumentError("%s: a measure assertion needs 'expect'" % where)
        e = a["expect"]
        single = lambda x: _is_real(x) or (isinstance(x, list) and len(x) == 2 and all(map(_is_real, x)))
        if not (_is_real(e) or (isinstance(e, list) and e and all(map(single, e)))):
            raise DocumentError("%s.expect: a number or a list of numbers and [re, im] pairs" % where)
    else:
        raise DocumentError("%s: needs 'check' or 'measure'" % where)
    for f in ("a", "b"):
        if a.get(f) not in F.nodes:
            raise DocumentError("%s.%s: unknown key %r" % (where, f, a.get(f)))


def figure_to_dict(F: Figure, values=True) -> dict:
    doc = {"dim": F.dim,
           "point_metric": [float(s) for s in F.point_metric.sigma],
           "cycle_metric": [float(s) for s in F.cycle_metric.sigma]}
    if F.template_name:
        doc["name"] = F.template_name
    if F.epsilon is not None:
        doc["epsilon"] = F.epsilon
    if F.frozen:
        doc["frozen"] = True
    doc["parameters"] = dict(F.parameters)
    nodes = []
    for key, nd in F.nodes.items():
        if key in (REAL_LINE, INFINITY) or nd.generation == GHOST_GEN:
            continue
        out = {"key": key}
        if nd.point is not None and nd.parents:
            out["point"] = [dump_scalar(x) for x in nd.point]
        elif nd.is_subfigure():
            ref = nd.parents
            out["subfigure"] = ref.name if ref.name in SUBFIGURES else figure_to_dict(ref.template, values=False)
            out["inputs"] = list(ref.inputs)
        elif nd.parents:
            out["relations"] = [_dump_relation(r) for r in nd.parents]
        elif nd.data is not None:
            k, l, m = nd.data
            out["cycle"] = {"k": dump_scalar(k), "l": [dump_scalar(x) for x in l], "m": dump_scalar(m)}
        elif len(nd.cycles) == 1:
            out["cycle"] = _dump_cycle(nd.cycles[0])
        elif not nd.cycles:
            out["cycle"] = None
        else:
            raise FigureError("node %r holds several given cycles, which documents cannot store" % key)
        if nd.style:
            out["style"] = nd.style
        if nd.label is not None:
            out["label"] = nd.label
        if values:
            out["values"] = [_dump_cycle(C) for C in nd.cycles]
        nodes.append(out)
    doc["nodes"] = nodes
    if F.assertions:
        doc["assertions"] = list(F.assertions)
    return doc


def loads(text: str) -> Figure:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError("line %d column %d: %s" % (exc.lineno, exc.colno, exc.msg)) from None
    return figure_from_dict(doc)


def dumps(F: Figure) -> str:
    return json.dumps(figure_to_dict(F), indent=1)


def load(path) -> Figure:
    return loads(Path(path).read_text())


def save(F: Figure, path):
    Path(path).write_text(dumps(F) + "\n")


def shipped(name: str) -> Path:
    """Path of a document shipped with the package."""
    p = Path(__file__).parent / "documents" / name
    if p.suffix != ".json":
        p = p.with_suffix(".json")
    return p

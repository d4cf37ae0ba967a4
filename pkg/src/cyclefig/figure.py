"""Figures: keyed DAGs of cycles connected by relations.

Every node stores a list of cycles (a relation may have several solutions)
and a generation.  Nodes at generation 0 are given data; a node defined by
relations sits one generation above its highest parent.  The real line,
infinity and the hidden "ghost" parents of points occupy the negative
generations -1, -2 and -3.
"""
import copy
import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional, Union

import numpy as np

from . import relations as rel
from .algebra import Metric, as_metric, default_cycle_metric
from .cycle import Cycle, cycle_product, is_almost_equal, is_projectively_equal, num_normalize
from .relations import RelationKind, RelationSpec
from .solver import evaluate_cycle, unique_cycle
from .tolerance import epsilon as epsilon_context

log = logging.getLogger(__name__)

GHOST_GEN = -3
INFINITY_GEN = -2
REAL_LINE_GEN = -1

REAL_LINE = "R"
INFINITY = "infty"

PREDICATE_KINDS = {RelationKind.DIFFERENT, RelationKind.ADIFFERENT,
                   RelationKind.PRODUCT_SIGN, RelationKind.ONLY_REALS}


class FigureError(ValueError):
    pass


@dataclass(frozen=True)
class Param:
    """Affine expression scale * parameter + offset."""

    name: str
    scale: float = 1.0
    offset: float = 0.0

    def value(self, params):
        if self.name not in params:
            raise FigureError("unknown parameter %r" % self.name)
        return self.scale * params[self.name] + self.offset


def resolve(obj, params):
    """Replace every Param inside nested lists/tuples/dicts by its value."""
    if isinstance(obj, Param):
        return obj.value(params)
    if isinstance(obj, list):
        return [resolve(x, params) for x in obj]
    if isinstance(obj, tuple):
        return tuple(resolve(x, params) for x in obj)
    if isinstance(obj, dict):
        return {k: resolve(v, params) for k, v in obj.items()}
    return obj


def has_param(obj) -> bool:
    if isinstance(obj, Param):
        return True
    if isinstance(obj, (list, tuple)):
        return any(has_param(x) for x in obj)
    if isinstance(obj, dict):
        return any(has_param(x) for x in obj.values())
    return False


@dataclass
class SubfigureRef:
    template: "Figure"
    inputs: List[str]
    name: str = ""


@dataclass
class CycleNode:
    key: str
    cycles: List[Cycle]
    generation: int
    parents: Union[List[RelationSpec], SubfigureRef] = field(default_factory=list)
    children: List[str] = field(default_factory=list)
    style: str = ""
    label: Optional[str] = None
    point: Optional[list] = None  # coordinates (possibly parametric) of a point node
    data: Optional[tuple] = None  # parametric (k, l, m) of a given cycle
    underdetermined: bool = False

    def parent_keys(self) -> List[str]:
        if isinstance(self.parents, SubfigureRef):
            return list(self.parents.inputs)
        return [r.parent for r in self.parents]

    def is_subfigure(self) -> bool:
        return isinstance(self.parents, SubfigureRef)

    def add_child(self, key):
        if key not in self.children:
            self.children.append(key)

    def remove_child(self, key):
        if key in self.children:
            self.children.remove(key)


class Figure:
    """An ensemble of interrelated cycles."""

    def __init__(self, point_metric=None, cycle_metric=None, epsilon=None, frozen=False,
                 tangent_mode="signed"):
        pm = Metric.elliptic(2) if point_metric is None else as_metric(point_metric)
        cm = default_cycle_metric(pm) if cycle_metric is None else as_metric(cycle_metric)
        if pm.n != cm.n:
            raise FigureError("point and cycle metrics shall have the same dimension")
        self.point_metric = pm
        self.cycle_metric = cm
        if tangent_mode not in rel.TANGENT_MODES:
            raise FigureError("unknown tangent mode %r" % tangent_mode)
        self.epsilon = epsilon
        self.frozen = frozen
        self.tangent_mode = tangent_mode
        self.parameters: Dict[str, float] = {}
        self.assertions: list = []
        self.template_name = ""
        self.nodes: Dict[str, CycleNode] = {}
        n = pm.n
        l = np.zeros(n)
        l[-1] = 1
        self.nodes[REAL_LINE] = CycleNode(REAL_LINE, [Cycle(0, l, 0)], REAL_LINE_GEN)
        self.nodes[INFINITY] = CycleNode(INFINITY, [Cycle(0, np.zeros(n), 1)], INFINITY_GEN)

    # basic access

    @property
    def dim(self) -> int:
        return self.point_metric.n

    @property
    def real_line(self):
        return REAL_LINE

    @property
    def infinity(self):
        return INFINITY

    def __contains__(self, key):
        return key in self.nodes

    def node(self, key) -> CycleNode:
        try:
            return self.nodes[key]
        except KeyError:
            raise FigureError("there is no node with key %r" % key) from None

    def get_cycle(self, key, metric=None) -> List[Cycle]:
        return list(self.node(key).cycles)

    def get_generation(self, key) -> int:
        return self.node(key).generation

    def get_all_keys(self, mingen=INFINITY_GEN, maxgen=None) -> List[str]:
        return [k for k, nd in self.nodes.items()
                if nd.generation >= mingen and (maxgen is None or nd.generation <= maxgen)]

    def get_cycle_label(self, name) -> Optional[str]:
        if name in self.nodes:
            return name
        for k, nd in self.nodes.items():
            if nd.label == name:
                return k
        return None

    def set_style(self, key, style):
        self.node(key).style = style

    def set_label(self, key, label):
        self.node(key).label = label

    def copy(self) -> "Figure":
        return copy.deepcopy(self)

    def apply(self, func) -> "Figure":
        """A frozen copy whose visible cycles are replaced by func(cycle)."""
        F = self.copy()
        F.frozen = True
        for nd in F.nodes.values():
            if nd.generation > GHOST_GEN:
                nd.cycles = [func(C) for C in nd.cycles]
        return F

    def _check_fresh(self, key):
        if not isinstance(key, str) or not key:
            raise FigureError("node keys shall be non-empty strings")
        if key in self.nodes:
            raise FigureError("a node with key %r already exists" % key)

    # parameters and freezing

    def set_parameter(self, name, value):
        self.parameters[name] = float(value)
        self.update_cycles()

    def freeze(self):
        self.frozen = True
        return self

    def unfreeze(self):
        self.frozen = False
        self.update_cycles()
        return self

    # adding nodes

    def add_cycle(self, C, key, style="", label=None) -> str:
        """Add given data at generation 0.  ``C`` may be a Cycle, a parametric
        triple (k, l, m), a list of cycles, or None for an empty placeholder."""
        self._check_fresh(key)
        node = CycleNode(key, [], 0, style=style, label=label)
        self.nodes[key] = node
        self._set_data(node, C)
        return key

    def _set_data(self, node, C):
        node.data = None
        node.point = None
        if C is None:
            node.cycles = []
        elif isinstance(C, Cycle):
            node.cycles = [C]
        elif isinstance(C, (list, tuple)) and C and all(isinstance(c, Cycle) for c in C):
            node.cycles = list(C)
        elif isinstance(C, (list, tuple)) and len(C) == 3:
            node.data = (C[0], list(C[1]), C[2])
            node.cycles = [self._data_cycle(node.data)]
        else:
            raise FigureError("cannot interpret %r as cycle data" % (C,))
        for c in node.cycles:
            if c.n != self.dim:
                raise FigureError("cycle dimension %d does not match the figure" % c.n)

    def _data_cycle(self, data):
        k, l, m = resolve(data, self.parameters)
        return Cycle(complex(k), np.array(l, dtype=complex), complex(m))

    def set_cycle(self, key, C):
        """Replace data of a node without parents (no propagation)."""
        node = self.node(key)
        if node.parents:
            raise FigureError("cannot modify data of a cycle with parents")
        self._set_data(node, C)

    def add_point(self, x, key, style="", label=None) -> str:
        self._check_fresh(key)
        x = list(x)
        if len(x) != self.dim:
            raise FigureError("coordinates of a point shall have length %d" % self.dim)
        node = CycleNode(key, [], 0, style=style, label=label)
        self.nodes[key] = node
        self._attach_ghosts(node, x)
        if not self.frozen:
            self._update_node(key)
        return key

    def _ghost_key(self, key, i):
        return "%s~%d" % (key, i)

    def _ghost_cycle(self, i, xi):
        l = np.zeros(self.dim)
        l[i] = 1
        return Cycle(0, l, 2 * xi)

    def _attach_ghosts(self, node, x):
        key = node.key
        node.point = list(x)
        node.data = None
        rels = [rel.orthogonal(key, cm=False), rel.different(INFINITY)]
        xv = resolve(x, self.parameters)
        for i in range(self.dim):
            g = self._ghost_key(key, i)
            self.nodes[g] = CycleNode(g, [self._ghost_cycle(i, float(xv[i]))], GHOST_GEN, children=[key])
            rels.append(rel.orthogonal(g))
        self.nodes[INFINITY].add_child(key)
        node.parents = rels

    def add_cycle_rel(self, relations, key, style="", label=None) -> str:
        self._check_fresh(key)
        if isinstance(relations, RelationSpec):
            relations = [relations]
        relations = list(relations)
        if not relations:
            raise FigureError("a relation-defined node needs at least one relation")
        for r in relations:
            if not isinstance(r, RelationSpec):
                raise FigureError("expected a RelationSpec, got %r" % (r,))
            if r.parent != key and r.parent not in self.nodes:
                raise FigureError("unknown parent key %r" % r.parent)
        node = CycleNode(key, [], self._generation_of([r.parent for r in relations], key),
                         relations, style=style, label=label)
        self.nodes[key] = node
        for p in node.parent_keys():
            if p != key:
                self.nodes[p].add_child(key)
        if not self.frozen:
            self._update_node(key)
        return key

    def add_subfigure(self, template, inputs, key, style="", label=None) -> str:
        self._check_fresh(key)
        if isinstance(template, SubfigureRef):
            template = template.template
        inputs = list(inputs)
        nvars = len([k for k in template.nodes if k.startswith("variable")])
        if len(inputs) != nvars:
            raise FigureError("subfigure expects %d inputs, got %d" % (nvars, len(inputs)))
        if "result" not in template.nodes:
            raise FigureError("subfigure template has no 'result' node")
        for p in inputs:
            if p not in self.nodes:
                raise FigureError("unknown input key %r" % p)
        ref = SubfigureRef(template, inputs, template.template_name)
        node = CycleNode(key, [], self._generation_of(inputs, key), ref, style=style, label=label)
        self.nodes[key] = node
        for p in inputs:
            if p != key:
                self.nodes[p].add_child(key)
        if not self.frozen:
            self._update_node(key)
            if not node.cycles:
                log.warning("subfigure %s evaluated to no cycles", key)
        return key

    def _generation_of(self, parent_keys, key):
        gens = [self.nodes[p].generation for p in parent_keys if p != key]
        return max([0] + gens) + 1 if gens else 0

    # modifying nodes

    def move_point(self, key, x):
        node = self.node(key)
        x = list(x)
        if len(x) != self.dim:
            raise FigureError("coordinates of a point shall have length %d" % self.dim)
        if node.generation != 0:
            raise FigureError("cannot modify data of a cycle in non-zero generation")
        npar = len(node.parent_keys())
        if npar == self.dim + 2:
            node.point = list(x)
            xv = resolve(x, self.parameters)
            for i in range(self.dim):
                self.nodes[self._ghost_key(key, i)].cycles = [self._ghost_cycle(i, float(xv[i]))]
        elif npar == 0:
            self._attach_ghosts(node, x)
        else:
            raise FigureError("strange number of parents (neither 0 nor dim+2) at generation 0")
        if self.frozen:
            return
        self._update_node(key)
        self.update_node_lst(node.children)

    def move_cycle(self, key, C):
        node = self.node(key)
        if node.generation != 0:
            raise FigureError("cannot modify data of a cycle in non-zero generation")
        for p in node.parent_keys():
            if p == key:
                continue
            if self.nodes[p].generation == GHOST_GEN:
                del self.nodes[p]
            else:
                self.nodes[p].remove_child(key)
        node.parents = []
        self._set_data(node, C)
        if not self.frozen:
            self.update_node_lst(node.children)

    def remove_cycle_node(self, key):
        if key in (REAL_LINE, INFINITY):
            raise FigureError("cannot remove the predefined node %r" % key)
        node = self.node(key)
        if node.generation == GHOST_GEN:
            raise FigureError("ghost nodes are removed together with their point")
        self._remove(key)

    def _remove(self, key):
        node = self.nodes.get(key)
        if node is None:
            return
        for ch in list(node.children):
            self._remove(ch)
        for p in node.parent_keys():
            if p == key or p not in self.nodes:
                continue
            if self.nodes[p].generation == GHOST_GEN:
                del self.nodes[p]
            else:
                self.nodes[p].remove_child(key)
        del self.nodes[key]

    def set_metric(self, point_metric, cycle_metric=None):
        pm = as_metric(point_metric)
        cm = default_cycle_metric(pm) if cycle_metric is None else as_metric(cycle_metric)
        if pm.n != self.dim or cm.n != self.dim:
            raise FigureError("new metric has a different dimensionality")
        self.point_metric, self.cycle_metric = pm, cm
        self.update_cycles()

    # evaluation

    def update_cycles(self):
        """Refresh given data and re-solve every relation-defined node."""
        if self.frozen:
            return self
        for key, nd in list(self.nodes.items()):
            if nd.generation != 0:
                continue
            if nd.point is not None and nd.parents:
                xv = resolve(nd.point, self.parameters)
                for i in range(self.dim):
                    self.nodes[self._ghost_key(key, i)].cycles = [self._ghost_cycle(i, float(xv[i]))]
            elif nd.data is not None:
                nd.cycles = [self._data_cycle(nd.data)]
        pending = [k for k, nd in self.nodes.items() if nd.generation >= 0 and nd.parents]
        self.update_node_lst(pending)
        return self

    def update_node_lst(self, keys):
        """Re-solve the given nodes and all their descendants, lowest generation first."""
        if self.frozen:
            return
        order = {k: i for i, k in enumerate(self.nodes)}
        intake = sorted(set(k for k in keys if k in self.nodes), key=order.get)
        while intake:
            mingen = min(self.nodes[k].generation for k in intake)
            current = [k for k in intake if self.nodes[k].generation == mingen]
            future = [k for k in intake if self.nodes[k].generation != mingen]
            for k in current:
                self._update_node(k)
                future.extend(self.nodes[k].children)
            intake = sorted(set(k for k in future if k in self.nodes), key=order.get)

    def _update_node(self, key):
        node = self.nodes[key]
        with epsilon_context(self.epsilon):
            if node.is_subfigure():
                node.cycles = self._eval_subfigure(node)
                node.underdetermined = False
            elif node.parents:
                node.cycles, node.underdetermined = self._solve_node(node)

    def _eval_subfigure(self, node):
        ref = node.parents
        F = copy.deepcopy(ref.template)
        F.frozen = False
        F.parameters = dict(self.parameters)
        F.tangent_mode = self.tangent_mode
        for i, k in enumerate(ref.inputs):
            F.set_cycle("variable%03d" % i, list(self.nodes[k].cycles))
        F.set_metric(self.point_metric, self.cycle_metric)
        return list(F.nodes["result"].cycles)

    def _solve_node(self, node):
        key = node.key
        n = self.dim
        pm, cm = self.point_metric, self.cycle_metric
        expanded, preds = [], []
        try:
            for r in node.parents:
                r = RelationSpec(r.kind, r.parent, r.use_cycle_metric, resolve(r.parameter, self.parameters))
                self_ref = r.parent == key
                parent_cycles = None if self_ref else self.nodes[r.parent].cycles
                if not self_ref and not parent_cycles:
                    return [], False
                if r.kind in PREDICATE_KINDS:
                    preds.append(_relation_predicate(r, parent_cycles, pm, cm))
                else:
                    expanded.append(rel.expand(r, parent_cycles, pm, cm, n, self.tangent_mode))
        except (ValueError, ZeroDivisionError) as exc:
            log.warning("node %s: %s", key, exc)
            return [], False
        results, under = [], False
        for combo in product(*[b.branches for b in expanded]):
            eqs, produced, local = [], [], list(preds)
            for branch in combo:
                for item in branch:
                    if isinstance(item, Cycle):
                        produced.append(num_normalize(item))
                    elif isinstance(item, rel.Predicate):
                        local.append(item)
                    else:
                        eqs.append(item)
            cands = []
            if eqs:
                sol = evaluate_cycle(eqs, n)
                under = under or sol.underdetermined
                cands.extend(sol.cycles)
            cands.extend(produced)
            for C in cands:
                if all(p(C) for p in local):
                    results.append(C)
        return unique_cycle(results), under

    # checks and measures

    def check_rel(self, key1, key2, kind="orthogonal", use_cycle_metric=True) -> List[complex]:
        fn = rel.CHECKS.get(kind)
        if fn is None:
            raise FigureError("unknown check %r" % kind)
        metric = self.cycle_metric if use_cycle_metric else self.point_metric
        with epsilon_context(self.epsilon):
            return [fn(C1, C2, metric) for C1 in self.node(key1).cycles for C2 in self.node(key2).cycles]

    def measure(self, key1, key2, kind="sq_t_distance", use_cycle_metric=True) -> List[complex]:
        fn = rel.MEASURES.get(kind)
        if fn is None:
            raise FigureError("unknown measure %r" % kind)
        metric = self.cycle_metric if use_cycle_metric else self.point_metric
        with epsilon_context(self.epsilon):
            return [fn(C1, C2, metric) for C1 in self.node(key1).cycles for C2 in self.node(key2).cycles]

    # structure checks used by tests and the CLI

    def empty_nodes(self) -> List[str]:
        return [k for k, nd in self.nodes.items() if nd.generation > GHOST_GEN and not nd.cycles
                and (nd.parents or nd.generation != 0)]

    def __repr__(self):
        return "Figure(dim=%d, point_metric=%r, cycle_metric=%r, nodes=%d)" % (
            self.dim, self.point_metric, self.cycle_metric, len(self.nodes))


def _relation_predicate(spec, parent_cycles, pm, cm):
    """Predicate that must hold against every value of the parent."""
    metric = cm if spec.use_cycle_metric else pm
    kind = spec.kind
    if kind == RelationKind.PRODUCT_SIGN:
        return rel.Predicate(lambda U: rel.product_sign_holds(U, metric, spec.parameter), "product_sign")
    if kind == RelationKind.ONLY_REALS:
        return rel.Predicate(lambda U: U.is_real(), "only_reals")
    values = list(parent_cycles or [])
    if kind == RelationKind.DIFFERENT:
        return rel.Predicate(lambda U: all(not is_projectively_equal(U, P) for P in values), "different")
    return rel.Predicate(lambda U: all(not is_almost_equal(U, P) for P in values), "adifferent")


def new_figure(point_metric=None, cycle_metric=None, epsilon=None, tangent_mode="signed") -> Figure:
    return Figure(point_metric, cycle_metric, epsilon, tangent_mode=tangent_mode)


def midpoint_constructor() -> Figure:
    """Template computing the conformal midpoint of two points relative to a third.

    With the third point at infinity the result is the usual midpoint: v4 is
    the line through the points, v5 the circle on the segment as diameter,
    v6 the perpendicular bisector, and the result their intersection
    other than infinity.
    """
    SF = Figure(frozen=True)
    SF.template_name = "midpoint"
    v1 = SF.add_cycle(None, "variable000")
    v2 = SF.add_cycle(None, "variable001")
    v3 = SF.add_cycle(None, "variable002")
    v4 = SF.add_cycle_rel([rel.orthogonal(v1), rel.orthogonal(v2), rel.orthogonal(v3)], "v4")
    v5 = SF.add_cycle_rel([rel.orthogonal(v1), rel.orthogonal(v2), rel.orthogonal(v4)], "v5")
    v6 = SF.add_cycle_rel([rel.orthogonal(v3), rel.orthogonal(v4), rel.orthogonal(v5)], "v6")
    SF.add_cycle_rel([rel.orthogonal(v4), rel.orthogonal(v6), rel.orthogonal("result", cm=False),
                      rel.adifferent(v3)], "result")
    return SF


SUBFIGURES = {"midpoint": midpoint_constructor}

"""Cycles, relations between them, and figures built from such relations."""
from .algebra import CliffordElement, FSCMatrix, Metric, default_cycle_metric, fsc_from_cycle, \
    cycle_from_fsc, fsc_similarity, moebius_point, sl2_lift
from .cycle import Cycle, center, cycle_product, from_center_radius_sq, is_almost_equal, \
    is_projectively_equal, is_zero_radius, num_normalize, radius_sq, value_at
from .figure import Figure, FigureError, Param, SubfigureRef, midpoint_constructor, new_figure
from .relations import RelationKind, RelationSpec
from .solver import SolutionSet, evaluate_cycle, unique_cycle
from .tolerance import get_epsilon, set_epsilon

__version__ = "0.1.0"

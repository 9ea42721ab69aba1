"""Rotationally symmetric maximal weakly separated collections, their plabic
tilings and graphs, and the weaves obtained by iterated T-shift."""

from .core import (
    Collection,
    KSubset,
    Params,
    complement_collection,
    cyclic_intervals,
    cyclic_shift_subset,
    feasibility,
    is_maximal,
    is_rho_symmetric,
    is_weakly_separated,
    is_ws_collection,
    max_size,
    rho_orbit,
)
from .generator import InfeasibleError, generate, generate_divisible, informal_generate, trace
from .oracle import oracle_enumerate
from .plabic import (
    EquivariantResolution,
    PlabicGraph,
    apply_move,
    dual_plabic_graph,
    make_trivalent,
    rotational_symmetry_certificate,
)
from .tiling import build_tiling, cliques
from .weave import boundary_braid, build_weave, symmetric_weave_pipeline, t_shift, validate_ngraph

__version__ = "0.1.0"

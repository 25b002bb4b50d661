"""Finitely presented k-graphs: validation, ideals, maximal tails and aperiodicity."""

from .aperiodicity import (
    AperiodicityVerdict,
    Bounds,
    Quartet,
    aperiodic_status,
    condition_K,
    condition_L,
    find_quartet,
    lp_witness,
    simple_loops_at,
    strong_aperiodic_status,
)
from .constructions import GroupSpec, cartesian_product, product_form_probe, skew_product, validate_functor
from .errors import KGraphError, KgSyntaxError, ValidationError
from .factorization import KGraph, Morphism, compose, morphisms_equal, normal_form, segment
from .ideals import (
    hereditary_closure,
    is_hereditary,
    is_saturated,
    le,
    quotient,
    sat_her_closure,
    sat_her_lattice,
    saturate,
)
from .io import emit_kg, export_dot, export_json, parse_kg, parse_labels
from .skeleton import Edge, Skeleton, edges_at, validate_skeleton
from .tails import (
    TailSpace,
    basis_open,
    homeomorphic,
    is_maximal_tail,
    maximal_tails,
    tail_closure,
    topology_report,
)


"""Shifts of finite type, their stabilized automorphism groups and the
growth of product-simple subgroups."""

from .classify import ClassificationVerdict, entropy_ratio_witness, fullshift_isomorphic, fullshift_obstruction
from .errors import PreconditionError, ResourceCapError, SFTLabError, ValidationError
from .extlog import ExtLog, Regime, alt_order, lnfact
from .perron import (
    PerronData,
    is_integer_power_perron,
    perron_eigendata,
    perron_root_feasible,
    root_exponent_bound_fullshift,
    topological_entropy,
)
from .ps_entropy import (
    GrowthSeries,
    PSParams,
    ProductOfAlternating,
    admissible_params,
    entropy_estimate,
    growth_series,
    is_ps_member,
    partition_example_growth,
    simp_ev_group,
    upper_bound_check,
)
from .sft import AdjacencyMatrix, EdgeGraph, edge_graph, is_primitive, matrix_power, periodic_points, power_graph
from .sofic import (
    LabeledGraph,
    SubgraphTower,
    build_subgraph_tower,
    find_power_with_min_entry,
    in_split,
    is_right_resolving,
    power_labeled,
    sofic_growth_series,
)
from .symmetries import SimpleSymmetry, compose, include, is_even, log_alt_order, restriction_to_periodic

__version__ = "0.1.0"

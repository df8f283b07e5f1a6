"""Exact finite-truncation tools for Zariski and filter topologies of monoid actions."""

from __future__ import annotations

from .acts import (
    Affine,
    Const,
    FinSuppPerm,
    MaxShift,
    MonoidClosure,
    Table,
    apply,
    closure,
    compose,
    diff_const,
    diff_set,
    identity,
    map_eq,
)
from .carriers import FiniteSet, GroupPower, IntLine, NatLine
from .catalog import Scenario, build_scenario, run_catalog, run_expectations, verify_projection_identity
from .errors import (
    BudgetExceededError,
    CarrierMismatchError,
    ConfigError,
    GTopologyError,
    HeterogeneousMapsError,
    HypothesisViolatedError,
    PointError,
    WindowTooSmallError,
)
from .filtertop import (
    FilterBase,
    OpennessVerdict,
    filter_character,
    filter_pseudocharacter,
    is_open,
    meets_filter,
    neighborhood_chain,
    orbit,
    refined_filter,
    separate,
    t1_witness,
    tail_filter,
)
from .groups import FiniteGroup, cyclic_group, named_group, symmetric_group
from .sets import KSet, complement, contains, equals, intersect, is_singleton, union
from .special import SpecialSequence, build_special, verify_special
from .zariski import (
    INFINITE,
    Certificate,
    Subbase,
    Topology,
    build_subbase,
    discreteness_report,
    generate_topology,
    isolation,
    pseudocharacter,
)

__version__ = "0.1.0"

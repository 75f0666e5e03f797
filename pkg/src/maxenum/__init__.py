"""Duplicate-free, bounded-memory enumeration of maximal set-system solutions."""

from .canonical import (CanonicalSolution, LayerAssignment, Strategy,
                        canonical_order, choose, compare, complete,
                        complete_truncated, layer_of, parent,
                        restricted_solution_for, solution_attrs)
from .basic import children_basic, enumerate_basic, find_roots
from .oracle import brute_force_maximal, lexmin_complete
from .refined import children_refined, enumerate_refined
from .report import CountingSystem, EnumerationReport, SinkError
from .restricted import restr_bcclique, restr_generic
from .setsystem import (DomainError, Element, Mask, NoCandidateError,
                        PreconditionError, SetSystem, SetSystemError,
                        SizeGuardError, SystemClassification, classify_system,
                        elements_of, extension_set, good_singletons,
                        is_solution, mask_of, source)
from .stateless import (AuxMeter, TraversalState, is_root, next_child,
                        next_node, next_r, stateless_traverse)
from .systems import (BiColoredGraph, Graph, bcclique_system, clique_system,
                      demo_bicolored_graph, independent_set_system, map_back,
                      mccis_oracle, product_graph, required_variant,
                      sat_gadget)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]

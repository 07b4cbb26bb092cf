"""Gadget constructions turning circuit, SAT and dominating set instances
into graphs and groups with known answers."""

from .builder import GraphBuilder, ReductionError, cfi_gadget, imp_gadget
from .circuits import (CircuitGraph, MonotoneCircuit, circuit_to_graph, eval_circuit,
                       max_class_size, random_circuit, weighted_sat_brute)
from .domset import DomsetReduction, dominating_set_brute, domset_to_kdiscrete
from .sat import (CnfFormula, GroupInstance, RigidGraph, SetCoverInstance,
                  group_to_rigid_graph, min_set_cover, mini3sat_to_group,
                  normalize_occurrences)

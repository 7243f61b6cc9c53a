"""Canonical bases of the level-one Fock space, runner removal and the Mullineux map."""

__version__ = "0.1.0"

from .partitions import Partition, conjugate, is_e_regular, is_e_restricted, parse_partition
from .laurent import LaurentPoly, q
from .abacus import beta_set, core_and_weight, dominates, e_core, e_weight, remove_runner, ux
from .wedge import bar_standard, straighten
from .canonical import CanonicalEngine, canonical_vector, decomposition_matrix, q_decomp
from .mullineux import mullineux, mullineux_conjugate
from .blocks import BlockId, d_set, enumerate_block, scopes_reduce

__all__ = [
    "Partition", "conjugate", "is_e_regular", "is_e_restricted", "parse_partition",
    "LaurentPoly", "q",
    "beta_set", "core_and_weight", "dominates", "e_core", "e_weight", "remove_runner", "ux",
    "bar_standard", "straighten",
    "CanonicalEngine", "canonical_vector", "decomposition_matrix", "q_decomp",
    "mullineux", "mullineux_conjugate",
    "BlockId", "d_set", "enumerate_block", "scopes_reduce",
]

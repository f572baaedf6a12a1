"""Twisted group algebras F^sigma T: homogeneous involutions, graded identities with involution, codimensions."""
from __future__ import annotations

from .cohomology import Cocycle, MuMap, act, coboundary, cohomologous, is_cocycle, pauli_cocycle
from .groups import GroupMap, GroupTable, build_group, check_antiautomorphism, inversion_map, identity_map
from .involution import Involution, build_involution, solve_compatibility, verify_involution
from .codim import codim_table, graded_codim, graded_inv_codim

__all__ = [
    "Cocycle",
    "GroupMap",
    "GroupTable",
    "Involution",
    "MuMap",
    "act",
    "build_group",
    "build_involution",
    "check_antiautomorphism",
    "coboundary",
    "codim_table",
    "cohomologous",
    "graded_codim",
    "graded_inv_codim",
    "identity_map",
    "inversion_map",
    "is_cocycle",
    "pauli_cocycle",
    "solve_compatibility",
    "verify_involution",
]
__version__ = "0.1.0"

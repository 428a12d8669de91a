"""Enumeration and verification of regular dessins d'enfants.

Finite permutation groups, their subgroup lattices and Moebius functions,
censuses of generating pairs up to automorphism, T2-systems under Nielsen
moves, and universal covers with exact big-integer orders.
"""

__version__ = "0.1.0"

from .bsgs import StabilizerChain, bsgs_order
from .census import (AutGroup, CensusReport, DessinClass, automorphism_group, dessin_census,
                     riemann_hurwitz_genus, simple_bound_window)
from .errors import (CapExceeded, DegreeCapExceeded, DessinError, InternalCheckFailed, NegativeResult,
                     NotApplicable, ParseError, TimeBudgetExceeded, UnsupportedFamily, ValidationError)
from .formulas import SuzukiParam, closed_form_r
from .group import GroupHandle
from .lattice import SubgroupLattice, enumerate_subgroups, moebius_table, phi2_via_moebius
from .tsystems import NielsenMove, TSystemReport, apply_nielsen, omega_action_order, omega_orbits
from .ucover import UCoverRecord, closed_form_ucover, ucover_record
from .zoo import Family, GroupDescriptor, construct_group, parse_descriptor

__all__ = [
    "AutGroup", "CapExceeded", "CensusReport", "DegreeCapExceeded", "DessinClass", "DessinError",
    "Family", "GroupDescriptor", "GroupHandle", "InternalCheckFailed", "NegativeResult", "NielsenMove",
    "NotApplicable", "ParseError", "StabilizerChain", "SubgroupLattice", "SuzukiParam",
    "TSystemReport", "TimeBudgetExceeded", "UCoverRecord", "UnsupportedFamily", "ValidationError",
    "apply_nielsen", "automorphism_group", "bsgs_order", "closed_form_r", "closed_form_ucover",
    "construct_group", "dessin_census", "enumerate_subgroups", "moebius_table", "omega_action_order",
    "omega_orbits", "parse_descriptor", "phi2_via_moebius", "riemann_hurwitz_genus",
    "simple_bound_window", "ucover_record",
]

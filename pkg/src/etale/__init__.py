"""Finite étale groupoids, inverse semigroups and quantales.

Everything is finite and computed exhaustively: spaces are lists of points
with their open sets, frames are finite lattices, and every construction is
checked against its defining axioms.
"""
from .actions import (GroupoidAction, QuantaleModule, induced_module, module_homs,
                      rep_hom_correspondence, validate_action, validate_module)
from .correspondences import (bisections, check_sheaf, germ_groupoid, roundtrip_gi,
                              roundtrip_ig, sheaf_of)
from .errors import StructureError
from .families import generate_family
from .groupoids import (TopGroupoid, classify_groupoid, groupoid_isomorphic, is_etale,
                        validate_groupoid)
from .limits import Limits, using_limits
from .locales import is_sober, is_spatial, spectrum, topology_to_frame
from .order import Frame, SupLattice, frame_points, is_frame
from .quantales import (Quantale, is_etale_groupoid_quantale, lvee, opens_quantale,
                        reconstruct_groupoid, theorem_lvee_check, validate_quantale)
from .semigroups import (InvSemigroup, compatible, is_abstract_pseudogroup, is_complete,
                         natural_leq, symmetric_inverse_monoid, validate_inverse_semigroup)
from .topology import FinTopSpace, StructMap, map_classify, validate_space

__all__ = [
    "GroupoidAction", "QuantaleModule", "induced_module", "module_homs", "rep_hom_correspondence",
    "validate_action", "validate_module",
    "bisections", "check_sheaf", "germ_groupoid", "roundtrip_gi", "roundtrip_ig", "sheaf_of",
    "StructureError", "generate_family",
    "TopGroupoid", "classify_groupoid", "groupoid_isomorphic", "is_etale", "validate_groupoid",
    "Limits", "using_limits",
    "is_sober", "is_spatial", "spectrum", "topology_to_frame",
    "Frame", "SupLattice", "frame_points", "is_frame",
    "Quantale", "is_etale_groupoid_quantale", "lvee", "opens_quantale", "reconstruct_groupoid",
    "theorem_lvee_check", "validate_quantale",
    "InvSemigroup", "compatible", "is_abstract_pseudogroup", "is_complete", "natural_leq",
    "symmetric_inverse_monoid", "validate_inverse_semigroup",
    "FinTopSpace", "StructMap", "map_classify", "validate_space",
]

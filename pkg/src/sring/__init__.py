"""S-rings over finite abelian groups.

Construction, validation, and transformation of S-rings; schurity, normality,
and cyclotomicity decisions; exhaustive desk-scale catalogs.
"""

from .groups import (
    AbelianGroup,
    Automorphism,
    GroupElement,
    Section,
    Subgroup,
    aut_group,
    generated_subgroup,
    make_group,
    section_make,
    subgroup_from_members,
    subgroups,
)
from .cyclo import CycloValue, char_value
from .srings import SRing, full_group_ring, sring_closure, trivial_sring, validate
from .constructions import (
    WreathSpec,
    cyclotomic,
    dual,
    generalized_wreath,
    is_generalized_wreath,
    is_star,
    tensor,
)
from .perm import PermGroup, regular_group, transitivity_module, two_equivalent
from .autsearch import aut_sring, refine
from .schurity import classify_e4cn, is_cyclotomic, is_normal_sring, is_schurian
from .enumeration import Catalog, enumerate_srings, run_property_suite

__all__ = [
    "AbelianGroup",
    "Automorphism",
    "GroupElement",
    "Section",
    "Subgroup",
    "aut_group",
    "generated_subgroup",
    "make_group",
    "section_make",
    "subgroup_from_members",
    "subgroups",
    "CycloValue",
    "char_value",
    "SRing",
    "validate",
    "sring_closure",
    "trivial_sring",
    "full_group_ring",
    "WreathSpec",
    "cyclotomic",
    "tensor",
    "generalized_wreath",
    "is_generalized_wreath",
    "is_star",
    "dual",
    "PermGroup",
    "regular_group",
    "transitivity_module",
    "two_equivalent",
    "aut_sring",
    "refine",
    "is_schurian",
    "is_cyclotomic",
    "is_normal_sring",
    "classify_e4cn",
    "Catalog",
    "enumerate_srings",
    "run_property_suite",
]

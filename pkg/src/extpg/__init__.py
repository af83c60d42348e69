"""Extended projective geometries over GF(q^2): constructions, minors and density tools."""

from .construct import (
    build_epg,
    build_extension_rep,
    build_pg,
    epg_size_formula,
    growth_rate_formula,
    kung_bound,
    random_projection_member,
)
from .field import FieldSpec, decompose, field_of_order, frobenius, make_field, pick_omega, subfield_elements
from .matroid import (
    PGHandle,
    RepMatroid,
    certify_pg,
    closure,
    contract,
    delete,
    find_isomorphism,
    is_projective_geometry,
    matroid_isomorphic,
    num_points,
    rank_of,
    restrict,
    si,
)
from .normalize import has_pg_minor, normalize_spanning_pg

__all__ = [
    "FieldSpec", "PGHandle", "RepMatroid", "build_epg", "build_extension_rep", "build_pg", "certify_pg",
    "closure", "contract", "decompose", "delete", "epg_size_formula", "field_of_order", "find_isomorphism",
    "frobenius", "growth_rate_formula", "has_pg_minor", "is_projective_geometry", "kung_bound", "make_field",
    "matroid_isomorphic", "normalize_spanning_pg", "num_points", "pick_omega", "random_projection_member",
    "rank_of", "restrict", "si", "subfield_elements",
]

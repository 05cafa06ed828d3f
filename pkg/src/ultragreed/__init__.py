"""Exact computation of maximum-perimeter greedoids of finite ultrametric
triples, and of finite-field vector families whose Gaussian elimination
greedoids realize them."""

from .field import FieldElement, FieldError, FieldSpec, field_enumerate, field_make
from .geg import (
    VectorFamily,
    enumerate_greedoid,
    field_determinant,
    member,
    member_by_determinant,
    plucker_check,
    ring_determinant,
    vandermonde_monic_check,
)
from .laurent import Laurent, monomial
from .newick import ClockViolationError, NewickError, parse_newick, triple_from_tree
from .represent import (
    FieldTooSmallError,
    KBoundPreconditionError,
    Representation,
    ValadicEmbedding,
    build_representation,
    converse_search,
    kbound_scalars,
    valadic_embed,
    valadic_verify,
)
from .setsys import (
    GreedySchedule,
    SetSystem,
    bhargava_greedoid,
    check_greedoid_axioms,
    check_level_exchange,
    greedy_schedule,
    max_perimeters,
    transport,
)
from .ultra import (
    ANY_DISTANCE,
    BallPartition,
    UltrametricError,
    UltraTriple,
    mod_m_triple,
)

__all__ = [
    "ANY_DISTANCE",
    "BallPartition",
    "ClockViolationError",
    "FieldElement",
    "FieldError",
    "FieldSpec",
    "FieldTooSmallError",
    "GreedySchedule",
    "KBoundPreconditionError",
    "Laurent",
    "NewickError",
    "Representation",
    "SetSystem",
    "UltraTriple",
    "UltrametricError",
    "ValadicEmbedding",
    "VectorFamily",
    "bhargava_greedoid",
    "build_representation",
    "check_greedoid_axioms",
    "check_level_exchange",
    "converse_search",
    "enumerate_greedoid",
    "field_determinant",
    "field_enumerate",
    "field_make",
    "greedy_schedule",
    "kbound_scalars",
    "max_perimeters",
    "member",
    "member_by_determinant",
    "mod_m_triple",
    "monomial",
    "parse_newick",
    "plucker_check",
    "ring_determinant",
    "transport",
    "triple_from_tree",
    "valadic_embed",
    "valadic_verify",
    "vandermonde_monic_check",
]

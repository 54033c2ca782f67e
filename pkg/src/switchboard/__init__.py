"""Finite switchboards: validation, labeling, amalgamation, types and heights."""

from .amalg import (
    AmalgamResult,
    PartialRelation,
    amalgamate,
    free_amalgam_one_point,
    is_freely_amalgamated,
    transitive_closure,
    union_closure,
)
from .core import (
    LabeledSwitchboard,
    Switchboard,
    TriangleRelation,
    ValidationReport,
    Violation,
    edge,
    enumerate_labelings,
    from_triangle,
    isomorphic,
    label_canonical,
    relabel,
    restrict,
    to_triangle,
    validate,
    validate_triangle,
)
from .errors import EnumerationCapExceeded, FormatError, InvalidStructure, PreconditionError, SwitchboardError
from .formula import evaluate, parse_formula, phi_poset, to_text
from .generic import (
    OneTypeSpec,
    TwoTypeSpec,
    free_copy,
    random_extension,
    random_labeled,
    random_two_type,
    witness_down,
    witness_up,
)
from .io import dumps, load, loads
from .order import FinitePoset, chain_switchboard, edge_poset, hgt_all, validate_poset
from .qftypes import (
    QfType,
    build_core_sequence,
    check_core_conclusions,
    is_distinguished,
    is_half_symmetric,
    is_symmetric,
    qf_type,
    two_stage_symmetry,
)

__version__ = "0.1.0"

__all__ = [
    "AmalgamResult",
    "EnumerationCapExceeded",
    "FinitePoset",
    "FormatError",
    "InvalidStructure",
    "LabeledSwitchboard",
    "OneTypeSpec",
    "PartialRelation",
    "PreconditionError",
    "QfType",
    "Switchboard",
    "SwitchboardError",
    "TriangleRelation",
    "TwoTypeSpec",
    "ValidationReport",
    "Violation",
    "amalgamate",
    "build_core_sequence",
    "chain_switchboard",
    "check_core_conclusions",
    "dumps",
    "edge",
    "edge_poset",
    "enumerate_labelings",
    "evaluate",
    "free_amalgam_one_point",
    "free_copy",
    "from_triangle",
    "hgt_all",
    "is_distinguished",
    "is_freely_amalgamated",
    "is_half_symmetric",
    "is_symmetric",
    "isomorphic",
    "label_canonical",
    "load",
    "loads",
    "parse_formula",
    "phi_poset",
    "qf_type",
    "random_extension",
    "random_labeled",
    "random_two_type",
    "relabel",
    "restrict",
    "to_text",
    "to_triangle",
    "transitive_closure",
    "two_stage_symmetry",
    "union_closure",
    "validate",
    "validate_poset",
    "validate_triangle",
    "witness_down",
    "witness_up",
]

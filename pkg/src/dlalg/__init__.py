"""Exact polynomial models of Lie algebroids, 2-term representations up to homotopy and matched pairs."""

__version__ = "0.1.0"

from .polyring import BACKEND, ParseError, Poly, RingMismatch, UnknownVariable, VarRing, nonzero_witness, parse_expr
from .report import Entry, Report
from .algebroid import AForm, Algebroid, VectorField, check_lie_algebroid, koszul_differential
from .connection import Conn, curvature, dual_connection, induced_connections
from .tworep import (
    NotVerified,
    SplittingChange,
    TwoRep,
    change_splitting,
    dual_tworep,
    structure_operator_check,
    validate_tworep,
)
from .matched import (
    MatchedPair,
    change_pair_splitting,
    check_matched,
    core_algebroid,
    poisson_on_cstar,
    vacant_from_representations,
)
from .tangent import TangentInput, basic_connections, basic_curvature, tangent_double_matched_pair
from .doubles import (
    DoublePair,
    FiberedAlgebroid,
    build_dual_algebroids,
    build_vb_algebroid,
    check_bialgebroid,
    oracle_equivalence,
    vf_bracket,
)
from .model import ModelError, load_model

__all__ = [
    "__version__", "BACKEND", "ParseError", "Poly", "RingMismatch", "UnknownVariable", "VarRing",
    "nonzero_witness", "parse_expr", "Entry", "Report", "AForm", "Algebroid", "VectorField",
    "check_lie_algebroid", "koszul_differential", "Conn", "curvature", "dual_connection",
    "induced_connections", "NotVerified", "SplittingChange", "TwoRep", "change_splitting",
    "dual_tworep", "structure_operator_check", "validate_tworep", "MatchedPair",
    "change_pair_splitting", "check_matched", "core_algebroid", "poisson_on_cstar",
    "vacant_from_representations", "TangentInput", "basic_connections", "basic_curvature",
    "tangent_double_matched_pair", "DoublePair", "FiberedAlgebroid", "build_dual_algebroids",
    "build_vb_algebroid", "check_bialgebroid", "oracle_equivalence", "vf_bracket", "ModelError",
    "load_model",
]

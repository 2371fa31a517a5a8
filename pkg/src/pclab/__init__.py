"""Polynomial calculus lower-bound laboratory for graph colouring."""
from .algebra import BooleanAxiom, MonomialOrder, Polynomial, Variable, monomial
from .closure import closure, closure_with_witness, descendants, find_hop_or_lasso, is_closed, resolution_closure
from .encodings import CnfFormula, ColInstance, cnf_to_polynomials, encode_cnf, encode_polynomials
from .errors import DomainError, InvariantViolation, PclabError, PreconditionError, ResourceError
from .field import GF2, QQ, Field
from .graphs import (
    Graph,
    VertexOrder,
    check_sparsity,
    chromatic_number,
    contract,
    high_degree_cover,
    is_k_colourable,
    sample_gnp,
    sample_regular,
)
from .ideal import GroebnerBasis, common_roots, groebner, ideal_membership, is_reducible, reduce
from .pcdegree import min_refutation_degree, pc_degree_refutable, replay_certificate

__version__ = "0.1.0"

__all__ = [
    "BooleanAxiom",
    "CnfFormula",
    "ColInstance",
    "DomainError",
    "Field",
    "GF2",
    "Graph",
    "GroebnerBasis",
    "InvariantViolation",
    "MonomialOrder",
    "PclabError",
    "Polynomial",
    "PreconditionError",
    "QQ",
    "ResourceError",
    "Variable",
    "VertexOrder",
    "check_sparsity",
    "chromatic_number",
    "closure",
    "closure_with_witness",
    "cnf_to_polynomials",
    "common_roots",
    "contract",
    "descendants",
    "encode_cnf",
    "encode_polynomials",
    "find_hop_or_lasso",
    "groebner",
    "high_degree_cover",
    "ideal_membership",
    "is_closed",
    "is_k_colourable",
    "is_reducible",
    "min_refutation_degree",
    "monomial",
    "pc_degree_refutable",
    "reduce",
    "replay_certificate",
    "resolution_closure",
    "sample_gnp",
    "sample_regular",
]

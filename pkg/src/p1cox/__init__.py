"""Exact Cox-ring computations for hypersurfaces in P^1 x Z."""
from .ring import (
    MonomialOrder,
    ParseError,
    Polynomial,
    Ring,
    RingMismatchError,
    UnknownVariableError,
    block,
    compare_monomials,
    grevlex,
    lex,
    parse_polynomial,
    poly_arith,
)
from .grading import (
    GradedRing,
    GradingGroup,
    MultiDegree,
    NotHomogeneousError,
    ZeroPolynomialError,
    degree_arith,
    degree_of,
    make_ring,
)
from .groebner import (
    Budget,
    GroebnerBasis,
    Ideal,
    ResourceLimitError,
    check_regular_sequence,
    eliminate,
    groebner_basis,
    ideal_quotient,
    ideals_equal,
    normal_form,
    saturate,
    saturate_aux,
)
from .presentation import (
    CoxEquation,
    DegreeZeroInP1Error,
    HypothesisReport,
    PresentedCoxRing,
    build_presentation,
    check_hypotheses,
    cox_equation,
    expand_cox_equation,
    target_ring,
)
from .verifier import (
    Certificate,
    CertificateBundle,
    full_certificate,
    verify_elimination_identity,
    verify_localization,
    verify_regular_sequence_in_B,
)
from .birgeom import (
    ConeReport,
    DegeneracyMatrices,
    IndeterminacyLocus,
    KernelRankUnexpected,
    NotOnHypersurface,
    OutOfRange,
    RationalPoint,
    build_matrices,
    cones,
    forward_map,
    inverse_map,
)

__version__ = "0.1.0"

__all__ = [
    "MonomialOrder",
    "ParseError",
    "Polynomial",
    "Ring",
    "RingMismatchError",
    "UnknownVariableError",
    "block",
    "compare_monomials",
    "grevlex",
    "lex",
    "parse_polynomial",
    "poly_arith",
    "GradedRing",
    "GradingGroup",
    "MultiDegree",
    "NotHomogeneousError",
    "ZeroPolynomialError",
    "degree_arith",
    "degree_of",
    "make_ring",
    "Budget",
    "GroebnerBasis",
    "Ideal",
    "ResourceLimitError",
    "check_regular_sequence",
    "eliminate",
    "groebner_basis",
    "ideal_quotient",
    "ideals_equal",
    "normal_form",
    "saturate",
    "saturate_aux",
    "CoxEquation",
    "DegreeZeroInP1Error",
    "HypothesisReport",
    "PresentedCoxRing",
    "build_presentation",
    "check_hypotheses",
    "cox_equation",
    "expand_cox_equation",
    "target_ring",
    "Certificate",
    "CertificateBundle",
    "full_certificate",
    "verify_elimination_identity",
    "verify_localization",
    "verify_regular_sequence_in_B",
    "ConeReport",
    "DegeneracyMatrices",
    "IndeterminacyLocus",
    "KernelRankUnexpected",
    "NotOnHypersurface",
    "OutOfRange",
    "RationalPoint",
    "build_matrices",
    "cones",
    "forward_map",
    "inverse_map",
]

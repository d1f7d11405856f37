"""Deformed combinatorial calculus and multivariate occupancy distributions.

Two-parameter deformed numbers, factorials and binomial coefficients; the
capacity-one (Fermi-Dirac) and unlimited-capacity (Bose-Einstein)
multivariate occupancy laws built from them; and an exact brute-force
enumeration oracle that cross-checks every closed-form identity, normalizer
and moment at desk scale.
"""

from .algebra import (
    AlgebraSpec,
    MonomialFit,
    TriangularRecurrenceReport,
    arik_coon,
    chakrabarty_jagannathan,
    check_triangular_recurrence,
    classical_algebra,
    compositions,
    custom_algebra,
    deformed_binomial,
    deformed_factorial,
    deformed_falling_factorial,
    deformed_number,
    fit_monomial,
    inverse_algebra,
    jagannathan_srinivasa,
    load_algebra_config,
    make_preset,
    q_deformation,
    quesne,
)
from .errors import (
    CapacityError,
    ModeMixError,
    RpqError,
    ValidationError,
    ZeroProbabilityEventError,
)
from .first_kind import ConstructionReport, FirstKindParams, GroupingScheme
from .identities import (
    IdentityReport,
    cauchy_lhs,
    hs1_lhs,
    hs2_lhs,
    hsa_lhs,
    hsb_lhs,
    verify_identity,
)
from .lattice import ConstraintSet, count_points, enumerate_points, weighted_sum
from .pmf import ClosedFormCheck, MomentReport, PmfTable, oracle_expectation
from .sampler import SampleBatch, SplitMix64, path_probabilities, sample, sequential_sample
from .second_kind import SecondKindParams

__all__ = [
    "AlgebraSpec",
    "CapacityError",
    "ClosedFormCheck",
    "ConstraintSet",
    "ConstructionReport",
    "FirstKindParams",
    "GroupingScheme",
    "IdentityReport",
    "ModeMixError",
    "MomentReport",
    "MonomialFit",
    "PmfTable",
    "RpqError",
    "SampleBatch",
    "SecondKindParams",
    "SplitMix64",
    "TriangularRecurrenceReport",
    "ValidationError",
    "ZeroProbabilityEventError",
    "arik_coon",
    "cauchy_lhs",
    "chakrabarty_jagannathan",
    "check_triangular_recurrence",
    "classical_algebra",
    "compositions",
    "count_points",
    "custom_algebra",
    "deformed_binomial",
    "deformed_factorial",
    "deformed_falling_factorial",
    "deformed_number",
    "enumerate_points",
    "fit_monomial",
    "hs1_lhs",
    "hs2_lhs",
    "hsa_lhs",
    "hsb_lhs",
    "inverse_algebra",
    "jagannathan_srinivasa",
    "load_algebra_config",
    "make_preset",
    "oracle_expectation",
    "path_probabilities",
    "q_deformation",
    "quesne",
    "sample",
    "sequential_sample",
    "verify_identity",
    "weighted_sum",
]

"""Chain mappings of open quantum systems via orthogonal polynomials."""

from chainmap.chain import (
    ChainParameters,
    DiscretisedStarModel,
    bulla_recursion_check,
    chain_from_coefficients,
    hahn_chain,
    jacobi_chain,
    laguerre_chain,
    littleq_chain,
    littleq_transform,
)
from chainmap.asymptotics import SzegoReport, szego_check, tail_diagnostics
from chainmap.measures import (
    Gapped,
    LinearDiscretised,
    LogDiscretised,
    Measure,
    PointMasses,
    PowerLawExpCutoff,
    PowerLawHardCutoff,
    Tabulated,
    eta0,
    induced_measure,
    split_gapped,
)
from chainmap.orthopoly import (
    Engine,
    QuadratureRule,
    RecurrenceCoefficients,
    affine_transform,
    gauss_rule,
    lanczos_rkpw,
    moment_gram_schmidt,
    stieltjes_discretised,
    to_orthonormal,
)
from chainmap.pipeline import compare, map_density, star_model

__version__ = "0.1.0"

__all__ = [
    "affine_transform",
    "bulla_recursion_check",
    "chain_from_coefficients",
    "ChainParameters",
    "compare",
    "DiscretisedStarModel",
    "Engine",
    "eta0",
    "Gapped",
    "gauss_rule",
    "hahn_chain",
    "induced_measure",
    "jacobi_chain",
    "laguerre_chain",
    "lanczos_rkpw",
    "LinearDiscretised",
    "littleq_chain",
    "littleq_transform",
    "LogDiscretised",
    "map_density",
    "Measure",
    "moment_gram_schmidt",
    "PointMasses",
    "PowerLawExpCutoff",
    "PowerLawHardCutoff",
    "QuadratureRule",
    "RecurrenceCoefficients",
    "split_gapped",
    "star_model",
    "stieltjes_discretised",
    "szego_check",
    "SzegoReport",
    "Tabulated",
    "tail_diagnostics",
    "to_orthonormal",
]

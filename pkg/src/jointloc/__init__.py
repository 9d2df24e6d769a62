"""Joint localizability and joint measurability quantifiers for finite-dimensional PVM pairs."""

from .distances import DistanceResult, kantorovich_value, linf_distance, werner_distance
from .metric_space import FiniteMetricSpace, cyclic, discrete, explicit, hamming_rescaled
from .observables import (
    JointPovm,
    Povm,
    ProbabilityDistribution,
    Pvm,
    family_qubit_covariant,
    family_smeared,
    family_trivial,
    induced_distribution,
    marginals,
)
from .verification import CheckReport, run_suite
from .widths import WidthResult, binary_entropy, errorbar_width, localization_error, overall_width
from .witnesses import posterior_records, theorem1_witness

__version__ = "0.1.0"

__all__ = [
    "CheckReport",
    "DistanceResult",
    "FiniteMetricSpace",
    "JointPovm",
    "Povm",
    "ProbabilityDistribution",
    "Pvm",
    "WidthResult",
    "binary_entropy",
    "cyclic",
    "discrete",
    "errorbar_width",
    "explicit",
    "family_qubit_covariant",
    "family_smeared",
    "family_trivial",
    "hamming_rescaled",
    "induced_distribution",
    "kantorovich_value",
    "linf_distance",
    "localization_error",
    "marginals",
    "overall_width",
    "posterior_records",
    "run_suite",
    "theorem1_witness",
    "werner_distance",
]

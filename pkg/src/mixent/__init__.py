"""mixent: entropy of lattice-Gaussian mixtures, the deficit
``H(Z) + h(X) - h(X+Z)``, and the closed-form bounds that sandwich it."""

from .bounds import (
    BoundReport,
    bernoulli_lower_bound,
    big_sigma_lower_bound,
    lemma1_upper_bound,
    lemma3_near_zero_term,
    lemma4_far_term,
    sandwich_report,
    theorem1_upper_bound,
)
from .distributions import (
    DiscreteLattice,
    DistributionError,
    GaussianDensity,
    MixtureDensity,
    UniformDensity,
    tail_mass,
)
from .entropy import (
    EntropyMethod,
    EntropyValue,
    McConfig,
    deficit_direct,
    deficit_via_identity,
    discrete_entropy,
    gaussian_entropy,
    mc_entropy,
    mixture_entropy,
)
from .landauer import (
    BitMemoryModel,
    ResetReport,
    binary_entropy,
    rescale_to_unit_lattice,
    reset_report,
)
from .numerics import (
    DomainError,
    InvalidInterval,
    NonConvergence,
    QuadratureConfig,
    QuadratureResult,
    gaussian_tail_lower,
    integrate,
    lattice_sum,
    lattice_sum_excluding_zero,
)

__version__ = "0.1.0"

__all__ = [
    "BitMemoryModel",
    "BoundReport",
    "DiscreteLattice",
    "DistributionError",
    "DomainError",
    "EntropyMethod",
    "EntropyValue",
    "GaussianDensity",
    "InvalidInterval",
    "McConfig",
    "MixtureDensity",
    "NonConvergence",
    "QuadratureConfig",
    "QuadratureResult",
    "ResetReport",
    "UniformDensity",
    "bernoulli_lower_bound",
    "big_sigma_lower_bound",
    "binary_entropy",
    "deficit_direct",
    "deficit_via_identity",
    "discrete_entropy",
    "gaussian_entropy",
    "gaussian_tail_lower",
    "integrate",
    "lattice_sum",
    "lattice_sum_excluding_zero",
    "lemma1_upper_bound",
    "lemma3_near_zero_term",
    "lemma4_far_term",
    "mc_entropy",
    "mixture_entropy",
    "rescale_to_unit_lattice",
    "reset_report",
    "sandwich_report",
    "tail_mass",
    "theorem1_upper_bound",
]

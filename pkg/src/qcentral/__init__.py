"""Central multipliers for free orthogonal and unitary quantum groups.

Numerical companion: dilated Chebyshev and q-Hermite special functions,
the SU_q(2) Toeplitz model with its Jacobi eigenvectors, the multiplier
coefficients b_d(z), fusion rings, structure diagnostics of F and the
free-product truncation scheduler.
"""

from . import fusion, multipliers, qspecial, schedule, structure, suq2_model
from .multipliers import b_coeff, summability_report, truncate_multiplier
from .qspecial import QParam, chebyshev_mu, q_binomial, q_hermite, q_pochhammer
from .schedule import plan
from .structure import noninjectivity_check, profile
from .suq2_model import eta_vector, theta_pair

__version__ = "0.1.0"

__all__ = [
    "QParam",
    "b_coeff",
    "chebyshev_mu",
    "eta_vector",
    "fusion",
    "multipliers",
    "noninjectivity_check",
    "plan",
    "profile",
    "q_binomial",
    "q_hermite",
    "q_pochhammer",
    "qspecial",
    "schedule",
    "structure",
    "summability_report",
    "suq2_model",
    "theta_pair",
    "truncate_multiplier",
]

"""Shannon information entropies of Morse oscillator eigenstates."""

from ._kernels import BACKEND
from .entropy import (
    DensityCurve,
    EntropyResult,
    UncertaintyResult,
    bbm_bound,
    bbm_check,
    entropy_density_curve,
    entropy_p,
    entropy_x,
    scan_table,
    variance_uncertainty,
)
from .errors import (
    DomainError,
    InvalidStateError,
    MorsentError,
    NonConvergence,
    NonFinite,
    SupportNotFound,
)
from .momentum import phi_analytic, phi_quadrature, rho_p
from .morse import (
    Eigenstate,
    MorseParams,
    bound_state_count,
    eigenstate,
    potential,
    psi,
    rho_x,
    xi_of_x,
)
from .quad import QuadConfig, QuadResult, find_support, integrate

__version__ = "0.1.0"

"""Morse potential, bound-state parameters and position-space eigenfunctions.

Units default to hbar = alpha = 1, mu = 1/2, so that the Hamiltonian reads
-d^2/dx^2 + V(x) and the dissociation energy equals lambda**2.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import InvalidStateError
from .specfun import ln_gamma


@dataclass(frozen=True)
class MorseParams:
    """Well parameters.

    ``lam`` is the dimensionless depth sqrt(2 mu D) / (alpha hbar).
    """

    lam: float
    alpha: float = 1.0
    hbar: float = 1.0
    mu: float = 0.5

    def __post_init__(self):
        for name in ("lam", "alpha", "hbar", "mu"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise ValueError(f"{name} must be positive and finite, got {value!r}")

    @classmethod
    def from_physical(cls, depth, alpha=1.0, mu=0.5, hbar=1.0):
        """Build from the dissociation energy D."""
        if not depth > 0:
            raise ValueError(f"depth must be positive, got {depth!r}")
        return cls(math.sqrt(2.0 * mu * depth) / (alpha * hbar), alpha, hbar, mu)

    @property
    def depth(self):
        """Dissociation energy D."""
        return (self.lam * self.alpha * self.hbar) ** 2 / (2.0 * self.mu)

    @property
    def omega(self):
        return self.hbar * self.alpha**2 / (2.0 * self.mu)


@dataclass(frozen=True)
class Eigenstate:
    n: int
    s: float
    log_norm: float
    energy: float

    @property
    def norm(self):
        return math.exp(self.log_norm)


def potential(params, x):
    """V(x) = D e^{-ax}(e^{-ax} - 2); +inf once a*x < -700."""
    ax = params.alpha * np.asarray(x, dtype=np.float64)
    with np.errstate(over="ignore"):
        e = np.exp(-ax)
        v = np.where(ax < -700.0, np.inf, params.depth * e * (e - 2.0))
    return float(v) if v.ndim == 0 else v


def bound_state_count(params):
    """Number of n >= 0 with 2*lam - 2n - 1 > 0."""
    count = math.ceil(params.lam - 0.5)
    return max(count, 0)


def eigenstate(params, n):
    n = int(n)
    if not 0 <= n < bound_state_count(params):
        raise InvalidStateError(
            f"n={n} is not a bound state for lambda={params.lam} "
            f"({bound_state_count(params)} bound states)"
        )
    lam = params.lam
    s = 2.0 * lam - 2.0 * n - 1.0
    log_norm = 0.5 * (
        math.log(params.alpha) + math.log(s) + ln_gamma(n + 1.0) - ln_gamma(2.0 * lam - n)
    )
    energy = -(params.alpha * params.hbar) ** 2 / (8.0 * params.mu) * s * s
    return Eigenstate(n, s, log_norm, energy)


def eigenstates(params):
    return [eigenstate(params, n) for n in range(bound_state_count(params))]


def xi_of_x(params, x):
    """xi = 2 lam exp(-alpha x)."""
    xi = 2.0 * params.lam * np.exp(-params.alpha * np.asarray(x, dtype=np.float64))
    return float(xi) if xi.ndim == 0 else xi


def psi(params, state, x):
    """Real eigenfunction N e^{-xi/2} xi^{s/2} L_n^s(xi).

    The envelope is formed in log space; the Laguerre factor stays linear
    because it changes sign.
    """
    arr = np.asarray(x, dtype=np.float64)
    out = _kernels.psi_envelope(
        arr.ravel(),
        math.log(2.0 * params.lam),
        params.alpha,
        state.s,
        state.n,
        state.log_norm,
    ).reshape(arr.shape)
    return float(out) if arr.ndim == 0 else out


def rho_x(params, state, x):
    amp = psi(params, state, x)
    return amp * amp


def peak_position(params, state, points=400):
    """Coarse argmax of rho_x, scanned on a grid in xi."""
    xi_hi = 4.0 * state.n + 2.0 * state.s + 40.0
    xi = np.geomspace(1e-6 * max(state.s, 1.0), xi_hi, points)
    x = np.log(2.0 * params.lam / xi) / params.alpha
    return float(x[np.argmax(rho_x(params, state, x))])

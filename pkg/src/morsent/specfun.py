"""Special functions: log-Gamma (real and complex), digamma, associated Laguerre."""

import math
from dataclasses import dataclass

import numpy as np
from scipy import special as _sp

from . import _kernels
from .errors import DomainError


def ln_gamma(x):
    """Natural log of Gamma(x) for real x > 0."""
    x = float(x)
    if not x > 0.0:
        raise DomainError(f"ln_gamma requires x > 0, got {x!r}")
    return math.lgamma(x)


def digamma(x):
    """psi(x) = d/dx ln Gamma(x) for real x > 0."""
    x = float(x)
    if not x > 0.0:
        raise DomainError(f"digamma requires x > 0, got {x!r}")
    return float(_sp.digamma(x))


def ln_gamma_complex(z):
    """Log-Gamma on the right half plane.

    The branch is the one analytic on Re(z) > 0 and real on the positive
    real axis, so the phase is continuous along vertical lines ``a + ip``.
    It is built from the upward recurrence (one principal log per step, each
    with argument in (-pi/2, pi/2)) followed by the Stirling series.

    Accepts a scalar or an array; returns the same shape.
    """
    arr = np.asarray(z, dtype=np.complex128)
    if np.any(arr.real <= 0.0):
        raise DomainError("ln_gamma_complex requires Re(z) > 0")
    out = _kernels.lgamma_complex(arr.ravel()).reshape(arr.shape)
    return complex(out) if arr.ndim == 0 else out


def laguerre_eval(n, s, xi):
    """Associated Laguerre polynomial L_n^s(xi) by the three-term recurrence.

    Parameters
    ----------
    n : int
        degree, n >= 0
    s : float
        superscript parameter
    xi : float or numpy.ndarray
        evaluation points, xi >= 0

    Returns
    -------
    float or numpy.ndarray
    """
    n = _check_degree(n)
    arr = np.asarray(xi, dtype=np.float64)
    out = _kernels.laguerre(n, float(s), arr.ravel()).reshape(arr.shape)
    return float(out) if arr.ndim == 0 else out


@dataclass(frozen=True)
class LaguerreCoeffs:
    """Monomial coefficients of L_n^s: L_n^s(xi) = sum_k coeffs[k] xi^k."""

    n: int
    s: float
    coeffs: np.ndarray

    def __call__(self, xi):
        # descending-power Horner
        xi = np.asarray(xi, dtype=np.float64)
        acc = np.zeros_like(xi)
        for c in self.coeffs[::-1]:
            acc = acc * xi + c
        return acc

    def log_abs(self):
        """ln|c_k| computed without forming c_k, safe for large n + s."""
        return np.array([_log_abs_coeff(self.n, self.s, k) for k in range(self.n + 1)])

    def signs(self):
        return np.array([(-1.0) ** k for k in range(self.n + 1)])


def laguerre_coeffs(n, s):
    """c_k = (-1)^k Gamma(n+s+1) / (Gamma(s+k+1) (n-k)! k!), k = 0..n."""
    n = _check_degree(n)
    s = float(s)
    if not s > 0.0:
        raise DomainError(f"laguerre_coeffs requires s > 0, got {s!r}")
    coeffs = np.array(
        [(-1.0) ** k * math.exp(_log_abs_coeff(n, s, k)) for k in range(n + 1)]
    )
    return LaguerreCoeffs(n, s, coeffs)


def _log_abs_coeff(n, s, k):
    return (
        math.lgamma(n + s + 1.0)
        - math.lgamma(s + k + 1.0)
        - math.lgamma(n - k + 1.0)
        - math.lgamma(k + 1.0)
    )


def _check_degree(n):
    if int(n) != n or n < 0:
        raise DomainError(f"degree must be a non-negative integer, got {n!r}")
    return int(n)

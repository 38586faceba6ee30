"""Momentum-space wavefunctions.

With xi = 2 lam e^{-alpha x} every monomial of the Laguerre expansion
transforms in closed form,

    int e^{-ipx/hbar} xi^a e^{-xi/2} dx = (2 lam)^{-iq} 2^{a+iq} Gamma(a+iq) / alpha,

where q = p / (hbar alpha).  ``phi_analytic`` sums these terms;
``phi_quadrature`` integrates psi against the Fourier kernel directly and
serves as an independent check on the closed form and its phase.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .morse import peak_position, psi, rho_x
from .quad import QuadConfig, find_support, integrate
from .specfun import laguerre_coeffs

# support edge for the psi integrand of phi_quadrature, relative to peak rho_x
_PSI_SUPPORT_EPS = 1e-30


@dataclass(frozen=True)
class MomentumAmplitude:
    p: float
    value: complex

    @property
    def density(self):
        return abs(self.value) ** 2


def _series_terms(state):
    lc = laguerre_coeffs(state.n, state.s)
    return lc.log_abs(), lc.signs()


def phi_analytic(params, state, p):
    """phi(p) from the Gamma series; scalar or array p."""
    arr = np.asarray(p, dtype=np.float64)
    log_abs_c, sign_c = _series_terms(state)
    log_pref = (
        state.log_norm
        - math.log(params.alpha)
        - 0.5 * math.log(2.0 * math.pi * params.hbar)
    )
    q = arr.ravel() / (params.hbar * params.alpha)
    out = _kernels.phi_series(
        q, math.log(2.0 * params.lam), state.s, log_abs_c, sign_c, log_pref
    ).reshape(arr.shape)
    return complex(out) if arr.ndim == 0 else out


def rho_p(params, state, p):
    amp = phi_analytic(params, state, p)
    dens = amp.real**2 + amp.imag**2
    return float(dens) if np.ndim(dens) == 0 else dens


def position_support(params, state, eps):
    x0 = peak_position(params, state)
    return find_support(
        lambda x: rho_x(params, state, x), x0, eps, scale=1.0 / params.alpha
    )


def phi_quadrature(params, state, p, cfg=None):
    """(2 pi hbar)^{-1/2} int psi(x) e^{-ipx/hbar} dx by adaptive quadrature."""
    cfg = cfg or QuadConfig()
    p = float(p)
    hbar = params.hbar
    lo, hi = position_support(params, state, _PSI_SUPPORT_EPS)
    width = math.pi * hbar / (2.0 * abs(p) + 1.0)
    k = p / hbar

    def re(x):
        return psi(params, state, x) * np.cos(k * x)

    def im(x):
        return -psi(params, state, x) * np.sin(k * x)

    scale = 1.0 / math.sqrt(2.0 * math.pi * hbar)
    real = integrate(re, lo, hi, cfg, max_width=width).value
    imag = integrate(im, lo, hi, cfg, max_width=width).value if p != 0.0 else 0.0
    return complex(scale * real, scale * imag)

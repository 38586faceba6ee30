"""Hot numeric kernels.

Every kernel exists twice: a vectorized pure-numpy version and an explicit
loop version that is compiled with ``numba.njit``.  The module-level names
(``laguerre``, ``lgamma_complex``, ``psi_envelope``, ``phi_series``,
``neg_xlogx``) point at the compiled variants unless numba is missing or the
environment variable ``MORSENT_NUMBA`` is set to ``0``.

The loop kernels work on 1-d arrays; the exported names accept any shape.
"""

import cmath
import math
import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a hard dependency in practice
    numba = None

_FLAG = os.environ.get("MORSENT_NUMBA", "1").strip().lower()
USE_NUMBA = numba is not None and _FLAG not in ("0", "false", "no", "off")

# entropy integrand clamp: t*ln(t) := 0 below this
TINY = 1e-300
# exp() underflows to exactly 0 below this
LOG_UNDERFLOW = -745.0
# Stirling series is used once Re(w) >= this
STIRLING_SHIFT = 10.0
# B_{2k} / (2k (2k-1)), k = 1..8
STIRLING_COEFFS = np.array(
    [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360360.0,
        1.0 / 156.0,
        -3617.0 / 122400.0,
    ]
)
HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
LN2 = math.log(2.0)


# --------------------------------------------------------------------------
# pure numpy
# --------------------------------------------------------------------------


def laguerre_np(n, s, xi):
    xi = np.asarray(xi, dtype=np.float64)
    prev = np.ones_like(xi)
    if n == 0:
        return prev
    cur = 1.0 + s - xi
    for k in range(2, n + 1):
        prev, cur = cur, ((2 * k - 1 + s - xi) * cur - (k - 1 + s) * prev) / k
    return cur


def lgamma_complex_np(z):
    z = np.asarray(z, dtype=np.complex128)
    shift = np.ceil(STIRLING_SHIFT - z.real)
    shift = np.where(shift > 0, shift, 0).astype(np.int64)
    acc = np.zeros_like(z)
    for j in range(int(shift.max()) if shift.size else 0):
        # phase accumulates term by term; each log has |arg| < pi/2
        acc += np.where(j < shift, np.log(z + j), 0.0)
    w = z + shift
    inv = 1.0 / w
    inv2 = inv * inv
    series = np.zeros_like(z)
    for c in STIRLING_COEFFS[::-1]:
        series = series * inv2 + c
    return (w - 0.5) * np.log(w) - w + HALF_LOG_2PI + series * inv - acc


def psi_envelope_np(x, log_2lam, alpha, s, n, log_norm):
    x = np.asarray(x, dtype=np.float64)
    log_xi = log_2lam - alpha * x
    out = np.zeros_like(x)
    ok = log_xi < 700.0
    xi = np.exp(log_xi[ok])
    log_env = log_norm - 0.5 * xi + 0.5 * s * log_xi[ok]
    live = log_env > LOG_UNDERFLOW
    vals = np.zeros_like(xi)
    vals[live] = np.exp(log_env[live]) * laguerre_np(n, s, xi[live])
    out[ok] = vals
    return out


def phi_series_np(q, log_2lam, s, log_abs_c, sign_c, log_pref):
    """Sum_k c_k 2^(a_k + iq) Gamma(a_k + iq), a_k = s/2 + k, times the prefactor."""
    q = np.asarray(q, dtype=np.float64)
    nterms = log_abs_c.shape[0]
    logs = np.empty((nterms, q.shape[0]), dtype=np.complex128)
    for k in range(nterms):
        z = (0.5 * s + k) + 1j * q
        logs[k] = log_abs_c[k] + z * LN2 + lgamma_complex_np(z)
    pivot = logs.real.max(axis=0)
    total = (sign_c[:, None] * np.exp(logs - pivot)).sum(axis=0)
    return np.exp(log_pref + pivot - 1j * q * log_2lam) * total


def neg_xlogx_np(t):
    t = np.asarray(t, dtype=np.float64)
    safe = np.where(t < TINY, 1.0, t)
    return np.where(t < TINY, 0.0, -safe * np.log(safe))


# --------------------------------------------------------------------------
# loop versions, compiled with numba when enabled
# --------------------------------------------------------------------------


def _laguerre_scalar(n, s, xi):
    prev = 1.0
    if n == 0:
        return prev
    cur = 1.0 + s - xi
    for k in range(2, n + 1):
        nxt = ((2 * k - 1 + s - xi) * cur - (k - 1 + s) * prev) / k
        prev = cur
        cur = nxt
    return cur


def _laguerre_loop(n, s, xi):
    out = np.empty(xi.shape[0], dtype=np.float64)
    for i in range(xi.shape[0]):
        out[i] = _laguerre_scalar(n, s, xi[i])
    return out


def _lgamma_complex_scalar(z, coeffs):
    acc = 0j
    w = z
    while w.real < STIRLING_SHIFT:
        acc += cmath.log(w)
        w += 1.0
    inv = 1.0 / w
    inv2 = inv * inv
    series = 0j
    for i in range(coeffs.shape[0] - 1, -1, -1):
        series = series * inv2 + coeffs[i]
    return (w - 0.5) * cmath.log(w) - w + HALF_LOG_2PI + series * inv - acc


def _lgamma_complex_loop(z):
    out = np.empty(z.shape[0], dtype=np.complex128)
    for i in range(z.shape[0]):
        out[i] = _lgamma_complex_scalar(z[i], STIRLING_COEFFS)
    return out


def _psi_envelope_loop(x, log_2lam, alpha, s, n, log_norm):
    out = np.zeros(x.shape[0], dtype=np.float64)
    for i in range(x.shape[0]):
        log_xi = log_2lam - alpha * x[i]
        if log_xi >= 700.0:
            continue
        xi = math.exp(log_xi)
        log_env = log_norm - 0.5 * xi + 0.5 * s * log_xi
        if log_env <= LOG_UNDERFLOW:
            continue
        out[i] = math.exp(log_env) * _laguerre_scalar(n, s, xi)
    return out


def _phi_series_loop(q, log_2lam, s, log_abs_c, sign_c, log_pref):
    nterms = log_abs_c.shape[0]
    out = np.empty(q.shape[0], dtype=np.complex128)
    logs = np.empty(nterms, dtype=np.complex128)
    for i in range(q.shape[0]):
        pivot = -np.inf
        for k in range(nterms):
            z = complex(0.5 * s + k, q[i])
            logs[k] = log_abs_c[k] + z * LN2 + _lgamma_complex_scalar(z, STIRLING_COEFFS)
            if logs[k].real > pivot:
                pivot = logs[k].real
        total = 0j
        for k in range(nterms):
            total += sign_c[k] * cmath.exp(logs[k] - pivot)
        out[i] = cmath.exp(complex(log_pref + pivot, -q[i] * log_2lam)) * total
    return out


def _neg_xlogx_loop(t):
    out = np.empty(t.shape[0], dtype=np.float64)
    for i in range(t.shape[0]):
        v = t[i]
        out[i] = 0.0 if v < TINY else -v * math.log(v)
    return out


if numba is not None:
    _jit = numba.njit(cache=True, nogil=True)
    _laguerre_scalar = _jit(_laguerre_scalar)
    _lgamma_complex_scalar = _jit(_lgamma_complex_scalar)
    laguerre_nb = _jit(_laguerre_loop)
    lgamma_complex_nb = _jit(_lgamma_complex_loop)
    psi_envelope_nb = _jit(_psi_envelope_loop)
    phi_series_nb = _jit(_phi_series_loop)
    neg_xlogx_nb = _jit(_neg_xlogx_loop)
else:  # pragma: no cover
    laguerre_nb = _laguerre_loop
    lgamma_complex_nb = _lgamma_complex_loop
    psi_envelope_nb = _psi_envelope_loop
    phi_series_nb = _phi_series_loop
    neg_xlogx_nb = _neg_xlogx_loop


def _flat(fn, pos=0):
    """Let a 1-d kernel accept any array shape in argument ``pos``."""

    def call(*args):
        args = list(args)
        arr = np.ascontiguousarray(args[pos])
        args[pos] = arr.ravel()
        return fn(*args).reshape(arr.shape)

    call.__wrapped__ = fn
    return call


def _backend(laguerre_fn, lgamma_fn, psi_fn, phi_fn, xlogx_fn):
    return {
        "laguerre": _flat(laguerre_fn, pos=2),
        "lgamma_complex": _flat(lgamma_fn),
        "psi_envelope": _flat(psi_fn),
        "phi_series": _flat(phi_fn),
        "neg_xlogx": _flat(xlogx_fn),
    }


BACKENDS = {
    "numpy": _backend(laguerre_np, lgamma_complex_np, psi_envelope_np,
                      phi_series_np, neg_xlogx_np),
    "numba": _backend(laguerre_nb, lgamma_complex_nb, psi_envelope_nb,
                      phi_series_nb, neg_xlogx_nb),
}

BACKEND = "numba" if USE_NUMBA else "numpy"
_active = BACKENDS[BACKEND]
laguerre = _active["laguerre"]
lgamma_complex = _active["lgamma_complex"]
psi_envelope = _active["psi_envelope"]
phi_series = _active["phi_series"]
neg_xlogx = _active["neg_xlogx"]

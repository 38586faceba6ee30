"""Shannon entropies, entropy densities and uncertainty checks."""

import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Mapping, Sequence

import numpy as np

from . import _kernels
from .errors import InvalidStateError, MorsentError
from .momentum import rho_p
from .morse import bound_state_count, eigenstate, peak_position, rho_x
from .quad import QuadConfig, find_support, integrate

log = logging.getLogger(__name__)

# truncation of the entropy integrals, relative to the density peak
ENTROPY_EPS = 1e-18
# truncation of plotted curves
CURVE_EPS = 1e-12
CURVE_POINTS = 800

POSITION = "position"
MOMENTUM = "momentum"

# (n, lambda) cells of the published table, in printed order
TABLE1_CELLS = {0: (1, 2, 3, 4), 1: (2, 3, 4, 5), 2: (3, 4, 5, 6), 3: (4, 5, 6, 7)}


@dataclass(frozen=True)
class EntropyResult:
    n: int
    lam: float
    s_x: float
    s_x_err: float
    s_p: float
    s_p_err: float
    sum: float
    bound: float
    margin: float

    @property
    def holds(self):
        """BBM inequality satisfied up to the numerical error budget."""
        return self.margin >= -(self.s_x_err + self.s_p_err)

    def as_dict(self):
        return {
            "n": self.n,
            "lambda": self.lam,
            "S_x": self.s_x,
            "S_x_err": self.s_x_err,
            "S_p": self.s_p,
            "S_p_err": self.s_p_err,
            "sum": self.sum,
            "bound": self.bound,
            "margin": self.margin,
        }


@dataclass(frozen=True)
class UncertaintyResult:
    delta_x: float
    delta_p: float
    product: float


@dataclass(frozen=True)
class DensityCurve:
    space: str
    coordinate: np.ndarray
    density: np.ndarray
    entropy_density: np.ndarray

    @property
    def points(self):
        return list(zip(self.coordinate.tolist(), self.density.tolist(),
                        self.entropy_density.tolist()))


def bbm_bound(dimensions=1):
    """N (1 + ln pi)."""
    if int(dimensions) != dimensions or dimensions < 1:
        raise ValueError(f"dimensions must be a positive integer, got {dimensions!r}")
    return dimensions * (1.0 + math.log(math.pi))


# --------------------------------------------------------------------------
# densities and supports
# --------------------------------------------------------------------------


def _density(params, state, space):
    if space == POSITION:
        return lambda x: rho_x(params, state, x)
    if space == MOMENTUM:
        return lambda p: rho_p(params, state, p)
    raise ValueError(f"unknown space {space!r}")


def _peak(params, state, space):
    if space == POSITION:
        return peak_position(params, state)
    width = params.hbar * params.alpha * (2.0 * params.lam + 10.0)
    grid = np.linspace(-width, width, 801)
    return float(grid[np.argmax(rho_p(params, state, grid))])


def support(params, state, space, eps=ENTROPY_EPS):
    """(lo, hi, peak_density) of the truncated domain; symmetric in momentum."""
    g = _density(params, state, space)
    x0 = _peak(params, state, space)
    scale = 1.0 / params.alpha if space == POSITION else params.hbar * params.alpha
    lo, hi = find_support(g, x0, eps, scale=scale)
    if space == MOMENTUM:
        hi = max(-lo, hi)
        lo = -hi
    return lo, hi, float(g(np.array([x0]))[0])


def _entropy(params, state, space, cfg):
    cfg = cfg or QuadConfig()
    g = _density(params, state, space)
    lo, hi, g_max = support(params, state, space)
    res = integrate(lambda t: _kernels.neg_xlogx(g(t)), lo, hi, cfg)
    edge = ENTROPY_EPS * g_max
    tail = edge * (1.0 + abs(math.log(edge))) * (hi - lo)
    return res.value, res.error_estimate + tail


def entropy_x(params, state, cfg=None):
    """Position entropy -int rho ln rho dx in nats, with an error bound."""
    return _entropy(params, state, POSITION, cfg)


def entropy_p(params, state, cfg=None):
    """Momentum entropy -int rho ln rho dp in nats, with an error bound."""
    return _entropy(params, state, MOMENTUM, cfg)


def bbm_check(params, state, cfg=None):
    s_x, s_x_err = entropy_x(params, state, cfg)
    s_p, s_p_err = entropy_p(params, state, cfg)
    total = s_x + s_p
    bound = bbm_bound(1)
    return EntropyResult(state.n, params.lam, s_x, s_x_err, s_p, s_p_err,
                         total, bound, total - bound)


def normalization(params, state, space, cfg=None):
    """int rho over the truncated domain (should be 1)."""
    g = _density(params, state, space)
    lo, hi, _ = support(params, state, space)
    return integrate(g, lo, hi, cfg or QuadConfig()).value


def variance_uncertainty(params, state, cfg=None):
    """Standard deviations of x and p and their product."""
    cfg = cfg or QuadConfig()

    def spread(space):
        g = _density(params, state, space)
        lo, hi, _ = support(params, state, space)
        mean = integrate(lambda t: t * g(t), lo, hi, cfg).value
        var = integrate(lambda t: (t - mean) ** 2 * g(t), lo, hi, cfg).value
        return math.sqrt(var)

    dx = spread(POSITION)
    dp = spread(MOMENTUM)
    return UncertaintyResult(dx, dp, dx * dp)


def entropy_density_curve(params, state, space, grid="auto"):
    """Sample density and signed entropy density rho ln rho on a grid.

    ``grid`` is ``"auto"`` or ``(lo, hi, count)``.
    """
    g = _density(params, state, space)
    if isinstance(grid, str):
        if grid != "auto":
            raise ValueError(f"grid must be 'auto' or (lo, hi, count), got {grid!r}")
        lo, hi, _ = support(params, state, space, CURVE_EPS)
        count = CURVE_POINTS
    else:
        lo, hi, count = grid
    if not (lo < hi and int(count) >= 2):
        raise ValueError(f"bad grid {grid!r}")
    coord = np.linspace(lo, hi, int(count))
    if space == MOMENTUM and lo == -hi:
        # mirror exactly so parity holds bit-for-bit at plot resolution
        coord = 0.5 * (coord - coord[::-1])
    dens = np.asarray(g(coord), dtype=np.float64)
    ent = 0.0 - _kernels.neg_xlogx(dens)
    return DensityCurve(space, coord, dens, ent)


# --------------------------------------------------------------------------
# scans
# --------------------------------------------------------------------------


def table_cells(n_list, lambda_list):
    """Expand selectors into ordered (n, lambda) pairs, n-major.

    ``lambda_list`` is either one sequence shared by every n or a mapping
    from n to its own sequence.
    """
    cells = []
    for n in n_list:
        lams = lambda_list[n] if isinstance(lambda_list, Mapping) else lambda_list
        cells.extend((int(n), float(lam)) for lam in lams)
    return cells


def _threads():
    raw = os.environ.get("MORSENT_THREADS", "").strip()
    count = int(raw) if raw else 0
    return count if count > 0 else (os.cpu_count() or 1)


def scan_table(params_base, n_list, lambda_list, cfg=None, *, diagnostics=None,
               threads=None):
    """BBM results for every valid (n, lambda) cell, in n-major order.

    Invalid cells are skipped and numerical failures do not stop the scan.
    Both are appended to ``diagnostics`` (if given) as
    ``(n, lambda, kind, message)`` with kind ``"skipped"`` or ``"failed"``.
    """
    cells = table_cells(n_list, lambda_list)
    diag = diagnostics if diagnostics is not None else []

    def run(cell):
        n, lam = cell
        params = replace(params_base, lam=lam)
        try:
            return bbm_check(params, eigenstate(params, n), cfg)
        except InvalidStateError as exc:
            return ("skipped", str(exc))
        except MorsentError as exc:
            return ("failed", f"{type(exc).__name__}: {exc}")

    workers = threads or _threads()
    if workers > 1 and len(cells) > 1:
        with ThreadPoolExecutor(max_workers=min(workers, len(cells))) as pool:
            outcomes = list(pool.map(run, cells))
    else:
        outcomes = [run(c) for c in cells]

    results = []
    for (n, lam), out in zip(cells, outcomes):
        if isinstance(out, EntropyResult):
            results.append(out)
            continue
        kind, message = out
        level = logging.DEBUG if kind == "skipped" else logging.WARNING
        log.log(level, "cell (n=%d, lambda=%g) %s: %s", n, lam, kind, message)
        diag.append((n, lam, kind, message))
    return results


def valid_states(params_base, lambdas: Sequence[float], n_list=None):
    """(params, state) for every bound state at each lambda (optionally filtered by n)."""
    out = []
    for lam in lambdas:
        params = replace(params_base, lam=float(lam))
        for n in range(bound_state_count(params)):
            if n_list is None or n in n_list:
                out.append((params, eigenstate(params, n)))
    return out

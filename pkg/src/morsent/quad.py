"""Adaptive Gauss-Kronrod (7/15) integration and support truncation."""

import heapq
import math
from dataclasses import dataclass

import numpy as np

from .errors import NonConvergence, NonFinite, SupportNotFound

# Kronrod 15-point nodes (non-negative half) and weights; the Gauss 7-point
# rule uses every other node.
_XK = np.array(
    [
        0.991455371120812639206854697526329,
        0.949107912342758524526189684047851,
        0.864864423359769072789712788640926,
        0.741531185599394439863864773280788,
        0.586087235467691130294144845693013,
        0.405845151377397166906606412076961,
        0.207784955007898467600689403773245,
        0.0,
    ]
)
_WK = np.array(
    [
        0.022935322010529224963732008058970,
        0.063092092629978553290700663189204,
        0.104790010322250183839876322541518,
        0.140653259715525918745189590510238,
        0.169004726639267902826583426598550,
        0.190350578064785409913256402421014,
        0.204432940075298892414161999234649,
        0.209482141084727828012999174891714,
    ]
)
_WG = np.array(
    [
        0.129484966168869693270611432679082,
        0.279705391489276667901467771423780,
        0.381830050505118944950369775488975,
        0.417959183673469387755102040816327,
    ]
)

NODES = np.concatenate([-_XK[:-1], [0.0], _XK[-2::-1]])
KRONROD_WEIGHTS = np.concatenate([_WK[:-1], [_WK[-1]], _WK[-2::-1]])
GAUSS_WEIGHTS = np.zeros(15)
GAUSS_WEIGHTS[1::2] = np.concatenate([_WG[:-1], [_WG[-1]], _WG[-2::-1]])


@dataclass(frozen=True)
class QuadConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_subdivisions: int = 2000

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")

    def target(self, value):
        return max(self.abs_tol, self.rel_tol * abs(value))


@dataclass(frozen=True)
class QuadResult:
    value: float
    error_estimate: float
    evaluations: int


def _eval(f, x):
    """Evaluate f on an array of nodes; scalar-only callables are mapped."""
    try:
        vals = np.asarray(f(x), dtype=np.float64)
    except TypeError:
        vals = None
    if vals is None or vals.shape != x.shape:
        vals = np.array([f(t) for t in x.ravel()], dtype=np.float64).reshape(x.shape)
    if not np.all(np.isfinite(vals)):
        bad = x[~np.isfinite(vals)].ravel()[0]
        raise NonFinite(f"integrand is not finite at x={bad!r}")
    return vals


def _panels(f, lo, hi):
    """Kronrod value and |K15 - G7| for each panel [lo[i], hi[i]]."""
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    x = mid[:, None] + half[:, None] * NODES[None, :]
    y = _eval(f, x)
    k = half * (y @ KRONROD_WEIGHTS)
    g = half * (y @ GAUSS_WEIGHTS)
    return k, np.abs(k - g)


def integrate(f, a, b, cfg=None, *, max_width=None):
    """Integrate f over [a, b] adaptively.

    f is called with an array of nodes and should return an array of the same
    shape; plain scalar callables also work but are slower.  The panel with
    the largest error estimate is bisected until the summed estimate drops
    below ``max(abs_tol, rel_tol * |value|)``.

    ``max_width`` caps the width of the initial panels (used for oscillatory
    integrands so the error estimate sees every period).
    """
    cfg = cfg or QuadConfig()
    a, b = float(a), float(b)
    if not a < b:
        raise ValueError(f"integrate requires a < b, got [{a}, {b}]")
    npan = 1
    if max_width is not None:
        npan = max(1, math.ceil((b - a) / max_width))
    edges = np.linspace(a, b, npan + 1)
    vals, errs = _panels(f, edges[:-1], edges[1:])
    evaluations = 15 * npan

    heap = [(-e, lo, hi, v) for lo, hi, v, e in zip(edges[:-1], edges[1:], vals, errs)]
    heapq.heapify(heap)
    total = float(np.sum(vals))
    err = float(np.sum(errs))
    splits = 0

    while err > cfg.target(total):
        if splits >= cfg.max_subdivisions:
            raise NonConvergence(
                f"no convergence after {splits} subdivisions on [{a}, {b}]",
                partial=_finish(heap, evaluations),
            )
        neg_e, lo, hi, v = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            raise NonConvergence(
                f"panel [{lo}, {hi}] cannot be split further",
                partial=_finish(heap + [(neg_e, lo, hi, v)], evaluations),
            )
        cv, ce = _panels(f, np.array([lo, mid]), np.array([mid, hi]))
        evaluations += 30
        splits += 1
        heapq.heappush(heap, (-ce[0], lo, mid, cv[0]))
        heapq.heappush(heap, (-ce[1], mid, hi, cv[1]))
        total += cv[0] + cv[1] - v
        err += ce[0] + ce[1] + neg_e
        if splits % 64 == 0:
            # running sums drift; refresh them
            total = math.fsum(item[3] for item in heap)
            err = math.fsum(-item[0] for item in heap)

    return _finish(heap, evaluations)


def _finish(heap, evaluations):
    ordered = sorted(heap, key=lambda item: item[1])
    value = math.fsum(item[3] for item in ordered)
    error = math.fsum(-item[0] for item in ordered)
    return QuadResult(value, error, evaluations)


def find_support(g, x_peak, eps, *, scale=1.0):
    """Interval (lo, hi) outside which g has dropped below eps * max(g).

    The maximum is estimated on a coarse grid of half-width ``4 * scale``
    around ``x_peak``.  Each side is searched by doubling the step from
    ``scale`` and then bisected.  A point counts as outside only if g is
    below threshold on a small grid stretching to the last verified point,
    so isolated zeros of g (wavefunction nodes) are not mistaken for edges.
    """
    scan = x_peak + scale * np.linspace(-4.0, 4.0, 81)
    g_max = max(float(np.max(_eval(g, scan))), float(_eval(g, np.array([x_peak]))[0]))
    if not g_max > 0.0:
        raise SupportNotFound(f"g vanishes around x_peak={x_peak!r}")
    thr = eps * g_max
    return _edge(g, x_peak, -scale, thr), _edge(g, x_peak, scale, thr)


def _edge(g, x0, step, thr):
    def below(x, outer):
        pts = x + (outer - x) * np.linspace(0.0, 1.0, 4, endpoint=False)
        return bool(np.all(_eval(g, pts) <= thr))

    inside = x0
    h = step
    outer = x0 + h
    for _ in range(41):
        if below(outer, outer + h):
            break
        inside = outer
        h *= 2.0
        outer = x0 + h
    else:
        raise SupportNotFound(f"no support edge within {abs(h)} of {x0}")

    # bisect between a point known to be inside and one verified outside
    for _ in range(200):
        mid = 0.5 * (inside + outer)
        if mid == inside or mid == outer or abs(outer - inside) <= 1e-9 * max(1.0, abs(outer)):
            break
        if below(mid, outer):
            outer = mid
        else:
            inside = mid
    return outer

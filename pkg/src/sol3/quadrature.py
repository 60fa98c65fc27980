"""Two independent quadrature rules for smooth integrands on finite intervals."""

import math
from functools import lru_cache

import numpy as np

from .errors import QuadratureError


def adaptive_simpson(fun, a, b, tol=1e-12, max_depth=60):
    """Integral of scalar ``fun`` over [a, b] by adaptive Simpson with Richardson
    correction, to absolute tolerance ``tol``.

    Raises QuadratureError if some panel still fails the local test at
    ``max_depth`` bisections.
    """
    if a == b:
        return 0.0
    if b < a:
        return -adaptive_simpson(fun, b, a, tol, max_depth)
    fa, fm, fb = fun(a), fun(0.5 * (a + b)), fun(b)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    stack = [(a, b, fa, fm, fb, whole, tol, 0)]
    total = 0.0
    while stack:
        lo, hi, flo, fmid, fhi, est, local_tol, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        lq, rq = 0.5 * (lo + mid), 0.5 * (mid + hi)
        flq, frq = fun(lq), fun(rq)
        left = (mid - lo) / 6.0 * (flo + 4.0 * flq + fmid)
        right = (hi - mid) / 6.0 * (fmid + 4.0 * frq + fhi)
        delta = left + right - est
        if abs(delta) <= 15.0 * local_tol:
            total += left + right + delta / 15.0
        elif depth >= max_depth:
            raise QuadratureError(
                f"adaptive Simpson did not reach tol={tol:g} on [{lo!r}, {hi!r}]"
            )
        else:
            half = 0.5 * local_tol
            stack.append((mid, hi, fmid, frq, fhi, right, half, depth + 1))
            stack.append((lo, mid, flo, flq, fmid, left, half, depth + 1))
    return total


@lru_cache(maxsize=None)
def _legendre(order):
    nodes, weights = np.polynomial.legendre.leggauss(order)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def gauss_legendre(fun, a, b, order=32, panel_width=1.0):
    """Composite Gauss-Legendre rule with panels no wider than ``panel_width``.

    ``fun`` must be vectorized.
    """
    if a == b:
        return 0.0
    panels = max(1, math.ceil(abs(b - a) / panel_width))
    nodes, weights = _legendre(order)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    centers = 0.5 * (edges[1:] + edges[:-1])
    x = centers[:, None] + half[:, None] * nodes[None, :]
    return float(np.sum(half[:, None] * weights[None, :] * fun(x)))

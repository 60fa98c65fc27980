"""Central finite differences used as independent oracles.

First derivatives use ``h = 1e-5 * max(1, |u|)``. Second derivatives use the
larger ``h = eps**(1/4) * max(1, |u|)``: with ``h = 1e-5`` the round-off term
``eps / h**2`` of a second difference is already ~1e-6 relative.
"""

import numpy as np

FIRST_STEP = 1e-5
SECOND_STEP = float(np.finfo(float).eps ** 0.25)


def step(u, base=FIRST_STEP):
    return base * np.maximum(1.0, np.abs(u))


def derivative(fun, u, base=FIRST_STEP):
    """Central first difference of a vectorized scalar or vector function."""
    u = np.asarray(u, dtype=float)
    h = step(u, base)
    up, um = u + h, u - h
    h = (up - um) / 2.0  # exactly representable spacing
    df = np.asarray(fun(up)) - np.asarray(fun(um))
    return df / _expand(2.0 * h, df)


def second_derivative(fun, u, base=SECOND_STEP):
    u = np.asarray(u, dtype=float)
    h = step(u, base)
    up, um = u + h, u - h
    h = (up - um) / 2.0
    d2 = np.asarray(fun(up)) - 2.0 * np.asarray(fun(u)) + np.asarray(fun(um))
    return d2 / _expand(h * h, d2)


def partials(position, s, t):
    """First and second partials of ``position(s, t) -> (..., 3)`` by central differences.

    Returns ``(X_s, X_t, X_ss, X_st, X_tt)``.
    """
    s, t = np.broadcast_arrays(np.asarray(s, dtype=float), np.asarray(t, dtype=float))
    xs = derivative(lambda u: position(u, t), s)
    xt = derivative(lambda u: position(s, u), t)
    xss = second_derivative(lambda u: position(u, t), s)
    xtt = second_derivative(lambda u: position(s, u), t)
    hs = step(s, SECOND_STEP)
    ht = step(t, SECOND_STEP)
    sp, sm = s + hs, s - hs
    tp, tm = t + ht, t - ht
    hs = (sp - sm) / 2.0
    ht = (tp - tm) / 2.0
    mixed = position(sp, tp) - position(sp, tm) - position(sm, tp) + position(sm, tm)
    xst = mixed / _expand(4.0 * hs * ht, mixed)
    return xs, xt, xss, xst, xtt


def _expand(h, like):
    h = np.asarray(h)
    extra = np.ndim(like) - np.ndim(h)
    if extra > 0:
        h = h.reshape(h.shape + (1,) * extra)
    return h

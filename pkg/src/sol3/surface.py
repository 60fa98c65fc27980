"""Fundamental forms and mean curvature of parametric surfaces in Sol3.

The kernel works in frame components. With ``e1 = X_s`` and ``e2 = X_t``
converted to the orthonormal frame, the scaled normal is the frame cross
product ``Nbar = e1 x e2`` (so ``|Nbar|^2 = EG - F^2``), and

    residual = G <Nbar, D_e1 e1> - 2F <Nbar, D_e1 e2> + E <Nbar, D_e2 e2>
    H        = residual / (2 (EG - F^2) |Nbar|)

Every evaluator is vectorized: ``s`` and ``t`` broadcast together and vector
quantities carry a trailing axis of length 3.
"""

import math
from dataclasses import dataclass, field, replace
from typing import Callable, NamedTuple, Optional

import numpy as np

from . import core, numdiff
from .errors import DomainError, SingularPointError

SINGULAR_RATIO = 1e-12


@dataclass(frozen=True)
class Immersion:
    """A parameterized surface ``(s, t) -> X(s, t)`` in model coordinates.

    ``first`` returns ``(X_s, X_t)`` and ``second`` returns ``(X_ss, X_st, X_tt)``;
    either may be omitted, in which case central differences of ``position``
    are used. ``s_singular``/``t_singular`` list parameter lines where the
    surface is not defined; ``s_domain``/``t_domain`` are open intervals.
    """

    position: Callable
    first: Optional[Callable] = None
    second: Optional[Callable] = None
    s_domain: tuple = (-math.inf, math.inf)
    t_domain: tuple = (-math.inf, math.inf)
    s_singular: tuple = ()
    t_singular: tuple = ()
    label: str = ""

    @property
    def analytic(self):
        return self.first is not None and self.second is not None

    def __call__(self, s, t):
        return self.position(*_args(s, t))

    def jets(self, s, t):
        """``(X, X_s, X_t, X_ss, X_st, X_tt)`` at the broadcast parameters."""
        s, t = _args(s, t)
        x = self.position(s, t)
        if self.analytic:
            return (x, *self.first(s, t), *self.second(s, t))
        fd = numdiff.partials(self.position, s, t)
        if self.first is not None:
            return (x, *self.first(s, t), *fd[2:])
        return (x, *fd)

    def without_derivatives(self):
        return replace(self, first=None, second=None)


def _args(s, t):
    s, t = np.broadcast_arrays(np.asarray(s, dtype=float), np.asarray(t, dtype=float))
    return s, t


def _dot(a, b):
    return np.sum(a * b, axis=-1)


class FirstForm(NamedTuple):
    E: np.ndarray
    F: np.ndarray
    G: np.ndarray


class SecondFormScaled(NamedTuple):
    """Products of the scaled normal with ``D_e1 e1``, ``D_e1 e2``, ``D_e2 e2``.

    ``m_swapped`` is ``<Nbar, D_e2 e1>``; it equals ``m`` for a torsion-free
    connection.
    """

    l: np.ndarray
    m: np.ndarray
    n: np.ndarray
    m_swapped: np.ndarray


@dataclass(frozen=True)
class CurvatureReport:
    H: np.ndarray
    residual: np.ndarray
    norm_N: np.ndarray
    det1: np.ndarray
    regular: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class _Geometry:
    point: np.ndarray
    e1: np.ndarray
    e2: np.ndarray
    normal: np.ndarray
    form1: FirstForm
    form2: SecondFormScaled
    regular: np.ndarray


def _geometry(imm, s, t):
    x, xs, xt, xss, xst, xtt = imm.jets(s, t)
    if not np.all(np.isfinite(x)):
        raise DomainError(f"non-finite position on {imm.label or 'immersion'}")
    if np.any(np.abs(x[..., 2]) > core.Z_LIMIT):
        raise DomainError(f"|z| exceeds {core.Z_LIMIT}")
    z = x[..., 2]
    up, down = np.exp(z), np.exp(-z)
    e1 = np.stack([up * xs[..., 0], down * xs[..., 1], xs[..., 2]], axis=-1)
    e2 = np.stack([up * xt[..., 0], down * xt[..., 1], xt[..., 2]], axis=-1)

    # Frame components depend on z through e^{+-z}; differentiate them by the chain rule.
    def frame_rate(v, dv, dz):
        return np.stack(
            [up * (dz * v[..., 0] + dv[..., 0]), down * (dv[..., 1] - dz * v[..., 1]), dv[..., 2]],
            axis=-1,
        )

    zs, zt = xs[..., 2], xt[..., 2]
    d11 = core.ambient_covariant_derivative(e1, e1, frame_rate(xs, xss, zs))
    d12 = core.ambient_covariant_derivative(e1, e2, frame_rate(xt, xst, zs))
    d21 = core.ambient_covariant_derivative(e2, e1, frame_rate(xs, xst, zt))
    d22 = core.ambient_covariant_derivative(e2, e2, frame_rate(xt, xtt, zt))

    normal = np.cross(e1, e2)
    E, F, G = _dot(e1, e1), _dot(e1, e2), _dot(e2, e2)
    det1 = E * G - F * F
    regular = det1 > SINGULAR_RATIO * np.maximum(E, G) ** 2
    form2 = SecondFormScaled(_dot(normal, d11), _dot(normal, d12), _dot(normal, d22), _dot(normal, d21))
    return _Geometry(x, e1, e2, normal, FirstForm(E, F, G), form2, regular)


def _require_regular(geo, imm, strict):
    if strict and not np.all(geo.regular):
        raise SingularPointError(f"{imm.label or 'immersion'} is singular at a requested point")


def tangent_frame(imm, s, t, strict=True):
    geo = _geometry(imm, s, t)
    _require_regular(geo, imm, strict)
    return geo.e1, geo.e2


def first_form(imm, s, t, strict=True):
    geo = _geometry(imm, s, t)
    _require_regular(geo, imm, strict)
    return geo.form1


def normal_scaled(imm, s, t, strict=True):
    geo = _geometry(imm, s, t)
    _require_regular(geo, imm, strict)
    return geo.normal


def second_form_scaled(imm, s, t, strict=True):
    geo = _geometry(imm, s, t)
    _require_regular(geo, imm, strict)
    return geo.form2


def _residual(geo):
    (E, F, G), (l, m, n, _) = geo.form1, geo.form2
    return G * l - 2.0 * F * m + E * n


def minimality_residual(imm, s, t, strict=True):
    geo = _geometry(imm, s, t)
    _require_regular(geo, imm, strict)
    return _residual(geo)


def mean_curvature(imm, s, t, strict=True):
    """Mean curvature with respect to the unit normal ``e1 x e2 / |e1 x e2|``.

    With ``strict=False`` singular points are reported through
    ``CurvatureReport.regular`` and carry ``H = nan``.
    """
    geo = _geometry(imm, s, t)
    _require_regular(geo, imm, strict)
    E, F, G = geo.form1
    det1 = E * G - F * F
    norm_n = np.sqrt(_dot(geo.normal, geo.normal))
    residual = _residual(geo)
    with np.errstate(divide="ignore", invalid="ignore"):
        h = np.where(geo.regular, residual / (2.0 * det1 * norm_n), np.nan)
    return CurvatureReport(h, residual, norm_n, det1, geo.regular)


def fd_mean_curvature(imm, s, t):
    """Mean curvature from positions only.

    Independent route: FD partials of ``X``, FD Christoffel symbols of the
    metric in coordinates, and the metric-dual of the coordinate cross product
    as normal (det g = 1 in these coordinates). Never touches the frame or the
    connection table.
    """
    s, t = _args(s, t)
    _check_stencil(imm, s, t)
    x = imm.position(s, t)
    xs, xt, xss, xst, xtt = numdiff.partials(imm.position, s, t)
    flat_x = x.reshape(-1, 3)
    gammas = np.stack([core.christoffel_fd(p) for p in flat_x]).reshape(x.shape[:-1] + (3, 3, 3))
    scales = core.metric_scales(x[..., 2])

    def g(a, b):
        return np.sum(scales * a * b, axis=-1)

    nu = np.cross(xs, xt) / scales  # raise the index of the Euclidean cross product
    nu = nu / np.sqrt(g(nu, nu))[..., None]

    def second(xab, xa, xb):
        accel = xab + np.einsum("...kij,...i,...j->...k", gammas, xa, xb)
        return g(accel, nu)

    E, F, G = g(xs, xs), g(xs, xt), g(xt, xt)
    L, M, N = second(xss, xs, xs), second(xst, xs, xt), second(xtt, xt, xt)
    return (G * L - 2.0 * F * M + E * N) / (2.0 * (E * G - F * F))


def _check_stencil(imm, s, t):
    reach_s = 2.0 * numdiff.step(s, numdiff.SECOND_STEP)
    reach_t = 2.0 * numdiff.step(t, numdiff.SECOND_STEP)
    for values, reach, lines, (lo, hi), name in (
        (s, reach_s, imm.s_singular, imm.s_domain, "s"),
        (t, reach_t, imm.t_singular, imm.t_domain, "t"),
    ):
        bad = (values - reach <= lo) | (values + reach >= hi)
        for line in lines:
            bad |= np.abs(values - line) <= reach
        if np.any(bad):
            raise DomainError(f"finite-difference stencil in {name} crosses a domain exclusion")


# --- immersion transforms ---


def compose_isometry(imm, iso):
    """The immersion ``iso o X``; derivatives pick up the constant Jacobian."""
    jac = iso.differential()

    def position(s, t):
        return core.apply_isometry(iso, imm.position(s, t))

    def push(vectors):
        return tuple(v @ jac.T for v in vectors)

    first = (lambda s, t: push(imm.first(s, t))) if imm.first is not None else None
    second = (lambda s, t: push(imm.second(s, t))) if imm.second is not None else None
    return replace(imm, position=position, first=first, second=second,
                   label=f"{iso.kind}({iso.c:g}) o {imm.label}")


def swap_parameters(imm):
    """The immersion ``(s, t) -> X(t, s)``; reverses orientation."""

    def position(s, t):
        return imm.position(t, s)

    first = second = None
    if imm.first is not None:
        def first(s, t):
            xs, xt = imm.first(t, s)
            return xt, xs
    if imm.second is not None:
        def second(s, t):
            xss, xst, xtt = imm.second(t, s)
            return xtt, xst, xss
    return Immersion(position, first, second, imm.t_domain, imm.s_domain,
                     imm.t_singular, imm.s_singular, f"swap({imm.label})")


def affine_immersion(origin, ds, dt, label=""):
    """``X(s, t) = origin + s*ds + t*dt`` in model coordinates."""
    origin, ds, dt = (np.asarray(v, dtype=float) for v in (origin, ds, dt))

    def position(s, t):
        return origin + s[..., None] * ds + t[..., None] * dt

    def first(s, t):
        shape = np.shape(s) + (3,)
        return np.broadcast_to(ds, shape).copy(), np.broadcast_to(dt, shape).copy()

    def second(s, t):
        zero = np.zeros(np.shape(s) + (3,))
        return zero, zero.copy(), zero.copy()

    return Immersion(position, first, second, label=label)

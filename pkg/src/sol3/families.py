"""Translation surfaces ``alpha(s) * beta(t)`` built from graph curves.

Type table (alpha, beta are graphs of f and g in coordinate planes):

    I, IV    alpha = (s, f(s), 0) in {z=0},  beta = (t, 0, g(t)) in {y=0}
    II, V    alpha = (s, f(s), 0) in {z=0},  beta = (0, t, g(t)) in {x=0}
    III, VI  alpha = (s, 0, f(s)) in {y=0},  beta = (0, t, g(t)) in {x=0}

Types I-III are ``alpha * beta``; IV-VI are the reversed product ``beta * alpha``.
"""

import enum
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import surface
from .errors import DomainError


@dataclass(frozen=True)
class CurveFn:
    """A scalar function with analytic first and second derivatives.

    All evaluators must accept and return ndarrays. ``joint``, when given,
    returns all three at once for curves that share expensive work.
    """

    value: Callable
    d1: Callable
    d2: Callable
    singular: tuple = ()
    domain: tuple = (-math.inf, math.inf)
    label: str = ""
    joint: Optional[Callable] = None

    def __call__(self, u):
        return self.value(np.asarray(u, dtype=float))

    def jet(self, u):
        u = np.asarray(u, dtype=float)
        if self.joint is not None:
            return self.joint(u)
        return self.value(u), self.d1(u), self.d2(u)


def constant(c):
    c = float(c)
    return CurveFn(
        lambda u: np.full(np.shape(u), c),
        lambda u: np.zeros(np.shape(u)),
        lambda u: np.zeros(np.shape(u)),
        label=f"const({c!r})",
    )


def affine(a, b):
    a, b = float(a), float(b)
    return CurveFn(
        lambda u: a * u + b,
        lambda u: np.full(np.shape(u), a),
        lambda u: np.zeros(np.shape(u)),
        label=f"affine({a!r}, {b!r})",
    )


def polynomial(coeffs):
    """``c0 + c1 u + c2 u^2 + ...`` (coefficients in ascending order)."""
    p = np.polynomial.Polynomial([float(c) for c in coeffs])
    dp, ddp = p.deriv(1), p.deriv(2)
    return CurveFn(
        lambda u: p(u) * np.ones(np.shape(u)),
        lambda u: dp(u) * np.ones(np.shape(u)),
        lambda u: ddp(u) * np.ones(np.shape(u)),
        label="poly(" + ", ".join(repr(float(c)) for c in coeffs) + ")",
    )


def log_curve(lam, mu, sign=1.0, one_sided=False):
    """``sign * log|u + lam| + mu``; singular at ``u = -lam``.

    With ``one_sided`` the curve is ``sign * log(u + lam) + mu`` on ``u > -lam``.
    """
    lam, mu, sign = float(lam), float(mu), float(sign)
    if sign not in (1.0, -1.0):
        raise ValueError("sign must be +1 or -1")

    def value(u):
        return sign * np.log(np.abs(u + lam)) + mu

    def d1(u):
        return sign / (u + lam)

    def d2(u):
        return -sign / (u + lam) ** 2

    name = "log" if sign > 0 else "neglog"
    domain = (-lam, math.inf) if one_sided else (-math.inf, math.inf)
    return CurveFn(value, d1, d2, singular=(-lam,), domain=domain,
                   label=f"{name}({lam!r}, {mu!r})")


def neg_log_curve(lam, mu):
    return log_curve(lam, mu, sign=-1.0)


class TranslationType(enum.Enum):
    I = 1
    II = 2
    III = 3
    IV = 4
    V = 5
    VI = 6

    @classmethod
    def parse(cls, text):
        key = str(text).strip().upper().removeprefix("TYPE").strip("-_ ")
        if key.isdigit() and 1 <= int(key) <= 6:
            return cls(int(key))
        try:
            return cls[key]
        except KeyError:
            raise ValueError(f"invalid translation type {text!r}") from None

    @property
    def reversed_order(self):
        return self.value >= 4

    @property
    def planes(self):
        """Coordinate planes of alpha and beta, e.g. ``("z", "y")``."""
        return {1: ("z", "y"), 2: ("z", "x"), 3: ("y", "x")}[(self.value - 1) % 3 + 1]


@dataclass(frozen=True)
class TranslationSurface:
    type: TranslationType
    f: CurveFn
    g: CurveFn
    immersion: surface.Immersion


_AXES = {"x": 0, "y": 1, "z": 2}


def _curve_jets(u, curve, plane, first_axis):
    """Jets of the graph curve lying in the coordinate plane ``{plane = 0}``.

    The parameter runs along ``first_axis``; the curve value fills the remaining axis.
    """
    h, dh, ddh = curve.jet(u)
    k = _AXES[first_axis]
    free = 3 - _AXES[plane] - k
    pos, vel, acc = (np.zeros(np.shape(u) + (3,)) for _ in range(3))
    pos[..., k] = u
    vel[..., k] = 1.0
    pos[..., free], vel[..., free], acc[..., free] = h, dh, ddh
    return pos, vel, acc


def product_jets(p, q):
    """Value and derivatives of ``P(u) * Q(w)`` under the group law.

    ``p`` and ``q`` are ``(value, first, second)`` jets in independent parameters
    ``u`` and ``w``. Returns ``(X, X_u, X_w, X_uu, X_uw, X_ww)``.
    """
    (p0, p1, p2), (q0, q1, q2) = p, q
    z, dz, ddz = p0[..., 2], p1[..., 2], p2[..., 2]
    down, up = np.exp(-z), np.exp(z)
    x = np.stack([p0[..., 0] + down * q0[..., 0], p0[..., 1] + up * q0[..., 1], z + q0[..., 2]], axis=-1)
    xu = np.stack([p1[..., 0] - dz * down * q0[..., 0], p1[..., 1] + dz * up * q0[..., 1], dz], axis=-1)
    xw = np.stack([down * q1[..., 0], up * q1[..., 1], q1[..., 2]], axis=-1)
    xuu = np.stack([
        p2[..., 0] + (dz * dz - ddz) * down * q0[..., 0],
        p2[..., 1] + (dz * dz + ddz) * up * q0[..., 1],
        ddz,
    ], axis=-1)
    xuw = np.stack([-dz * down * q1[..., 0], dz * up * q1[..., 1], np.zeros_like(z)], axis=-1)
    xww = np.stack([down * q2[..., 0], up * q2[..., 1], q2[..., 2]], axis=-1)
    return x, xu, xw, xuu, xuw, xww


def build_surface(kind, f, g):
    """Assemble the translation surface of the given type from curves f and g."""
    if not isinstance(kind, TranslationType):
        kind = TranslationType.parse(kind)
    alpha_plane, beta_plane = kind.planes
    alpha_axis = "x"
    beta_axis = "x" if beta_plane == "y" else "y"

    def jets(s, t):
        s, t = np.broadcast_arrays(np.asarray(s, dtype=float), np.asarray(t, dtype=float))
        a = _curve_jets(s, f, alpha_plane, alpha_axis)
        b = _curve_jets(t, g, beta_plane, beta_axis)
        if not kind.reversed_order:
            return product_jets(a, b)
        x, xt, xs, xtt, xst, xss = product_jets(b, a)
        return x, xs, xt, xss, xst, xtt

    imm = surface.Immersion(
        position=lambda s, t: jets(s, t)[0],
        first=lambda s, t: jets(s, t)[1:3],
        second=lambda s, t: jets(s, t)[3:],
        s_domain=f.domain,
        t_domain=g.domain,
        s_singular=f.singular,
        t_singular=g.singular,
        label=f"type {kind.name}: f={f.label}, g={g.label}",
    )
    return TranslationSurface(kind, f, g, imm)


def residual_type1(f, g, s, t):
    _, fp, fpp = f.jet(s)
    g0, gp, gpp = g.jet(t)
    return (-fpp * gp**3
            - np.exp(2 * g0) * (fpp * gp + fp * gp**2 + fp * gpp)
            + np.exp(-2 * g0) * fp**3 * (gp**2 - gpp))


def residual_type2(f, g, s, t):
    _, fp, fpp = f.jet(s)
    g0, gp, gpp = g.jet(t)
    return (-fpp * gp**3
            + np.exp(-2 * g0) * (fp**2 * (gpp - gp**2) - fpp * gp)
            + np.exp(2 * g0) * (gpp + gp**2))


def residual_type3(f, g, s, t):
    f0, fp, fpp = f.jet(s)
    g0, gp, gpp = g.jet(t)
    t = np.asarray(t, dtype=float)
    inner = (t**2 * fp**2 * gp**2 + fp**2 - t**2 * fp**2 * gpp
             - 3 * t * fp**2 * gp + t * fpp * gp - fpp)
    return (-np.exp(2 * (f0 + g0)) * (gpp + gp**2)
            + np.exp(-2 * g0) * inner
            - 2 * fp**2 * gp**2 + t * fp**2 * gp**3 + t * fpp * gp**3
            - fpp * gp**2 - fp**2 * gpp)


RESIDUALS = {
    TranslationType.I: residual_type1,
    TranslationType.II: residual_type2,
    TranslationType.III: residual_type3,
}


def expected_agreement_factor(kind, f, s):
    """Ratio kernel residual / closed-form residual: 1 for types I and II,
    ``-e^{f(s)}`` for type III (the closed form uses a rescaled normal)."""
    kind = TranslationType.parse(kind) if not isinstance(kind, TranslationType) else kind
    if kind is TranslationType.III:
        return -np.exp(f(s))
    if kind in RESIDUALS:
        return np.ones(np.shape(s))
    raise DomainError(f"no closed-form residual for type {kind.name}")


def kernel_agreement_factor(kind, f, g, s, t, guard=1e-12):
    """``minimality_residual / residual_typeK``; nan where the closed form is below ``guard``."""
    kind = TranslationType.parse(kind) if not isinstance(kind, TranslationType) else kind
    if kind not in RESIDUALS:
        raise DomainError(f"no closed-form residual for type {kind.name}")
    closed = RESIDUALS[kind](f, g, s, t)
    kernel = surface.minimality_residual(build_surface(kind, f, g).immersion, s, t)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(np.abs(closed) > guard, kernel / closed, np.nan)

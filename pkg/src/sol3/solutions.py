"""Classified minimal translation surfaces and the Scherk-type profile.

The type I/II solutions with an affine first curve use the profile

    g(t) = zeta(t) / 2 + m,   zeta(t) = I^{-1}(c t),   I(t) = int_0^t sqrt(cosh tau) dtau,

with ``e^{4m} = a^2``. ``zeta`` solves ``2 zeta'' cosh(zeta) = -zeta'^2 sinh(zeta)``
with first integral ``zeta'^2 = c^2 / cosh(zeta)``.
"""

import math
import os
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import families as fam
from . import quadrature, surface
from .errors import ConvergenceError, DomainError

DEFAULT_QUAD_TOL = 1e-12
T_LIMIT = 300.0


def quad_tol():
    """Quadrature tolerance, overridable through ``SOL3_QUAD_TOL``."""
    raw = os.environ.get("SOL3_QUAD_TOL")
    if raw is None:
        return DEFAULT_QUAD_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise DomainError(f"SOL3_QUAD_TOL is not a number: {raw!r}") from None
    if not tol > 0:
        raise DomainError("SOL3_QUAD_TOL must be positive")
    return tol


def _sqrt_cosh(tau):
    return math.sqrt(math.cosh(tau))


def _scaled_tol(tol, a, b):
    # I grows like e^{|t|/2}; an absolute 1e-12 is unreachable in doubles past |t| ~ 10.
    rough = abs(b - a) / 6.0 * (_sqrt_cosh(a) + 4.0 * _sqrt_cosh(0.5 * (a + b)) + _sqrt_cosh(b))
    return tol * max(1.0, rough)


def scherk_I(t, tol=None):
    """``int_0^t sqrt(cosh tau) dtau`` by adaptive Simpson."""
    t = float(t)
    if not abs(t) <= T_LIMIT:
        raise DomainError(f"|t| must be at most {T_LIMIT}, got {t!r}")
    if t == 0.0:
        return 0.0
    tol = quad_tol() if tol is None else tol
    value = quadrature.adaptive_simpson(_sqrt_cosh, 0.0, abs(t), _scaled_tol(tol, 0.0, abs(t)))
    return math.copysign(value, t)


def scherk_I_gauss(t, order=32):
    """The same integral by composite Gauss-Legendre panels (independent check)."""
    t = float(t)
    if not abs(t) <= T_LIMIT:
        raise DomainError(f"|t| must be at most {T_LIMIT}, got {t!r}")
    return quadrature.gauss_legendre(lambda x: np.sqrt(np.cosh(x)), 0.0, t, order=order)


def scherk_I_inv(u, tol=None, max_iter=100):
    """Solve ``I(v) = u`` by Newton's method safeguarded with bisection.

    Since ``1 <= sqrt(cosh) <= e^{|tau|/2}``, the root of ``I(v) = |u|`` lies in
    ``[2 log(1 + |u|/2), |u|]``. Each Newton iterate integrates only the increment
    from the previous iterate.
    """
    u = float(u)
    if not math.isfinite(u):
        raise DomainError("argument must be finite")
    if u == 0.0:
        return 0.0
    tol = quad_tol() if tol is None else tol
    target = abs(u)
    lo, hi = 2.0 * math.log1p(0.5 * target), target
    if lo > T_LIMIT:
        raise DomainError(f"I^-1({u!r}) exceeds |t| <= {T_LIMIT}")
    hi = min(hi, T_LIMIT)
    ftol = 0.1 * tol * max(1.0, target)

    anchor, i_anchor = 0.0, 0.0
    x = lo
    for _ in range(max_iter):
        i_x = i_anchor + quadrature.adaptive_simpson(
            _sqrt_cosh, anchor, x, 0.1 * _scaled_tol(tol, anchor, x))
        anchor, i_anchor = x, i_x
        residual = i_x - target
        if abs(residual) <= ftol:
            return math.copysign(x, u)
        if residual < 0.0:
            lo = max(lo, x)
        else:
            hi = min(hi, x)
        step = residual / _sqrt_cosh(x)
        candidate = x - step
        if not lo < candidate < hi:
            candidate = 0.5 * (lo + hi)
        if abs(candidate - x) <= 4.0 * np.finfo(float).eps * max(1.0, abs(x)):
            return math.copysign(candidate, u)
        x = candidate
    raise ConvergenceError(f"I^-1({u!r}) did not converge in {max_iter} iterations")


@dataclass(frozen=True)
class ScherkState:
    """Parameters of the Scherk-type profile.

    ``m = log|a| / 2`` is derived so that ``e^{4m} = a^2`` always holds. ``branch``
    selects the sign of ``zeta'`` and ``d`` is the second integration constant,
    ``I(zeta) = branch * (c t + d)``.
    """

    c: float
    a: float = 1.0
    branch: int = 1
    d: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.c) and self.c > 0):
            raise DomainError(f"c must be positive, got {self.c!r}")
        if not math.isfinite(self.a) or self.a == 0:
            raise DomainError(f"a must be finite and nonzero, got {self.a!r}")
        if self.branch not in (1, -1):
            raise DomainError("branch must be +1 or -1")
        if not math.isfinite(self.d):
            raise DomainError("d must be finite")

    @property
    def m(self):
        return 0.5 * math.log(abs(self.a))

    def zeta(self, t):
        t = np.asarray(t, dtype=float)
        flat, inverse = np.unique(t.ravel(), return_inverse=True)
        values = np.array([scherk_I_inv(self.branch * (self.c * v + self.d)) for v in flat])
        return values[inverse].reshape(t.shape)


def scherk_g(t, state):
    """``(g, g', g'')`` of ``g = zeta/2 + m`` along ``t``."""
    zeta = state.zeta(t)
    cosh, sinh = np.cosh(zeta), np.sinh(zeta)
    g = 0.5 * zeta + state.m
    dg = state.branch * state.c / (2.0 * np.sqrt(cosh))
    ddg = -(state.c**2 / 4.0) * sinh / cosh**2
    return g, dg, ddg


def scherk_curve(state):
    c = state.c
    return fam.CurveFn(
        lambda u: scherk_g(u, state)[0],
        lambda u: scherk_g(u, state)[1],
        lambda u: scherk_g(u, state)[2],
        label=f"scherk(c={c!r}, a={state.a!r})",
        joint=lambda u: scherk_g(u, state),
    )


def zeta_ode_residuals(zeta, dzeta, ddzeta, c):
    """``(2 zeta'' cosh zeta + zeta'^2 sinh zeta, zeta'^2 - c^2 / cosh zeta)``."""
    zeta = np.asarray(zeta, dtype=float)
    second = 2.0 * ddzeta * np.cosh(zeta) + dzeta**2 * np.sinh(zeta)
    first = dzeta**2 - c**2 / np.cosh(zeta)
    return second, first


def reduction_identity_gap(a, g, dg, ddg):
    """``e^{2g}(g''+g'^2) - a^2 e^{-2g}(g'^2-g'')``; zero along the type I/II profiles."""
    return np.exp(2 * g) * (ddg + dg**2) - a**2 * np.exp(-2 * g) * (dg**2 - ddg)


@dataclass(frozen=True)
class Type3ReductionParams:
    a: float
    b: float

    def __post_init__(self):
        if self.a == 0:
            raise DomainError("a must be nonzero")


def g43_residual(params, g, dg, t):
    """Left-hand side of the scalar equation every further type III minimal
    surface (outside the explicit families) must satisfy."""
    a, b = params.a, params.b
    e2 = np.exp(2 * np.asarray(g, dtype=float))
    return ((b - a) * dg**2 * e2**3
            + (a + b - 2 * a * t * dg + dg**2) * e2**2
            + (1 + t**2 * dg**2) * e2
            + t**2)


# --- catalog ---


@dataclass(frozen=True)
class SolutionSpec:
    """A classified minimal surface: a catalog ``kind`` with its parameters.

    ``f`` is only used by ``type3-logt``, where the first curve is arbitrary.
    """

    kind: str
    params: dict = field(default_factory=dict)
    f: Optional[fam.CurveFn] = None

    def __post_init__(self):
        if self.kind not in CATALOG:
            raise DomainError(f"unknown solution {self.kind!r}; choose from {', '.join(CATALOG)}")
        variant = CATALOG[self.kind]
        unknown = set(self.params) - set(variant.defaults)
        if unknown:
            raise DomainError(f"{self.kind}: unknown parameter(s) {', '.join(sorted(unknown))}")
        if variant.needs_f and self.f is None:
            raise DomainError(f"{self.kind} requires a curve f")

    def resolved(self):
        """Parameters with catalog defaults filled in."""
        merged = dict(CATALOG[self.kind].defaults)
        merged.update(self.params)
        return {k: float(v) for k, v in merged.items()}


@dataclass(frozen=True)
class Variant:
    name: str
    defaults: dict
    build: Callable
    draw: Callable
    description: str
    needs_f: bool = False


def _plane(origin, ds, dt, label):
    return surface.affine_immersion(origin, ds, dt, label=label)


def _totally_geodesic(p, f):
    a, b, c = p["a"], p["b"], p["c"]
    norm = math.hypot(a, b)
    if norm == 0:
        raise DomainError("a and b cannot both vanish")
    origin = (-c * a / norm**2, -c * b / norm**2, 0.0)
    return _plane(origin, (-b / norm, a / norm, 0.0), (0.0, 0.0, 1.0),
                  f"plane {a!r}x + {b!r}y + {c!r} = 0")


def _scherk_state(p):
    return ScherkState(c=p["c"], a=p["a"], branch=int(p["branch"]), d=p["d"])


def _type1_scherk(p, f):
    state = _scherk_state(p)
    return fam.build_surface("I", fam.affine(p["a"], p["b"]), scherk_curve(state)).immersion


def _type2_scherk(p, f):
    state = _scherk_state(p)
    return fam.build_surface("II", fam.affine(p["a"], p["b"]), scherk_curve(state)).immersion


def _uniform(rng, lo, hi):
    return float(rng.uniform(lo, hi))


def _nonzero(rng, lo, hi):
    return float(rng.choice([-1.0, 1.0]) * rng.uniform(lo, hi))


def _draw_tg(rng):
    while True:
        a, b = _uniform(rng, -2, 2), _uniform(rng, -2, 2)
        if math.hypot(a, b) > 0.1:
            return {"a": a, "b": b, "c": _uniform(rng, -2, 2)}


def _draw_scherk(rng):
    return {"a": _nonzero(rng, 0.3, 3.0), "b": _uniform(rng, -2, 2), "c": _uniform(rng, 0.2, 2.5)}


def _draw_log(rng):
    return {"a": _uniform(rng, -1, 1), "lam": _uniform(rng, -1.5, 1.5), "mu": _uniform(rng, -1, 1)}


_SCHERK_DEFAULTS = {"a": 1.0, "b": 0.0, "c": 1.0, "branch": 1.0, "d": 0.0}
_LOG_DEFAULTS = {"a": 0.0, "lam": 0.0, "mu": 0.0}

CATALOG = {
    v.name: v
    for v in (
        Variant("plane-x", {"x0": 0.0},
                lambda p, f: _plane((p["x0"], 0, 0), (0, 1, 0), (0, 0, 1), f"plane x={p['x0']!r}"),
                lambda rng: {"x0": _uniform(rng, -2, 2)},
                "vertical plane x = x0 (types I-III)"),
        Variant("plane-y", {"y0": 0.0},
                lambda p, f: _plane((0, p["y0"], 0), (1, 0, 0), (0, 0, 1), f"plane y={p['y0']!r}"),
                lambda rng: {"y0": _uniform(rng, -2, 2)},
                "vertical plane y = y0 (type I)"),
        Variant("plane-z", {"z0": 0.0},
                lambda p, f: _plane((0, 0, p["z0"]), (1, 0, 0), (0, 1, 0), f"plane z={p['z0']!r}"),
                lambda rng: {"z0": _uniform(rng, -2, 2)},
                "horizontal plane z = z0"),
        Variant("totally-geodesic", {"a": 1.0, "b": 1.0, "c": 0.0}, _totally_geodesic, _draw_tg,
                "totally geodesic plane a x + b y + c = 0"),
        Variant("type1-scherk", _SCHERK_DEFAULTS, _type1_scherk, _draw_scherk,
                "type I: (s+t, a s + b, I^-1(c t)/2 + m), e^{4m} = a^2"),
        Variant("type2-log", _LOG_DEFAULTS,
                lambda p, f: fam.build_surface(
                    "II", fam.constant(p["a"]), fam.log_curve(p["lam"], p["mu"])).immersion,
                _draw_log,
                "type II: (s, t + a, log|t + lam| + mu)"),
        Variant("type2-scherk", _SCHERK_DEFAULTS, _type2_scherk, _draw_scherk,
                "type II: (s, t + a s + b, I^-1(c t)/2 + m), e^{4m} = a^2"),
        Variant("type3-constf-log", _LOG_DEFAULTS,
                lambda p, f: fam.build_surface(
                    "III", fam.constant(p["a"]), fam.log_curve(p["lam"], p["mu"])).immersion,
                _draw_log,
                "type III: f = a, g = log|t + lam| + mu"),
        Variant("type3-log-constg", _LOG_DEFAULTS,
                lambda p, f: fam.build_surface(
                    "III", fam.neg_log_curve(p["lam"], p["mu"]), fam.constant(p["a"])).immersion,
                _draw_log,
                "type III: f = -log|s + lam| + mu, g = a"),
        Variant("type3-logt", {"mu": 0.0},
                lambda p, f: fam.build_surface("III", f, fam.log_curve(0.0, p["mu"])).immersion,
                lambda rng: {"mu": _uniform(rng, -1, 1)},
                "type III: f arbitrary, g = log|t| + mu",
                needs_f=True),
        Variant("invariant-log", {"lam": 0.0, "mu": 0.0},
                lambda p, f: fam.build_surface(
                    "II", fam.constant(0.0),
                    fam.log_curve(p["lam"], p["mu"], one_sided=True)).immersion,
                lambda rng: {"lam": _uniform(rng, -1.5, 1.5), "mu": _uniform(rng, -1, 1)},
                "graph z = log(y + lam) + mu, invariant under x-translations"),
    )
}


def random_cubic(rng, half_width=2.0):
    """Cubic whose coefficients in ``u / half_width`` are uniform on [-1, 1].

    Unit coefficients in ``u`` itself drive f to about -9 at the grid edge, where
    the type III parameterization becomes too ill-conditioned for |H| < 1e-8.
    """
    coeffs = [_uniform(rng, -1, 1) / half_width**k for k in range(4)]
    return fam.polynomial(coeffs)


def random_spec(kind, rng):
    variant = CATALOG[kind]
    f = random_cubic(rng) if variant.needs_f else None
    return SolutionSpec(kind, variant.draw(rng), f)


def materialize(spec, domain=None):
    """Immersion of a catalog entry, with analytic derivatives.

    If ``domain = ((s_lo, s_hi), (t_lo, t_hi))`` is given, a singular parameter
    line strictly inside it is an error.
    """
    variant = CATALOG[spec.kind]
    imm = variant.build(spec.resolved(), spec.f)
    if domain is not None:
        for lines, (lo, hi), name in ((imm.s_singular, domain[0], "s"),
                                      (imm.t_singular, domain[1], "t")):
            inside = [x for x in lines if lo < x < hi]
            if inside:
                raise DomainError(f"{spec.kind}: singular line {name}={inside[0]!r} inside the domain")
    return imm

"""Ambient geometry of Sol3.

Model: R^3 with metric ``e^{2z} dx^2 + e^{-2z} dy^2 + dz^2`` and group law
``(x, y, z) * (x', y', z') = (x + e^{-z} x', y + e^{z} y', z + z')``.

All operations take array-likes whose last axis has length 3 (a single
``Point``/``CoordVector``/``FrameVector`` or a batch) and return ndarrays.
Left-invariant orthonormal frame: ``E1 = e^{-z} d/dx, E2 = e^{z} d/dy, E3 = d/dz``.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import numdiff
from .errors import DomainError

Z_LIMIT = 300.0


class Point(NamedTuple):
    x: float
    y: float
    z: float


class CoordVector(NamedTuple):
    """Components in the coordinate basis d/dx, d/dy, d/dz."""

    dx: float
    dy: float
    dz: float


class FrameVector(NamedTuple):
    """Components in the orthonormal frame E1, E2, E3."""

    v1: float
    v2: float
    v3: float


def _as_points(p):
    p = np.asarray(p, dtype=float)
    if p.shape[-1:] != (3,):
        raise DomainError(f"expected trailing axis of length 3, got shape {p.shape}")
    if not np.all(np.isfinite(p)):
        raise DomainError("non-finite coordinates")
    if np.any(np.abs(p[..., 2]) > Z_LIMIT):
        raise DomainError(f"|z| exceeds {Z_LIMIT}; exponentials would overflow")
    return p


def _vec(v):
    v = np.asarray(v, dtype=float)
    if v.shape[-1:] != (3,):
        raise DomainError(f"expected trailing axis of length 3, got shape {v.shape}")
    return v


def _finite(out):
    if not np.all(np.isfinite(out)):
        raise DomainError("result overflowed")
    return out


def group_mul(p, q):
    p = _as_points(p)
    q = _as_points(q)
    x, y, z = p[..., 0], p[..., 1], p[..., 2]
    with np.errstate(over="ignore", invalid="ignore"):
        out = np.stack(
            [x + np.exp(-z) * q[..., 0], y + np.exp(z) * q[..., 1], z + q[..., 2]], axis=-1
        )
    return _finite(out)


def group_inv(p):
    p = _as_points(p)
    x, y, z = p[..., 0], p[..., 1], p[..., 2]
    with np.errstate(over="ignore", invalid="ignore"):
        out = np.stack([-np.exp(z) * x, -np.exp(-z) * y, -z], axis=-1)
    return _finite(out)


def left_translate_vector(p, v):
    """Push ``v`` (at any q) forward by the differential of left translation by ``p``."""
    z = _as_points(p)[..., 2]
    v = _vec(v)
    return np.stack([np.exp(-z) * v[..., 0], np.exp(z) * v[..., 1], v[..., 2]], axis=-1)


def metric_scales(z):
    """Diagonal of the metric tensor at height ``z``: ``(e^{2z}, e^{-2z}, 1)``."""
    z = np.asarray(z, dtype=float)
    return np.stack([np.exp(2 * z), np.exp(-2 * z), np.ones_like(z)], axis=-1)


def metric(p, u, v):
    p = _as_points(p)
    return np.sum(metric_scales(p[..., 2]) * _vec(u) * _vec(v), axis=-1)


def coord_to_frame(p, u):
    z = _as_points(p)[..., 2]
    u = _vec(u)
    return np.stack([np.exp(z) * u[..., 0], np.exp(-z) * u[..., 1], u[..., 2]], axis=-1)


def frame_to_coord(p, w):
    z = _as_points(p)[..., 2]
    w = _vec(w)
    return np.stack([np.exp(-z) * w[..., 0], np.exp(z) * w[..., 1], w[..., 2]], axis=-1)


# CONNECTION[i, j] = frame components of nabla_{E_{i+1}} E_{j+1}.
CONNECTION = np.zeros((3, 3, 3))
CONNECTION[0, 0] = (0.0, 0.0, -1.0)
CONNECTION[0, 2] = (1.0, 0.0, 0.0)
CONNECTION[1, 1] = (0.0, 0.0, 1.0)
CONNECTION[1, 2] = (0.0, -1.0, 0.0)
CONNECTION.setflags(write=False)


def connection(i, j):
    """``nabla_{E_i} E_j`` for 1-based frame indices."""
    if i not in (1, 2, 3) or j not in (1, 2, 3):
        raise IndexError(f"frame indices must be in 1..3, got ({i}, {j})")
    return CONNECTION[i - 1, j - 1].copy()


def ambient_covariant_derivative(u, v, dv):
    """``nabla_U V`` in frame components.

    ``dv`` is ``U[v]``, the directional derivative of the frame components of V
    along U, supplied by the caller.
    """
    u, v, dv = _vec(u), _vec(v), _vec(dv)
    return dv + np.einsum("...i,...j,ijk->...k", u, v, CONNECTION)


@dataclass(frozen=True)
class IsometryElement:
    """One element of the identity component of the isometry group.

    ``translate_x``: (x+c, y, z); ``translate_y``: (x, y+c, z);
    ``shear_z``: (e^{-c} x, e^{c} y, z+c).
    """

    kind: str
    c: float

    KINDS = ("translate_x", "translate_y", "shear_z")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown isometry kind {self.kind!r}")
        if not np.isfinite(self.c):
            raise DomainError("isometry parameter must be finite")

    def compose(self, other):
        if other.kind != self.kind:
            raise ValueError("can only compose isometries of the same family")
        return IsometryElement(self.kind, self.c + other.c)

    def differential(self):
        """Constant Jacobian of the map in coordinates."""
        if self.kind == "shear_z":
            return np.diag([np.exp(-self.c), np.exp(self.c), 1.0])
        return np.eye(3)


def apply_isometry(iso, p):
    p = _as_points(p)
    c = iso.c
    if iso.kind == "translate_x":
        out = p + np.array([c, 0.0, 0.0])
    elif iso.kind == "translate_y":
        out = p + np.array([0.0, c, 0.0])
    else:
        out = p * np.array([np.exp(-c), np.exp(c), 1.0]) + np.array([0.0, 0.0, c])
    return _finite(out)


def push_vector(iso, v):
    return _vec(v) @ iso.differential().T


def killing_fields(p):
    """Killing fields of the three isometry families at ``p``, as coordinate vectors."""
    p = _as_points(p)
    ones, zeros = np.ones(p.shape[:-1]), np.zeros(p.shape[:-1])
    kx = np.stack([ones, zeros, zeros], axis=-1)
    ky = np.stack([zeros, ones, zeros], axis=-1)
    kz = np.stack([-p[..., 0], p[..., 1], ones], axis=-1)
    return kx, ky, kz


# --- finite-difference oracles (independent of the connection table) ---


def metric_tensor(p):
    p = _as_points(p)
    return np.diag(metric_scales(p[2]))


def christoffel_fd(p):
    """Christoffel symbols ``gamma[k, i, j]`` at a single point, from central
    differences of the metric tensor."""
    p = _as_points(p).astype(float)
    dg = np.empty((3, 3, 3))  # dg[l] = d g / d x^l
    for axis in range(3):
        def along(u, axis=axis):
            q = p.copy()
            q[axis] = u
            return metric_tensor(q)
        dg[axis] = numdiff.derivative(along, p[axis])
    ginv = np.linalg.inv(metric_tensor(p))
    # lower[l, i, j] = 1/2 (d_i g_lj + d_j g_li - d_l g_ij)
    lower = 0.5 * (
        np.einsum("ilj->lij", dg) + np.einsum("jli->lij", dg) - dg
    )
    return np.einsum("kl,lij->kij", ginv, lower)


def frame_field(p):
    """Coordinate components of E1, E2, E3 at ``p`` as rows."""
    z = _as_points(p)[..., 2]
    return np.diag([np.exp(-z), np.exp(z), 1.0])


def frame_connection_fd(p):
    """Frame-component table ``nabla_{E_i} E_j`` reconstructed from FD Christoffel
    symbols and FD derivatives of the frame fields."""
    p = _as_points(p).astype(float)
    gamma = christoffel_fd(p)
    frames = frame_field(p)
    dframe = np.empty((3, 3, 3))  # dframe[l, j] = d E_j / d x^l (coordinate components)
    for axis in range(3):
        def along(u, axis=axis):
            q = p.copy()
            q[axis] = u
            return frame_field(q)
        dframe[axis] = numdiff.derivative(along, p[axis])
    table = np.empty((3, 3, 3))
    for i in range(3):
        for j in range(3):
            ei, ej = frames[i], frames[j]
            coord = np.einsum("l,lk->k", ei, dframe[:, j]) + np.einsum("kab,a,b->k", gamma, ei, ej)
            table[i, j] = coord_to_frame(p, coord)
    return table


def killing_defect_fd(p, field_index, u, v):
    """``<nabla_u K, v> + <u, nabla_v K>`` for Killing field ``field_index`` (0..2),
    using FD directional derivatives and FD Christoffel symbols."""
    p = _as_points(p).astype(float)
    u, v = _vec(u), _vec(v)
    gamma = christoffel_fd(p)

    def field(q):
        return killing_fields(q)[field_index]

    jac = np.empty((3, 3))  # jac[l] = dK/dx^l
    for axis in range(3):
        def along(w, axis=axis):
            q = p.copy()
            q[axis] = w
            return field(q)
        jac[axis] = numdiff.derivative(along, p[axis])
    k = field(p)

    def nabla(w):
        return w @ jac + np.einsum("kab,a,b->k", gamma, w, k)

    return metric(p, nabla(u), v) + metric(p, u, nabla(v))

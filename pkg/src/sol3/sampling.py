"""Parameter grids, curvature sweeps and mesh/CSV export."""

import io
import math
from dataclasses import asdict, dataclass

import numpy as np

from . import surface
from .errors import DomainError


@dataclass(frozen=True)
class GridSpec:
    s_range: tuple = (-2.0, 2.0)
    t_range: tuple = (-2.0, 2.0)
    ns: int = 50
    nt: int = 50
    margin: float = 1e-3

    def __post_init__(self):
        if self.ns < 2 or self.nt < 2:
            raise DomainError("grid counts must be at least 2")
        for lo, hi in (self.s_range, self.t_range):
            if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
                raise DomainError(f"invalid range ({lo!r}, {hi!r})")
        if not self.margin >= 0:
            raise DomainError("margin must be nonnegative")


@dataclass(frozen=True)
class Grid:
    s: np.ndarray
    t: np.ndarray
    s_gaps: np.ndarray  # s_gaps[i]: a singular line lies between s[i] and s[i+1]
    t_gaps: np.ndarray

    def mesh(self):
        return np.meshgrid(self.s, self.t, indexing="ij")


def _axis(lo, hi, n, domain, lines, margin, name):
    lo = max(lo, domain[0] + margin)
    hi = min(hi, domain[1] - margin)
    if not lo < hi:
        raise DomainError(f"{name}-range is empty inside the surface domain")
    values = np.linspace(lo, hi, n)
    keep = np.ones(n, dtype=bool)
    for line in lines:
        keep &= np.abs(values - line) > margin
    values = values[keep]
    if values.size < 2:
        raise DomainError(f"fewer than two {name}-nodes remain after exclusions")
    gaps = np.zeros(values.size - 1, dtype=bool)
    for line in lines:
        gaps |= (values[:-1] < line) & (line < values[1:])
    return values, gaps


def make_grid(spec, imm):
    """Tensor grid clipped to the immersion's domain, avoiding singular lines by ``margin``."""
    s, s_gaps = _axis(*spec.s_range, spec.ns, imm.s_domain, imm.s_singular, spec.margin, "s")
    t, t_gaps = _axis(*spec.t_range, spec.nt, imm.t_domain, imm.t_singular, spec.margin, "t")
    return Grid(s, t, s_gaps, t_gaps)


@dataclass(frozen=True)
class VerifyReport:
    max_abs_H: float
    mean_abs_H: float
    worst_point: tuple
    n_evaluated: int
    n_singular: int
    tolerance: float
    passed: bool

    def as_dict(self):
        return asdict(self)

    def format(self):
        s, t = self.worst_point
        return "\n".join([
            f"max |H|      {_num(self.max_abs_H)}",
            f"mean |H|     {_num(self.mean_abs_H)}",
            f"worst (s,t)  ({_num(s)}, {_num(t)})",
            f"evaluated    {self.n_evaluated}",
            f"singular     {self.n_singular}",
            f"tolerance    {_num(self.tolerance)}",
            f"result       {'PASS' if self.passed else 'FAIL'}",
        ])


def verify(imm, spec=None, tol=1e-8):
    """Sweep |H| over the grid; passes iff every regular node has |H| < tol."""
    grid = make_grid(spec or GridSpec(), imm)
    s, t = grid.mesh()
    report = surface.mean_curvature(imm, s, t, strict=False)
    h = np.abs(report.H)
    regular = report.regular & np.isfinite(h)
    n = int(regular.sum())
    if n == 0:
        return VerifyReport(math.nan, math.nan, (math.nan, math.nan), 0,
                            int(h.size), float(tol), False)
    masked = np.where(regular, h, -1.0)
    worst = np.unravel_index(int(np.argmax(masked)), masked.shape)
    max_h = float(masked[worst])
    return VerifyReport(
        max_abs_H=max_h,
        mean_abs_H=float(h[regular].mean()),
        worst_point=(float(s[worst]), float(t[worst])),
        n_evaluated=n,
        n_singular=int(h.size - n),
        tolerance=float(tol),
        passed=bool(max_h < tol),
    )


def _num(x):
    """Shortest round-trip decimal text; never locale dependent."""
    return repr(float(x))


def sample(imm, spec=None):
    """Grid nodes, positions and mean curvature, row-major with s as the row index."""
    grid = make_grid(spec or GridSpec(), imm)
    s, t = grid.mesh()
    x = imm(s, t)
    h = surface.mean_curvature(imm, s, t, strict=False).H
    return grid, s, t, x, h


def obj_text(imm, spec=None, title=""):
    grid, _, _, x, _ = sample(imm, spec)
    ns, nt = x.shape[:2]
    out = io.StringIO()
    if title:
        out.write(f"# {title}\n")
    for p in x.reshape(-1, 3):
        out.write(f"v {_num(p[0])} {_num(p[1])} {_num(p[2])}\n")
    for i in range(ns - 1):
        if grid.s_gaps[i]:
            continue
        for j in range(nt - 1):
            if grid.t_gaps[j]:
                continue
            a, b = i * nt + j + 1, (i + 1) * nt + j + 1
            # counter-clockwise in the (s, t) plane, i.e. around e1 x e2
            out.write(f"f {a} {b} {b + 1}\n")
            out.write(f"f {a} {b + 1} {a + 1}\n")
    return out.getvalue()


def csv_text(imm, spec=None):
    _, s, t, x, h = sample(imm, spec)
    out = io.StringIO()
    out.write("s,t,x,y,z,H\n")
    for si, ti, p, hi in zip(s.ravel(), t.ravel(), x.reshape(-1, 3), h.ravel()):
        out.write(",".join(_num(v) for v in (si, ti, p[0], p[1], p[2], hi)) + "\n")
    return out.getvalue()

"""Embedded acceptance checks, shared by ``sol3 selftest`` and the test suite.

Every check is deterministic (fixed seeds) and returns a CheckResult whose
``measured`` value is compared against the stated tolerance. Passing ``tol``
replaces the stated tolerance.
"""

import contextlib
import io
import math
import os
import tempfile
from dataclasses import asdict, dataclass

import numpy as np

from . import core, numdiff, sampling, solutions, surface
from . import families as fam

SEED = 20240917


@dataclass(frozen=True)
class CheckResult:
    name: str
    measured: float
    tolerance: float
    passed: bool
    detail: str = ""

    def as_dict(self):
        return asdict(self)


def _result(name, measured, tolerance, detail="", extra_ok=True):
    measured = float(measured)
    ok = bool(extra_ok and math.isfinite(measured) and measured < tolerance)
    return CheckResult(name, measured, float(tolerance), ok, detail)


def _rng(offset=0):
    return np.random.default_rng(SEED + offset)


# 1
def check_connection_oracle(tol=None):
    tol = 1e-6 if tol is None else tol
    rng = _rng(1)
    worst = 0.0
    for p in rng.uniform(-3, 3, size=(100, 3)):
        worst = max(worst, float(np.max(np.abs(core.frame_connection_fd(p) - core.CONNECTION))))
    return _result("connection table vs FD Christoffel", worst, tol, "100 points, 27 entries")


def random_curve(rng):
    """A curve drawn from the catalog kinds: const, affine, poly, log, neglog, scherk."""
    kind = int(rng.integers(6))
    if kind == 0:
        return fam.constant(rng.uniform(-1, 1))
    if kind == 1:
        return fam.affine(rng.uniform(-2, 2), rng.uniform(-1, 1))
    if kind == 2:
        return solutions.random_cubic(rng)
    if kind == 3:
        return fam.log_curve(rng.uniform(-3, 3), rng.uniform(-1, 1))
    if kind == 4:
        return fam.neg_log_curve(rng.uniform(-3, 3), rng.uniform(-1, 1))
    state = solutions.ScherkState(rng.uniform(0.2, 2.5), float(rng.choice([-1, 1]) * rng.uniform(0.3, 3)))
    return solutions.scherk_curve(state)


def _away_from(rng, curve, margin=0.05):
    while True:
        u = float(rng.uniform(-2, 2))
        if all(abs(u - x) > margin for x in curve.singular):
            return u


def identity_errors(kind, draws=1000, seed_offset=0):
    """Relative gaps between the kernel residual and the closed form (times its
    expected factor), over random regular draws. Where the closed form is below
    1e-9 the kernel residual itself is recorded."""
    rng = _rng(10 + seed_offset)
    kind = fam.TranslationType.parse(kind)
    closed_form = fam.RESIDUALS[kind]
    errors = []
    while len(errors) < draws:
        f, g = random_curve(rng), random_curve(rng)
        s, t = _away_from(rng, f), _away_from(rng, g)
        imm = fam.build_surface(kind, f, g).immersion
        if not surface.mean_curvature(imm, s, t, strict=False).regular:
            continue
        kernel = float(surface.minimality_residual(imm, s, t))
        expected = float(closed_form(f, g, s, t) * fam.expected_agreement_factor(kind, f, s))
        closed = float(closed_form(f, g, s, t))
        if abs(closed) > 1e-9:
            errors.append(abs(kernel - expected) / abs(expected))
        else:
            errors.append(abs(kernel))
    return np.array(errors)


# 2-4
def check_type1_identity(tol=None):
    tol = 1e-9 if tol is None else tol
    return _result("type I kernel = closed form", identity_errors("I").max(), tol, "1000 draws, relative")


def check_type2_identity(tol=None):
    tol = 1e-9 if tol is None else tol
    return _result("type II kernel = closed form", identity_errors("II", seed_offset=1).max(), tol,
                   "1000 draws, relative")


def check_type3_proportionality(tol=None):
    tol = 1e-9 if tol is None else tol
    return _result("type III kernel = -e^f * closed form",
                   identity_errors("III", seed_offset=2).max(), tol, "1000 draws, relative")


# 5
def catalog_max_H(draws=20):
    rng = _rng(5)
    worst = {}
    for kind in solutions.CATALOG:
        worst[kind] = max(
            sampling.verify(solutions.materialize(solutions.random_spec(kind, rng))).max_abs_H
            for _ in range(draws)
        )
    return worst


def check_catalog_minimality(tol=None):
    tol = 1e-8 if tol is None else tol
    worst = catalog_max_H()
    kind = max(worst, key=worst.get)
    return _result("catalog minimality", worst[kind], tol,
                   f"{len(worst)} variants x 20 draws, 50x50 grid; worst {kind}")


# 6
def check_nonminimal_witness(tol=None):
    tol = 1e-9 if tol is None else tol
    imm = fam.build_surface("I", fam.affine(1, 0), fam.affine(1, 0)).immersion
    expected = math.exp(-2) - math.exp(2)
    residual = float(surface.minimality_residual(imm, 0.0, 1.0))
    h = float(surface.mean_curvature(imm, 0.0, 1.0).H)
    fd = float(surface.fd_mean_curvature(imm, 0.0, 1.0))
    rel = abs(residual - expected) / abs(expected)
    return _result("non-minimal witness f=s, g=t", rel, tol,
                   f"residual {residual!r}, H {h!r}, FD H {fd!r}",
                   extra_ok=abs(fd - h) < 1e-5 and abs(h) > 1e-3)


# 7
def check_scherk_function(tol=None):
    tol = 1e-10 if tol is None else tol
    odd_tol = 1e-12 if tol is None else min(tol, 1e-12)
    roundtrip = max(abs(solutions.scherk_I(solutions.scherk_I_inv(u)) - u)
                    for u in np.linspace(-10, 10, 100))
    rules = max(abs(solutions.scherk_I(t) - solutions.scherk_I_gauss(t)) for t in (0.5, 1, 2, 5))
    odd = max(abs(solutions.scherk_I(-t) + solutions.scherk_I(t)) for t in (0.3, 1.7, 4.2))
    grid = np.linspace(-5, 5, 41)
    values = np.array([solutions.scherk_I(t) for t in grid])
    monotone = bool(np.all(np.diff(values) >= np.diff(grid)))
    ok = solutions.scherk_I(0.0) == 0.0 and odd < odd_tol and monotone
    return _result("I and I^-1", max(roundtrip, rules), tol,
                   f"round trip {roundtrip:.1e}, rules {rules:.1e}, oddness {odd:.1e}", extra_ok=ok)


# 8
def check_zeta_ode(tol=None):
    tol = 1e-9 if tol is None else tol
    rng = _rng(8)
    t = np.linspace(-3, 3, 61)
    worst = fd_gap = 0.0
    for _ in range(5):
        state = solutions.ScherkState(float(rng.uniform(0.2, 2.5)),
                                      float(rng.choice([-1, 1]) * rng.uniform(0.3, 3)))
        g, dg, ddg = solutions.scherk_g(t, state)
        zeta = 2 * (g - state.m)
        second, first = solutions.zeta_ode_residuals(zeta, 2 * dg, 2 * ddg, state.c)
        gap = solutions.reduction_identity_gap(state.a, g, dg, ddg)
        worst = max(worst, np.abs(second).max(), np.abs(first).max(), np.abs(gap).max())
        fd = numdiff.derivative(lambda u: solutions.scherk_g(u, state)[0], t)
        fd_gap = max(fd_gap, float(np.abs(fd - dg).max()))
    return _result("zeta ODE and reduction identity", worst, tol,
                   f"FD g' gap {fd_gap:.1e}", extra_ok=fd_gap < 1e-7)


# 9
def check_arbitrary_f(tol=None):
    tol = 1e-8 if tol is None else tol
    rng = _rng(9)
    grid = sampling.GridSpec(t_range=(0.1, 3.0))
    worst = 0.0
    for _ in range(5):
        spec = solutions.SolutionSpec("type3-logt", {"mu": float(rng.uniform(-1, 1))},
                                      solutions.random_cubic(rng))
        worst = max(worst, sampling.verify(solutions.materialize(spec), grid).max_abs_H)
    return _result("arbitrary f with g = log|t| + mu", worst, tol, "5 cubics, t in [0.1, 3]")


def _mixed_surfaces(rng):
    surfaces = [
        solutions.materialize(solutions.random_spec(kind, rng))
        for kind in ("type1-scherk", "type2-log", "type3-logt", "invariant-log", "totally-geodesic")
    ]
    for kind in fam.TranslationType:
        surfaces.append(fam.build_surface(kind, solutions.random_cubic(rng),
                                          solutions.random_cubic(rng)).immersion)
    return surfaces


# 10
def check_isometry_invariance(tol=None):
    tol = 1e-8 if tol is None else tol
    rng = _rng(10)
    spec = sampling.GridSpec(s_range=(-1.5, 1.5), t_range=(-1.5, 1.5), ns=10, nt=10)
    worst = 0.0
    for imm in _mixed_surfaces(rng):
        s, t = sampling.make_grid(spec, imm).mesh()
        base = surface.mean_curvature(imm, s, t).H
        for kind in core.IsometryElement.KINDS:
            for c in (-1.0, 0.5, 2.0):
                moved = surface.compose_isometry(imm, core.IsometryElement(kind, c))
                worst = max(worst, float(np.abs(surface.mean_curvature(moved, s, t).H - base).max()))
    return _result("isometry invariance of H", worst, tol, "3 families x c in {-1, 0.5, 2}")


# 11
def check_oracle_agreement(tol=None):
    tol = 1e-5 if tol is None else tol
    rng = _rng(11)
    spec = sampling.GridSpec(s_range=(-1.5, 1.5), t_range=(-1.5, 1.5), ns=5, nt=5, margin=0.05)
    imms = _mixed_surfaces(rng) + [
        solutions.materialize(solutions.random_spec(kind, rng)) for kind in solutions.CATALOG
    ]
    worst = 0.0
    for imm in imms:
        s, t = sampling.make_grid(spec, imm).mesh()
        gap = surface.fd_mean_curvature(imm, s, t) - surface.mean_curvature(imm, s, t).H
        worst = max(worst, float(np.abs(gap).max()))
    return _result("FD oracle vs analytic H", worst, tol, f"{len(imms)} surfaces, 5x5 points")


# 12
def check_cli_contract(tol=None):
    from . import cli

    def run(argv):
        with contextlib.redirect_stdout(io.StringIO()), contextlib.redirect_stderr(io.StringIO()):
            return cli.main(argv)

    with tempfile.TemporaryDirectory() as tmp:
        outputs = []
        for i in range(2):
            path = os.path.join(tmp, f"run{i}.obj")
            run(["sample", "--solution", "type3-logt", "f=poly:0.1,-0.2,0.3,0.05",
                 "--ns", "12", "--nt", "9", "--format", "obj", "--out", path])
            with open(path, "rb") as fh:
                outputs.append(fh.read())
    identical = outputs[0] == outputs[1] and len(outputs[0]) > 0
    codes = (
        run(["verify", "--solution", "plane-z", "z0=5"]),
        run(["verify", "--type", "I", "--f", "affine:1,0", "--g", "affine:1,0"]),
        run(["verify", "--type", "I", "--f", "affine:1", "--g", "affine:1,0"]),
    )
    ok = identical and codes == (0, 1, 2)
    return CheckResult("CLI determinism and exit codes", 0.0 if ok else 1.0, 0.5, ok,
                       f"identical={identical}, exit codes {codes}")


CHECKS = (
    check_connection_oracle,
    check_type1_identity,
    check_type2_identity,
    check_type3_proportionality,
    check_catalog_minimality,
    check_nonminimal_witness,
    check_scherk_function,
    check_zeta_ode,
    check_arbitrary_f,
    check_isometry_invariance,
    check_oracle_agreement,
    check_cli_contract,
)


def run_all(tol=None):
    results = []
    for check in CHECKS:
        try:
            results.append(check(tol))
        except Exception as exc:  # a tightened tolerance must report, not crash
            results.append(CheckResult(check.__name__, math.nan, math.nan, False,
                                       f"{type(exc).__name__}: {exc}"))
    return results


def format_table(results):
    lines = []
    for i, r in enumerate(results, 1):
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{i:2d} {status}  {r.name:40s} {r.measured:10.3e} < {r.tolerance:8.1e}  {r.detail}")
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} checks passed")
    return "\n".join(lines)

import math

import numpy as np
import pytest

from sol3 import core, surface
from sol3 import families as fam
from sol3.errors import DomainError, SingularPointError

S, T = 0.37, -0.61


def _curves():
    f = fam.polynomial([0.2, -0.5, 0.3, 0.1])
    g = fam.polynomial([-0.1, 0.4, -0.2, 0.05])
    return f, g


def test_type1_frame_with_flat_first_curve():
    gp = 0.8
    imm = fam.build_surface("I", fam.constant(0.3), fam.affine(gp, 0.0)).immersion
    e1, e2 = surface.tangent_frame(imm, 0.0, 0.0)
    assert np.allclose(e1, (1, 0, 0)) and np.allclose(e2, (1, 0, gp))


def test_type1_and_type2_frames():
    f, g = _curves()
    f0, fp, _ = f.jet(S)
    g0, gp, _ = g.jet(T)
    e1, _ = surface.tangent_frame(fam.build_surface("I", f, g).immersion, S, T)
    assert np.allclose(e1, (math.exp(g0), fp * math.exp(-g0), 0), rtol=1e-13)
    _, e2 = surface.tangent_frame(fam.build_surface("II", f, g).immersion, S, T)
    assert np.allclose(e2, (0, math.exp(-g0), gp), rtol=1e-13)


def test_first_form_examples():
    imm = fam.build_surface("I", fam.constant(1.3), fam.constant(0.0)).immersion
    assert np.allclose(surface.first_form(imm, 0.5, -0.4, strict=False), (1, 1, 1))
    f, g = _curves()
    _, fp, _ = f.jet(S)
    g0, gp, _ = g.jet(T)
    F = surface.first_form(fam.build_surface("II", f, g).immersion, S, T).F
    assert F == pytest.approx(fp * math.exp(-2 * g0), rel=1e-13)
    G = surface.first_form(fam.build_surface("III", f, g).immersion, S, T).G
    assert G == pytest.approx(math.exp(-2 * g0) + gp**2, rel=1e-13)


def test_normals_match_closed_forms():
    f, g = _curves()
    f0, fp, _ = f.jet(S)
    g0, gp, _ = g.jet(T)
    n1 = surface.normal_scaled(fam.build_surface("I", f, g).immersion, S, T)
    assert np.allclose(n1, (fp * gp * math.exp(-g0), -gp * math.exp(g0), -fp), rtol=1e-13)
    n2 = surface.normal_scaled(fam.build_surface("II", f, g).immersion, S, T)
    assert np.allclose(n2, (fp * gp * math.exp(-g0), -gp * math.exp(g0), 1), rtol=1e-13)
    n3 = surface.normal_scaled(fam.build_surface("III", f, g).immersion, S, T)
    rescaled = np.array([fp * (1 - T * gp) * math.exp(-(f0 + g0)), gp * math.exp(g0), -1.0])
    assert np.allclose(n3, -math.exp(f0) * rescaled, rtol=1e-13)


def test_second_form_examples():
    f, g = _curves()
    f0, fp, _ = f.jet(S)
    g0, gp, gpp = g.jet(T)
    form = surface.second_form_scaled(fam.build_surface("I", fam.constant(0.4), g).immersion, S, T,
                                      strict=False)
    assert form.l == pytest.approx(0.0, abs=1e-15)
    n = surface.second_form_scaled(fam.build_surface("II", f, g).immersion, S, T).n
    assert n == pytest.approx(2 * gp**2 + gpp + math.exp(-2 * g0), rel=1e-13)
    m = surface.second_form_scaled(fam.build_surface("III", f, g).immersion, S, T).m
    rescaled = fp * gp - 2 * T * fp * gp**2 - T * fp * math.exp(-2 * g0)
    assert m == pytest.approx(-math.exp(f0) * rescaled, rel=1e-12)


@pytest.mark.parametrize("kind", list(fam.TranslationType))
def test_pointwise_invariants(kind):
    f, g = _curves()
    imm = fam.build_surface(kind, f, g).immersion
    s, t = np.meshgrid(np.linspace(-1, 1, 5), np.linspace(-1, 1, 5))
    e1, e2 = surface.tangent_frame(imm, s, t)
    E, F, G = surface.first_form(imm, s, t)
    normal = surface.normal_scaled(imm, s, t)
    assert np.allclose(np.sum(normal * normal, -1), E * G - F * F, rtol=1e-12)
    assert np.allclose(np.sum(normal * e1, -1), 0, atol=1e-12)
    assert np.allclose(np.sum(normal * e2, -1), 0, atol=1e-12)
    form = surface.second_form_scaled(imm, s, t)
    assert np.allclose(form.m, form.m_swapped, rtol=1e-12, atol=1e-12)
    assert np.all(np.isfinite(surface.mean_curvature(imm, s, t).H))


def test_analytic_jets_match_finite_differences():
    f, g = _curves()
    for kind in fam.TranslationType:
        imm = fam.build_surface(kind, f, g).immersion
        analytic = imm.jets(S, T)
        numeric = imm.without_derivatives().jets(S, T)
        for a, b in zip(analytic, numeric):
            assert np.allclose(a, b, rtol=1e-6, atol=1e-6)


def test_planes_are_minimal():
    rng = np.random.default_rng(0)
    s, t = rng.uniform(-2, 2, (2, 30))
    for z0 in (0.0, 5.0, -1.7):
        imm = surface.affine_immersion((0, 0, z0), (1, 0, 0), (0, 1, 0))
        assert np.array_equal(imm(0.5, -0.25), [0.5, -0.25, z0])
        assert np.all(surface.minimality_residual(imm, s, t) == 0)
        assert np.all(surface.mean_curvature(imm, s, t).H == 0)
    a, b, c = 0.6, -1.4, 0.9
    n = math.hypot(a, b)
    tilted = surface.affine_immersion((-c * a / n**2, -c * b / n**2, 0), (-b / n, a / n, 0), (0, 0, 1))
    x = tilted(s, t)
    assert np.allclose(a * x[..., 0] + b * x[..., 1] + c, 0)
    assert np.max(np.abs(surface.minimality_residual(tilted, s, t))) < 1e-14


def test_witness_residual():
    imm = fam.build_surface("I", fam.affine(1, 0), fam.affine(1, 0)).immersion
    assert surface.minimality_residual(imm, 0.0, 1.0) == pytest.approx(math.exp(-2) - math.exp(2), rel=1e-12)


def test_swap_negates_mean_curvature():
    f, g = _curves()
    imm = fam.build_surface("II", f, g).immersion
    swapped = surface.swap_parameters(imm)
    h = surface.mean_curvature(imm, S, T).H
    assert abs(h) > 1e-3
    assert surface.mean_curvature(swapped, T, S).H == pytest.approx(-h, rel=1e-12)


@pytest.mark.parametrize("kind", core.IsometryElement.KINDS)
def test_mean_curvature_isometry_invariant(kind):
    f, g = _curves()
    imm = fam.build_surface("III", f, g).immersion
    s, t = np.meshgrid(np.linspace(-1, 1, 4), np.linspace(-1, 1, 4))
    base = surface.mean_curvature(imm, s, t).H
    for c in (-1.0, 0.5, 2.0):
        moved = surface.compose_isometry(imm, core.IsometryElement(kind, c))
        assert np.allclose(surface.mean_curvature(moved, s, t).H, base, rtol=1e-10, atol=1e-12)


def test_singular_points():
    line = fam.build_surface("I", fam.constant(0.0), fam.constant(0.0)).immersion
    with pytest.raises(SingularPointError):
        surface.mean_curvature(line, 0.0, 0.0)
    report = surface.mean_curvature(line, [0.0, 1.0], [0.0, 1.0], strict=False)
    assert not report.regular.any() and np.all(np.isnan(report.H))


def test_fd_oracle_agreement():
    f, g = _curves()
    for kind in fam.TranslationType:
        imm = fam.build_surface(kind, f, g).immersion
        assert surface.fd_mean_curvature(imm, S, T) == pytest.approx(
            surface.mean_curvature(imm, S, T).H, abs=1e-5)
    witness = fam.build_surface("I", fam.affine(1, 0), fam.affine(1, 0)).immersion
    assert surface.fd_mean_curvature(witness, 0.0, 1.0) == pytest.approx(
        surface.mean_curvature(witness, 0.0, 1.0).H, abs=1e-5)
    plane = surface.affine_immersion((0, 0, 1.5), (1, 0, 0), (0, 1, 0))
    assert abs(surface.fd_mean_curvature(plane, 0.2, 0.3)) < 1e-8


def test_fd_oracle_refuses_singular_lines():
    imm = fam.build_surface("II", fam.constant(0.0), fam.log_curve(0.0, 0.0)).immersion
    with pytest.raises(DomainError):
        surface.fd_mean_curvature(imm, 0.5, 1e-6)


def test_z_overflow_is_a_domain_error():
    imm = surface.affine_immersion((0, 0, 0), (0, 0, 1), (0, 1, 0))
    with pytest.raises(DomainError):
        surface.mean_curvature(imm, 400.0, 0.0)

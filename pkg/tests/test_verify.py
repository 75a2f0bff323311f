import math

import numpy as np
import pytest

from genylm.harmonics import COMPOSED_Z, AxisVariant, HarmonicFamily, Source, std_ylm_l2
from genylm.quadrature import sphere_grid
from genylm.verify import (
    NonFiniteValueError, PoleProximityError, apply_axis_angular_momentum, apply_axis_angular_momentum_fd,
    basis_coefficients, eigen_residual, errata_report, inner_product, orthonormality_report, parity_check,
    unitarity_check, unitarity_deviations,
)
from genylm.wigner import Direction

from conftest import random_axes

M = (2, 1, 0, -1, -2)
GRID = sphere_grid(16, 16)
PRINTED_X = HarmonicFamily(Source.PAPER_CLOSED, AxisVariant.X_PRIME)
SUB_X = HarmonicFamily(Source.SUBSTITUTION_DERIVED, AxisVariant.X_PRIME)
SUB_Y = HarmonicFamily(Source.SUBSTITUTION_DERIVED, AxisVariant.Y_PRIME)


def ylm(m):
    return lambda t, p: std_ylm_l2(m, t, p)


def test_inner_product_standard():
    assert abs(inner_product(ylm(0), ylm(0), GRID) - 1) < 1e-13
    assert abs(inner_product(ylm(2), ylm(1), GRID)) < 1e-13


def test_inner_product_generalized(axes):
    for ax in axes[:3]:
        for a in M:
            for b in M:
                ip = inner_product(lambda t, p: COMPOSED_Z.evaluate(a, ax, t, p),
                                   lambda t, p: COMPOSED_Z.evaluate(b, ax, t, p), GRID)
                assert abs(ip - (a == b)) < 1e-12


def test_inner_product_reports_bad_node():
    g = sphere_grid(4, 4)
    bad = lambda t, p: np.where(np.isclose(p, math.pi / 2) & (t == t.max()), np.nan, 1.0)
    with pytest.raises(NonFiniteValueError, match="node"):
        inner_product(bad, ylm(0), g)


@pytest.mark.parametrize("family", [COMPOSED_Z, HarmonicFamily(Source.PAPER_CLOSED), SUB_X, SUB_Y],
                         ids=lambda f: f.name)
def test_orthonormal_families(family, axes):
    for ax in axes:
        r = orthonormality_report(family, ax, GRID)
        assert r.max_deviation < 1e-12
        assert r.hermitian_residual < 1e-13


def test_printed_x_gram_deviation_is_m0_only(axes):
    for ax in axes:
        g = orthonormality_report(PRINTED_X, ax, GRID).gram
        dev = np.abs(g - np.eye(5))
        # m = 0 sits at index 2; its norm is 2/3, everything else is untouched
        assert dev[2, 2] == pytest.approx(1 / 3, abs=1e-12)
        dev[2, 2] = 0
        assert dev.max() < 1e-12


def test_unitarity_check():
    assert unitarity_check(Direction(0, 0)) == 0.0
    assert unitarity_check(Direction(math.pi, 0)) < 1e-12
    rng = np.random.default_rng(0)
    tp, pp = np.arccos(rng.uniform(-1, 1, 1000)), rng.uniform(0, 2 * math.pi, 1000)
    assert unitarity_deviations(tp, pp).max() < 1e-12
    assert unitarity_check(Direction(1.0, 0.0), as_printed=True) > 0.1


def test_parity_check_values(points):
    t, p = points
    std = HarmonicFamily(Source.COMPOSED)
    assert parity_check(std, Direction(0, 0), t, p) < 1e-13
    assert parity_check(std, Direction(1.2, 4.0), t, p) < 1e-13
    assert parity_check(HarmonicFamily(Source.PAPER_CLOSED, AxisVariant.Y_PRIME), Direction(1.2, 4.0), t, p) < 1e-13


@pytest.mark.parametrize("m", M)
def test_operator_along_z(m, points):
    # theta' = 0 leaves -i d/dphi
    t, p = points
    z = Direction(0, 0)
    lhs = apply_axis_angular_momentum(m, z, t, p)
    assert np.abs(lhs - m * COMPOSED_Z.evaluate(m, z, t, p)).max() < 1e-12
    sign = -1 if m in (1, -1) else 1
    assert np.abs(lhs - sign * m * std_ylm_l2(m, t, p)).max() < 1e-12


@pytest.mark.parametrize("m", M)
def test_eigen_equation_random_axes(m, axes, points):
    t, p = points
    for ax in axes:
        lhs = apply_axis_angular_momentum(m, ax, t, p)
        assert np.abs(lhs - m * COMPOSED_Z.evaluate(m, ax, t, p)).max() < 1e-9


@pytest.mark.parametrize("m", M)
def test_analytic_vs_finite_difference(m):
    rng = np.random.default_rng(42)
    t = np.arccos(rng.uniform(-0.99, 0.99, 100))
    p = rng.uniform(0, 2 * math.pi, 100)
    for ax in random_axes(5, seed=m + 10):
        a = apply_axis_angular_momentum(m, ax, t, p)
        f = apply_axis_angular_momentum_fd(m, ax, t, p)
        assert np.abs(a - f).max() < 1e-6


def test_operator_is_not_trivially_satisfied():
    # the printed amplitude row for m = 1 is not an eigenfunction
    ax = Direction(1.0, 0.3)
    t, p = np.array([0.7, 1.4, 2.2]), np.array([0.1, 2.0, 4.0])
    coeffs = basis_coefficients(COMPOSED_Z, 1, ax)
    assert coeffs.shape == (5,)
    from genylm.harmonics import gen_ylm_composed
    printed = lambda tt, pp: gen_ylm_composed(1, ax, tt, pp, as_printed=True)
    h = 1e-6
    d_t = (printed(t + h, p) - printed(t - h, p)) / (2 * h)
    d_p = (printed(t, p + h) - printed(t, p - h)) / (2 * h)
    from genylm.verify import _axis_operator
    lhs = _axis_operator(ax.theta_prime, ax.phi_prime, t, p, d_t, d_p)
    assert np.abs(lhs - printed(t, p)).max() > 1e-2


def test_pole_proximity():
    with pytest.raises(PoleProximityError):
        apply_axis_angular_momentum(0, Direction(1, 1), np.array([0.5, 1e-10]), np.array([0.0, 0.0]))
    with pytest.raises(PoleProximityError):
        apply_axis_angular_momentum(0, Direction(1, 1), math.pi, 0.0)


def test_eigen_residual_reports(axes):
    assert eigen_residual(0, Direction(0, 0), GRID).max_residual < 1e-12
    for m in M:
        assert eigen_residual(m, Direction(0, 0), GRID).max_residual < 1e-12
        for ax in axes:
            rep = eigen_residual(m, ax, GRID)
            assert 0 <= rep.max_residual < 1e-9
            assert rep.grid == "16x16"


@pytest.mark.parametrize("family", [HarmonicFamily(Source.PAPER_CLOSED), SUB_X, SUB_Y], ids=lambda f: f.name)
def test_eigen_other_routes(family, axes):
    for ax in axes[:4]:
        for m in M:
            assert eigen_residual(m, ax, GRID, family).max_residual < 1e-9


def test_projection_reconstructs(axes):
    g = sphere_grid(8, 8)
    from genylm.harmonics import std_basis
    for fam in (SUB_X, PRINTED_X):
        for m in M:
            c = basis_coefficients(fam, m, axes[0])
            rebuilt = std_basis(g.theta, g.phi) @ c
            assert np.abs(rebuilt - fam.evaluate(m, axes[0], g.theta, g.phi)).max() < 1e-13


def test_errata_findings():
    found = {f.name: f for f in errata_report(seed=0)}
    x0 = found["paper-closed-x/m=0"]
    assert x0.max_deviation > 1e-3
    assert x0.ratio.real == pytest.approx(math.sqrt(2 / 3), abs=1e-12)
    assert x0.corrected_prefactor == pytest.approx(math.sqrt(45 / (256 * math.pi)), abs=1e-12)
    assert found["paper-closed-y/m=1"].ratio is None
    assert found["paper-closed-y/m=1"].max_deviation > 0.1
    for name in ("amplitude-table/m_i=1,m_f=1", "amplitude-table/m_i=1,m_f=-1", "limit-z/m=1", "limit-z/m=-1"):
        assert found[name].ratio == pytest.approx(-1, abs=1e-12)
    for m in (2, 1, -1, -2):
        assert found[f"paper-closed-x/m={m}"].max_deviation < 1e-12
    for m in (2, 0, -1, -2):
        assert found[f"paper-closed-y/m={m}"].max_deviation < 1e-12

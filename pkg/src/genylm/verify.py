"""Verification battery for the generalized l=2 harmonics.

Everything returns plain residuals or small report objects; the CLI decides
what to print.  hbar = 1 throughout, so eigenvalues are bare m.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .amplitudes import CORRECTED_ENTRIES, M_VALUES, _amplitude_table, index_of
from .harmonics import (
    ALL_FAMILIES, COMPOSED_Z, K_XY, K_Z0, AxisVariant, HarmonicFamily, Source,
    std_basis, std_basis_dtheta, std_ylm_l2,
)
from .quadrature import SphereGrid, sphere_grid
from .wigner import Direction, _rotation_coefficients

POLE_EXCLUSION = 1e-9
SUM_RULE = 5 / (4 * math.pi)

DEFAULT_TOLERANCES = {
    "unitarity": 1e-12,
    "oracle_equivalence": 1e-12,
    "composition": 1e-12,
    "substitution_vs_composed": 1e-12,
    "substitution_agreement": 1e-12,
    "limit_reduction": 1e-13,
    "orthonormality": 1e-12,
    "gram_hermitian": 1e-13,
    "parity": 1e-13,
    "sum_rule": 1e-12,
    "eigen": 1e-9,
    "fd_crosscheck": 1e-6,
    "quadrature_weight": 1e-13,
    "quadrature_exactness": 1e-13,
}

DEFAULT_FAMILIES = (
    COMPOSED_Z,
    HarmonicFamily(Source.PAPER_CLOSED, AxisVariant.Z_PRIME),
    HarmonicFamily(Source.SUBSTITUTION_DERIVED, AxisVariant.X_PRIME),
    HarmonicFamily(Source.SUBSTITUTION_DERIVED, AxisVariant.Y_PRIME),
)

# grid on which l=2 content is projected exactly
_PROJECTION_GRID = sphere_grid(8, 8)


class NonFiniteValueError(ValueError):
    pass


class PoleProximityError(ValueError):
    pass


# -- sampling -----------------------------------------------------------------

def random_directions(rng: np.random.Generator, n: int) -> tuple[np.ndarray, np.ndarray]:
    """``n`` axis angle pairs uniform on the sphere."""
    tp = np.arccos(rng.uniform(-1.0, 1.0, n))
    pp = rng.uniform(0.0, 2 * math.pi, n)
    return tp, pp


def random_positions(rng: np.random.Generator, n: int, margin: float = 1e-3):
    """``n`` points uniform on the sphere with |cos(theta)| <= 1 - margin."""
    theta = np.arccos(rng.uniform(-1.0 + margin, 1.0 - margin, n))
    phi = rng.uniform(0.0, 2 * math.pi, n)
    return theta, phi


# -- integrals ----------------------------------------------------------------

def _on_grid(f, grid: SphereGrid) -> np.ndarray:
    values = np.broadcast_to(np.asarray(f(grid.theta, grid.phi), dtype=complex), grid.weights.shape)
    bad = ~np.isfinite(values)
    if bad.any():
        k = int(np.flatnonzero(bad)[0])
        raise NonFiniteValueError(
            f"non-finite value {values[k]} at node {k} (theta={grid.theta[k]!r}, phi={grid.phi[k]!r})")
    return values


def inner_product(f, g, grid: SphereGrid) -> complex:
    """Quadrature estimate of the integral of conj(f) * g over the sphere."""
    fv, gv = _on_grid(f, grid), _on_grid(g, grid)
    return complex(np.sum(grid.weights * np.conj(fv) * gv))


def gram_matrix(functions, grid: SphereGrid) -> np.ndarray:
    values = np.stack([_on_grid(f, grid) for f in functions], axis=-1)
    return (values.conj().T * grid.weights) @ values


@dataclass
class OrthoReport:
    family: HarmonicFamily
    axis: Direction
    grid: str
    gram: np.ndarray
    max_offdiag: float = field(init=False)
    max_diag_deviation: float = field(init=False)
    hermitian_residual: float = field(init=False)

    def __post_init__(self):
        eye = np.eye(self.gram.shape[0])
        off = np.abs(self.gram * (1 - eye))
        self.max_offdiag = float(off.max())
        self.max_diag_deviation = float(np.abs(np.diag(self.gram) - 1).max())
        self.hermitian_residual = float(np.abs(self.gram - self.gram.conj().T).max())

    @property
    def max_deviation(self) -> float:
        return max(self.max_offdiag, self.max_diag_deviation)


def orthonormality_report(family: HarmonicFamily, axis: Direction, grid: SphereGrid) -> OrthoReport:
    functions = [lambda t, p, m=m: family.evaluate(m, axis, t, p) for m in M_VALUES]
    return OrthoReport(family, axis, grid.describe(), gram_matrix(functions, grid))


def std_gram_matrix(grid: SphereGrid) -> np.ndarray:
    return gram_matrix([lambda t, p, m=m: std_ylm_l2(m, t, p) for m in M_VALUES], grid)


# -- amplitude table checks ---------------------------------------------------

def unitarity_deviations(theta_prime, phi_prime, as_printed: bool = False) -> np.ndarray:
    """max |A A^H - I| for each axis in a batch."""
    a = _amplitude_table(theta_prime, phi_prime, as_printed)
    prod = a @ np.conj(np.swapaxes(a, -1, -2))
    return np.abs(prod - np.eye(5)).max(axis=(-1, -2))


def unitarity_check(axis: Direction, as_printed: bool = False) -> float:
    return float(unitarity_deviations(axis.theta_prime, axis.phi_prime, as_printed))


def oracle_deviations(theta_prime, phi_prime, as_printed: bool = False) -> np.ndarray:
    """max entrywise |amplitude table - general-j rotation oracle| per axis."""
    a = _amplitude_table(theta_prime, phi_prime, as_printed)
    b = _rotation_coefficients(2, theta_prime, phi_prime)
    return np.abs(a - b).max(axis=(-1, -2))


# -- pointwise properties -----------------------------------------------------

def parity_check(family: HarmonicFamily, axis: Direction, theta, phi) -> float:
    """max |f(pi - theta, phi + pi) - f(theta, phi)| over all m and sample points."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    worst = 0.0
    for m in M_VALUES:
        diff = family.evaluate(m, axis, math.pi - theta, phi + math.pi) - family.evaluate(m, axis, theta, phi)
        worst = max(worst, float(np.abs(diff).max()))
    return worst


def sum_rule_deviation(family: HarmonicFamily, axis: Direction, theta, phi) -> float:
    total = sum(np.abs(family.evaluate(m, axis, theta, phi)) ** 2 for m in M_VALUES)
    return float(np.abs(total - SUM_RULE).max())


# -- axis angular momentum operator ------------------------------------------

def _check_poles(theta):
    theta = np.asarray(theta, dtype=float)
    near = (theta < POLE_EXCLUSION) | (theta > math.pi - POLE_EXCLUSION)
    if np.any(near):
        k = int(np.flatnonzero(near.ravel())[0])
        raise PoleProximityError(f"theta={theta.ravel()[k]!r} within {POLE_EXCLUSION} of a pole")
    return theta


def _axis_operator(tp, pp, theta, phi, d_theta, d_phi):
    # i { sin t' sin(phi - p') d/dtheta + [sin t' cot(theta) cos(phi - p') - cos t'] d/dphi }
    delta = phi - pp
    return 1j * (math.sin(tp) * np.sin(delta) * d_theta
                 + (math.sin(tp) * np.cos(delta) / np.tan(theta) - math.cos(tp)) * d_phi)


def basis_coefficients(family: HarmonicFamily, m: int, axis: Direction) -> np.ndarray:
    """Coefficients of the family member on Y_2m', m' = 2..-2.

    Composed families read them off the amplitude table; other routes are
    projected on a grid that is exact for l=2 content.
    """
    if family.source is Source.COMPOSED:
        tp, pp = family.operator_axis(axis)
        return _amplitude_table(tp, pp)[index_of(m)]
    g = _PROJECTION_GRID
    values = family.evaluate(m, axis, g.theta, g.phi)
    return (std_basis(g.theta, g.phi).conj().T * g.weights) @ values


def apply_axis_angular_momentum(m: int, axis: Direction, theta, phi, family: HarmonicFamily = COMPOSED_Z):
    """Axis angular momentum operator applied to a generalized harmonic, analytic partials.

    d/dphi multiplies each Y_2m' term by i m'; d/dtheta uses the closed-form
    derivative of the standard harmonics.
    """
    theta = _check_poles(theta)
    phi = np.asarray(phi, dtype=float)
    coeffs = basis_coefficients(family, m, axis)
    mf = np.array(M_VALUES, dtype=float)
    d_theta = std_basis_dtheta(theta, phi) @ coeffs
    d_phi = std_basis(theta, phi) @ (1j * mf * coeffs)
    tp, pp = family.operator_axis(axis)
    return _axis_operator(tp, pp, theta, phi, d_theta, d_phi)


def apply_axis_angular_momentum_fd(m: int, axis: Direction, theta, phi,
                                   family: HarmonicFamily = COMPOSED_Z, h: float = 1e-6):
    """Same operator with central differences of the family's own evaluator."""
    theta = _check_poles(theta)
    phi = np.asarray(phi, dtype=float)
    f = lambda t, p: family.evaluate(m, axis, t, p)
    d_theta = (f(theta + h, phi) - f(theta - h, phi)) / (2 * h)
    d_phi = (f(theta, phi + h) - f(theta, phi - h)) / (2 * h)
    tp, pp = family.operator_axis(axis)
    return _axis_operator(tp, pp, theta, phi, d_theta, d_phi)


@dataclass(frozen=True)
class EigenReport:
    m: int
    axis: Direction
    family: HarmonicFamily
    grid: str
    max_residual: float


def eigen_residual(m: int, axis: Direction, grid: SphereGrid, family: HarmonicFamily = COMPOSED_Z) -> EigenReport:
    """max over non-pole grid nodes of |L Y - m Y|."""
    keep = (grid.theta > POLE_EXCLUSION) & (grid.theta < math.pi - POLE_EXCLUSION)
    theta, phi = grid.theta[keep], grid.phi[keep]
    lhs = apply_axis_angular_momentum(m, axis, theta, phi, family)
    rhs = m * family.evaluate(m, axis, theta, phi)
    return EigenReport(m, axis, family, grid.describe(), float(np.abs(lhs - rhs).max()))


# -- errata -------------------------------------------------------------------

PRINTED_PREFACTORS = {
    AxisVariant.X_PRIME: {m: K_XY for m in M_VALUES},
    AxisVariant.Y_PRIME: {2: -K_XY, 1: K_XY, 0: -K_Z0, -1: K_XY, -2: K_XY},
}


@dataclass(frozen=True)
class ErratumFinding:
    """Printed form vs the value forced by the derivation rules."""

    name: str
    max_deviation: float
    ratio: complex | None  # printed / derived, when the deviation is a constant scale
    printed_prefactor: float | None = None

    @property
    def constant_scale(self) -> bool:
        return self.ratio is not None

    @property
    def corrected_prefactor(self) -> float | None:
        if self.ratio is None or self.printed_prefactor is None or abs(self.ratio.imag) > 1e-12:
            return None
        return self.printed_prefactor / self.ratio.real


def _scale_fit(printed: np.ndarray, derived: np.ndarray, tol: float):
    norm = np.vdot(derived, derived).real
    if norm == 0.0:
        return None
    ratio = complex(np.vdot(derived, printed) / np.vdot(derived, derived))
    if np.abs(printed - ratio * derived).max() > tol:
        return None
    return ratio


def measure_printed_family(variant: AxisVariant, tp, pp, grid: SphereGrid, tol: float = 1e-12):
    """Compare every printed m for ``variant`` against the substitution route.

    Returns one ErratumFinding per m, whether or not it deviates.
    """
    printed = HarmonicFamily(Source.PAPER_CLOSED, variant)
    derived = HarmonicFamily(Source.SUBSTITUTION_DERIVED, variant)
    axes = [Direction(t, p) for t, p in zip(np.atleast_1d(tp), np.atleast_1d(pp))]
    findings = []
    for m in M_VALUES:
        a = np.concatenate([printed.evaluate(m, ax, grid.theta, grid.phi) for ax in axes])
        b = np.concatenate([derived.evaluate(m, ax, grid.theta, grid.phi) for ax in axes])
        findings.append(ErratumFinding(
            f"{printed.name}/m={m}", float(np.abs(a - b).max()), _scale_fit(a, b, tol),
            PRINTED_PREFACTORS[variant][m]))
    return findings


def measure_amplitude_table(tp, pp, tol: float = 1e-12):
    """Printed amplitude entries vs the corrected table, plus printed-table unitarity."""
    printed = _amplitude_table(tp, pp, as_printed=True)
    shipped = _amplitude_table(tp, pp)
    findings = []
    for mi, mf in CORRECTED_ENTRIES:
        a = printed[..., index_of(mi), index_of(mf)].ravel()
        b = shipped[..., index_of(mi), index_of(mf)].ravel()
        findings.append(ErratumFinding(f"amplitude-table/m_i={mi},m_f={mf}",
                                       float(np.abs(a - b).max()), _scale_fit(a, b, tol)))
    findings.append(ErratumFinding("amplitude-table/unitarity",
                                   float(unitarity_deviations(tp, pp, as_printed=True).max()), None))
    return findings


def measure_limit(grid: SphereGrid, tol: float = 1e-12):
    """z' closed forms at theta' = phi' = 0 against the standard harmonics."""
    closed = HarmonicFamily(Source.PAPER_CLOSED)
    z_axis = Direction(0.0, 0.0)
    findings = []
    for m in M_VALUES:
        a = closed.evaluate(m, z_axis, grid.theta, grid.phi)
        b = std_ylm_l2(m, grid.theta, grid.phi)
        findings.append(ErratumFinding(f"limit-z/m={m}", float(np.abs(a - b).max()), _scale_fit(a, b, tol)))
    return findings


def errata_report(seed: int = 0, n_directions: int = 10, grid: SphereGrid | None = None,
                  tol: float = 1e-12) -> list[ErratumFinding]:
    """All findings, deviating or not: printed x'/y' forms, amplitude table, z' limit."""
    grid = grid or sphere_grid()
    tp, pp = random_directions(np.random.default_rng(seed), n_directions)
    out = []
    for variant in (AxisVariant.X_PRIME, AxisVariant.Y_PRIME):
        out.extend(measure_printed_family(variant, tp, pp, grid, tol))
    out.extend(measure_amplitude_table(tp, pp, tol))
    out.extend(measure_limit(grid, tol))
    return out


# -- the battery --------------------------------------------------------------

@dataclass(frozen=True)
class CheckResult:
    name: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.residual)) and self.residual < self.tolerance


def validation_suite(families=None, grid=(16, 16), seed: int = 0, tolerances=None,
                     n_directions: int = 10, n_oracle: int = 1000, n_points: int = 200):
    """Run the checks; returns (checks, flags).

    With ``families=None`` the default battery runs: amplitude-table and
    quadrature checks, the full property set for the consistent families,
    parity for every family, and erratum flags.  With explicit families only
    those families are checked, and printed x'/y' families also get a
    per-m agreement check against the substitution route.
    """
    tol = dict(DEFAULT_TOLERANCES)
    tol.update(tolerances or {})
    g = sphere_grid(*grid)
    rng = np.random.default_rng(seed)
    otp, opp = random_directions(rng, n_oracle)
    dtp, dpp = random_directions(rng, n_directions)
    axes = [Direction(t, p) for t, p in zip(dtp, dpp)]
    theta, phi = random_positions(rng, n_points)
    fd_theta, fd_phi = random_positions(rng, 100)
    checks: list[CheckResult] = []
    add = lambda name, res, key: checks.append(CheckResult(name, float(res), tol[key]))

    default = families is None
    families = DEFAULT_FAMILIES if default else tuple(families)

    if default:
        add("unitarity", unitarity_deviations(otp, opp).max(), "unitarity")
        add("oracle_equivalence", oracle_deviations(otp, opp).max(), "oracle_equivalence")
        ct = np.linspace(0, math.pi, 20)
        cp = np.linspace(0, 2 * math.pi, 20, endpoint=False)
        ct, cp = np.meshgrid(ct, cp, indexing="ij")
        closed = HarmonicFamily(Source.PAPER_CLOSED)
        add("composition", max(np.abs(closed.evaluate(m, ax, ct, cp) - COMPOSED_Z.evaluate(m, ax, ct, cp)).max()
                               for ax in axes for m in M_VALUES), "composition")
        for variant in (AxisVariant.X_PRIME, AxisVariant.Y_PRIME):
            sub = HarmonicFamily(Source.SUBSTITUTION_DERIVED, variant)
            comp = HarmonicFamily(Source.COMPOSED, variant)
            add(f"substitution_vs_composed/{variant.value}",
                max(np.abs(sub.evaluate(m, ax, ct, cp) - comp.evaluate(m, ax, ct, cp)).max()
                    for ax in axes for m in M_VALUES), "substitution_vs_composed")
        add("quadrature_weight", abs(g.weights.sum() - 4 * math.pi), "quadrature_weight")
        add("quadrature_exactness", np.abs(std_gram_matrix(g) - np.eye(5)).max(), "quadrature_exactness")
        z_axis = Direction(0.0, 0.0)
        for fam in (COMPOSED_Z, HarmonicFamily(Source.PAPER_CLOSED), HarmonicFamily(Source.SUBSTITUTION_DERIVED)):
            add(f"limit_reduction/{fam.name}",
                max(np.abs(fam.evaluate(m, z_axis, ct, cp) - std_ylm_l2(m, ct, cp)).max() for m in M_VALUES),
                "limit_reduction")
        add("fd_crosscheck", max(
            np.abs(apply_axis_angular_momentum(m, ax, fd_theta, fd_phi)
                   - apply_axis_angular_momentum_fd(m, ax, fd_theta, fd_phi)).max()
            for ax in axes for m in M_VALUES), "fd_crosscheck")

    for fam in families:
        reports = [orthonormality_report(fam, ax, g) for ax in axes]
        add(f"orthonormality/{fam.name}", max(r.max_deviation for r in reports), "orthonormality")
        add(f"gram_hermitian/{fam.name}", max(r.hermitian_residual for r in reports), "gram_hermitian")
        add(f"parity/{fam.name}", max(parity_check(fam, ax, theta, phi) for ax in axes), "parity")
        add(f"sum_rule/{fam.name}", max(sum_rule_deviation(fam, ax, theta, phi) for ax in axes), "sum_rule")
        add(f"eigen/{fam.name}", max(
            np.abs(apply_axis_angular_momentum(m, ax, theta, phi, fam) - m * fam.evaluate(m, ax, theta, phi)).max()
            for ax in axes for m in M_VALUES), "eigen")
        add(f"eigen_grid/{fam.name}", max(eigen_residual(m, ax, g, fam).max_residual
                                          for ax in axes for m in M_VALUES), "eigen")
        if not default and fam.source is Source.PAPER_CLOSED and fam.variant is not AxisVariant.Z_PRIME:
            for f in measure_printed_family(fam.variant, dtp, dpp, g, tol["substitution_agreement"]):
                add(f"substitution_agreement/{f.name}", f.max_deviation, "substitution_agreement")

    if default:
        for fam in ALL_FAMILIES:
            if fam not in families:
                add(f"parity/{fam.name}", max(parity_check(fam, ax, theta, phi) for ax in axes), "parity")

    flags = [f for f in errata_report(seed, n_directions, g, tol["substitution_agreement"])
             if f.max_deviation >= tol["substitution_agreement"]]
    return checks, flags

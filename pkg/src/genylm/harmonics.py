"""l=2 spherical harmonics quantized along an arbitrary axis.

Three independent routes produce the same functions and are kept apart so
they can be diffed:

* ``COMPOSED``: the five-term sum of amplitudes times standard harmonics.
* ``PAPER_CLOSED``: the printed closed forms for the z', x' and y' axes.
* ``SUBSTITUTION_DERIVED``: the z' closed forms evaluated at the shifted
  axis angles (theta' -> theta' - pi/2 for x'; theta' = pi/2,
  phi' -> phi' - pi/2 for y').

All evaluators broadcast over ``theta`` and ``phi`` arrays.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .amplitudes import M_VALUES, _amplitude_table, index_of
from .wigner import Direction

A22 = math.sqrt(15 / (32 * math.pi))
A21 = math.sqrt(15 / (8 * math.pi))
A20 = math.sqrt(5 / (16 * math.pi))
K_Z0 = math.sqrt(45 / (256 * math.pi))
K_XY = math.sqrt(15 / (128 * math.pi))


@dataclass(frozen=True)
class AngularPosition:
    """Evaluation point on the unit sphere, radians."""

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        t, p = float(self.theta), float(self.phi)
        if not (math.isfinite(t) and math.isfinite(p)):
            raise ValueError(f"non-finite position ({t}, {p})")
        if not 0.0 <= t <= math.pi:
            raise ValueError(f"theta={t} outside [0, pi]")
        p = p % (2 * math.pi)
        if p == 2 * math.pi:
            p = 0.0
        object.__setattr__(self, "theta", t)
        object.__setattr__(self, "phi", p)

    @classmethod
    def from_degrees(cls, theta_deg: float, phi_deg: float = 0.0) -> "AngularPosition":
        return cls(math.radians(theta_deg), math.radians(phi_deg))


class AxisVariant(enum.Enum):
    Z_PRIME = "z"
    X_PRIME = "x"
    Y_PRIME = "y"


class Source(enum.Enum):
    COMPOSED = "composed"
    PAPER_CLOSED = "paper-closed"
    SUBSTITUTION_DERIVED = "substitution"


def _check_m(m):
    return index_of(m)


def axis_angles(variant: AxisVariant, axis: Direction) -> tuple[float, float]:
    """Raw (theta', phi') of the quantization axis for ``variant``.

    The x' polar angle can be negative; every formula here is analytic in
    the axis angles, so no folding back into [0, pi] is done.
    """
    tp, pp = axis.theta_prime, axis.phi_prime
    if variant is AxisVariant.Z_PRIME:
        return tp, pp
    if variant is AxisVariant.X_PRIME:
        return tp - math.pi / 2, pp
    if variant is AxisVariant.Y_PRIME:
        return math.pi / 2, pp - math.pi / 2
    raise ValueError(f"unknown variant {variant!r}")


# -- standard harmonics -------------------------------------------------------

def std_ylm_l2(m: int, theta, phi):
    """Standard Y_2m with the Condon-Shortley sign on m = +1."""
    _check_m(m)
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    st, ct = np.sin(theta), np.cos(theta)
    if m == 2:
        return A22 * st**2 * np.exp(2j * phi)
    if m == 1:
        return -A21 * st * ct * np.exp(1j * phi)
    if m == 0:
        return A20 * (3 * ct**2 - 1) + 0j * phi
    if m == -1:
        return A21 * st * ct * np.exp(-1j * phi)
    return A22 * st**2 * np.exp(-2j * phi)


def std_ylm_l2_dtheta(m: int, theta, phi):
    """Analytic d/dtheta of ``std_ylm_l2``."""
    _check_m(m)
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    if m == 2:
        return A22 * np.sin(2 * theta) * np.exp(2j * phi)
    if m == 1:
        return -A21 * np.cos(2 * theta) * np.exp(1j * phi)
    if m == 0:
        return -3 * A20 * np.sin(2 * theta) + 0j * phi
    if m == -1:
        return A21 * np.cos(2 * theta) * np.exp(-1j * phi)
    return A22 * np.sin(2 * theta) * np.exp(-2j * phi)


def std_basis(theta, phi) -> np.ndarray:
    """Stack of Y_2m for m = 2..-2 along a new last axis."""
    return np.stack(np.broadcast_arrays(*(std_ylm_l2(m, theta, phi) for m in M_VALUES)), axis=-1)


def std_basis_dtheta(theta, phi) -> np.ndarray:
    return np.stack(np.broadcast_arrays(*(std_ylm_l2_dtheta(m, theta, phi) for m in M_VALUES)), axis=-1)


# -- composed route -----------------------------------------------------------

def _composed(m, tp, pp, theta, phi, as_printed=False):
    coeffs = _amplitude_table(tp, pp, as_printed)[index_of(m)]
    return std_basis(theta, phi) @ coeffs


def gen_ylm_composed(m: int, axis: Direction, theta, phi, as_printed: bool = False):
    """Sum over m_f of amplitude(m, m_f, axis) * Y_2,m_f(theta, phi)."""
    return _composed(m, axis.theta_prime, axis.phi_prime, theta, phi, as_printed)


# -- printed closed forms, z' axis -------------------------------------------

def _closed_z_2(tp, pp, theta, phi):
    s, c = np.sin(tp / 2), np.cos(tp / 2)
    d = phi - pp
    return A22 * (
        np.sin(theta) ** 2 * (c**4 * np.exp(2j * d) + s**4 * np.exp(-2j * d))
        + np.sin(2 * theta) * np.sin(tp) * (-(c**2) * np.exp(1j * d) + s**2 * np.exp(-1j * d))
        + 0.5 * np.sin(tp) ** 2 * (3 * np.cos(theta) ** 2 - 1)
    )


def _closed_z_1(tp, pp, theta, phi):
    s, c = np.sin(tp / 2), np.cos(tp / 2)
    d = phi - pp
    return A22 * (
        np.sin(tp) * np.sin(theta) ** 2 * (c**2 * np.exp(2j * d) - s**2 * np.exp(-2j * d))
        - np.sin(2 * theta) * ((3 * s**2 - c**2) * c**2 * np.exp(1j * d)
                               + (3 * c**2 - s**2) * s**2 * np.exp(-1j * d))
        - 0.5 * np.sin(2 * tp) * (3 * np.cos(theta) ** 2 - 1)
    )


def _closed_z_0(tp, pp, theta, phi):
    d = phi - pp
    return K_Z0 * (
        np.sin(tp) ** 2 * np.sin(theta) ** 2 * (np.exp(2j * d) + np.exp(-2j * d))
        + np.sin(2 * theta) * np.sin(2 * tp) * (np.exp(1j * d) + np.exp(-1j * d))
        + 2 / 3 * (3 * np.cos(theta) ** 2 - 1) * (2 * np.cos(tp) ** 2 - np.sin(tp) ** 2)
    )


def _closed_z_m1(tp, pp, theta, phi):
    s, c = np.sin(tp / 2), np.cos(tp / 2)
    d = phi - pp
    return A22 * (
        np.sin(tp) * np.sin(theta) ** 2 * (s**2 * np.exp(2j * d) - c**2 * np.exp(-2j * d))
        + np.sin(2 * theta) * ((3 * c**2 - s**2) * s**2 * np.exp(1j * d)
                               + (3 * s**2 - c**2) * c**2 * np.exp(-1j * d))
        + 0.5 * np.sin(2 * tp) * (3 * np.cos(theta) ** 2 - 1)
    )


def _closed_z_m2(tp, pp, theta, phi):
    s, c = np.sin(tp / 2), np.cos(tp / 2)
    d = phi - pp
    return A22 * (
        np.sin(theta) ** 2 * (s**4 * np.exp(2j * d) + c**4 * np.exp(-2j * d))
        + np.sin(2 * theta) * np.sin(tp) * (s**2 * np.exp(1j * d) - c**2 * np.exp(-1j * d))
        + 0.5 * np.sin(tp) ** 2 * (3 * np.cos(theta) ** 2 - 1)
    )


_CLOSED_Z = {2: _closed_z_2, 1: _closed_z_1, 0: _closed_z_0, -1: _closed_z_m1, -2: _closed_z_m2}


def _closed_z(m, tp, pp, theta, phi):
    _check_m(m)
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    return _CLOSED_Z[m](tp, pp, theta, phi)


def gen_ylm_closed_z(m: int, axis: Direction, theta, phi):
    """Printed closed form of the generalized harmonic for the z' axis."""
    return _closed_z(m, axis.theta_prime, axis.phi_prime, theta, phi)


# -- printed closed forms, x' axis -------------------------------------------

def _closed_x_2(tp, pp, theta, phi):
    S, C = np.sin(tp), np.cos(tp)
    d = phi - pp
    return K_XY * (
        0.5 * np.sin(theta) ** 2 * ((1 + S) ** 2 * np.exp(2j * d) + (1 - S) ** 2 * np.exp(-2j * d))
        + np.sin(2 * theta) * C * ((1 + S) * np.exp(1j * d) - (1 - S) * np.exp(-1j * d))
        + C**2 * (3 * np.cos(theta) ** 2 - 1)
    )


def _closed_x_1(tp, pp, theta, phi):
    S, C = np.sin(tp), np.cos(tp)
    d = phi - pp
    return K_XY * (
        -np.sin(theta) ** 2 * C * ((1 + S) * np.exp(2j * d) - (1 - S) * np.exp(-2j * d))
        - np.sin(2 * theta) * ((1 - 2 * S) * (1 + S) * np.exp(1j * d)
                               + (1 + 2 * S) * (1 - S) * np.exp(-1j * d))
        + np.sin(2 * tp) * (3 * np.cos(theta) ** 2 - 1)
    )


def _closed_x_0(tp, pp, theta, phi):
    S, C = np.sin(tp), np.cos(tp)
    d = phi - pp
    # printed prefactor kept; the substitution route gives K_Z0 here
    return K_XY * (
        C**2 * np.sin(theta) ** 2 * (np.exp(2j * d) + np.exp(-2j * d))
        - np.sin(2 * theta) * np.sin(2 * tp) * (np.exp(1j * d) + np.exp(-1j * d))
        + 2 / 3 * (2 * S**2 - C**2) * (3 * np.cos(theta) ** 2 - 1)
    )


def _closed_x_m1(tp, pp, theta, phi):
    S, C = np.sin(tp), np.cos(tp)
    d = phi - pp
    return K_XY * (
        -np.sin(theta) ** 2 * C * ((1 - S) * np.exp(2j * d) - (1 + S) * np.exp(-2j * d))
        + np.sin(2 * theta) * ((1 + 2 * S) * (1 - S) * np.exp(1j * d)
                               + (1 - 2 * S) * (1 + S) * np.exp(-1j * d))
        - np.sin(2 * tp) * (3 * np.cos(theta) ** 2 - 1)
    )


def _closed_x_m2(tp, pp, theta, phi):
    S, C = np.sin(tp), np.cos(tp)
    d = phi - pp
    # printed without the closing bracket after the e^{-2i d} term; closed there as in m=+2
    return K_XY * (
        0.5 * np.sin(theta) ** 2 * ((1 - S) ** 2 * np.exp(2j * d) + (1 + S) ** 2 * np.exp(-2j * d))
        - np.sin(2 * theta) * C * ((1 - S) * np.exp(1j * d) - (1 + S) * np.exp(-1j * d))
        + C**2 * (3 * np.cos(theta) ** 2 - 1)
    )


_CLOSED_X = {2: _closed_x_2, 1: _closed_x_1, 0: _closed_x_0, -1: _closed_x_m1, -2: _closed_x_m2}


def gen_ylm_closed_x(m: int, axis: Direction, theta, phi):
    """Printed closed form for the x' axis, prefactors as printed."""
    _check_m(m)
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    return _CLOSED_X[m](axis.theta_prime, axis.phi_prime, theta, phi)


# -- printed closed forms, y' axis -------------------------------------------
# these contain no theta'

def _closed_y_2(pp, theta, phi):
    d = phi - pp
    return -K_XY * (
        0.5 * np.sin(theta) ** 2 * (np.exp(2j * d) + np.exp(-2j * d))
        + 1j * np.sin(2 * theta) * (np.exp(1j * d) + np.exp(-1j * d))
        - (3 * np.cos(theta) ** 2 - 1)
    )


def _closed_y_1(pp, theta, phi):
    d = phi - pp
    return K_XY * (
        np.sin(theta) ** 2 * (-np.exp(2j * d) + np.exp(-2j * d))
        + 1j * np.sin(2 * theta) * (np.exp(1j * d) - np.exp(-1j * d))
    )


def _closed_y_0(pp, theta, phi):
    d = phi - pp
    return -K_Z0 * (
        np.sin(theta) ** 2 * (np.exp(2j * d) + np.exp(-2j * d))
        + 2 / 3 * (3 * np.cos(theta) ** 2 - 1)
    )


def _closed_y_m1(pp, theta, phi):
    d = phi - pp
    return K_XY * (
        np.sin(theta) ** 2 * (-np.exp(2j * d) + np.exp(-2j * d))
        + 1j * np.sin(2 * theta) * (np.exp(1j * d) - np.exp(-1j * d))
    )


def _closed_y_m2(pp, theta, phi):
    d = phi - pp
    return K_XY * (
        -0.5 * np.sin(theta) ** 2 * (np.exp(2j * d) + np.exp(-2j * d))
        + 1j * np.sin(2 * theta) * (np.exp(1j * d) + np.exp(-1j * d))
        + 3 * np.cos(theta) ** 2 - 1
    )


_CLOSED_Y = {2: _closed_y_2, 1: _closed_y_1, 0: _closed_y_0, -1: _closed_y_m1, -2: _closed_y_m2}


def gen_ylm_closed_y(m: int, axis: Direction, theta, phi):
    """Printed closed form for the y' axis.  Independent of ``axis.theta_prime``."""
    _check_m(m)
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    return _CLOSED_Y[m](axis.phi_prime, theta, phi)


# -- substitution route -------------------------------------------------------


def substitute_x_axis(axis: Direction) -> Callable[[int, object, object], np.ndarray]:
    """z' closed forms with theta' replaced by theta' - pi/2."""
    tp, pp = axis_angles(AxisVariant.X_PRIME, axis)
    return lambda m, theta, phi: _closed_z(m, tp, pp, theta, phi)


def substitute_y_axis(axis: Direction) -> Callable[[int, object, object], np.ndarray]:
    """z' closed forms with theta' = pi/2 and phi' replaced by phi' - pi/2."""
    tp, pp = axis_angles(AxisVariant.Y_PRIME, axis)
    return lambda m, theta, phi: _closed_z(m, tp, pp, theta, phi)


# -- families -----------------------------------------------------------------

@dataclass(frozen=True)
class HarmonicFamily:
    """One of the routes to the generalized harmonics for one axis variant.

    Together with ``m`` and an axis a family names exactly one function on
    the sphere.  Composed and substitution routes accept every variant
    (x' and y' by shifting the axis angles); ``SUBSTITUTION_DERIVED`` with
    ``Z_PRIME`` is the unshifted z' closed form.
    """

    source: Source
    variant: AxisVariant = AxisVariant.Z_PRIME

    @property
    def name(self) -> str:
        return f"{self.source.value}-{self.variant.value}"

    @classmethod
    def parse(cls, name: str) -> "HarmonicFamily":
        src, _, var = name.rpartition("-")
        try:
            return cls(Source(src), AxisVariant(var))
        except ValueError:
            raise ValueError(f"unknown family {name!r}; expected <source>-<z|x|y> with source in "
                             f"{[s.value for s in Source]}") from None

    def operator_axis(self, axis: Direction) -> tuple[float, float]:
        """Raw axis angles this family is quantized along."""
        return axis_angles(self.variant, axis)

    def evaluate(self, m: int, axis: Direction, theta, phi):
        if self.source is Source.COMPOSED:
            tp, pp = axis_angles(self.variant, axis)
            return _composed(m, tp, pp, theta, phi)
        if self.source is Source.SUBSTITUTION_DERIVED:
            tp, pp = axis_angles(self.variant, axis)
            return _closed_z(m, tp, pp, theta, phi)
        if self.variant is AxisVariant.Z_PRIME:
            return gen_ylm_closed_z(m, axis, theta, phi)
        if self.variant is AxisVariant.X_PRIME:
            return gen_ylm_closed_x(m, axis, theta, phi)
        return gen_ylm_closed_y(m, axis, theta, phi)


COMPOSED_Z = HarmonicFamily(Source.COMPOSED, AxisVariant.Z_PRIME)
ALL_FAMILIES = tuple(HarmonicFamily(s, v) for s in Source for v in AxisVariant)

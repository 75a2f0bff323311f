"""General-j Wigner rotation elements.

This module is the brute-force reference against which the l=2 closed forms
are checked.  Rotation elements are built from the explicit finite sum for
the small-d matrix; nothing here knows about the l=2 tables.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

MAX_TWICE_J = 32  # j <= 16

# floating factorials 0! .. (4 * 16)!
_FACT = np.array([float(math.factorial(n)) for n in range(2 * MAX_TWICE_J + 1)])


@dataclass(frozen=True, order=True)
class HalfInt:
    """Integer or half-integer stored as twice its value."""

    twice: int

    @classmethod
    def of(cls, value) -> "HalfInt":
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, (bool, np.bool_)):
            raise TypeError("bool is not a valid angular momentum label")
        twice = Fraction(value) * 2
        if twice.denominator != 1:
            raise ValueError(f"{value!r} is not an integer or half-integer")
        return cls(int(twice))

    @property
    def value(self) -> float:
        return self.twice / 2

    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def __str__(self) -> str:
        return str(self.twice // 2) if self.is_integer() else f"{self.twice}/2"


@dataclass(frozen=True)
class Direction:
    """Quantization axis given by polar angle ``theta_prime`` and azimuth ``phi_prime`` (radians)."""

    theta_prime: float
    phi_prime: float = 0.0

    def __post_init__(self):
        tp, pp = float(self.theta_prime), float(self.phi_prime)
        if not (math.isfinite(tp) and math.isfinite(pp)):
            raise ValueError(f"non-finite direction ({tp}, {pp})")
        if not 0.0 <= tp <= math.pi:
            raise ValueError(f"theta_prime={tp} outside [0, pi]")
        pp = pp % (2 * math.pi)
        if pp == 2 * math.pi:  # -tiny % 2pi rounds up
            pp = 0.0
        object.__setattr__(self, "theta_prime", tp)
        object.__setattr__(self, "phi_prime", pp)

    @classmethod
    def from_degrees(cls, theta_deg: float, phi_deg: float = 0.0) -> "Direction":
        return cls(math.radians(theta_deg), math.radians(phi_deg))

    @property
    def unit_vector(self) -> np.ndarray:
        st = math.sin(self.theta_prime)
        return np.array([st * math.cos(self.phi_prime), st * math.sin(self.phi_prime),
                         math.cos(self.theta_prime)])


Z_AXIS = Direction(0.0, 0.0)


def projections(j) -> list[HalfInt]:
    """Projection labels j, j-1, ..., -j in table order."""
    j = HalfInt.of(j)
    return [HalfInt(t) for t in range(j.twice, -j.twice - 1, -2)]


def _check_pair(j: HalfInt, m: HalfInt):
    if j.twice < 0 or j.twice > MAX_TWICE_J:
        raise ValueError(f"j={j} outside supported range [0, 16]")
    if abs(m.twice) > j.twice or (j.twice - m.twice) % 2:
        raise ValueError(f"m={m} is not a valid projection for j={j}")


def small_d(j, m_from, m_to, beta):
    """Wigner small-d element ``d^j_{m_to, m_from}(beta)``.

    Uses the explicit finite sum.  ``beta`` may be a scalar or an array; any
    real value is accepted, including negative angles.
    """
    j, mf, mt = HalfInt.of(j), HalfInt.of(m_from), HalfInt.of(m_to)
    _check_pair(j, mf)
    _check_pair(j, mt)
    beta = np.asarray(beta, dtype=float)
    if not np.all(np.isfinite(beta)):
        raise ValueError("beta must be finite")

    # all of these are integers once j, m are combined pairwise
    jpm, jmm = (j.twice + mf.twice) // 2, (j.twice - mf.twice) // 2
    jpt, jmt = (j.twice + mt.twice) // 2, (j.twice - mt.twice) // 2
    shift = (mt.twice - mf.twice) // 2
    pref = math.sqrt(_FACT[jpt] * _FACT[jmt] * _FACT[jpm] * _FACT[jmm])

    c, s = np.cos(beta / 2), np.sin(beta / 2)
    total = np.zeros_like(beta)
    for k in range(max(0, -shift), min(jpm, jmt) + 1):
        denom = _FACT[jpm - k] * _FACT[k] * _FACT[jmt - k] * _FACT[k + shift]
        sign = -1.0 if (k + shift) % 2 else 1.0
        total = total + sign * pref / denom * c ** (j.twice - 2 * k - shift) * s ** (2 * k + shift)
    return total[()] if total.ndim == 0 else total


def _rotation_coefficients(j, theta_prime, phi_prime) -> np.ndarray:
    # raw angles, broadcast over leading axes; theta_prime may lie outside [0, pi]
    j = HalfInt.of(j)
    ms = projections(j)
    tp = np.asarray(theta_prime, dtype=float)
    pp = np.asarray(phi_prime, dtype=float)
    shape = np.broadcast(tp, pp).shape
    n = len(ms)
    out = np.empty(shape + (n, n), dtype=complex)
    for a, mi in enumerate(ms):
        # (-1)^(j - m_i) row phase: matches the l=2 amplitude table's sign pattern
        row_sign = -1.0 if ((j.twice - mi.twice) // 2) % 2 else 1.0
        for b, mf in enumerate(ms):
            out[..., a, b] = row_sign * small_d(j, mi, mf, tp) * np.exp(-1j * mf.value * pp)
    return out


def rotation_coefficients(j, axis: Direction) -> np.ndarray:
    """Amplitudes from projection ``m_i`` along ``axis`` to projection ``m_f`` along z.

    Row index runs over m_i = j..-j, column index over m_f = j..-j.  Element
    is ``(-1)^(j - m_i) exp(-i m_f phi') d^j_{m_f, m_i}(theta')``.
    """
    return _rotation_coefficients(j, axis.theta_prime, axis.phi_prime)

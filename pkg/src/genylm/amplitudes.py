"""Spin-2 amplitudes between projection m_i along an axis and m_f along z.

Each of the 25 closed forms has its own function named ``amp_<m_i>_<m_f>``
(``m`` prefix for negative projections), so a sign slip stays local to one
function.  Half-angle factors are kept as half-angle factors.

Two entries of the m_i = 1 row are printed with signs that make the table
non-unitary and that disagree with the m=1 generalized harmonic built from
it.  ``amp_1_1`` and ``amp_1_m1`` carry the corrected sign; the literal print
survives as ``amp_1_1_as_printed`` / ``amp_1_m1_as_printed`` and is reachable
through ``amplitude(..., as_printed=True)``.

The table's row phase is (-1)^m_i relative to the usual rotation matrix, so
at theta' = 0 it is diag(1, -1, 1, -1, 1), not the identity.
"""
from __future__ import annotations

import numpy as np

from .wigner import Direction

M_VALUES = (2, 1, 0, -1, -2)
SQRT6 = np.sqrt(6.0)


def index_of(m: int) -> int:
    """Table index of projection ``m`` (2 -> 0, ..., -2 -> 4)."""
    if m not in M_VALUES or isinstance(m, bool):
        raise ValueError(f"projection m={m!r} not in {{-2, ..., 2}}")
    return 2 - int(m)


def _half(tp):
    return np.sin(tp / 2), np.cos(tp / 2)


# -- initial projection +2 ----------------------------------------------------

def amp_2_2(tp, pp):
    s, c = _half(tp)
    return c**4 * np.exp(-2j * pp)


def amp_2_1(tp, pp):
    s, c = _half(tp)
    return 2 * s * c**3 * np.exp(-1j * pp)


def amp_2_0(tp, pp):
    s, c = _half(tp)
    return SQRT6 * s**2 * c**2 + 0j


def amp_2_m1(tp, pp):
    s, c = _half(tp)
    return 2 * s**3 * c * np.exp(1j * pp)


def amp_2_m2(tp, pp):
    s, c = _half(tp)
    return s**4 * np.exp(2j * pp)


# -- initial projection +1 ----------------------------------------------------

def amp_1_2(tp, pp):
    s, c = _half(tp)
    return 2 * s * c**3 * np.exp(-2j * pp)


def amp_1_1(tp, pp):
    s, c = _half(tp)
    return (3 * s**2 - c**2) * c**2 * np.exp(-1j * pp)


def amp_1_1_as_printed(tp, pp):
    s, c = _half(tp)
    return -(3 * s**2 - c**2) * c**2 * np.exp(-1j * pp)


def amp_1_0(tp, pp):
    s, c = _half(tp)
    return -SQRT6 * c * s * np.cos(tp) + 0j


def amp_1_m1(tp, pp):
    s, c = _half(tp)
    return -(3 * c**2 - s**2) * s**2 * np.exp(1j * pp)


def amp_1_m1_as_printed(tp, pp):
    s, c = _half(tp)
    return (3 * c**2 - s**2) * s**2 * np.exp(1j * pp)


def amp_1_m2(tp, pp):
    s, c = _half(tp)
    return -2 * s**3 * c * np.exp(2j * pp)


# -- initial projection 0 -----------------------------------------------------

def amp_0_2(tp, pp):
    s, c = _half(tp)
    return SQRT6 * s**2 * c**2 * np.exp(-2j * pp)


def amp_0_1(tp, pp):
    s, c = _half(tp)
    return -SQRT6 * s * c * np.cos(tp) * np.exp(-1j * pp)


def amp_0_0(tp, pp):
    return 0.5 * (2 * np.cos(tp) ** 2 - np.sin(tp) ** 2) + 0j * np.asarray(pp)


def amp_0_m1(tp, pp):
    s, c = _half(tp)
    return SQRT6 * s * c * np.cos(tp) * np.exp(1j * pp)


def amp_0_m2(tp, pp):
    s, c = _half(tp)
    return SQRT6 * s**2 * c**2 * np.exp(2j * pp)


# -- initial projection -1 ----------------------------------------------------

def amp_m1_2(tp, pp):
    s, c = _half(tp)
    return 2 * c * s**3 * np.exp(-2j * pp)


def amp_m1_1(tp, pp):
    s, c = _half(tp)
    return -(3 * c**2 - s**2) * s**2 * np.exp(-1j * pp)


def amp_m1_0(tp, pp):
    s, c = _half(tp)
    return SQRT6 * s * c * np.cos(tp) + 0j


def amp_m1_m1(tp, pp):
    s, c = _half(tp)
    return (3 * s**2 - c**2) * c**2 * np.exp(1j * pp)


def amp_m1_m2(tp, pp):
    s, c = _half(tp)
    return -2 * s * c**3 * np.exp(2j * pp)


# -- initial projection -2 ----------------------------------------------------

def amp_m2_2(tp, pp):
    s, c = _half(tp)
    return s**4 * np.exp(-2j * pp)


def amp_m2_1(tp, pp):
    s, c = _half(tp)
    return -2 * c * s**3 * np.exp(-1j * pp)


def amp_m2_0(tp, pp):
    s, c = _half(tp)
    return SQRT6 * s**2 * c**2 + 0j


def amp_m2_m1(tp, pp):
    s, c = _half(tp)
    return -2 * s * c**3 * np.exp(1j * pp)


def amp_m2_m2(tp, pp):
    s, c = _half(tp)
    return c**4 * np.exp(2j * pp)


def _name(m: int) -> str:
    return f"m{-m}" if m < 0 else str(m)


TABLE = {(mi, mf): globals()[f"amp_{_name(mi)}_{_name(mf)}"] for mi in M_VALUES for mf in M_VALUES}
PRINTED_TABLE = dict(TABLE)
PRINTED_TABLE[1, 1] = amp_1_1_as_printed
PRINTED_TABLE[1, -1] = amp_1_m1_as_printed

# entries whose printed sign is corrected in TABLE
CORRECTED_ENTRIES = ((1, 1), (1, -1))


def _amplitude_table(theta_prime, phi_prime, as_printed: bool = False) -> np.ndarray:
    # raw angles, broadcast over leading axes -> (..., 5, 5)
    tp = np.asarray(theta_prime, dtype=float)
    pp = np.asarray(phi_prime, dtype=float)
    shape = np.broadcast(tp, pp).shape
    table = PRINTED_TABLE if as_printed else TABLE
    out = np.empty(shape + (5, 5), dtype=complex)
    for (mi, mf), fn in table.items():
        out[..., index_of(mi), index_of(mf)] = np.broadcast_to(fn(tp, pp), shape)
    return out


def amplitude(m_i: int, m_f: int, axis: Direction, as_printed: bool = False) -> complex:
    """Amplitude for projection ``m_i`` along ``axis`` to be found as ``m_f`` along z."""
    index_of(m_i), index_of(m_f)
    table = PRINTED_TABLE if as_printed else TABLE
    return complex(table[m_i, m_f](axis.theta_prime, axis.phi_prime))


def amplitude_matrix(axis: Direction, as_printed: bool = False) -> np.ndarray:
    """All 25 amplitudes as a 5x5 array; rows m_i = 2..-2, columns m_f = 2..-2."""
    return _amplitude_table(axis.theta_prime, axis.phi_prime, as_printed)

import math

import numpy as np
import pytest

from genylm.wigner import Direction


def spin_matrices(twice_j: int):
    """Jx, Jy, Jz for spin j = twice_j / 2 in the basis m = j..-j, built from ladder operators."""
    j = twice_j / 2
    m = j - np.arange(twice_j + 1)
    jz = np.diag(m)
    # <m+1|J+|m> = sqrt(j(j+1) - m(m+1))
    jp = np.zeros((twice_j + 1, twice_j + 1))
    for k in range(1, twice_j + 1):
        jp[k - 1, k] = math.sqrt(j * (j + 1) - m[k] * (m[k] + 1))
    jm = jp.T
    return (jp + jm) / 2, (jp - jm) / 2j, jz


def expm_hermitian(h, t):
    """exp(-i t h) for Hermitian h."""
    w, v = np.linalg.eigh(h)
    return (v * np.exp(-1j * t * w)) @ v.conj().T


def random_axes(n, seed=1234):
    rng = np.random.default_rng(seed)
    tp = np.arccos(rng.uniform(-1, 1, n))
    pp = rng.uniform(0, 2 * math.pi, n)
    return [Direction(t, p) for t, p in zip(tp, pp)]


@pytest.fixture
def axes():
    return random_axes(10)


@pytest.fixture
def points():
    rng = np.random.default_rng(99)
    theta = np.arccos(rng.uniform(-0.999, 0.999, 200))
    phi = rng.uniform(0, 2 * math.pi, 200)
    return theta, phi


def pytest_terminal_summary(terminalreporter):
    # one line per acceptance criterion, shown even when output is captured
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            if rep.when != "call":
                continue
            lines += [v for k, v in rep.user_properties if k == "criterion"]
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)

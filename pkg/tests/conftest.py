from __future__ import annotations

import cmath
import math

import numpy as np
import pytest

import qsc


@pytest.fixture
def two_legged():
    return qsc.build("cat", 4.0, S=1, K=2)


@pytest.fixture
def four_legged():
    return qsc.build("cat", 4.0, S=2, K=2)


@pytest.fixture
def cat33():
    return qsc.build("cat", 4.0, S=3, K=3)


@pytest.fixture
def repetition_css():
    spec = qsc.ClassicalCodeSpec(2, 2, gen_x=[[1, 1]], gen_z=[])
    return qsc.compile_css(spec, 2.0)


def random_three_point_code(alpha: float, seed: int = 20240315) -> qsc.QSCode:
    """Three well-separated points on the radius-alpha circle, K = 3."""
    rng = np.random.default_rng(seed)
    while True:
        thetas = np.sort(rng.uniform(0.0, 2.0 * math.pi, size=3))
        gaps = np.diff(np.concatenate([thetas, [thetas[0] + 2.0 * math.pi]]))
        if np.min(gaps) > 0.5:
            break
    codewords = [
        qsc.Constellation(str(k), [qsc.Point([alpha * cmath.exp(1j * t)])])
        for k, t in enumerate(thetas)
    ]
    return qsc.QSCode(1, alpha ** 2, codewords)


def constellations_as_lists(code: qsc.QSCode) -> list[list[list[complex]]]:
    return [[list(map(complex, p.amplitudes)) for p in c.points]
            for c in code.codewords]


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))

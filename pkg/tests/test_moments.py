from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import qsc
from qsc.constellation import Constellation, PassiveUnitary, Point, QSCode
from qsc.moments import (
    BudgetExceededError,
    MomentIndex,
    design_strength,
    moment,
    moment_indices,
    monte_carlo_sphere_average,
    sphere_average,
)

from brute_force import (
    brute_match_strength,
    brute_moment,
    brute_sphere_strength,
)
from conftest import constellations_as_lists, random_unitary


def fourth_roots() -> Constellation:
    return Constellation("c", [Point([1.0]), Point([1j]), Point([-1.0]), Point([-1j])])


# ---------------------------------------------------------------------------
# single moments
# ---------------------------------------------------------------------------

def test_trivial_moment_is_one():
    c = Constellation("c", [Point([0.3 + 0.4j, 1.0])])
    assert moment(c, MomentIndex((0, 0), (0, 0))) == 1.0


def test_fourth_roots_first_moment_vanishes():
    assert abs(moment(fourth_roots(), MomentIndex((1,), (0,)))) < 1e-15


def test_fourth_roots_fourth_moment_is_one():
    assert abs(moment(fourth_roots(), MomentIndex((4,), (0,))) - 1.0) < 1e-15


def test_moment_matches_brute_force():
    code = qsc.build("cell24", 2.5, partition="three")
    lists = constellations_as_lists(code)
    for idx in moment_indices(2, 4):
        for c, pts in zip(code.codewords, lists):
            assert abs(moment(c, idx) - brute_moment(pts, idx.p, idx.q)) < 1e-12


@settings(max_examples=40)
@given(st.integers(0, 2 ** 32 - 1), st.integers(0, 3), st.integers(0, 3),
       st.integers(0, 3), st.integers(0, 3))
def test_moment_conjugation_symmetry(seed, p1, p2, q1, q2):
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((5, 2)) + 1j * rng.standard_normal((5, 2))
    c = Constellation("c", [Point(row) for row in z])
    a = moment(c, MomentIndex((p1, p2), (q1, q2)))
    b = moment(c, MomentIndex((q1, q2), (p1, p2)))
    assert a == pytest.approx(b.conjugate(), abs=1e-13)


# ---------------------------------------------------------------------------
# sphere averages
# ---------------------------------------------------------------------------

def test_sphere_average_closed_form_small_cases():
    assert sphere_average(MomentIndex((1,), (1,)), 1) == 1.0
    assert sphere_average(MomentIndex((1, 0), (1, 0)), 2) == 0.5
    assert sphere_average(MomentIndex((2, 0), (0, 2)), 2) == 0.0
    # E|z1|^4 on C^2: 2!*1!/3! = 1/3
    assert sphere_average(MomentIndex((2, 0), (2, 0)), 2) == pytest.approx(1 / 3)


def test_sphere_average_monte_carlo_degree_two():
    idx = MomentIndex((2, 0), (0, 2))
    est, se = monte_carlo_sphere_average(idx, 2, samples=200_000, seed=7)
    assert abs(est) < max(3.0 * se, 3e-3)


@pytest.mark.parametrize("n", [1, 2])
def test_sphere_average_monte_carlo_all_low_degree(n):
    base_seed = 1000 * n
    for k, idx in enumerate(moment_indices(n, 3)):
        est, se = monte_carlo_sphere_average(idx, n, samples=100_000,
                                             seed=base_seed + k)
        assert abs(est - sphere_average(idx, n)) <= 3.0 * se + 1e-12, idx


# ---------------------------------------------------------------------------
# design strengths
# ---------------------------------------------------------------------------

def test_four_legged_cat_strengths_match_brute_force(four_legged):
    # Expected values frozen from the brute-force oracle below:
    # the z^2 moment is +1 on {+-alpha} and -1 on {+-i alpha}, so both the
    # sphere and the cross-constellation checks first fail at degree 2.
    lists = constellations_as_lists(four_legged)
    assert brute_sphere_strength(lists, 6) == 1
    assert brute_match_strength(lists, 6) == 1
    report = design_strength(four_legged, 6)
    assert report.sphere_strength == 1
    assert report.matching_strength == 1
    assert report.match_residual_per_degree[2] == pytest.approx(2.0)


def test_cell24_single_constellation_is_a_five_design():
    code = qsc.build("cell24", 1.0, partition="one")
    report = design_strength(code, 7)
    assert report.sphere_strength == 5
    assert report.sphere_residual_per_degree[6] > 1e-3
    assert brute_sphere_strength(constellations_as_lists(code), 7) == 5


def test_cell600_is_an_eleven_design():
    code = qsc.build("cell600", 1.0)
    report = design_strength(code, 12)
    assert report.sphere_strength == 11
    assert report.sphere_residual_per_degree[12] > 1e-3


def test_design_report_match_at_least_sphere():
    for entry in qsc.list_catalog():
        report = design_strength(entry.build(1.0), 4)
        assert report.matching_strength >= report.sphere_strength, entry.entry_id


def test_phase_rotation_shifts_moment_by_phase():
    rng = np.random.default_rng(11)
    z = rng.standard_normal((6, 2)) + 1j * rng.standard_normal((6, 2))
    z /= np.linalg.norm(z, axis=1, keepdims=True)
    c = Constellation("c", [Point(row) for row in z])
    thetas = rng.uniform(0, 2 * math.pi, size=2)
    rotated = Constellation("c", [Point(row * np.exp(1j * thetas)) for row in z])
    idx = MomentIndex((2, 1), (0, 3))
    phase = np.exp(1j * (np.array(idx.p) - np.array(idx.q)) @ thetas)
    assert moment(rotated, idx) == pytest.approx(moment(c, idx) * phase, abs=1e-12)


@pytest.mark.parametrize("name,params", [
    ("cat", {"S": 2, "K": 2}),
    ("cell24", {"partition": "three"}),
])
def test_strengths_invariant_under_phase_rotations(name, params):
    code = qsc.build(name, 4.0, **params)
    base = design_strength(code, 6)
    rng = np.random.default_rng(3)
    thetas = rng.uniform(0, 2 * math.pi, size=code.modes)
    rotated = QSCode(code.modes, code.radius_sq, [
        Constellation(c.label, [Point(p.amplitudes * np.exp(1j * thetas))
                                for p in c.points])
        for c in code.codewords
    ])
    report = design_strength(rotated, 6)
    assert report.sphere_strength == base.sphere_strength
    assert report.matching_strength == base.matching_strength


def test_sphere_strength_invariant_under_random_unitary():
    code = qsc.build("cell24", 1.0, partition="one")
    base = design_strength(code, 6)
    rng = np.random.default_rng(17)
    for _ in range(3):
        u = random_unitary(2, rng)
        rotated = QSCode(2, 1.0, [
            Constellation(c.label, [Point(u @ p.amplitudes) for p in c.points])
            for c in code.codewords
        ])
        assert design_strength(rotated, 6).sphere_strength == base.sphere_strength


def test_design_budget_guard():
    code = qsc.build("cat", 1.0, S=1, K=2)
    with pytest.raises(BudgetExceededError):
        design_strength(code, 40, budget=100)


def test_enumeration_is_graded_lexicographic():
    seen = list(moment_indices(1, 2))
    expected = [
        MomentIndex((0,), (0,)),
        MomentIndex((0,), (1,)), MomentIndex((1,), (0,)),
        MomentIndex((0,), (2,)), MomentIndex((1,), (1,)), MomentIndex((2,), (0,)),
    ]
    assert seen == expected

from __future__ import annotations

import math

import numpy as np
import pytest

import qsc
from qsc.constellation import Constellation, Point, QSCode
from qsc.kl import (
    DegenerateConstellationError,
    MonomialError,
    codeword_norm_sq,
    coherent_overlap,
    dephasing_kl_matrix,
    detection_report,
    kl_matrix,
    stirling2,
)
from qsc.moments import BudgetExceededError, multi_indices

from brute_force import brute_kl_matrix
from conftest import constellations_as_lists, random_three_point_code


# ---------------------------------------------------------------------------
# overlaps and norms
# ---------------------------------------------------------------------------

def test_overlap_of_identical_states_is_one():
    z = Point([1.3 - 0.7j, 0.2j])
    assert coherent_overlap(z, z) == pytest.approx(1.0)


def test_overlap_antipodal_unit():
    assert coherent_overlap(Point([1.0]), Point([-1.0])) == pytest.approx(math.exp(-2.0))


def test_overlap_magnitude_identity_for_equal_norms():
    rng = np.random.default_rng(5)
    for _ in range(20):
        z = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        w = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        w *= np.linalg.norm(z) / np.linalg.norm(w)
        expected = math.exp(-0.5 * float(np.linalg.norm(z - w)) ** 2)
        assert abs(coherent_overlap(z, w)) == pytest.approx(expected, rel=1e-12)


def test_codeword_norm_single_point():
    assert codeword_norm_sq(Constellation("0", [Point([2.0])])) == pytest.approx(1.0)


def test_codeword_norm_two_legs():
    c = Constellation("0", [Point([2.0]), Point([-2.0])])
    assert codeword_norm_sq(c) == pytest.approx(2.0 + 2.0 * math.exp(-8.0), rel=1e-14)


def test_codeword_norm_degenerate():
    c = Constellation("0", [Point([1e-9]), Point([-1e-9])])
    # the superposition of two nearly identical states is fine, but a
    # +/- cat at tiny amplitude has norm ~ 2 + 2*(1 - eps) which is fine too;
    # force degeneracy with opposite-sign duplicates of the same state
    degenerate = QSCode(1, 0.0, [Constellation("0", [Point([0.0]), Point([0.0])])])
    # duplicate points are a validity violation, but the norm itself is 4 > 0
    assert codeword_norm_sq(degenerate.codewords[0]) == pytest.approx(4.0)
    assert codeword_norm_sq(c) > 0.0


# ---------------------------------------------------------------------------
# KL matrices
# ---------------------------------------------------------------------------

def test_identity_error_gives_gram_matrix(four_legged):
    m = kl_matrix(four_legged, MonomialError.identity(1))
    assert np.allclose(np.diag(m), 1.0)
    assert np.allclose(m, m.conj().T)
    assert np.min(np.linalg.eigvalsh(m)) >= -1e-10
    # off-diagonal = 4 e^{-a^2} cos(a^2) / (2 + 2 e^{-2a^2}) at alpha = 2
    expected = 4 * math.exp(-4.0) * math.cos(4.0) / (2 + 2 * math.exp(-8.0))
    assert m[0, 1] == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("entry", [e for e in qsc.list_catalog() if e.modes <= 2],
                         ids=lambda e: e.entry_id)
def test_gram_psd_across_catalog(entry):
    code = entry.build(4.0)
    m = kl_matrix(code, MonomialError.identity(code.modes))
    assert np.allclose(np.diag(m), 1.0, atol=1e-12)
    assert np.min(np.linalg.eigvalsh(m)) >= -1e-10


def test_four_legged_loss_cancels_exactly(four_legged):
    m = kl_matrix(four_legged, MonomialError((0,), (1,)))
    assert np.max(np.abs(m)) < 1e-12


def test_two_legged_loss_not_detected(two_legged):
    m = kl_matrix(two_legged, MonomialError((0,), (1,)))
    assert np.max(np.abs(m)) > 0.1
    assert m[0, 0] == pytest.approx(2.0)
    assert m[1, 1] == pytest.approx(-2.0)
    assert abs(m[0, 1]) == pytest.approx(2.0 * math.exp(-8.0), rel=1e-12)


def test_kl_matches_brute_force(cat33):
    lists = constellations_as_lists(cat33)
    for combined in multi_indices(2, 2):
        e = MonomialError(combined[:1], combined[1:])
        mine = kl_matrix(cat33, e)
        brute = np.array(brute_kl_matrix(lists, e.r, e.s))
        assert np.max(np.abs(mine - brute)) < 1e-12


def test_dagger_symmetry(repetition_css):
    rng = np.random.default_rng(23)
    for _ in range(6):
        r = tuple(rng.integers(0, 3, size=2))
        s = tuple(rng.integers(0, 3, size=2))
        a = kl_matrix(repetition_css, MonomialError(r, s))
        b = kl_matrix(repetition_css, MonomialError(s, r))
        assert np.max(np.abs(a - b.conj().T)) < 1e-12


def test_offdiagonals_shrink_with_radius():
    for name, params in [("cat", {"S": 1, "K": 2}), ("cat", {"S": 2, "K": 2}),
                         ("cat", {"S": 3, "K": 3})]:
        for s_power in (0, 1, 2):
            prev = None
            for E in (1.0, 4.0, 9.0):
                code = qsc.build(name, E, **params)
                m = kl_matrix(code, MonomialError((0,), (s_power,)))
                off = float(np.max(np.abs(m - np.diag(np.diag(m)))))
                if prev is not None:
                    assert off <= prev + 1e-9
                prev = off


def test_energy_limit_rejected():
    code = qsc.build("cat", 700.0, S=1, K=2)
    with pytest.raises(qsc.QscError, match="underflow"):
        kl_matrix(code, MonomialError.identity(1))


def test_dimension_mismatch():
    code = qsc.build("cat", 4.0, S=1, K=2)
    with pytest.raises(qsc.DimensionMismatchError):
        kl_matrix(code, MonomialError((0, 0), (1, 0)))


# ---------------------------------------------------------------------------
# Stirling numbers and dephasing rows
# ---------------------------------------------------------------------------

def test_stirling_numbers():
    assert stirling2(0) == [1]
    assert stirling2(1) == [0, 1]
    assert stirling2(4) == [0, 1, 7, 6, 1]
    # row sums are the Bell numbers
    assert sum(stirling2(5)) == 52
    assert sum(stirling2(10)) == 115975
    with pytest.raises(ValueError):
        stirling2(21)


def test_dephasing_first_power_is_number_operator(four_legged):
    direct = kl_matrix(four_legged, MonomialError((1,), (1,)))
    assert np.allclose(dephasing_kl_matrix(four_legged, 0, 1), direct)


def test_dephasing_expansion_against_fock(four_legged):
    from qsc.fock import FockConfig, embed_codewords
    cfg = FockConfig(cutoff=60, modes=1)
    psis = embed_codewords(four_legged, cfg)
    n_diag = np.arange(cfg.cutoff, dtype=float)
    for k in (2, 3):
        mine = dephasing_kl_matrix(four_legged, 0, k)
        expected = np.array([[np.vdot(a, (n_diag ** k) * b) for b in psis]
                             for a in psis])
        assert np.max(np.abs(mine - expected)) < 1e-8


# ---------------------------------------------------------------------------
# detection report
# ---------------------------------------------------------------------------

def test_detection_trivial_single_codeword():
    code = qsc.build("cell24", 4.0, partition="one")
    report = detection_report(code, 2, tol=1e-12)
    assert report.detection_degree == 2
    assert all(row.delta < 1e-12 for row in report.rows)


def test_detection_four_legged_cat(four_legged):
    # at alpha = 2 the codeword overlap floor is 2 e^{-4} cos(4) ~ -0.024,
    # so at tol 1e-6 even the identity fails; at tol 0.05 one loss is covered
    report = detection_report(four_legged, 1, tol=1e-6)
    assert report.detection_degree == -1
    identity_row = report.rows[0]
    assert identity_row.error == MonomialError.identity(1)
    assert identity_row.delta == pytest.approx(
        abs(4 * math.exp(-4.0) * math.cos(4.0) / (2 + 2 * math.exp(-8.0))), rel=1e-9)
    relaxed = detection_report(four_legged, 1, tol=0.05)
    assert relaxed.detection_degree == 1


def test_detection_four_legged_cat_high_energy():
    code = qsc.build("cat", 16.0, S=2, K=2)
    report = detection_report(code, 1, tol=1e-6, include_dephasing_to=2)
    assert report.detection_degree == 1
    labels = [row.label() for row in report.rows]
    assert "n1" in labels and "n1^2" in labels


def test_detection_two_legged_cat(two_legged):
    report = detection_report(two_legged, 1, tol=0.05)
    assert report.detection_degree == 0
    loss_row = next(r for r in report.rows
                    if r.kind == "monomial" and r.error == MonomialError((0,), (1,)))
    assert loss_row.delta == pytest.approx(2.0)


def test_detection_budget():
    code = qsc.build("cat", 4.0, S=1, K=2)
    with pytest.raises(BudgetExceededError):
        detection_report(code, 30, tol=1e-6, budget=10)


def test_detection_rows_conjugate_pairs(four_legged):
    report = detection_report(four_legged, 2, tol=1e-6)
    by_error = {row.error: row.matrix for row in report.rows if row.kind == "monomial"}
    for e, m in by_error.items():
        assert np.max(np.abs(by_error[e.dagger()] - m.conj().T)) < 1e-12

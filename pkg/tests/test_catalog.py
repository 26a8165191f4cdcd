from __future__ import annotations

import math

import numpy as np
import pytest

import qsc
from qsc.catalog import CatalogError, build, list_catalog, symmetry_generators
from qsc.constellation import chordal_distance, min_separation, orbit, validate_code
from qsc.moments import design_strength
from qsc.symmetries import X_TYPE, enumerate_phase_symmetries

ENTRIES = list_catalog()


@pytest.mark.parametrize("entry", ENTRIES, ids=lambda e: e.entry_id)
def test_every_entry_builds_and_validates(entry):
    code = entry.build(1.0)
    assert validate_code(code) == []
    assert code.modes == entry.modes
    assert code.K == entry.num_codewords
    assert sum(len(c) for c in code.codewords) == entry.num_points


@pytest.mark.parametrize("entry", ENTRIES, ids=lambda e: e.entry_id)
def test_energy_scaling(entry):
    code = entry.build(6.25)
    for c in code.codewords:
        for p in c.points:
            assert p.norm_sq == pytest.approx(6.25, abs=1e-9)


@pytest.mark.parametrize("entry", ENTRIES, ids=lambda e: e.entry_id)
def test_orbit_closure_under_documented_generators(entry):
    code = entry.build(4.0)
    gens = symmetry_generators(entry.name, **entry.params)
    seed = code.codewords[0].points[0]
    all_points = [p for c in code.codewords for p in c.points]
    closed = orbit(seed, gens, max_size=len(all_points))
    assert len(closed) == len(all_points)
    for p in closed.points:
        assert min(chordal_distance(p, v) for v in all_points) < 1e-9


def test_cat_examples():
    code = build("cat", 4.0, S=2, K=2)
    c0 = sorted((complex(p.amplitudes[0]) for p in code.codewords[0].points),
                key=lambda z: z.real)
    assert np.allclose(c0, [-2.0, 2.0], atol=1e-12)
    c1 = [complex(p.amplitudes[0]) for p in code.codewords[1].points]
    assert all(abs(z.real) < 1e-12 for z in c1)
    assert sorted(z.imag for z in c1) == pytest.approx([-2.0, 2.0], abs=1e-12)


def test_cat_rejects_bad_parameters():
    with pytest.raises(CatalogError):
        build("cat", 4.0, S=0, K=2)
    with pytest.raises(CatalogError):
        build("cat", -1.0, S=1, K=2)
    with pytest.raises(CatalogError):
        build("nonexistent", 4.0)
    with pytest.raises(CatalogError):
        build("cell24", 4.0, partition="seven")


def test_cell24_three_16cells():
    code = build("cell24", 1.0, partition="three")
    assert [len(c) for c in code.codewords] == [8, 8, 8]
    # each constellation is a cross-polytope: 4 antipodal axis pairs,
    # mutually orthogonal in the real inner product
    for c in code.codewords:
        pts = c.as_array()
        real = np.concatenate([pts.real, pts.imag], axis=1)
        gram = real @ real.T
        for i in range(8):
            row = sorted(np.round(gram[i], 9))
            assert row[0] == pytest.approx(-1.0)   # the antipode
            assert all(abs(x) < 1e-9 for x in row[1:7])
            assert row[7] == pytest.approx(1.0)    # itself


def test_cell24_two_partition_sizes():
    code = build("cell24", 1.0, partition="two")
    assert sorted(len(c) for c in code.codewords) == [8, 16]


def test_cell600_counts_and_partition():
    code = build("cell600", 1.0, partition="five")
    assert [len(c) for c in code.codewords] == [24] * 5
    sep, _ = min_separation(code)
    assert sep == pytest.approx(1.0 / ((1 + math.sqrt(5.0)) / 2.0), rel=1e-9)


def test_orthoplex_partition_sizes():
    code = build("orthoplex", 1.0, n=2)
    assert [len(c) for c in code.codewords] == [4, 4]
    assert validate_code(code) == []


def test_hypercube_point_count():
    code = build("hypercube", 1.0, n=2)
    assert sum(len(c) for c in code.codewords) == 16
    assert [len(c) for c in code.codewords] == [8, 8]


def test_cat_x_cycle_property():
    for S, K in [(2, 2), (3, 2), (3, 3)]:
        code = build("cat", 4.0, S=S, K=K)
        actions = enumerate_phase_symmetries(code, S * K)
        cycles = [a for a in actions if a.classification == X_TYPE
                  and _is_full_cycle(a.codeword_permutation)]
        assert cycles, f"cat({S},{K})"


def _is_full_cycle(perm: tuple[int, ...]) -> bool:
    mu, seen = 0, set()
    while mu not in seen:
        seen.add(mu)
        mu = perm[mu]
    return len(seen) == len(perm)


def test_listing_contains_minimum_catalog():
    ids = {e.entry_id for e in ENTRIES}
    assert "cell24(partition=three)" in ids
    assert "cell600(partition=one)" in ids
    assert any(e.name == "cat" for e in ENTRIES)
    assert any(e.name == "hypercube" for e in ENTRIES)
    assert any(e.name == "orthoplex" for e in ENTRIES)
    assert any(e.name in ("gamma", "beta", "hessian") for e in ENTRIES)


def test_expected_properties_fixture_regression():
    """The committed oracle-generated values must match a fresh run."""
    checked = 0
    for entry in ENTRIES:
        props = entry.expected_properties
        assert props, f"missing fixture for {entry.entry_id}; run scripts/gen_fixtures.py"
        code = entry.build(1.0)
        report = design_strength(code, props["tmax"])
        assert report.sphere_strength == props["t_sphere"], entry.entry_id
        assert report.matching_strength == props["t_match"], entry.entry_id
        if props["min_separation"] is None:
            assert code.K == 1
        else:
            sep, _ = min_separation(code)
            assert sep == pytest.approx(props["min_separation"], rel=1e-12)
        checked += 1
    assert checked == len(ENTRIES)

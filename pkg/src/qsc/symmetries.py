"""Passive-unitary symmetries, their logical action, and vanishing ideals.

A passive unitary U sends coherent states to coherent states, |z> -> |Uz>, so
a U that permutes the constellation points acts exactly on the uniform
superposition codewords: it is a logical gate.  If it fixes every
constellation setwise it is Z-type (a stabilizer of the logical identity);
if it permutes the constellations it is X-type.

The vanishing ideal holds the polynomials g with g(z) = 0 at every
constellation point.  Since g(a_1,...,a_n)|z> = g(z)|z>, each such g yields a
jump operator that annihilates the whole codespace: the codespace is a dark
space of the corresponding dissipator, which is the algebraic content of
passive stabilization.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from ._parallel import ordered_map
from .constellation import (
    DimensionMismatchError,
    PassiveUnitary,
    Point,
    QSCode,
    TOL_POINT,
)
from .moments import BudgetExceededError, count_multi_indices, multi_indices

TOL_IDEAL = 1e-8
Z_TYPE = "Z-type"
X_TYPE = "X-type"
NOT_A_SYMMETRY = "not-a-symmetry"


@dataclass(frozen=True)
class SymmetryAction:
    """How a candidate unitary acts on a code's constellations."""

    unitary: PassiveUnitary
    point_permutation: Optional[dict[tuple[int, int], tuple[int, int]]]
    codeword_permutation: Optional[tuple[int, ...]]
    classification: str

    @property
    def is_symmetry(self) -> bool:
        return self.classification != NOT_A_SYMMETRY


def classify_symmetry(code: QSCode, u: PassiveUnitary,
                      tol: float = TOL_POINT) -> SymmetryAction:
    """Match every image Uz back to the point set and read off the action."""
    if u.n != code.modes:
        raise DimensionMismatchError(f"unitary has n={u.n}, code has n={code.modes}")
    index: list[tuple[int, int]] = []
    rows = []
    for mu, c in enumerate(code.codewords):
        for i, p in enumerate(c.points):
            index.append((mu, i))
            rows.append(p.amplitudes)
    points = np.array(rows)
    images = points @ u.matrix.T

    permutation: dict[tuple[int, int], tuple[int, int]] = {}
    hit = [False] * len(index)
    for src, img in enumerate(images):
        dist = np.linalg.norm(points - img[None, :], axis=1)
        tgt = int(np.argmin(dist))
        if dist[tgt] > tol or hit[tgt]:
            return SymmetryAction(u, None, None, NOT_A_SYMMETRY)
        hit[tgt] = True
        permutation[index[src]] = index[tgt]

    pi: list[int] = []
    for mu in range(code.K):
        targets = {permutation[(mu, i)][0] for i in range(len(code.codewords[mu]))}
        if len(targets) != 1:
            return SymmetryAction(u, None, None, NOT_A_SYMMETRY)
        pi.append(targets.pop())
    if sorted(pi) != list(range(code.K)):
        return SymmetryAction(u, None, None, NOT_A_SYMMETRY)
    kind = Z_TYPE if pi == list(range(code.K)) else X_TYPE
    return SymmetryAction(u, permutation, tuple(pi), kind)


def enumerate_phase_symmetries(code: QSCode, max_order: int,
                               budget: int = 1_000_000) -> list[SymmetryAction]:
    """Test all per-mode rotations diag(exp(2pi i k/m)) with m <= max_order.

    Candidates are deduplicated by their reduced phase fractions, and the
    surviving symmetries by their induced point permutation, keeping the
    lowest-order representative of each action.
    """
    if max_order < 1:
        raise ValueError("max_order must be at least 1")
    n = code.modes
    total = sum(m ** n for m in range(1, max_order + 1))
    if total > budget:
        raise BudgetExceededError(
            f"{total} phase candidates exceed the budget {budget}")
    seen_phases: set[tuple[Fraction, ...]] = set()
    seen_actions: set[tuple[tuple[tuple[int, int], tuple[int, int]], ...]] = set()
    found: list[SymmetryAction] = []
    for m in range(1, max_order + 1):
        for ks in itertools.product(range(m), repeat=n):
            key = tuple(Fraction(k, m) for k in ks)
            if key in seen_phases:
                continue
            seen_phases.add(key)
            u = PassiveUnitary.phase_rotation([2.0 * math.pi * k / m for k in ks])
            action = classify_symmetry(code, u)
            if not action.is_symmetry:
                continue
            perm_key = tuple(sorted(action.point_permutation.items()))
            if perm_key in seen_actions:
                continue
            seen_actions.add(perm_key)
            found.append(action)
    return found


@dataclass(frozen=True)
class VanishingPolynomial:
    """A polynomial in the mode amplitudes that vanishes on the code points."""

    terms: dict[tuple[int, ...], complex]
    max_degree: int

    @property
    def n(self) -> int:
        return len(next(iter(self.terms)))

    @property
    def degree(self) -> int:
        return max(sum(d) for d in self.terms)

    def evaluate(self, z: np.ndarray) -> complex | np.ndarray:
        z = np.asarray(z, dtype=np.complex128)
        single = z.ndim == 1
        pts = z[None, :] if single else z
        out = np.zeros(pts.shape[0], dtype=np.complex128)
        for d, coeff in self.terms.items():
            vals = np.full(pts.shape[0], coeff, dtype=np.complex128)
            for i, e in enumerate(d):
                if e:
                    vals = vals * pts[:, i] ** e
            out += vals
        return complex(out[0]) if single else out

    def describe(self) -> str:
        def mono(d: tuple[int, ...]) -> str:
            if not any(d):
                return "1"
            return " ".join(f"z{i + 1}^{e}" if e > 1 else f"z{i + 1}"
                            for i, e in enumerate(d) if e)
        parts = [f"({coeff.real:+.4g}{coeff.imag:+.4g}j) {mono(d)}"
                 for d, coeff in sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]))]
        return " + ".join(parts)


def vanishing_ideal(code: QSCode, max_degree: int, tol_ideal: float = TOL_IDEAL,
                    budget: int = 100_000) -> list[VanishingPolynomial]:
    """Numerical null space of the monomial evaluation matrix.

    One row per constellation point, one column per monomial z^d with
    0 <= |d| <= max_degree (the constant column makes affine relations such
    as z^4 - alpha^4 visible).  Columns are scaled by their largest magnitude
    so the cutoff tol_ideal * sigma_max is robust to the sphere radius.
    """
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    n = code.modes
    n_cols = count_multi_indices(n, max_degree)
    if n_cols > budget:
        raise BudgetExceededError(
            f"monomial enumeration needs {n_cols} columns, budget is {budget}")
    monomials = list(multi_indices(n, max_degree))
    points = np.array([p.amplitudes for c in code.codewords for p in c.points])
    V = np.ones((points.shape[0], len(monomials)), dtype=np.complex128)
    for j, d in enumerate(monomials):
        for i, e in enumerate(d):
            if e:
                V[:, j] = V[:, j] * points[:, i] ** e
    scales = np.max(np.abs(V), axis=0)
    scales[scales == 0.0] = 1.0
    _, sigma, Vh = np.linalg.svd(V / scales[None, :], full_matrices=True)
    sigma_max = sigma[0] if sigma.size else 0.0
    polys: list[VanishingPolynomial] = []
    for row in range(len(monomials) - 1, -1, -1):
        s = sigma[row] if row < sigma.size else 0.0
        if s > tol_ideal * sigma_max:
            break
        coeffs = np.conj(Vh[row]) / scales
        coeffs = coeffs / np.linalg.norm(coeffs)
        peak = np.max(np.abs(coeffs))
        terms = {d: complex(coeffs[j]) for j, d in enumerate(monomials)
                 if abs(coeffs[j]) > 1e-14 * peak}
        polys.append(VanishingPolynomial(terms, max_degree))
    polys.reverse()
    return polys


def verify_jump_annihilates(code: QSCode, g: VanishingPolynomial) -> float:
    """Largest |g(z)| over all constellation points.

    Zero (within tolerance) certifies that the jump operator g(a_1,...,a_n)
    annihilates every codeword, i.e. the codespace is a dark space of the
    dissipator built from g.
    """
    if g.n != code.modes:
        raise DimensionMismatchError(f"polynomial has n={g.n}, code has n={code.modes}")
    points = np.array([p.amplitudes for c in code.codewords for p in c.points])
    return float(np.max(np.abs(g.evaluate(points))))

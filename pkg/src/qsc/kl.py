"""Exact coherent-frame evaluation of error-detection (Knill-Laflamme) matrices.

Codewords are uniform, unweighted superpositions of the coherent states at
the constellation points.  For a normally ordered monomial error
E = prod_i (a_i^dag)^{r_i} a_i^{s_i} the matrix element between coherent
states is available in closed form,

    <z| (a^dag)^r a^s |w> = conj(z)^r w^s <z|w>,

so every K x K error matrix is computed exactly, with no Fock cutoff.
A code detects E when the matrix is proportional to the identity; the report
records the deviation from that for every error up to a degree bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from ._parallel import ordered_map
from .constellation import Constellation, DimensionMismatchError, QSCode, QscError
from .moments import BudgetExceededError, count_multi_indices, multi_indices

MAX_RADIUS_SQ = 600.0
MAX_STIRLING = 20
ERROR_BUDGET = 100_000


class DegenerateConstellationError(QscError):
    """The codeword norm collapsed; amplitudes are too small to resolve."""


@dataclass(frozen=True)
class MonomialError:
    """A normally ordered monomial prod_i (a_i^dag)^{r_i} a_i^{s_i}."""

    r: tuple[int, ...]
    s: tuple[int, ...]

    def __post_init__(self):
        if len(self.r) != len(self.s):
            raise DimensionMismatchError("r and s must have equal length")
        if any(e < 0 for e in self.r) or any(e < 0 for e in self.s):
            raise ValueError("powers must be nonnegative")

    @property
    def n(self) -> int:
        return len(self.r)

    @property
    def degree(self) -> int:
        return sum(self.r) + sum(self.s)

    def dagger(self) -> "MonomialError":
        return MonomialError(self.s, self.r)

    @staticmethod
    def identity(n: int) -> "MonomialError":
        return MonomialError((0,) * n, (0,) * n)

    def label(self) -> str:
        parts = []
        for i, (ri, si) in enumerate(zip(self.r, self.s), start=1):
            if ri:
                parts.append(f"ad{i}^{ri}" if ri > 1 else f"ad{i}")
            if si:
                parts.append(f"a{i}^{si}" if si > 1 else f"a{i}")
        return " ".join(parts) if parts else "I"


def coherent_overlap(z, w) -> complex:
    """<z|w> = exp(-|z|^2/2 - |w|^2/2 + conj(z).w) for normalized coherent states."""
    za = np.asarray(getattr(z, "amplitudes", z), dtype=np.complex128)
    wa = np.asarray(getattr(w, "amplitudes", w), dtype=np.complex128)
    if za.shape != wa.shape:
        raise DimensionMismatchError("points have different mode counts")
    return complex(np.exp(-0.5 * np.vdot(za, za).real - 0.5 * np.vdot(wa, wa).real
                          + np.vdot(za, wa)))


def _overlap_matrix(Z: np.ndarray, W: np.ndarray) -> np.ndarray:
    nz = np.sum(np.abs(Z) ** 2, axis=1)
    nw = np.sum(np.abs(W) ** 2, axis=1)
    return np.exp(-0.5 * nz[:, None] - 0.5 * nw[None, :] + np.conj(Z) @ W.T)


def codeword_norm_sq(c: Constellation) -> float:
    """Squared norm of the unnormalized superposition sum_z |z>."""
    Z = c.as_array()
    total = complex(_overlap_matrix(Z, Z).sum())
    scale = len(c) ** 2
    if abs(total.imag) > 1e-12 * scale:
        raise QscError(f"codeword norm has a spurious imaginary part {total.imag:.3e}")
    if total.real <= 1e-12 * scale:
        raise DegenerateConstellationError(
            f"constellation '{c.label}' is numerically degenerate (norm {total.real:.3e})")
    return float(total.real)


def _monomial_factors(Z: np.ndarray, powers: Sequence[int]) -> np.ndarray:
    vals = np.ones(Z.shape[0], dtype=np.complex128)
    for i, e in enumerate(powers):
        if e:
            vals = vals * Z[:, i] ** e
    return vals


def _check_radius(code: QSCode) -> None:
    if code.radius_sq > MAX_RADIUS_SQ:
        raise QscError(
            f"radius_sq={code.radius_sq} exceeds the supported maximum {MAX_RADIUS_SQ}; "
            "coherent overlaps would underflow")


def kl_matrix(code: QSCode, e: MonomialError) -> np.ndarray:
    """K x K matrix of <c_mu| E |c_nu> over unit-normalized codewords."""
    if e.n != code.modes:
        raise DimensionMismatchError(f"error has n={e.n}, code has n={code.modes}")
    _check_radius(code)
    arrays = [c.as_array() for c in code.codewords]
    norms = [codeword_norm_sq(c) for c in code.codewords]
    K = code.K
    out = np.zeros((K, K), dtype=np.complex128)
    for mu in range(K):
        u = np.conj(_monomial_factors(arrays[mu], e.r))
        for nu in range(K):
            v = _monomial_factors(arrays[nu], e.s)
            O = _overlap_matrix(arrays[mu], arrays[nu])
            out[mu, nu] = (u @ O @ v) / math.sqrt(norms[mu] * norms[nu])
    return out


def stirling2(k: int) -> list[int]:
    """Stirling numbers of the second kind S(k, j) for j = 0..k, exact."""
    if k < 0 or k > MAX_STIRLING:
        raise ValueError(f"dephasing expansion supports powers 0..{MAX_STIRLING}")
    row = [1]
    for m in range(1, k + 1):
        prev = row
        row = [0] * (m + 1)
        for j in range(1, m + 1):
            row[j] = (j * prev[j] if j < len(prev) else 0) + prev[j - 1]
    return row


def dephasing_kl_matrix(code: QSCode, mode: int, k: int) -> np.ndarray:
    """KL matrix of the dephasing power n_mode^k via its normal ordering,
    n^k = sum_j S(k, j) (a^dag)^j a^j."""
    coeffs = stirling2(k)
    out = np.zeros((code.K, code.K), dtype=np.complex128)
    for j, c in enumerate(coeffs):
        if c == 0:
            continue
        powers = tuple(j if i == mode else 0 for i in range(code.modes))
        out += c * kl_matrix(code, MonomialError(powers, powers))
    return out


@dataclass(frozen=True)
class DetectionRow:
    """One error's KL matrix summarized: scale lambda and deviation delta."""

    kind: str                       # "monomial" or "dephasing"
    error: Optional[MonomialError]  # for monomial rows
    mode: Optional[int]             # for dephasing rows
    power: Optional[int]            # for dephasing rows
    degree: int
    lam: complex
    delta: float
    matrix: np.ndarray

    def label(self) -> str:
        if self.kind == "monomial":
            assert self.error is not None
            return self.error.label()
        return f"n{self.mode + 1}^{self.power}" if self.power != 1 else f"n{self.mode + 1}"


@dataclass(frozen=True)
class DetectionReport:
    rows: tuple[DetectionRow, ...]
    detection_degree: int
    max_degree: int
    tol: float

    def monomial_rows(self) -> list[DetectionRow]:
        return [r for r in self.rows if r.kind == "monomial"]


def _summarize(matrix: np.ndarray) -> tuple[complex, float]:
    K = matrix.shape[0]
    lam = complex(np.trace(matrix) / K)
    delta = float(np.max(np.abs(matrix - lam * np.eye(K))))
    return lam, delta


def detection_report(code: QSCode, max_degree: int, tol: float,
                     include_dephasing_to: int = 0,
                     budget: int = ERROR_BUDGET) -> DetectionReport:
    """Evaluate every monomial error of degree <= max_degree (graded lex),
    plus per-mode dephasing powers, and report the detectable degree.

    ``detection_degree`` is the largest D with delta_E <= tol for every
    monomial of degree <= D; it is -1 when already the identity fails (the
    codewords are not orthogonal at tolerance ``tol``).
    """
    if max_degree < 0:
        raise ValueError("max_degree must be nonnegative")
    n = code.modes
    n_errors = count_multi_indices(2 * n, max_degree)
    if n_errors > budget:
        raise BudgetExceededError(
            f"error enumeration needs {n_errors} monomials, budget is {budget}")
    errors = [MonomialError(combined[:n], combined[n:])
              for combined in multi_indices(2 * n, max_degree)]

    def monomial_row(e: MonomialError) -> DetectionRow:
        m = kl_matrix(code, e)
        lam, delta = _summarize(m)
        return DetectionRow("monomial", e, None, None, e.degree, lam, delta, m)

    rows = list(ordered_map(monomial_row, errors))

    dephasing_jobs = [(i, k) for i in range(n)
                      for k in range(1, include_dephasing_to + 1)]

    def dephasing_row(job: tuple[int, int]) -> DetectionRow:
        i, k = job
        m = dephasing_kl_matrix(code, i, k)
        lam, delta = _summarize(m)
        return DetectionRow("dephasing", None, i, k, 2 * k, lam, delta, m)

    rows.extend(ordered_map(dephasing_row, dephasing_jobs))

    worst_by_degree: dict[int, float] = {}
    for row in rows:
        if row.kind != "monomial":
            continue
        d = row.error.degree
        worst_by_degree[d] = max(worst_by_degree.get(d, 0.0), row.delta)
    degree = -1
    for d in range(max_degree + 1):
        if worst_by_degree.get(d, 0.0) <= tol:
            degree = d
        else:
            break

    return DetectionReport(tuple(rows), degree, max_degree, tol)

"""Compile classical CSS code pairs into phase-pattern constellations.

Each string b in Z_q^n becomes the product coherent point
(alpha w^{b_1}, ..., alpha w^{b_n}) with w = exp(2 pi i / q).  The
constellation consists of the strings orthogonal to every row of gen_Z
(the dual code of C_Z), partitioned into cosets of the row space C_X of
gen_X; one coset per logical codeword.  The modulus q must be prime so that
row spaces, duals and cosets are plain linear algebra over a field.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .constellation import Constellation, Point, QSCode, QscError
from .kl import detection_report
from .moments import BudgetExceededError

CODE_SIZE_BUDGET = 1_000_000


class CssError(QscError):
    """Invalid classical input: non-prime modulus or CSS condition failure."""


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    for d in range(2, int(math.isqrt(q)) + 1):
        if q % d == 0:
            return False
    return True


def _as_matrix(rows: Sequence[Sequence[int]], length: int, q: int) -> tuple[tuple[int, ...], ...]:
    out = []
    for row in rows:
        row = tuple(int(x) % q for x in row)
        if len(row) != length:
            raise CssError(f"generator row {row} does not have length {length}")
        out.append(row)
    return tuple(out)


def _rref(rows: list[list[int]], q: int) -> list[list[int]]:
    """Reduced row echelon form over Z_q (q prime), exact integer arithmetic."""
    mat = [row[:] for row in rows]
    n_cols = len(mat[0]) if mat else 0
    pivot_row = 0
    for col in range(n_cols):
        pivot = next((r for r in range(pivot_row, len(mat)) if mat[r][col] % q), None)
        if pivot is None:
            continue
        mat[pivot_row], mat[pivot] = mat[pivot], mat[pivot_row]
        inv = pow(mat[pivot_row][col], q - 2, q)
        mat[pivot_row] = [(x * inv) % q for x in mat[pivot_row]]
        for r in range(len(mat)):
            if r != pivot_row and mat[r][col] % q:
                factor = mat[r][col]
                mat[r] = [(a - factor * b) % q for a, b in zip(mat[r], mat[pivot_row])]
        pivot_row += 1
        if pivot_row == len(mat):
            break
    return [row for row in mat[:pivot_row] if any(row)]


def _row_space(rows: Sequence[Sequence[int]], length: int, q: int,
               budget: int = CODE_SIZE_BUDGET) -> list[tuple[int, ...]]:
    basis = _rref([list(r) for r in rows], q) if rows else []
    if q ** len(basis) > budget:
        raise BudgetExceededError(f"code with {q}^{len(basis)} words exceeds the budget")
    words = []
    for coeffs in itertools.product(range(q), repeat=len(basis)):
        w = [0] * length
        for c, row in zip(coeffs, basis):
            if c:
                w = [(a + c * b) % q for a, b in zip(w, row)]
        words.append(tuple(w))
    return sorted(set(words))


def _null_space(rows: Sequence[Sequence[int]], length: int, q: int,
                budget: int = CODE_SIZE_BUDGET) -> list[tuple[int, ...]]:
    """All x in Z_q^length with row . x = 0 mod q for every generator row."""
    basis = _rref([list(r) for r in rows], q) if rows else []
    pivots = []
    for row in basis:
        pivots.append(next(i for i, x in enumerate(row) if x))
    free_cols = [i for i in range(length) if i not in pivots]
    if q ** len(free_cols) > budget:
        raise BudgetExceededError(f"dual code: {q}^{len(free_cols)} words exceed the budget")
    kernel_basis = []
    for fc in free_cols:
        vec = [0] * length
        vec[fc] = 1
        for row, pc in zip(basis, pivots):
            vec[pc] = (-row[fc]) % q
        kernel_basis.append(vec)
    words = []
    for coeffs in itertools.product(range(q), repeat=len(kernel_basis)):
        w = [0] * length
        for c, vec in zip(coeffs, kernel_basis):
            if c:
                w = [(a + c * b) % q for a, b in zip(w, vec)]
        words.append(tuple(w))
    return sorted(set(words))


@dataclass(frozen=True)
class ClassicalCodeSpec:
    """A CSS pair: row spaces of gen_X and gen_Z with G_X . G_Z^T = 0 mod q."""

    q: int
    length: int
    gen_x: tuple[tuple[int, ...], ...]
    gen_z: tuple[tuple[int, ...], ...]

    def __init__(self, q: int, length: int,
                 gen_x: Sequence[Sequence[int]] = (),
                 gen_z: Sequence[Sequence[int]] = ()):
        if length < 1:
            raise CssError("length must be at least 1")
        if not _is_prime(q):
            raise CssError(f"modulus q={q} must be prime")
        gx = _as_matrix(gen_x, length, q)
        gz = _as_matrix(gen_z, length, q)
        for rx in gx:
            for rz in gz:
                if sum(a * b for a, b in zip(rx, rz)) % q:
                    raise CssError(
                        f"CSS condition violated: rows {rx} and {rz} are not orthogonal mod {q}")
        object.__setattr__(self, "q", int(q))
        object.__setattr__(self, "length", int(length))
        object.__setattr__(self, "gen_x", gx)
        object.__setattr__(self, "gen_z", gz)

    def c_x(self) -> list[tuple[int, ...]]:
        return _row_space(self.gen_x, self.length, self.q)

    def c_z(self) -> list[tuple[int, ...]]:
        return _row_space(self.gen_z, self.length, self.q)

    def c_z_dual(self) -> list[tuple[int, ...]]:
        return _null_space(self.gen_z, self.length, self.q)

    def c_x_dual(self) -> list[tuple[int, ...]]:
        return _null_space(self.gen_x, self.length, self.q)


def _weight(word: tuple[int, ...]) -> int:
    return sum(1 for x in word if x)


def compile_css(spec: ClassicalCodeSpec, alpha: complex) -> QSCode:
    """Concatenate the CSS pair with the q-component cat constellations.

    Codewords are the cosets of C_X inside the dual of C_Z, labeled by coset
    leaders in (weight, lexicographic) order; K = |C_Z^perp| / |C_X|.
    """
    alpha = complex(alpha)
    if alpha == 0:
        raise CssError("alpha must be nonzero")
    q, n = spec.q, spec.length
    w = cmath.exp(2j * math.pi / q)
    c_x = spec.c_x()
    dual = spec.c_z_dual()
    dual_set = set(dual)
    ordered = sorted(dual, key=lambda word: (_weight(word), word))
    remaining = set(dual)
    constellations = []
    for leader in ordered:
        if leader not in remaining:
            continue
        coset = sorted((tuple((l + x) % q for l, x in zip(leader, word)))
                       for word in c_x)
        for word in coset:
            if word not in dual_set:
                raise CssError("internal: coset escaped the dual code")
            remaining.discard(word)
        pts = [Point([alpha * w ** b for b in word]) for word in coset]
        constellations.append(Constellation("".join(map(str, leader)), pts))
    return QSCode(n, n * abs(alpha) ** 2, constellations)


@dataclass(frozen=True)
class CssProperties:
    """Classical distances next to the measured properties of the compiled code."""

    q: int
    length: int
    K: int
    points_per_codeword: int
    dual_z_size: int
    d_x: Optional[int]   # min weight of C_Z^perp \ C_X
    d_z: Optional[int]   # min weight of C_X^perp \ C_Z
    min_separation: float
    detection_degree: int


def css_properties(spec: ClassicalCodeSpec, alpha: complex = 2.0,
                   max_degree: int = 1, tol: float = 1e-6) -> CssProperties:
    """Brute-force classical distances plus measured properties of the
    compiled constellation, so the classical-to-quantum dictionary can be
    checked empirically."""
    if spec.length > 20:
        raise BudgetExceededError("weight enumeration is limited to length <= 20")
    from .constellation import min_separation as _min_sep

    c_x = set(spec.c_x())
    c_z = set(spec.c_z())
    dual_z = spec.c_z_dual()
    dual_x = spec.c_x_dual()
    logical_x = [word for word in dual_z if word not in c_x]
    logical_z = [word for word in dual_x if word not in c_z]
    d_x = min((_weight(word) for word in logical_x), default=None)
    d_z = min((_weight(word) for word in logical_z), default=None)
    code = compile_css(spec, alpha)
    sep = _min_sep(code)[0] if code.K >= 2 else 0.0
    report = detection_report(code, max_degree, tol)
    return CssProperties(
        q=spec.q,
        length=spec.length,
        K=code.K,
        points_per_codeword=len(c_x),
        dual_z_size=len(dual_z),
        d_x=d_x,
        d_z=d_z,
        min_separation=sep,
        detection_degree=report.detection_degree,
    )


def read_generator_file(path: str) -> list[list[int]]:
    """Rows of space-separated residues, one per line; blank lines ignored."""
    rows = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            rows.append([int(tok) for tok in line.split()])
    return rows

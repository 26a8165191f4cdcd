"""Points, constellations and codes on a complex sphere.

A code is a finite family of disjoint point sets (constellations) living on a
common sphere in C^n, one constellation per logical codeword.  Everything in
this module is immutable after construction and safe to share between threads.

Geometric validity (common radius, no duplicate points, disjoint
constellations) is checked by :func:`validate_code`, which reports violations
as data rather than raising, so that invalid inputs can be inspected.  The
constructors only enforce structural invariants (shapes, finiteness).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

TOL_SPHERE = 1e-9
TOL_POINT = 1e-9
TOL_UNITARY = 1e-12


class QscError(Exception):
    """Base class for errors raised by this package."""


class DimensionMismatchError(QscError):
    """Operands have a different number of modes."""


class OrbitOverflowError(QscError):
    """Group closure exceeded the requested maximum size."""


class CodeFormatError(QscError):
    """A code document failed to parse or violated code invariants on load."""


def _as_complex_vector(amplitudes: Iterable[complex]) -> np.ndarray:
    arr = np.asarray(list(amplitudes) if not isinstance(amplitudes, np.ndarray) else amplitudes,
                     dtype=np.complex128)
    if arr.ndim != 1 or arr.size < 1:
        raise ValueError("a point needs at least one mode")
    if not np.all(np.isfinite(arr.view(np.float64))):
        raise ValueError("point amplitudes must be finite")
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class Point:
    """A coherent-state amplitude vector z in C^n (one constellation point)."""

    amplitudes: np.ndarray

    def __init__(self, amplitudes: Iterable[complex]):
        object.__setattr__(self, "amplitudes", _as_complex_vector(amplitudes))

    @property
    def n(self) -> int:
        return self.amplitudes.size

    @property
    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Point):
            return NotImplemented
        return self.amplitudes.shape == other.amplitudes.shape and bool(
            np.array_equal(self.amplitudes, other.amplitudes)
        )

    def __hash__(self) -> int:
        return hash(self.amplitudes.tobytes())

    def __repr__(self) -> str:
        entries = ", ".join(f"{z.real:+.6g}{z.imag:+.6g}j" for z in self.amplitudes)
        return f"Point([{entries}])"


@dataclass(frozen=True)
class Constellation:
    """A labeled, nonempty point multiset assigned to one logical codeword."""

    label: str
    points: tuple[Point, ...]

    def __init__(self, label: str, points: Sequence[Point | Iterable[complex]]):
        pts = tuple(p if isinstance(p, Point) else Point(p) for p in points)
        if not pts:
            raise ValueError("a constellation needs at least one point")
        n = pts[0].n
        if any(p.n != n for p in pts):
            raise DimensionMismatchError("all points in a constellation must share n")
        object.__setattr__(self, "label", str(label))
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return self.points[0].n

    def __len__(self) -> int:
        return len(self.points)

    def as_array(self) -> np.ndarray:
        """Stack the points into a (len, n) complex array."""
        return np.array([p.amplitudes for p in self.points], dtype=np.complex128)


@dataclass(frozen=True)
class QSCode:
    """K disjoint labeled constellations on one sphere of squared radius E."""

    modes: int
    radius_sq: float
    codewords: tuple[Constellation, ...]

    def __init__(self, modes: int, radius_sq: float, codewords: Sequence[Constellation]):
        cws = tuple(codewords)
        if not cws:
            raise ValueError("a code needs at least one codeword constellation")
        if any(c.n != modes for c in cws):
            raise DimensionMismatchError("all constellations must have the declared mode count")
        if radius_sq < 0:
            raise ValueError("radius_sq must be nonnegative")
        object.__setattr__(self, "modes", int(modes))
        object.__setattr__(self, "radius_sq", float(radius_sq))
        object.__setattr__(self, "codewords", cws)

    @property
    def K(self) -> int:
        return len(self.codewords)

    def all_points(self) -> list[tuple[int, int, Point]]:
        """Flatten to (codeword index, point index, point) triples."""
        return [(mu, i, p) for mu, c in enumerate(self.codewords) for i, p in enumerate(c.points)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QSCode):
            return NotImplemented
        if self.modes != other.modes or self.radius_sq != other.radius_sq:
            return False
        if len(self.codewords) != len(other.codewords):
            return False
        for a, b in zip(self.codewords, other.codewords):
            if a.label != b.label or a.points != b.points:
                return False
        return True

    def __hash__(self) -> int:
        return hash((self.modes, self.radius_sq,
                     tuple((c.label, c.points) for c in self.codewords)))


@dataclass(frozen=True)
class PassiveUnitary:
    """A linear-optical (passive) operation acting on amplitudes as z -> Uz.

    When the unitary is a per-mode phase rotation diag(exp(i*theta_k)), the
    phases are kept in ``per_mode_phases`` for readable reporting.
    """

    matrix: np.ndarray
    per_mode_phases: Optional[tuple[float, ...]] = field(default=None)

    def __init__(self, matrix: Iterable[Iterable[complex]],
                 per_mode_phases: Optional[Sequence[float]] = None,
                 tol_unitary: float = TOL_UNITARY):
        mat = np.asarray(matrix, dtype=np.complex128)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError("a passive unitary must be a square matrix")
        dev = np.max(np.abs(mat.conj().T @ mat - np.eye(mat.shape[0])))
        if dev > tol_unitary:
            raise ValueError(f"matrix is not unitary (deviation {dev:.3e} > {tol_unitary:.1e})")
        mat = mat.copy()
        mat.flags.writeable = False
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "per_mode_phases",
                           None if per_mode_phases is None else tuple(float(t) for t in per_mode_phases))

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def apply(self, p: Point) -> Point:
        if p.n != self.n:
            raise DimensionMismatchError(f"unitary has n={self.n}, point has n={p.n}")
        return Point(self.matrix @ p.amplitudes)

    @staticmethod
    def phase_rotation(phases: Sequence[float]) -> "PassiveUnitary":
        """diag(exp(i*theta_k)): rotates each mode by its own angle."""
        phases = [float(t) for t in phases]
        return PassiveUnitary(np.diag(np.exp(1j * np.array(phases))), per_mode_phases=phases)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PassiveUnitary):
            return NotImplemented
        return bool(np.array_equal(self.matrix, other.matrix))

    def __hash__(self) -> int:
        return hash(self.matrix.tobytes())


@dataclass(frozen=True)
class Violation:
    """A single failed code invariant, with the offending indices and residual."""

    kind: str  # "sphere" | "duplicate" | "disjoint" | "modes"
    constellation: str
    point_index: int
    other_constellation: Optional[str]
    other_point_index: Optional[int]
    residual: float

    def describe(self) -> str:
        if self.kind == "sphere":
            return (f"point {self.point_index} of '{self.constellation}' is off the sphere "
                    f"(|norm_sq - E| = {self.residual:.3e})")
        if self.kind == "duplicate":
            return (f"points {self.other_point_index} and {self.point_index} of "
                    f"'{self.constellation}' coincide (distance {self.residual:.3e})")
        if self.kind == "disjoint":
            return (f"point {self.point_index} of '{self.constellation}' collides with point "
                    f"{self.other_point_index} of '{self.other_constellation}' "
                    f"(distance {self.residual:.3e})")
        return f"mode mismatch in '{self.constellation}'"


def chordal_distance(p: Point, q: Point) -> float:
    """Euclidean distance ||p - q|| between two amplitude vectors."""
    if p.n != q.n:
        raise DimensionMismatchError(f"points have n={p.n} and n={q.n}")
    return float(np.linalg.norm(p.amplitudes - q.amplitudes))


def validate_code(code: QSCode, tol_sphere: float = TOL_SPHERE,
                  tol_point: float = TOL_POINT) -> list[Violation]:
    """Check the code invariants and report each failure.

    Returns the empty list iff every point sits on the radius-sqrt(E) sphere
    within ``tol_sphere``, no constellation contains duplicate points, and
    distinct constellations share no point (both within ``tol_point``).
    """
    violations: list[Violation] = []
    for c in code.codewords:
        for i, p in enumerate(c.points):
            res = abs(p.norm_sq - code.radius_sq)
            if res > tol_sphere:
                violations.append(Violation("sphere", c.label, i, None, None, res))
        for i in range(len(c.points)):
            for j in range(i):
                d = chordal_distance(c.points[i], c.points[j])
                if d <= tol_point:
                    violations.append(Violation("duplicate", c.label, i, None, j, d))
    for mu in range(code.K):
        for nu in range(mu + 1, code.K):
            a, b = code.codewords[mu], code.codewords[nu]
            for i, p in enumerate(a.points):
                for j, q in enumerate(b.points):
                    d = chordal_distance(p, q)
                    if d <= tol_point:
                        violations.append(Violation("disjoint", a.label, i, b.label, j, d))
    return violations


def min_separation(code: QSCode) -> tuple[float, tuple[int, int, int, int]]:
    """Smallest distance between points of two distinct constellations.

    Returns the distance together with the witness (mu, nu, i, j); ties break
    to the lexicographically smallest witness so the output is deterministic.
    """
    if code.K < 2:
        raise ValueError("min_separation needs at least two codewords")
    arrays = [c.as_array() for c in code.codewords]
    best = math.inf
    for mu in range(code.K):
        for nu in range(mu + 1, code.K):
            diff = arrays[mu][:, None, :] - arrays[nu][None, :, :]
            d = np.sqrt(np.sum(np.abs(diff) ** 2, axis=2))
            m = float(d.min())
            if m < best:
                best = m
    witness = None
    for mu in range(code.K):
        for nu in range(mu + 1, code.K):
            if witness is not None:
                break
            diff = arrays[mu][:, None, :] - arrays[nu][None, :, :]
            d = np.sqrt(np.sum(np.abs(diff) ** 2, axis=2))
            hits = np.argwhere(d == best)
            if hits.size:
                i, j = map(int, hits[0])
                witness = (mu, nu, i, j)
    assert witness is not None
    return best, witness


def orbit(seed: Point, generators: Sequence[PassiveUnitary], max_size: int,
          label: str = "orbit", tol_point: float = TOL_POINT,
          tol_sphere: float = TOL_SPHERE) -> Constellation:
    """Close a seed point under a set of passive unitaries.

    Breadth-first closure with tolerance-based deduplication.  Raises
    :class:`OrbitOverflowError` as soon as the orbit grows past ``max_size``.
    """
    if max_size < 1:
        raise ValueError("max_size must be at least 1")
    for g in generators:
        if g.n != seed.n:
            raise DimensionMismatchError("generator dimension does not match the seed")
    points: list[Point] = [seed]
    frontier = [seed]
    while frontier:
        new_frontier: list[Point] = []
        for p in frontier:
            for g in generators:
                q = g.apply(p)
                if abs(q.norm_sq - seed.norm_sq) > tol_sphere:
                    raise QscError("generator failed to preserve the sphere radius")
                if all(chordal_distance(q, r) > tol_point for r in points):
                    if len(points) + 1 > max_size:
                        raise OrbitOverflowError(
                            f"orbit closure exceeded max_size={max_size}")
                    points.append(q)
                    new_frontier.append(q)
        frontier = new_frontier
    return Constellation(label, points)


# ---------------------------------------------------------------------------
# JSON interchange
#
# { "modes": n, "radius_sq": E,
#   "codewords": [ { "label": str, "points": [ [[re,im], ...], ... ] }, ... ] }
# ---------------------------------------------------------------------------

def _fmt(x: float) -> str:
    # 17 significant decimal digits always round-trip a double exactly.  The
    # decimal point is forced so JSON parses the value as a float (a bare
    # "-0" would come back as integer zero and lose the sign bit).
    out = format(float(x), ".17g")
    if not any(ch in out for ch in ".eE") and out.lstrip("-").isdigit():
        out += ".0"
    return out


def code_to_json(code: QSCode) -> str:
    """Serialize to the interchange document (decimal, exact round-trip)."""
    lines = ["{"]
    lines.append(f'  "modes": {code.modes},')
    lines.append(f'  "radius_sq": {_fmt(code.radius_sq)},')
    lines.append('  "codewords": [')
    for ci, c in enumerate(code.codewords):
        lines.append("    {")
        lines.append(f'      "label": {json.dumps(c.label)},')
        lines.append('      "points": [')
        for pi, p in enumerate(c.points):
            entries = ", ".join(f"[{_fmt(z.real)}, {_fmt(z.imag)}]" for z in p.amplitudes)
            comma = "," if pi < len(c.points) - 1 else ""
            lines.append(f"        [{entries}]{comma}")
        lines.append("      ]")
        lines.append("    }" + ("," if ci < len(code.codewords) - 1 else ""))
    lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def code_from_json(text: str, tol_sphere: float = TOL_SPHERE,
                   tol_point: float = TOL_POINT) -> QSCode:
    """Parse the interchange document and validate the loaded code.

    Raises :class:`CodeFormatError` with position information on malformed
    documents and with the violation list when invariants fail on load.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CodeFormatError(f"parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    try:
        modes = int(doc["modes"])
        radius_sq = float(doc["radius_sq"])
        raw_codewords = doc["codewords"]
    except (KeyError, TypeError) as exc:
        raise CodeFormatError(f"document is missing required field: {exc}") from exc
    if not isinstance(raw_codewords, list) or not raw_codewords:
        raise CodeFormatError("'codewords' must be a nonempty list")
    constellations = []
    for entry in raw_codewords:
        try:
            label = entry["label"]
            pts = [
                Point([complex(re, im) for re, im in point])
                for point in entry["points"]
            ]
        except (KeyError, TypeError, ValueError) as exc:
            raise CodeFormatError(f"malformed codeword entry: {exc}") from exc
        constellations.append(Constellation(label, pts))
    code = QSCode(modes, radius_sq, constellations)
    violations = validate_code(code, tol_sphere=tol_sphere, tol_point=tol_point)
    if violations:
        summary = "; ".join(v.describe() for v in violations[:5])
        raise CodeFormatError(f"loaded code violates invariants: {summary}")
    return code

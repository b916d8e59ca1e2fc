"""Graded pieces of coordinate rings of finite point sets, realized as functions.

A degree-j form restricted to a point set is a vector in GF(p)^N (its
values at the fixed normalized representatives).  The image of all
degree-j forms is the graded piece N_j of the coordinate ring, and
multiplying by the variable X_s is the diagonal operator with entries
X_s(P_k).  No Groebner basis is needed: the kernel of evaluation is the
vanishing ideal in each degree because the ideal of reduced points is
saturated.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass

import numpy as np

from . import ffla
from .curves import EmbeddedPointSet, SampledCurve
from .errors import DegreeGuardViolated
from .ffla import MatrixGF
from .polyring import evaluate_monomials, monomial_exponents


@dataclass(frozen=True)
class QuotientBasis:
    """Reduced echelon basis (as rows) of a graded piece inside GF(p)^N."""

    degree: int
    vectors: np.ndarray
    pivots: tuple[int, ...]
    p: int

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]

    def coordinates(self, vecs: np.ndarray, *, check: bool = True) -> np.ndarray:
        return ffla.coordinates(self.vectors, self.pivots, vecs, self.p, check=check)

    def contains(self, vecs: np.ndarray) -> bool:
        return ffla.in_span(self.vectors, self.pivots, vecs, self.p)


def _basis(degree: int, vectors: np.ndarray, p: int) -> QuotientBasis:
    if vectors.shape[0] == 0:
        out = np.zeros((0, vectors.shape[1]), dtype=np.int64)
        out.setflags(write=False)
        return QuotientBasis(degree, out, (), p)
    rows, piv = ffla.row_basis(vectors, p)
    rows = np.ascontiguousarray(rows)
    rows.setflags(write=False)
    return QuotientBasis(degree, rows, tuple(piv), p)


@dataclass(frozen=True)
class MultiplicationOperator:
    """Multiplication by X_s, diagonal on point values."""

    s: int
    values: np.ndarray
    p: int

    def apply(self, vecs: np.ndarray) -> np.ndarray:
        """Apply to value vectors stored as rows."""
        return np.asarray(vecs, dtype=np.int64) * self.values % self.p

    def matrix(self) -> MatrixGF:
        return MatrixGF._wrap(np.diag(self.values), ffla.as_modulus(self.p))


class GradedFunctionModule:
    """A graded module whose degree-j piece is a subspace of GF(p)^N.

    ``values`` holds the coordinates of the N points (one row each); the
    variables act by the diagonal operators they define.  Subclasses
    provide ``_build(j)``.
    """

    def __init__(self, n: int, values: np.ndarray, p: int, *, max_degree: int | None = None, name: str = ""):
        self.n = n
        self.values = np.asarray(values, dtype=np.int64)
        self.p = int(p)
        self.max_degree = max_degree
        self.name = name
        self._cache: dict[int, QuotientBasis] = {}

    @property
    def size(self) -> int:
        return self.values.shape[0]

    def operator(self, s: int) -> MultiplicationOperator:
        return MultiplicationOperator(s, self.values[:, s], self.p)

    def multiply(self, s: int, vecs: np.ndarray) -> np.ndarray:
        return np.asarray(vecs, dtype=np.int64) * self.values[:, s] % self.p

    def basis(self, j: int) -> QuotientBasis:
        if j in self._cache:
            return self._cache[j]
        if self.max_degree is not None and j > self.max_degree:
            raise DegreeGuardViolated(f"{self.name or 'module'}: degree {j} exceeds the faithful range (<= {self.max_degree})")
        b = self._build(j)
        self._cache[j] = b
        return b

    def dim(self, j: int) -> int:
        return self.basis(j).dim

    def _build(self, j: int) -> QuotientBasis:
        raise NotImplementedError


class CoordinateRing(GradedFunctionModule):
    """The coordinate ring of a point set: N_j = image of degree-j forms."""

    def _build(self, j: int) -> QuotientBasis:
        N = self.size
        if j < 0 or N == 0:
            return _basis(j, np.zeros((0, N), dtype=np.int64), self.p)
        if j == 0:
            return _basis(0, np.ones((1, N), dtype=np.int64), self.p)
        prev = self.basis(j - 1).vectors
        if prev.shape[0] == N:
            return _basis(j, np.eye(N, dtype=np.int64), self.p)
        stacked = np.vstack([self.multiply(s, prev) for s in range(self.n + 1)])
        return _basis(j, stacked, self.p)


class VanishingSubmodule(GradedFunctionModule):
    """Functions of the ambient ring that vanish on a subset of its points.

    With the ambient ring the coordinate ring of a curve and the subset a
    point set Γ on it, this is I_Γ / I_X.
    """

    def __init__(self, ambient: GradedFunctionModule, subset_indices):
        super().__init__(ambient.n, ambient.values, ambient.p, max_degree=ambient.max_degree,
                         name=f"{ambient.name}/vanishing")
        self.ambient = ambient
        self.subset = np.asarray(subset_indices, dtype=np.int64)

    def _build(self, j: int) -> QuotientBasis:
        B = self.ambient.basis(j).vectors
        if B.shape[0] == 0:
            return _basis(j, B, self.p)
        K = ffla.kernel_array(B[:, self.subset].T, self.p)
        return _basis(j, ffla.matmul_mod(K, B, self.p), self.p)


_rings: "weakref.WeakKeyDictionary[EmbeddedPointSet, CoordinateRing]" = weakref.WeakKeyDictionary()


def coordinate_ring(points: EmbeddedPointSet) -> CoordinateRing:
    """The (cached) coordinate ring of a point set."""
    ring = _rings.get(points)
    if ring is None:
        ring = CoordinateRing(points.n, points.points, points.p, name=points.provenance.get("curve", "points"))
        _rings[points] = ring
    return ring


def curve_ring(curve: SampledCurve) -> CoordinateRing:
    """Coordinate ring of a curve, guarded to degrees its points determine."""
    return CoordinateRing(curve.n, curve.points.points, curve.p, max_degree=curve.max_faithful_degree(), name=curve.name)


def evaluation_matrix(points: EmbeddedPointSet, t: int) -> MatrixGF:
    """Values of all degree-t monomials (columns) at the points (rows)."""
    if t < 0:
        raise ValueError("degree must be nonnegative")
    E = evaluate_monomials(monomial_exponents(points.n, t), points.points, points.p)
    return MatrixGF._wrap(E, points.modulus)


def hilbert_function(points: EmbeddedPointSet, t: int) -> int:
    if t < 0:
        return 0
    return coordinate_ring(points).dim(t)


def quotient_basis(points: EmbeddedPointSet, j: int) -> QuotientBasis:
    return coordinate_ring(points).basis(j)


def vanishing_forms(points: EmbeddedPointSet, t: int) -> np.ndarray:
    """Coefficient vectors (rows) spanning the degree-t part of the vanishing ideal."""
    return ffla.kernel_array(evaluation_matrix(points, t).entries, points.p)

"""Dense exact linear algebra over prime fields GF(p), 2 < p < 2**31.

Matrices are immutable wrappers around ``int64`` numpy arrays holding
canonical residues.  Products of two residues fit in 62 bits, so row
operations reduce once per update; matrix products reduce in blocks
(delayed reduction).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

_MAX_P = 2**31
_INT64_MAX = 2**63 - 1


def is_prime(p: int) -> bool:
    """Deterministic Miller-Rabin, exact for p < 3.3e24."""
    if p < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if p % q == 0:
            return p == q
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeModulus:
    p: int

    def __post_init__(self):
        p = int(self.p)
        if not 2 < p < _MAX_P:
            raise ValueError(f"modulus must satisfy 2 < p < 2^31, got {p}")
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        object.__setattr__(self, "p", p)

    def __int__(self):
        return self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF(p)")
        return pow(a, self.p - 2, self.p)


def as_modulus(p) -> PrimeModulus:
    return p if isinstance(p, PrimeModulus) else PrimeModulus(int(p))


@dataclass(frozen=True)
class FieldElement:
    value: int
    modulus: PrimeModulus

    def __post_init__(self):
        object.__setattr__(self, "value", int(self.value) % self.modulus.p)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.modulus != self.modulus:
                raise ValueError("mixed-modulus arithmetic")
            return other.value
        return int(other)

    def __add__(self, other):
        return FieldElement(self.value + self._coerce(other), self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.value - self._coerce(other), self.modulus)

    def __rsub__(self, other):
        return FieldElement(self._coerce(other) - self.value, self.modulus)

    def __mul__(self, other):
        return FieldElement(self.value * self._coerce(other), self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value, self.modulus)

    def __truediv__(self, other):
        return self * self.modulus.inv(self._coerce(other))

    def __pow__(self, e: int):
        if e < 0:
            return FieldElement(pow(self.modulus.inv(self.value), -e, self.modulus.p), self.modulus)
        return FieldElement(pow(self.value, e, self.modulus.p), self.modulus)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.modulus == other.modulus and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.modulus.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.modulus.p))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.modulus.p})"


class MatrixGF:
    """Immutable dense matrix over GF(p)."""

    __slots__ = ("_a", "modulus")

    def __init__(self, entries, modulus, *, shape: tuple[int, int] | None = None):
        modulus = as_modulus(modulus)
        a = np.array(entries, dtype=object if _needs_object(entries) else np.int64)
        if shape is not None:
            a = a.reshape(shape)
        if a.ndim != 2:
            if a.size == 0 and shape is None:
                a = a.reshape(0, 0)
            else:
                raise ValueError("MatrixGF needs a 2-d array")
        if a.dtype == object:
            a = np.array([[int(x) % modulus.p for x in row] for row in a], dtype=np.int64).reshape(a.shape)
        else:
            a = np.mod(a, modulus.p)
        a.setflags(write=False)
        self._a = a
        self.modulus = modulus

    @classmethod
    def _wrap(cls, a: np.ndarray, modulus: PrimeModulus) -> "MatrixGF":
        m = cls.__new__(cls)
        a = np.ascontiguousarray(a, dtype=np.int64)
        a.setflags(write=False)
        m._a = a
        m.modulus = modulus
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int, modulus) -> "MatrixGF":
        return cls._wrap(np.zeros((rows, cols), dtype=np.int64), as_modulus(modulus))

    @classmethod
    def identity(cls, size: int, modulus) -> "MatrixGF":
        return cls._wrap(np.eye(size, dtype=np.int64), as_modulus(modulus))

    @property
    def p(self) -> int:
        return self.modulus.p

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def entries(self) -> np.ndarray:
        """Read-only view of the residues."""
        return self._a

    def to_list(self) -> list[list[int]]:
        return self._a.tolist()

    @property
    def T(self) -> "MatrixGF":
        return MatrixGF._wrap(self._a.T, self.modulus)

    def __getitem__(self, idx):
        out = self._a[idx]
        if isinstance(out, np.ndarray) and out.ndim == 2:
            return MatrixGF._wrap(out, self.modulus)
        return out

    def _check(self, other: "MatrixGF"):
        if other.modulus != self.modulus:
            raise ValueError("mixed-modulus arithmetic")

    def __add__(self, other: "MatrixGF") -> "MatrixGF":
        self._check(other)
        return MatrixGF._wrap((self._a + other._a) % self.p, self.modulus)

    def __sub__(self, other: "MatrixGF") -> "MatrixGF":
        self._check(other)
        return MatrixGF._wrap((self._a - other._a) % self.p, self.modulus)

    def __neg__(self) -> "MatrixGF":
        return MatrixGF._wrap((-self._a) % self.p, self.modulus)

    def scale(self, c: int) -> "MatrixGF":
        return MatrixGF._wrap(self._a * (int(c) % self.p) % self.p, self.modulus)

    def __matmul__(self, other: "MatrixGF") -> "MatrixGF":
        self._check(other)
        return MatrixGF._wrap(matmul_mod(self._a, other._a, self.p), self.modulus)

    def __eq__(self, other):
        if not isinstance(other, MatrixGF):
            return NotImplemented
        return self.modulus == other.modulus and self.shape == other.shape and bool(np.array_equal(self._a, other._a))

    def __hash__(self):
        return hash((self.p, self.shape, self._a.tobytes()))

    def is_zero(self) -> bool:
        return not self._a.any()

    def __repr__(self):
        return f"MatrixGF({self.rows}x{self.cols} over GF({self.p}))"


def _needs_object(entries) -> bool:
    if isinstance(entries, np.ndarray):
        return entries.dtype == object
    # large python ints (or negatives far out of range) are reduced exactly
    try:
        flat = [x for row in entries for x in row]
    except TypeError:
        return False
    return any(isinstance(x, int) and not -(2**62) < x < 2**62 for x in flat)


def vstack(mats: Sequence[MatrixGF]) -> MatrixGF:
    if not mats:
        raise ValueError("nothing to stack")
    for m in mats[1:]:
        mats[0]._check(m)
    return MatrixGF._wrap(np.vstack([m.entries for m in mats]), mats[0].modulus)


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """(a @ b) mod p for int64 residue arrays without overflow."""
    k = a.shape[1]
    if k == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    block = max(1, _INT64_MAX // ((p - 1) ** 2))
    if block >= k:
        return (a @ b) % p
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for s in range(0, k, block):
        out = (out + (a[:, s : s + block] @ b[s : s + block]) % p) % p
    return out


def _eliminate(a: np.ndarray, p: int, *, full: bool, stop_rank: int | None = None) -> list[int]:
    """In-place row reduction of ``a``; returns pivot columns.

    Pivot choice is deterministic (first nonzero row at or below the
    current pivot row).  With ``full`` the result is reduced echelon form.
    """
    m, n = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        if inv != 1:
            a[r, c:] = a[r, c:] * inv % p
        prow = a[r, c:]
        below = r + 1 + np.flatnonzero(a[r + 1 :, c])
        if below.size:
            a[below, c:] = (a[below, c:] - a[below, c, None] * prow) % p
        if full and r:
            above = np.flatnonzero(a[:r, c])
            if above.size:
                a[above, c:] = (a[above, c:] - a[above, c, None] * prow) % p
        pivots.append(c)
        r += 1
        if stop_rank is not None and r >= stop_rank:
            break
    return pivots


def rank_array(a: np.ndarray, p: int) -> int:
    """Rank of an int64 residue array (not modified)."""
    if a.size == 0:
        return 0
    # iterate over the shorter side
    work = np.array(a.T if a.shape[1] > a.shape[0] else a, dtype=np.int64)
    return len(_eliminate(work, p, full=False))


def rref_array(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced echelon form of an int64 residue array and its pivot columns."""
    work = np.array(a, dtype=np.int64)
    if work.size == 0:
        return work, []
    pivots = _eliminate(work, p, full=True)
    return work, pivots


def row_basis(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Nonzero rows of the reduced echelon form of ``a``."""
    r, piv = rref_array(a, p)
    return r[: len(piv)], piv


def rank(M: MatrixGF) -> int:
    return rank_array(M.entries, M.p)


def reduced_echelon(M: MatrixGF) -> tuple[MatrixGF, list[int]]:
    r, piv = rref_array(M.entries, M.p)
    if M.rows == 0 or M.cols == 0:
        return MatrixGF._wrap(np.zeros(M.shape, dtype=np.int64), M.modulus), []
    return MatrixGF._wrap(r, M.modulus), piv


def kernel_array(a: np.ndarray, p: int) -> np.ndarray:
    """Basis of the right kernel as the rows of the returned array."""
    m, n = a.shape
    if n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if m == 0:
        return np.eye(n, dtype=np.int64)
    r, piv = rref_array(a, p)
    free = [c for c in range(n) if c not in set(piv)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    piv_arr = np.array(piv, dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        if piv:
            basis[k, piv_arr] = (-r[: len(piv), f]) % p
    return basis


def kernel_basis(M: MatrixGF) -> list[MatrixGF]:
    """Right kernel of ``M`` as a list of column vectors (cols x 1)."""
    k = kernel_array(M.entries, M.p)
    return [MatrixGF._wrap(row.reshape(-1, 1), M.modulus) for row in k]


class ImageOutsideTarget(ArithmeticError):
    """A vector expected to lie in a subspace does not."""


def coordinates(basis: np.ndarray, pivots: Sequence[int], vectors: np.ndarray, p: int, *, check: bool = True) -> np.ndarray:
    """Coordinates of the rows of ``vectors`` against a reduced echelon basis.

    ``basis`` rows must be in reduced echelon form with the given pivots,
    so the coordinate of a vector on basis row k is its entry at pivot k.
    """
    vectors = np.asarray(vectors, dtype=np.int64)
    piv = np.asarray(pivots, dtype=np.int64)
    if len(piv) == 0:
        coeffs = np.zeros((vectors.shape[0], 0), dtype=np.int64)
        if check and vectors.any():
            raise ImageOutsideTarget("nonzero vector against an empty basis")
        return coeffs
    coeffs = vectors[:, piv] % p
    if check:
        resid = (vectors - matmul_mod(coeffs, basis, p)) % p
        if resid.any():
            raise ImageOutsideTarget("vector outside the span of the basis")
    return coeffs


def in_span(basis: np.ndarray, pivots: Sequence[int], vectors: np.ndarray, p: int) -> bool:
    try:
        coordinates(basis, pivots, vectors, p)
    except ImageOutsideTarget:
        return False
    return True


def random_matrix(rows: int, cols: int, modulus, rng: np.random.Generator) -> MatrixGF:
    modulus = as_modulus(modulus)
    return MatrixGF._wrap(rng.integers(0, modulus.p, size=(rows, cols), dtype=np.int64), modulus)


def from_rows(rows: Iterable[Iterable[int]], modulus) -> MatrixGF:
    rows = [list(r) for r in rows]
    if not rows:
        return MatrixGF.zeros(0, 0, modulus)
    return MatrixGF(rows, modulus)

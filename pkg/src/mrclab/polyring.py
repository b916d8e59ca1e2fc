"""Homogeneous polynomials in X_0..X_n over GF(p).

Monomials of a fixed degree are ordered graded-lexicographically:
X_0^t comes first, X_n^t last.  Every evaluation matrix in the package is
indexed by this order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Mapping

import numpy as np

from .ffla import PrimeModulus, as_modulus, matmul_mod


@dataclass(frozen=True, order=True)
class Monomial:
    exponents: tuple[int, ...]

    def __post_init__(self):
        exps = tuple(int(e) for e in self.exponents)
        if any(e < 0 for e in exps):
            raise ValueError("negative exponent")
        object.__setattr__(self, "exponents", exps)

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    @property
    def nvars(self) -> int:
        return len(self.exponents)

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __str__(self):
        parts = []
        for k, e in enumerate(self.exponents):
            if e == 1:
                parts.append(f"X{k}")
            elif e > 1:
                parts.append(f"X{k}^{e}")
        return "*".join(parts) or "1"


def _exponent_tuples(nvars: int, t: int):
    # lex-decreasing: largest power of the first variable first
    if nvars == 1:
        yield (t,)
        return
    for e in range(t, -1, -1):
        for rest in _exponent_tuples(nvars - 1, t - e):
            yield (e,) + rest


@lru_cache(maxsize=None)
def monomial_exponents(n: int, t: int) -> np.ndarray:
    """Exponent matrix (C(n+t, n) x (n+1)) of degree-t monomials in graded-lex order."""
    if t < 0:
        raise ValueError("degree must be nonnegative")
    arr = np.array(list(_exponent_tuples(n + 1, t)), dtype=np.int64).reshape(-1, n + 1)
    arr.setflags(write=False)
    return arr


def monomial_basis(n: int, t: int) -> list[Monomial]:
    return [Monomial(tuple(row)) for row in monomial_exponents(n, t).tolist()]


@lru_cache(maxsize=None)
def _monomial_index(n: int, t: int) -> dict[tuple[int, ...], int]:
    return {tuple(row): k for k, row in enumerate(monomial_exponents(n, t).tolist())}


def monomial_index(n: int, t: int, exps) -> int:
    return _monomial_index(n, t)[tuple(exps)]


def num_monomials(n: int, t: int) -> int:
    return comb(n + t, n) if t >= 0 else 0


def power_table(points: np.ndarray, t: int, p: int) -> np.ndarray:
    """pw[k, e, a] = points[a, k]**e mod p for 0 <= e <= t."""
    pts = np.asarray(points, dtype=np.int64) % p
    nvar = pts.shape[1]
    pw = np.ones((nvar, t + 1, pts.shape[0]), dtype=np.int64)
    for e in range(1, t + 1):
        pw[:, e, :] = pw[:, e - 1, :] * pts.T % p
    return pw


def evaluate_monomials(exps: np.ndarray, points: np.ndarray, p: int) -> np.ndarray:
    """Matrix (points x monomials) of monomial values."""
    exps = np.asarray(exps, dtype=np.int64)
    pts = np.asarray(points, dtype=np.int64)
    t = int(exps.max()) if exps.size else 0
    pw = power_table(pts, t, p)
    out = np.ones((pts.shape[0], exps.shape[0]), dtype=np.int64)
    for k in range(exps.shape[1]):
        out = out * pw[k][exps[:, k]].T % p
    return out


class HomogeneousForm:
    """A homogeneous polynomial with coefficients in GF(p).

    ``terms`` maps exponent tuples to nonzero residues.  Zero coefficients
    are dropped on construction; every term must have degree ``degree``.
    """

    __slots__ = ("n", "degree", "terms", "modulus")

    def __init__(self, n: int, degree: int, terms: Mapping, modulus):
        self.modulus: PrimeModulus = as_modulus(modulus)
        self.n = int(n)
        self.degree = int(degree)
        p = self.modulus.p
        clean: dict[tuple[int, ...], int] = {}
        for mono, c in terms.items():
            exps = mono.exponents if isinstance(mono, Monomial) else tuple(int(e) for e in mono)
            if len(exps) != self.n + 1:
                raise ValueError(f"monomial {exps} has wrong number of variables")
            if sum(exps) != self.degree:
                raise ValueError(f"monomial {exps} is not of degree {self.degree}")
            c = (clean.get(exps, 0) + int(c)) % p
            if c:
                clean[exps] = c
            else:
                clean.pop(exps, None)
        self.terms = dict(sorted(clean.items(), reverse=True))

    @classmethod
    def variable(cls, n: int, k: int, modulus) -> "HomogeneousForm":
        e = [0] * (n + 1)
        e[k] = 1
        return cls(n, 1, {tuple(e): 1}, modulus)

    @classmethod
    def from_vector(cls, n: int, degree: int, coeffs, modulus) -> "HomogeneousForm":
        """Form with coefficient vector indexed by ``monomial_basis(n, degree)``."""
        exps = monomial_exponents(n, degree)
        return cls(n, degree, {tuple(e): int(c) for e, c in zip(exps.tolist(), coeffs) if int(c)}, modulus)

    def to_vector(self) -> np.ndarray:
        v = np.zeros(num_monomials(self.n, self.degree), dtype=np.int64)
        for e, c in self.terms.items():
            v[monomial_index(self.n, self.degree, e)] = c
        return v

    @property
    def p(self) -> int:
        return self.modulus.p

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "HomogeneousForm"):
        if other.modulus != self.modulus:
            raise ValueError("mixed-modulus arithmetic")
        if other.n != self.n:
            raise ValueError("forms live in different rings")

    def __add__(self, other: "HomogeneousForm") -> "HomogeneousForm":
        self._check(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if other.degree != self.degree:
            raise ValueError("sum of forms of different degrees")
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return HomogeneousForm(self.n, self.degree, terms, self.modulus)

    def __neg__(self) -> "HomogeneousForm":
        return HomogeneousForm(self.n, self.degree, {e: -c for e, c in self.terms.items()}, self.modulus)

    def __sub__(self, other: "HomogeneousForm") -> "HomogeneousForm":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, HomogeneousForm):
            self._check(other)
            terms: dict[tuple[int, ...], int] = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    terms[e] = terms.get(e, 0) + c1 * c2
            return HomogeneousForm(self.n, self.degree + other.degree, terms, self.modulus)
        c = int(other)
        return HomogeneousForm(self.n, self.degree, {e: c * v for e, v in self.terms.items()}, self.modulus)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, HomogeneousForm):
            return NotImplemented
        if self.modulus != other.modulus or self.n != other.n:
            return False
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, self.degree, self.modulus.p, tuple(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{Monomial(e)}" for e, c in self.terms.items())


def evaluate(f: HomogeneousForm, point) -> int:
    pt = [int(x) % f.p for x in point]
    if len(pt) != f.n + 1:
        raise ValueError("coordinate count does not match the ring")
    p = f.p
    total = 0
    for exps, c in f.terms.items():
        term = c
        for x, e in zip(pt, exps):
            if e:
                term = term * pow(x, e, p) % p
        total += term
    return total % p


def evaluate_many(f: HomogeneousForm, points: np.ndarray) -> np.ndarray:
    """Values of ``f`` at each row of ``points`` (vectorized)."""
    pts = np.asarray(points, dtype=np.int64)
    if not f.terms:
        return np.zeros(pts.shape[0], dtype=np.int64)
    exps = np.array(list(f.terms.keys()), dtype=np.int64)
    coeffs = np.array(list(f.terms.values()), dtype=np.int64)
    vals = evaluate_monomials(exps, pts, f.p)
    return matmul_mod(vals, coeffs[:, None], f.p)[:, 0]


def partials(f: HomogeneousForm) -> list[HomogeneousForm]:
    if f.degree < 1:
        raise ValueError("partials need degree >= 1")
    out = []
    for k in range(f.n + 1):
        terms = {}
        for exps, c in f.terms.items():
            if exps[k]:
                e = list(exps)
                e[k] -= 1
                terms[tuple(e)] = c * exps[k]
        out.append(HomogeneousForm(f.n, f.degree - 1, terms, f.modulus))
    return out


def random_form(n: int, degree: int, modulus, rng: np.random.Generator) -> HomogeneousForm:
    modulus = as_modulus(modulus)
    coeffs = rng.integers(0, modulus.p, size=num_monomials(n, degree))
    return HomogeneousForm.from_vector(n, degree, coeffs, modulus)

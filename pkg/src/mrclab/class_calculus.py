"""Exact rational bookkeeping for divisor classes on moduli of pointed curves.

Classes are vectors over the ordered basis (λ, Ψ_x, Ψ_y, Ψ_z), where the
Ψ's are sums of cotangent classes over the three blocks of marked points.
Coefficients are ``fractions.Fraction``; there are no tolerances anywhere.

The module covers
* enumerative counts of pencils with prescribed ramification,
* test-curve coefficients of the divisors of pencils with a fiber
  containing a weighted point, and their sums,
* the Grothendieck-Riemann-Roch assembly of the degeneracy-locus class,
* Chern classes of exterior powers and twists via formal roots.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb, factorial

from .errors import DomainViolation, IdentityViolation, InconsistentSystem, NIndependenceViolation


def binom(a: int, b: int) -> Fraction:
    """C(a, b) with C(a, b) = 0 for b < 0 or b > a."""
    if a < 0:
        raise DomainViolation(f"binom needs a >= 0, got {a}")
    if b < 0 or b > a:
        return Fraction(0)
    return Fraction(comb(a, b))


def _ratio(g: int, d: int) -> Fraction:
    return Fraction(factorial(g), factorial(d) * factorial(g - d))


def b_count(d: int, g: int) -> Fraction:
    """Pencils of degree d with a fiber containing (2d-g)q for some point q."""
    if not (2 * d >= g + 2 and d <= g):
        raise DomainViolation(f"b(d,g) needs (g+2)/2 <= d <= g, got d={d}, g={g}")
    e = 2 * d - g
    return (e - 1) * e * (e + 1) * _ratio(g, d)


def c_count(d: int, g: int, gamma: int) -> Fraction:
    """Pencils of degree d with a fiber containing βp + γq, β = 2d-g-γ, p fixed."""
    beta = 2 * d - g - gamma
    if beta < 1 or gamma < 1 or d > g:
        raise DomainViolation(f"c(d,g,γ) needs β=2d-g-γ >= 1, γ >= 1, d <= g; got d={d}, g={g}, γ={gamma}")
    return (gamma * gamma * (2 * d - g) - gamma) * _ratio(g, d)


def _check_gi(g: int, i: int):
    if g < 4 or not (1 <= i and 2 * i <= g - 1):
        raise DomainViolation(f"need g >= 4 and 1 <= i <= (g-1)/2, got g={g}, i={i}")


def c_coefficient(g: int, j: int) -> Fraction:
    return b_count(g - j, g) / (2 * g - 2)


def a_coefficient(g: int, j: int) -> Fraction:
    return -Fraction(g - 2 * j, g) * binom(g, j) + Fraction(10 * (g - 2 * j), g - 2) * binom(g - 2, j - 1)


def b1_coefficient(g: int, j: int, i: int) -> Fraction:
    if j == i:
        return Fraction(0)
    return Fraction(g - 2 * j - 1, g - 1) * binom(g - 1, j)


def b2_top(g: int, i: int) -> Fraction:
    e = g - 2 * i
    return Fraction(e**3 - e, 2 * g - 2) * binom(g, i)


def b2_printed(g: int, j: int) -> tuple[Fraction, Fraction]:
    """The closed form for b_{2j}, under both groupings of its denominator.

    Returns (value with denominator 2·j!·(g-1)!, value with (2j)!·(g-1)!).
    """
    num = (g - 2 * j - 1) * (g**3 - g**2 - 4 * g**2 * j + 4 * j**2 * g + 2 * j * g - 2 * j) * factorial(g - 2)
    return (Fraction(num, 2 * factorial(j) * factorial(g - 1)),
            Fraction(num, factorial(2 * j) * factorial(g - 1)))


def b2j_from_relations(g: int, j: int) -> Fraction:
    """b_{2j} from the two test-curve relations; both must give the same value.

    (2g-1) b_1 + b_2 - c = c(g-j, g, 1)
    (2g-1) b_2 + b_1 - c = c(g-j, g, g-2j-1)
    """
    if not (0 <= j and 2 * j <= g - 3) or g < 4:
        raise DomainViolation(f"b2j relations need 0 <= j <= (g-3)/2, g >= 4; got g={g}, j={j}")
    c = c_coefficient(g, j)
    r1 = c_count(g - j, g, 1)
    r2 = c_count(g - j, g, g - 2 * j - 1)
    b1 = Fraction(g - 2 * j - 1, g - 1) * binom(g - 1, j)
    from_first = r1 - (2 * g - 1) * b1 + c
    from_second = (r2 - b1 + c) / (2 * g - 1)
    if from_first != from_second:
        raise InconsistentSystem(f"g={g}, j={j}: {from_first} != {from_second}")
    # the 2x2 system alone determines b_1 as well
    k = 2 * g - 1
    b1_solved = (k * (r1 + c) - (r2 + c)) / (k * k - 1)
    if b1_solved != b1:
        raise InconsistentSystem(f"g={g}, j={j}: system gives b_1={b1_solved}, closed form {b1}")
    return from_first


@dataclass
class CoefficientTable:
    g: int
    i: int
    a: dict[int, Fraction]
    b1: dict[int, Fraction]
    b2: dict[int, Fraction]
    c: dict[int, Fraction]
    b2_printed: dict[int, tuple[Fraction, Fraction]]
    discrepancies: list[str] = field(default_factory=list)

    @property
    def A(self) -> Fraction:
        return sum(self.a.values(), Fraction(0))

    @property
    def B1(self) -> Fraction:
        return binom(self.g - 2, self.i)

    @property
    def B2(self) -> Fraction:
        return sum(self.b1.values(), Fraction(0))


@lru_cache(maxsize=None)
def coefficient_table(g: int, i: int) -> CoefficientTable:
    _check_gi(g, i)
    js = range(i + 1)
    a = {j: a_coefficient(g, j) for j in js}
    b1 = {j: b1_coefficient(g, j, i) for j in js}
    c = {j: c_coefficient(g, j) for j in js if 2 * (g - j) >= g + 2}
    b2 = {j: b2j_from_relations(g, j) for j in range(i)}
    b2[i] = b2_top(g, i)
    printed = {j: b2_printed(g, j) for j in range(i)}
    notes = []
    for j, (v1, v2) in printed.items():
        if b2[j] not in (v1, v2):
            notes.append(f"g={g} j={j}: relations give b_2j={b2[j]}, closed form gives {v1} or {v2}")
    return CoefficientTable(g, i, a, b1, b2, c, printed, notes)


def summed_coefficients(g: int, i: int) -> tuple[Fraction, Fraction, Fraction]:
    """(A, B_1, B_2) = (Σ a_j, C(g-2, i), Σ b_1j), with both sums checked against closed forms."""
    T = coefficient_table(g, i)
    A_closed = -binom(g - 1, i) + 10 * binom(g - 3, i - 1)
    if T.A != A_closed:
        raise IdentityViolation(f"g={g}, i={i}: Σa_j = {T.A} but closed form {A_closed}")
    if T.B2 != binom(g - 2, i - 1):
        raise IdentityViolation(f"g={g}, i={i}: Σb_1j = {T.B2} but C(g-2,i-1) = {binom(g - 2, i - 1)}")
    return T.A, T.B1, T.B2


# ----------------------------------------------------------- class vectors


@dataclass(frozen=True)
class ClassVector:
    """Coefficients on (λ, Ψ_x, Ψ_y, Ψ_z)."""

    lam: Fraction = Fraction(0)
    psi_x: Fraction = Fraction(0)
    psi_y: Fraction = Fraction(0)
    psi_z: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("lam", "psi_x", "psi_y", "psi_z"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    def coefficients(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.lam, self.psi_x, self.psi_y, self.psi_z)

    def __add__(self, other: "ClassVector") -> "ClassVector":
        return ClassVector(*(a + b for a, b in zip(self.coefficients(), other.coefficients())))

    def __sub__(self, other: "ClassVector") -> "ClassVector":
        return ClassVector(*(a - b for a, b in zip(self.coefficients(), other.coefficients())))

    def __neg__(self) -> "ClassVector":
        return ClassVector(*(-a for a in self.coefficients()))

    def __mul__(self, c) -> "ClassVector":
        c = Fraction(c)
        return ClassVector(*(c * a for a in self.coefficients()))

    __rmul__ = __mul__

    def __str__(self):
        names = ("λ", "Ψx", "Ψy", "Ψz")
        parts = [f"{c}{n}" for c, n in zip(self.coefficients(), names) if c]
        return " + ".join(parts) or "0"


def _psi(x=0, y=0, z=0) -> ClassVector:
    return ClassVector(0, x, y, z)


def grr_pieces(g: int, i: int, n: int) -> dict[str, ClassVector]:
    """The pushforwards entering the first Chern class of the direct image.

    Keys: 'square' for q_*(c_1²/2), 'omega' for q_*(-½ f*c_1(ω)·c_1),
    'todd' for q_*(C(g-1,i)/12 · f*c_1(ω)²), 'c2' for q_*c_2, and
    'restricted' for c_1 of the image restricted to Y.
    """
    al = binom(g - 2, i - 1)
    be = binom(g - 1, i)
    ga = binom(g - 3, i - 1)
    signed = _psi(1, -1, 1)
    total = _psi(1, 1, 1)
    square = ClassVector(((8 - 2 * g) * al * al - (n - 2 * i - 2) * al * be)) + al * be * signed - Fraction(1, 2) * be * be * total
    omega = ClassVector((g - 7) * al) - Fraction(1, 2) * be * signed
    todd = ClassVector(be)
    c2 = (
        ClassVector((8 - 2 * g) * al * (al - 1) + (14 - 2 * g) * ga)
        - ClassVector((n - 2 * i - 2) * al * (be - 1))
        + al * (be - 1) * signed
        - Fraction(1, 2) * be * (be - 1) * total
    )
    restricted = ClassVector(-(n - g - 1) * al, 0, 0, -binom(g - 2, i))
    return {"square": square, "omega": omega, "todd": todd, "c2": c2, "restricted": restricted}


def _grr_z(g: int, i: int, n: int) -> ClassVector:
    P = grr_pieces(g, i, n)
    c1F = P["square"] - P["c2"] + P["omega"] + P["todd"]
    al = binom(g - 2, i - 1)
    displayed = ClassVector(
        (2 * g - 14) * binom(g - 3, i - 1) - (n + g - 2 * i - 3) * al + binom(g - 1, i),
        -binom(g - 2, i), -al, -binom(g - 2, i),
    )
    if c1F != displayed:
        raise IdentityViolation(f"g={g}, i={i}, n={n}: assembled c_1 = {c1F}, expected {displayed}")
    return P["restricted"] - c1F


def grr_class_check(g: int, i: int, n: int, *, n_alt: int | None = None) -> ClassVector:
    """Class of the degeneracy locus assembled from the pushforward pieces."""
    _check_gi(g, i)
    if n < g + 2:
        raise DomainViolation(f"need n >= g+2, got n={n}, g={g}")
    Z = _grr_z(g, i, n)
    other = _grr_z(g, i, n_alt if n_alt is not None else n + 4)
    if other != Z:
        raise NIndependenceViolation(f"g={g}, i={i}: {Z} at n={n} but {other} at another n")
    expected = ClassVector(-(binom(g - 1, i) - 10 * binom(g - 3, i - 1)), binom(g - 2, i), binom(g - 2, i - 1), 0)
    if Z != expected:
        raise IdentityViolation(f"g={g}, i={i}: assembled {Z}, expected {expected}")
    return Z


# --------------------------------------------------- Chern classes via roots


class SymmetricClassPoly:
    """Integer polynomial in formal roots t_0..t_{k-1} (plus extra variables).

    Stored as {exponent tuple: coefficient}; only low degrees occur here.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict | None = None):
        self.nvars = nvars
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def constant(cls, nvars: int, c: int) -> "SymmetricClassPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, k: int) -> "SymmetricClassPoly":
        e = [0] * nvars
        e[k] = 1
        return cls(nvars, {tuple(e): 1})

    def __add__(self, other: "SymmetricClassPoly") -> "SymmetricClassPoly":
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return SymmetricClassPoly(self.nvars, terms)

    def __neg__(self):
        return SymmetricClassPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, SymmetricClassPoly):
            terms: dict = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    terms[e] = terms.get(e, 0) + c1 * c2
            return SymmetricClassPoly(self.nvars, terms)
        return SymmetricClassPoly(self.nvars, {e: c * other for e, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, SymmetricClassPoly) and self.nvars == other.nvars and self.terms == other.terms

    def evaluate(self, point, modulus: int) -> int:
        total = 0
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term = term * pow(x, k, modulus) % modulus
            total += term
        return total % modulus

    def permuted(self, perm) -> "SymmetricClassPoly":
        """Apply a permutation of variable indices."""
        out = {}
        for e, c in self.terms.items():
            new = [0] * self.nvars
            for k, v in enumerate(e):
                new[perm[k]] = v
            out[tuple(new)] = c
        return SymmetricClassPoly(self.nvars, out)

    def is_symmetric_in(self, count: int) -> bool:
        """Invariance under transpositions of the first ``count`` variables."""
        for a in range(count - 1):
            perm = list(range(self.nvars))
            perm[a], perm[a + 1] = perm[a + 1], perm[a]
            if self.permuted(perm) != self:
                return False
        return True


def elementary(linear_forms: list[SymmetricClassPoly], k: int) -> SymmetricClassPoly:
    """e_k of a list of polynomials (k = 1 or 2)."""
    nv = linear_forms[0].nvars
    e1 = SymmetricClassPoly(nv)
    for f in linear_forms:
        e1 = e1 + f
    if k == 1:
        return e1
    if k == 2:
        sq = SymmetricClassPoly(nv)
        for f in linear_forms:
            sq = sq + f * f
        half = e1 * e1 - sq
        return SymmetricClassPoly(nv, {e: c // 2 for e, c in half.terms.items()})
    raise ValueError("only e_1 and e_2 are needed")


_P62 = (1 << 61) - 1  # Mersenne prime, 61 bits


def _chern_sides(rank: int, i: int, which: str, twist: bool):
    """Both sides of the identity as polynomials in roots t_0..t_{rank-1} and ℓ."""
    nv = rank + 1
    t = [SymmetricClassPoly.var(nv, k) for k in range(rank)]
    ell = SymmetricClassPoly.var(nv, rank)
    c1 = elementary(t, 1)
    c2 = elementary(t, 2) if rank >= 2 else SymmetricClassPoly(nv)
    if twist:
        roots = [r + ell for r in t]
        if which == "c1":
            return elementary(roots, 1), c1 + rank * ell
        return elementary(roots, 2), c2 + (rank - 1) * (c1 * ell) + comb(rank, 2) * (ell * ell)
    roots = []
    for S in combinations(range(rank), i):
        r = SymmetricClassPoly(nv)
        for k in S:
            r = r + t[k]
        roots.append(r)
    a = comb(rank - 1, i - 1)
    if which == "c1":
        return elementary(roots, 1), a * c1
    lhs = elementary(roots, 2) if len(roots) >= 2 else SymmetricClassPoly(nv)
    rhs = SymmetricClassPoly(nv, {e: c * a * (a - 1) // 2 for e, c in (c1 * c1).terms.items()})
    rhs = rhs + comb(rank - 2, i - 1) * c2 if rank >= 2 and i - 1 <= rank - 2 else rhs
    return lhs, rhs


def chern_wedge_identity(rank: int, i: int, which: str, *, twist: bool = False, points: int = 24,
                         seed: int = 0, exact: bool = True) -> bool:
    """Check a Chern class identity for ∧^iR (or R⊗L when ``twist``) via formal roots.

    Both sides are expanded as polynomials in the roots; equality is
    checked at ``points`` random points modulo a 61-bit prime and, when
    ``exact``, coefficient by coefficient.  Raises IdentityViolation on
    failure.
    """
    if not (2 <= rank <= 8 and 1 <= i <= rank) or which not in ("c1", "c2"):
        raise DomainViolation(f"need 2 <= rank <= 8, 1 <= i <= rank, which in c1/c2; got {rank}, {i}, {which}")
    lhs, rhs = _chern_sides(rank, i, which, twist)
    if not (lhs.is_symmetric_in(rank) and rhs.is_symmetric_in(rank)):
        raise IdentityViolation("expansion is not symmetric in the roots")
    rng = random.Random(seed * 1_000_003 + rank * 101 + i * 7 + (which == "c2") + 2 * twist)
    for _ in range(points):
        pt = [rng.randrange(_P62) for _ in range(rank + 1)]
        if lhs.evaluate(pt, _P62) != rhs.evaluate(pt, _P62):
            raise IdentityViolation(f"{which}, rank {rank}, i={i}, twist={twist}: evaluations differ")
    if exact and lhs != rhs:
        raise IdentityViolation(f"{which}, rank {rank}, i={i}, twist={twist}: expansions differ")
    return True


# ------------------------------------------------------- difference varieties


def difference_class(a: int, b: int, g: int) -> tuple[Fraction, int]:
    """Class C(a+b, a)·θ^(g-a-b) of the difference variety C_a - C_b, as (coefficient, power)."""
    canonical = 1 <= b and 2 * b <= g - 1 and a == g - b - 1
    if not (canonical or (1 <= b <= a and 2 * a <= g - 1)):
        raise DomainViolation(f"difference class needs 1 <= b <= a <= (g-1)/2 or (a,b)=(g-i-1,i); got {a}, {b}, g={g}")
    coeff, power = binom(a + b, a), g - a - b
    if canonical and (coeff != binom(g - 1, b) or power != 1):
        raise IdentityViolation(f"C_{a} - C_{b}: {coeff}θ^{power}, expected {binom(g - 1, b)}θ")
    return coeff, power


def hyperelliptic_difference_degree(a: int, b: int) -> int:
    """Degree of C_a × C_b -> C_a - C_b onto its image on a hyperelliptic curve."""
    if not 1 <= b <= a:
        raise DomainViolation("need 1 <= b <= a")
    return comb(a, b) * 2**b


# ---------------------------------------------------------------- gates


def mrc_failure_gate(g: int, d: int) -> bool:
    """2g-2 >= g-1 + d·⌊(g+1)/2⌋/(d-g), evaluated exactly."""
    if d <= g:
        raise DomainViolation(f"need d > g, got d={d}, g={g}")
    i = (g + 1) // 2
    return Fraction(2 * g - 2) >= g - 1 + Fraction(d * i, d - g)

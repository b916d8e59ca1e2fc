"""Embedded curve models over GF(p) and their rational points.

Two concrete models are supported: curves parametrized by binary forms
(``ParametricRational``) and curves cut out by equations
(``CompleteIntersectionCurve``).  Everything downstream works with a
``SampledCurve``: the full list of GF(p)-rational points together with
genus, degree and regularity.  The homogeneous ideal of the curve is
represented extensionally, as the forms vanishing on all these points; in
degree j that is only faithful when the curve has more than ``degree * j``
rational points, which ``SampledCurve.check_degree`` enforces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import ceil, comb, isqrt, sqrt
from typing import Sequence

import numpy as np

from . import ffla
from .errors import (
    DegreeGuardViolated,
    ExhaustedRetries,
    NonInjectiveParametrization,
    NotVeryAmple,
    TooFewPoints,
)
from .ffla import PrimeModulus, as_modulus
from .polyring import HomogeneousForm, evaluate_many, evaluate_monomials, monomial_exponents, partials, random_form
from .seeding import stream


def normalize_points(points: np.ndarray, p: int) -> np.ndarray:
    """Scale each row so its first nonzero coordinate is 1.

    Raises ``ValueError`` on an all-zero row.
    """
    pts = np.asarray(points, dtype=np.int64) % p
    if pts.size == 0:
        return pts.reshape(pts.shape[0], -1)
    nz = pts != 0
    if not nz.any(axis=1).all():
        raise ValueError("the zero vector is not a projective point")
    lead_idx = nz.argmax(axis=1)
    lead = pts[np.arange(pts.shape[0]), lead_idx]
    uniq, inverse = np.unique(lead, return_inverse=True)
    invs = np.array([pow(int(u), p - 2, p) for u in uniq], dtype=np.int64)
    return pts * invs[inverse][:, None] % p


@dataclass(eq=False)
class EmbeddedPointSet:
    """Distinct normalized points of P^n over GF(p).

    Compared by identity; a point set doubles as the cache key for the
    quotient bases built on it.
    """

    n: int
    points: np.ndarray
    modulus: PrimeModulus
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        self.modulus = as_modulus(self.modulus)
        pts = np.asarray(self.points, dtype=np.int64).reshape(-1, self.n + 1)
        norm = normalize_points(pts, self.modulus.p)
        if not np.array_equal(norm, pts % self.modulus.p):
            raise ValueError("points must be normalized (first nonzero coordinate 1)")
        if len(np.unique(norm, axis=0)) != len(norm):
            raise ValueError("points must be pairwise distinct")
        norm.setflags(write=False)
        self.points = norm

    @classmethod
    def from_coordinates(cls, coords, p, **provenance) -> "EmbeddedPointSet":
        """Normalize and deduplicate arbitrary nonzero coordinate rows."""
        pts = normalize_points(np.asarray(coords, dtype=np.int64), int(p))
        _, first = np.unique(pts, axis=0, return_index=True)
        pts = pts[np.sort(first)]
        return cls(pts.shape[1] - 1, pts, p, dict(provenance))

    @property
    def p(self) -> int:
        return self.modulus.p

    def __len__(self) -> int:
        return self.points.shape[0]

    def subset(self, indices, **provenance) -> "EmbeddedPointSet":
        idx = np.asarray(indices, dtype=np.int64)
        prov = dict(self.provenance)
        prov.update(provenance)
        return EmbeddedPointSet(self.n, self.points[idx], self.modulus, prov)

    def random_subset(self, size: int, rng: np.random.Generator, **provenance) -> "EmbeddedPointSet":
        if size > len(self):
            raise TooFewPoints(f"need {size} points, only {len(self)} available")
        idx = np.sort(rng.choice(len(self), size=size, replace=False))
        return self.subset(idx, **provenance)

    def index_of(self, other: "EmbeddedPointSet") -> np.ndarray:
        """Positions of the points of ``other`` inside this set."""
        lookup = {row: k for k, row in enumerate(map(tuple, self.points.tolist()))}
        try:
            return np.array([lookup[row] for row in map(tuple, other.points.tolist())], dtype=np.int64)
        except KeyError as exc:
            raise ValueError("point set is not contained in this one") from exc


@dataclass(frozen=True)
class HilbertData:
    """Hilbert polynomial data: a curve (degree, genus) or P^n itself."""

    degree: int = 0
    genus: int = 0
    ambient: int | None = None

    def __call__(self, t: int) -> int:
        if self.ambient is not None:
            return comb(t + self.ambient, self.ambient) if t >= 0 else 0
        return self.degree * t + 1 - self.genus

    @classmethod
    def projective_space(cls, n: int) -> "HilbertData":
        return cls(ambient=n)


def weil_window(p: int, g: int) -> tuple[float, float]:
    half = 2 * g * sqrt(p)
    return p + 1 - half, p + 1 + half


# ---------------------------------------------------------------- models


@dataclass
class CurveModel:
    name: str
    n: int
    genus: int
    degree: int
    regularity: int | None

    @property
    def hilbert(self) -> HilbertData:
        return HilbertData(self.degree, self.genus)

    def sample(self, p, *, min_points: int = 0) -> "SampledCurve":
        pts = enumerate_points(self, p, min_points=min_points)
        return SampledCurve(self.name, pts, self.genus, self.degree, self.regularity, model=self)


def _binary_coeffs(form: Sequence[int], d: int) -> list[int]:
    coeffs = [int(c) for c in form]
    if len(coeffs) != d + 1:
        raise ValueError(f"binary form of degree {d} needs {d + 1} coefficients")
    return coeffs


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    """gcd of univariate polynomials (coefficient lists, low degree first)."""
    a = _poly_trim([x % p for x in a])
    b = _poly_trim([x % p for x in b])
    while b:
        inv = pow(b[-1], p - 2, p)
        while len(a) >= len(b):
            if a[-1] == 0:
                a.pop()
                continue
            c = a[-1] * inv % p
            shift = len(a) - len(b)
            for k, bk in enumerate(b):
                a[shift + k] = (a[shift + k] - c * bk) % p
            _poly_trim(a)
            if not a:
                break
        a, b = b, a
    return a


@dataclass
class ParametricRational(CurveModel):
    """Image of P^1 under (f_0 : ... : f_n), each a binary form of degree d.

    ``forms[k]`` lists the coefficients of u^d, u^(d-1) v, ..., v^d.
    """

    forms: tuple[tuple[int, ...], ...] = ()

    def __init__(self, forms, *, name: str = "parametric", regularity: int | None = None):
        forms = tuple(tuple(int(c) for c in f) for f in forms)
        d = len(forms[0]) - 1
        for f in forms:
            _binary_coeffs(f, d)
        super().__init__(name=name, n=len(forms) - 1, genus=0, degree=d, regularity=regularity)
        self.forms = forms

    def has_common_factor(self, p: int) -> bool:
        d = self.degree
        if all(f[0] % p == 0 for f in self.forms):
            return True  # v divides every form
        # dehomogenize at v = 1: f(u, 1) = sum c_e u^(d-e)
        g: list[int] = []
        for f in self.forms:
            g = _poly_gcd(g, list(reversed(f)), p) if g else _poly_trim([c % p for c in reversed(f)])
        return len(g) > 1

    def images(self, p: int) -> np.ndarray:
        """Unnormalized images of the p+1 points of P^1(F_p): (1:t) then (0:1)."""
        d = self.degree
        t = np.arange(p, dtype=np.int64)
        uv = np.vstack([np.stack([np.ones(p, dtype=np.int64), t], axis=1), [[0, 1]]])
        u_pw = np.ones((d + 1, p + 1), dtype=np.int64)
        v_pw = np.ones((d + 1, p + 1), dtype=np.int64)
        for e in range(1, d + 1):
            u_pw[e] = u_pw[e - 1] * uv[:, 0] % p
            v_pw[e] = v_pw[e - 1] * uv[:, 1] % p
        out = np.zeros((p + 1, self.n + 1), dtype=np.int64)
        for k, f in enumerate(self.forms):
            acc = np.zeros(p + 1, dtype=np.int64)
            for e, c in enumerate(f):
                if c % p:
                    acc = (acc + (c % p) * (u_pw[d - e] * v_pw[e] % p)) % p
            out[:, k] = acc
        return out


@dataclass
class CompleteIntersectionCurve(CurveModel):
    equations: tuple[HomogeneousForm, ...] = ()
    modulus: PrimeModulus | None = None
    seed: int | None = None

    def __init__(self, equations: Sequence[HomogeneousForm], *, genus: int, degree: int,
                 regularity: int | None = None, name: str = "complete_intersection", seed: int | None = None):
        equations = tuple(equations)
        if not equations:
            raise ValueError("need at least one equation")
        n = equations[0].n
        mod = equations[0].modulus
        for f in equations:
            if f.n != n or f.modulus != mod:
                raise ValueError("equations must share the ambient ring and modulus")
        super().__init__(name=name, n=n, genus=genus, degree=degree, regularity=regularity)
        self.equations = equations
        self.modulus = mod
        self.seed = seed


def plane_curve(form: HomogeneousForm, *, name: str = "plane_curve") -> CompleteIntersectionCurve:
    """Plane curve of degree e: genus (e-1)(e-2)/2, regularity e."""
    if form.n != 2:
        raise ValueError("plane curve needs a form in three variables")
    e = form.degree
    return CompleteIntersectionCurve([form], genus=(e - 1) * (e - 2) // 2, degree=e, regularity=e, name=name)


@dataclass(eq=False)
class SampledCurve:
    """A curve known through all of its GF(p)-rational points."""

    name: str
    points: EmbeddedPointSet
    genus: int
    degree: int
    regularity: int | None = None
    model: CurveModel | None = None

    @property
    def n(self) -> int:
        return self.points.n

    @property
    def p(self) -> int:
        return self.points.p

    @property
    def hilbert(self) -> HilbertData:
        return HilbertData(self.degree, self.genus)

    def max_faithful_degree(self) -> int:
        """Largest j for which forms vanishing on all points lie in the curve ideal."""
        return (len(self.points) - 1) // self.degree

    def check_degree(self, j: int):
        if len(self.points) <= self.degree * j:
            raise DegreeGuardViolated(
                f"{self.name}: {len(self.points)} rational points do not determine degree-{j} "
                f"forms on a curve of degree {self.degree} (need > {self.degree * j})"
            )


# ------------------------------------------------------------ operations


def _enumerate_variety(equations: Sequence[HomogeneousForm], n: int, p: int) -> np.ndarray:
    """All normalized GF(p)-points of P^n where every equation vanishes."""
    found = []
    for lead in range(n + 1):
        free = n - lead
        head = np.zeros(lead + 1, dtype=np.int64)
        head[lead] = 1
        if free == 0:
            cand = head[None, :]
            mask = np.ones(1, dtype=bool)
            for f in equations:
                mask &= evaluate_many(f, cand) == 0
            found.append(cand[mask])
            continue
        # one chunk per value of the first free coordinate
        rest = free - 1
        grid = np.stack(np.meshgrid(*[np.arange(p, dtype=np.int64)] * rest, indexing="ij"), axis=-1).reshape(-1, rest) \
            if rest else np.zeros((1, 0), dtype=np.int64)
        for x in range(p):
            cand = np.empty((grid.shape[0], n + 1), dtype=np.int64)
            cand[:, : lead + 1] = head
            cand[:, lead + 1] = x
            cand[:, lead + 2 :] = grid
            for f in equations:
                cand = cand[evaluate_many(f, cand) == 0]
                if not len(cand):
                    break
            if len(cand):
                found.append(cand)
    if not found:
        return np.zeros((0, n + 1), dtype=np.int64)
    return np.vstack(found)


def enumerate_points(C: CurveModel, p, *, min_points: int = 0) -> EmbeddedPointSet:
    """All GF(p)-rational points of the model, normalized and deduplicated."""
    p = as_modulus(p).p
    if isinstance(C, ParametricRational):
        if p + 1 < min_points:
            raise TooFewPoints(f"P^1(F_{p}) has {p + 1} points, {min_points} requested")
        if C.has_common_factor(p):
            raise NonInjectiveParametrization(f"{C.name}: forms share a common factor mod {p}")
        imgs = C.images(p)
        if (imgs == 0).all(axis=1).any():
            raise NonInjectiveParametrization(f"{C.name}: base point mod {p}")
        pts = normalize_points(imgs, p)
        if len(np.unique(pts, axis=0)) != len(pts):
            raise NonInjectiveParametrization(f"{C.name}: parametrization is not injective on P^1(F_{p})")
        return EmbeddedPointSet(C.n, pts, p, {"curve": C.name, "prime": p})
    if isinstance(C, CompleteIntersectionCurve):
        if C.modulus.p != p:
            raise ValueError(f"{C.name} is defined over GF({C.modulus.p}), not GF({p})")
        if C.n > 4:
            raise ValueError("rational point scan is limited to ambient dimension <= 4")
        pts = _enumerate_variety(C.equations, C.n, p)
        lo, _ = weil_window(p, C.genus)
        if len(pts) < lo or len(pts) < min_points:
            raise TooFewPoints(f"{C.name}: {len(pts)} rational points over GF({p}) (Weil lower bound {lo:.1f})")
        return EmbeddedPointSet(C.n, pts, p, {"curve": C.name, "prime": p, "seed": C.seed})
    raise TypeError(f"unsupported curve model {type(C).__name__}")


def is_smooth(C: CompleteIntersectionCurve, p, points: EmbeddedPointSet | None = None) -> bool:
    """Jacobian criterion at every rational point (rank must equal n - 1)."""
    p = as_modulus(p).p
    if points is None:
        points = EmbeddedPointSet(C.n, _enumerate_variety(C.equations, C.n, p), p)
    if not len(points):
        return True
    grads = [[evaluate_many(d, points.points) for d in partials(f)] for f in C.equations]
    jac = np.array(grads, dtype=np.int64).transpose(2, 0, 1)  # point x equation x variable
    target = C.n - 1
    for J in jac:
        if ffla.rank_array(J, p) != target:
            return False
    return True


def random_canonical_curve(g: int, p, seed: int, *, max_retries: int = 200, min_points: int = 0) -> CompleteIntersectionCurve:
    """Random canonical curve: quadric + cubic in P^3 (g=4) or three quadrics in P^4 (g=5).

    Equations are resampled until the curve is smooth at every rational
    point and its point count lies in the Weil window (and is at least
    ``min_points``).
    """
    if g not in (4, 5):
        raise ValueError("random canonical models exist for g in {4, 5}; use an explicit plane quartic for g=3")
    mod = as_modulus(p)
    n = g - 1
    degrees = (2, 3) if g == 4 else (2, 2, 2)
    lo, hi = weil_window(mod.p, g)
    for attempt in range(max_retries):
        rng = stream(seed, "canonical", g, mod.p, attempt)
        eqs = [random_form(n, e, mod, rng) for e in degrees]
        C = CompleteIntersectionCurve(eqs, genus=g, degree=2 * g - 2, regularity=4,
                                      name=f"canonical_g{g}_p{mod.p}_s{seed}", seed=seed)
        pts = _enumerate_variety(eqs, n, mod.p)
        if not (lo <= len(pts) <= hi) or len(pts) < min_points:
            continue
        if not is_smooth(C, mod, EmbeddedPointSet(n, pts, mod)):
            continue
        return C
    raise ExhaustedRetries(f"no smooth genus-{g} canonical model over GF({mod.p}) after {max_retries} tries")


def random_plane_curve(e: int, p, seed: int, *, max_retries: int = 200, min_points: int = 0) -> CompleteIntersectionCurve:
    """Random smooth plane curve of degree e passing the same filters."""
    mod = as_modulus(p)
    g = (e - 1) * (e - 2) // 2
    lo, hi = weil_window(mod.p, g)
    for attempt in range(max_retries):
        rng = stream(seed, "plane", e, mod.p, attempt)
        C = plane_curve(random_form(2, e, mod, rng), name=f"plane_e{e}_p{mod.p}_s{seed}")
        C.seed = seed
        pts = _enumerate_variety(C.equations, 2, mod.p)
        if not (lo <= len(pts) <= hi) or len(pts) < min_points:
            continue
        if not is_smooth(C, mod, EmbeddedPointSet(2, pts, mod)):
            continue
        return C
    raise ExhaustedRetries(f"no smooth plane curve of degree {e} over GF({mod.p}) after {max_retries} tries")


def reembed(C, points: EmbeddedPointSet, k: int, D: EmbeddedPointSet | Sequence[int] | None = None) -> EmbeddedPointSet:
    """Re-embed by the degree-k forms vanishing on the base points D.

    ``C`` supplies the degree and genus (a ``CurveModel`` or ``SampledCurve``);
    ``points`` are all enumerated rational points.  The new coordinates are
    a basis g_0..g_m of {degree-k forms vanishing on D} modulo {forms
    vanishing on all points}; the result holds the images of all points
    outside D, and its provenance records the new degree k*d - |D| and
    the ambient dimension m.
    """
    p = points.p
    d = C.degree
    if len(points) <= k * d:
        raise DegreeGuardViolated(f"{len(points)} points do not determine degree-{k} forms on a degree-{d} curve")
    if D is None:
        d_idx = np.zeros(0, dtype=np.int64)
    elif isinstance(D, EmbeddedPointSet):
        d_idx = points.index_of(D)
    else:
        d_idx = np.asarray(D, dtype=np.int64)
    exps = monomial_exponents(points.n, k)
    E = evaluate_monomials(exps, points.points, p)
    if len(d_idx):
        K = ffla.kernel_array(E[d_idx], p)
    else:
        K = np.eye(exps.shape[0], dtype=np.int64)
    F = ffla.matmul_mod(E, K.T, p)
    _, chosen = ffla.rref_array(F, p)
    forms = K[chosen]
    keep = np.setdiff1d(np.arange(len(points)), d_idx)
    imgs = F[np.ix_(keep, chosen)]
    if (imgs == 0).all(axis=1).any():
        raise NotVeryAmple("a point outside D maps to the zero vector")
    imgs = normalize_points(imgs, p)
    if len(np.unique(imgs, axis=0)) != len(imgs):
        raise NotVeryAmple("two distinct points have the same image")
    m = len(chosen) - 1
    prov = dict(points.provenance)
    prov.update(
        reembedded_from=getattr(C, "name", "curve"),
        k=k,
        base_points=[list(map(int, r)) for r in points.points[d_idx].tolist()],
        degree=k * d - len(d_idx),
        genus=C.genus,
        ambient=m,
        forms=forms.tolist(),
    )
    return EmbeddedPointSet(m, imgs, p, prov)


def reembedded_curve(curve: SampledCurve, k: int, num_base_points: int, seed: int) -> SampledCurve:
    """``reembed`` with base points drawn from the rational points by seed."""
    rng = stream(seed, "base_points", k, num_base_points)
    d_idx = np.sort(rng.choice(len(curve.points), size=num_base_points, replace=False)) if num_base_points else []
    pts = reembed(curve, curve.points, k, d_idx)
    d_new = pts.provenance["degree"]
    name = f"{curve.name}|O({k}H-D{num_base_points})"
    return SampledCurve(name, pts, curve.genus, d_new, None)

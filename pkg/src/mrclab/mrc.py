"""Predicted and observed tails of Betti diagrams of general points on curves.

For γ points on a curve X with Hilbert polynomial P and regularity m, the
row index r is fixed by P(r-1) <= γ < P(r), r >= m+1.  Only rows r-1 and
r of the diagram of Γ can differ from those of X, and along each diagonal

    b_{i+1,r-1} - b_{i,r} = Q_{i,r}(γ).

The minimal resolution conjecture (MRC) asks that one of the two terms
vanish for every i; the ideal generation conjecture (IGC) is the case i=1.
"General" points are approximated by the entrywise minimum over seeded
random subsets of the rational points, which is the generic value by
semicontinuity once enough samples are drawn.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from math import comb
from typing import Callable, Iterable, Sequence

import numpy as np

from .curves import HilbertData, SampledCurve
from .errors import DegreeGuardViolated, GammaTooSmall, IdentityViolation, TooFewPoints
from .koszul import BettiDiagram, KoszulComplex, curve_betti_diagram
from .pointsets import VanishingSubmodule, curve_ring
from .seeding import stream

DEFAULT_LADDER = (31, 53, 101)


def _binom(a: int, b: int) -> int:
    if b < 0 or a < 0 or b > a:
        return 0
    return comb(a, b)


def thread_count(requested: int | None = None) -> int:
    cap = os.environ.get("MRCLAB_THREADS")
    n = requested or os.cpu_count() or 1
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            pass
    return max(1, n)


def index_r(gamma: int, H: HilbertData, m: int) -> int:
    """The row r >= m+1 with H(r-1) <= γ < H(r)."""
    if gamma < H(m):
        raise GammaTooSmall(f"γ={gamma} is below P({m})={H(m)}")
    r = m + 1
    while not (H(r - 1) <= gamma < H(r)):
        r += 1
    return r


def _difference(H: HilbertData, T: int, order: int) -> int:
    """Backward difference Δ^order H at T, with ΔH(T) = H(T) - H(T-1)."""
    return sum((-1) ** k * comb(order, k) * H(T - k) for k in range(order + 1))


def q_ir(gamma: int, r: int, i: int, H: HilbertData, n: int, dim: int = 1) -> int:
    """Q_{i,r}(γ) from the Hilbert polynomial of X (dimension ``dim``)."""
    if dim != 1:
        raise NotImplementedError("only curves are supported")
    general = sum(
        (-1) ** l * _binom(n - l - 1, i - l) * _difference(H, r + l, l + 1) for l in range(dim)
    ) - _binom(n, i) * (gamma - H(r - 1))
    curve_form = H.degree * _binom(n - 1, i) - (gamma - H(r - 1)) * _binom(n, i)
    if general != curve_form:
        raise IdentityViolation(f"Q_{{{i},{r}}}: {general} != {curve_form}")
    return general


@dataclass(frozen=True)
class TailPrediction:
    gamma: int
    r: int
    q: tuple[int, ...]

    @property
    def pairs(self) -> list[tuple[int, int]]:
        """Predicted (b_{i+1,r-1}, b_{i,r}) for i = 0..n."""
        return [(max(v, 0), max(-v, 0)) for v in self.q]

    def row(self, j: int) -> list[int]:
        """Predicted tail row r-1 or r (columns 0..n+1)."""
        width = len(self.q) + 1
        out = [0] * width
        for i, (top, bottom) in enumerate(self.pairs):
            if j == self.r - 1:
                out[i + 1] = top
            elif j == self.r:
                out[i] = bottom
        return out


def _curve_meta(curve) -> tuple[HilbertData, int, int, int]:
    m = curve.regularity
    if m is None:
        raise ValueError(f"{curve.name}: regularity unknown; run curve_regularity first")
    return curve.hilbert, m, curve.n, curve.genus


def predicted_tail(gamma: int, curve) -> TailPrediction:
    H, m, n, g = _curve_meta(curve)
    if gamma < max(g, H(m)):
        raise GammaTooSmall(f"γ={gamma} below max(g, P(m)) = {max(g, H(m))}")
    r = index_r(gamma, H, m)
    return TailPrediction(gamma, r, tuple(q_ir(gamma, r, i, H, n) for i in range(n + 1)))


# ------------------------------------------------------------ regularity


def curve_regularity(curve: SampledCurve, *, max_ambient: int = 6) -> int:
    """Regularity m of the curve: one more than the last nonzero row of its diagram.

    Small ambient spaces use the diagram itself (rows up to the
    Gruson-Lazarsfeld-Peskine bound d-n+1).  Otherwise the curve must be
    embedded by a nonspecial complete series of degree >= 2g+1, and
    m = 3 (m = 2 for g = 0) is certified through H_X(t) = P_X(t) for t = 1, 2.
    """
    d, n, g = curve.degree, curve.n, curve.genus
    top = max(d - n + 1, 1)
    if n <= max_ambient and len(curve.points) > d * (top + 1):
        D = curve_betti_diagram(curve, top)
        return D.last_nonzero_row() + 1
    if d < 2 * g + 1:
        raise ValueError(f"{curve.name}: cannot certify regularity (d={d}, g={g}, n={n})")
    curve.check_degree(2)
    ring = curve_ring(curve)
    H = curve.hilbert
    for t in (1, 2):
        if ring.dim(t) != H(t):
            raise IdentityViolation(f"{curve.name}: H_X({t})={ring.dim(t)} but P({t})={H(t)}")
    return 2 if g == 0 else 3


def with_regularity(curve: SampledCurve) -> SampledCurve:
    if curve.regularity is None:
        curve.regularity = curve_regularity(curve)
    return curve


# -------------------------------------------------------- generic diagrams


def _sample_points(curve: SampledCurve, gamma: int, seed: int, k: int):
    return curve.points.random_subset(gamma, stream(seed, "sample", gamma, k), sample=k, seed=seed)


def sample_diagrams(curve: SampledCurve, gamma: int, samples: int, seed: int, rows: int,
                    threads: int | None = None) -> list[BettiDiagram]:
    if len(curve.points) < gamma:
        raise TooFewPoints(f"{curve.name}: {len(curve.points)} rational points, γ={gamma}")
    if samples < 1:
        raise ValueError("need at least one sample")

    def one(k):
        G = _sample_points(curve, gamma, seed, k)
        K = KoszulComplex(G)
        D = K.diagram(rows, {"curve": curve.name, "prime": curve.p, "gamma": gamma, "seed": seed, "sample": k})
        D.provenance["hilbert"] = [K.module.dim(t) for t in range(rows + 2)]
        return D

    workers = min(thread_count(threads), samples)
    if workers == 1:
        return [one(k) for k in range(samples)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(one, range(samples)))


def general_samples(diagrams: Sequence[BettiDiagram]) -> list[BettiDiagram]:
    """Samples with the largest Hilbert function among all samples.

    Points failing to impose independent conditions lie outside the
    general locus, and their Betti numbers may be smaller in some cells,
    so they are dropped before taking minima.  The Hilbert function is
    lower semicontinuous, so general samples maximize its total.
    """
    hs = [D.provenance.get("hilbert") for D in diagrams]
    if any(h is None for h in hs):
        return list(diagrams)
    best = max(sum(h) for h in hs)
    return [D for D, h in zip(diagrams, hs) if sum(h) == best]


def _min_diagram(diagrams: Sequence[BettiDiagram]) -> BettiDiagram:
    kept = general_samples(diagrams)
    out = kept[0]
    for D in kept[1:]:
        out = out.minimum(D)
    prov = {k: v for k, v in kept[0].provenance.items() if k != "sample"}
    prov["samples"] = len(kept)
    if len(kept) < len(diagrams):
        prov["discarded"] = len(diagrams) - len(kept)
    return BettiDiagram(out.n, out.table, prov)


def generic_diagram(curve: SampledCurve, gamma: int, samples: int, seed: int, *,
                    rows: int | None = None, threads: int | None = None) -> BettiDiagram:
    """Entrywise minimum of the diagrams of ``samples`` seeded γ-subsets."""
    if rows is None:
        rows = index_r(gamma, curve.hilbert, curve.regularity) + 1 if curve.regularity else gamma
    return _min_diagram(sample_diagrams(curve, gamma, samples, seed, rows, threads))


# ---------------------------------------------------------------- verdicts


@dataclass
class MRCReport:
    curve: str
    prime: int
    gamma: int
    r: int
    samples: int
    observed: list[tuple[int, int]]
    predicted: list[int]
    q_check: bool
    lower_bounds: bool
    rows_vanish: bool
    mrc: bool
    igc: bool
    failing: list[int] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["observed"] = [list(t) for t in self.observed]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "MRCReport":
        d = json.loads(text)
        d["observed"] = [tuple(t) for t in d["observed"]]
        return cls(**d)

    def to_text(self) -> str:
        diag = ", ".join(f"i={i}:{a}*{b}" for i, (a, b) in enumerate(self.observed))
        lines = [
            f"{self.curve} over GF({self.prime}), γ={self.gamma}, r={self.r}, samples={self.samples}",
            f"  diagonals (b_i+1,r-1 * b_i,r): {diag}",
            f"  Q: {self.predicted}  consistent={self.q_check}  lower bounds={self.lower_bounds}",
            f"  MRC {'holds' if self.mrc else 'fails'}; IGC {'holds' if self.igc else 'fails'}",
        ]
        if self.failing:
            lines.append(f"  failing diagonals: {self.failing}")
        lines += [f"  note: {n}" for n in self.notes]
        return "\n".join(lines)


def mrc_verdict(diagram: BettiDiagram, gamma: int, curve, *, samples: int | None = None) -> MRCReport:
    """Compare rows r-1 and r of a (generic) diagram with the prediction."""
    pred = predicted_tail(gamma, curve)
    r, n = pred.r, curve.n
    if diagram.max_row < r:
        raise ValueError(f"diagram has rows 0..{diagram.max_row}, need row {r}")
    observed = [(diagram[i + 1, r - 1], diagram[i, r]) for i in range(n + 1)]
    q_check = all(a - b == q for (a, b), q in zip(observed, pred.q))
    lower = all(a >= max(q, 0) and b >= max(-q, 0) for (a, b), q in zip(observed, pred.q))
    vanish = all(not any(diagram.row(j)) for j in range(r + 1, diagram.max_row + 1))
    failing = [i for i, (a, b) in enumerate(observed) if a * b != 0]
    igc = observed[1][0] * observed[1][1] == 0 if n >= 1 else True
    notes = []
    if diagram.max_row < r + 1:
        notes.append(f"row {r + 1} not computed")
    return MRCReport(curve.name, curve.p, gamma, r, samples or diagram.provenance.get("samples", 1),
                     observed, list(pred.q), q_check, lower, vanish, not failing, igc, failing, notes)


def _q_consistent(D: BettiDiagram, pred: TailPrediction, n: int) -> bool:
    r = pred.r
    return all(D[i + 1, r - 1] - D[i, r] == q for i, q in enumerate(pred.q))


def check_gamma(curve: SampledCurve, gamma: int, samples: int, seed: int, *,
                threads: int | None = None) -> tuple[MRCReport, BettiDiagram, bool]:
    """Generic diagram + verdict; the flag says whether some sample alone matched Q."""
    with_regularity(curve)
    pred = predicted_tail(gamma, curve)
    diagrams = sample_diagrams(curve, gamma, samples, seed, pred.r + 1, threads)
    any_ok = any(_q_consistent(D, pred, curve.n) for D in diagrams)
    G = _min_diagram(diagrams)
    rep = mrc_verdict(G, gamma, curve)
    if G.provenance.get("discarded"):
        rep.notes.append(f"{G.provenance['discarded']} of {samples} samples had a smaller Hilbert function")
    return rep, G, any_ok


def check_with_escalation(make_curve: Callable[[int], SampledCurve], gammas: Iterable[int], samples: int,
                          seed: int, ladder: Sequence[int] = DEFAULT_LADDER, *, start: int | None = None,
                          max_escalations: int = 1, threads: int | None = None) -> list[MRCReport]:
    """Run ``check_gamma`` over γ values, moving up the prime ladder when needed.

    Escalation happens when every sample fails the Q-consistency check for
    some γ; the whole γ-range is then redone on a fresh model at the next
    prime.  At most ``max_escalations`` steps are taken; what remains is
    reported as is.
    """
    ladder = list(ladder)
    pos = ladder.index(start) if start is not None else 0
    gammas = list(gammas)
    steps = 0
    while True:
        p = ladder[pos]
        curve = make_curve(p)
        reports = []
        escalate = False
        for gamma in gammas:
            rep, _, ok = check_gamma(curve, gamma, samples, seed, threads=threads)
            if not ok:
                rep.notes.append("no single sample matched Q")
                escalate = True
            reports.append(rep)
        if not escalate or steps >= max_escalations or pos + 1 >= len(ladder):
            if steps:
                for rep in reports:
                    rep.notes.append(f"escalated {steps}x to p={p}")
            return reports
        steps += 1
        pos += 1


# ------------------------------------------------------- targeted cells


@dataclass(frozen=True)
class TargetedCells:
    gamma: int
    r: int
    i: int
    top: int  # b_{i+1, r-1}
    bottom: int  # b_{i, r}
    q: int
    samples: int

    @property
    def product(self) -> int:
        return self.top * self.bottom


def tail_cells(curve: SampledCurve, points_idx: np.ndarray, r: int, i: int, *, ring=None) -> tuple[int, int] | None:
    """(b_{i+1,r-1}, b_{i,r}) of the subset via the module I_Γ/I_X.

    With M = I_Γ/I_X and M_{r-1} = 0, the Koszul sequence of
    0 -> M -> S_X -> S_Γ -> 0 gives b_{i+1,r-1}(Γ) = dim ker(∧^iV⊗M_r -> ∧^{i-1}V⊗M_{r+1})
    and b_{i,r}(Γ) = the cohomology at ∧^{i-1}V⊗M_{r+1}, as long as rows
    r-1 and r of the curve's own diagram vanish (r-1 >= m).  Returns None
    when M_{r-1} != 0 (the subset imposes too few conditions).
    """
    curve.check_degree(r + 2)
    ring = ring or curve_ring(curve)
    M = VanishingSubmodule(ring, points_idx)
    if M.dim(r - 1):
        return None
    K = KoszulComplex(M)
    return K.kernel_dim(i, r), K.betti(i - 1, r + 1)


def targeted_tail(curve: SampledCurve, gamma: int, i: int, samples: int, seed: int) -> TargetedCells:
    """Minimum over samples of the two cells on diagonal i."""
    with_regularity(curve)
    H = curve.hilbert
    r = index_r(gamma, H, curve.regularity)
    q = q_ir(gamma, r, i, H, curve.n)
    ring = curve_ring(curve)
    top = bottom = None
    used = 0
    for k in range(samples):
        rng = stream(seed, "sample", gamma, k)
        idx = np.sort(rng.choice(len(curve.points), size=gamma, replace=False))
        cells = tail_cells(curve, idx, r, i, ring=ring)
        if cells is None:
            continue
        used += 1
        top = cells[0] if top is None else min(top, cells[0])
        bottom = cells[1] if bottom is None else min(bottom, cells[1])
    if not used:
        raise TooFewPoints(f"no sample of {gamma} points imposed independent conditions in degree {r - 1}")
    return TargetedCells(gamma, r, i, top, bottom, q, used)


def failure_scan(curve: SampledCurve, i: int, r: int, samples: int, seed: int, *,
                 stop_at_first: bool = True) -> list[TargetedCells]:
    """Scan γ over [P(r-1), P(r)) looking for b_{i+1,r-1} * b_{i,r} != 0."""
    H = curve.hilbert
    out = []
    for gamma in range(H(r - 1), H(r)):
        cells = targeted_tail(curve, gamma, i, samples, seed)
        out.append(cells)
        if stop_at_first and cells.product:
            break
    return out

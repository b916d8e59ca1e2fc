"""Graded Betti numbers as Koszul cohomology.

For a graded module N with pieces N_j and V = span(X_0..X_n),

    b_{i,j} = dim H( ∧^{i+1}V⊗N_{j-1} -> ∧^iV⊗N_j -> ∧^{i-1}V⊗N_{j+1} ),

computed cell by cell as dim - rank(out) - rank(in).  Subsets of
{0..n} index the basis of ∧^iV in colexicographic order, and

    δ(e_S ⊗ w) = Σ_k (-1)^k e_{S \\ s_k} ⊗ X_{s_k} w,    S = {s_0 < s_1 < ...}.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb

import numpy as np

from . import ffla
from .curves import EmbeddedPointSet, SampledCurve
from .ffla import MatrixGF
from .pointsets import GradedFunctionModule, coordinate_ring, curve_ring


@lru_cache(maxsize=None)
def colex_subsets(nvars: int, i: int) -> tuple[tuple[int, ...], ...]:
    """i-subsets of range(nvars), colex order (compare largest element first)."""
    if i < 0 or i > nvars:
        return ()
    return tuple(sorted(combinations(range(nvars), i), key=lambda S: S[::-1]))


@lru_cache(maxsize=None)
def _subset_index(nvars: int, i: int) -> dict[tuple[int, ...], int]:
    return {S: k for k, S in enumerate(colex_subsets(nvars, i))}


def _as_module(obj) -> GradedFunctionModule:
    if isinstance(obj, GradedFunctionModule):
        return obj
    if isinstance(obj, EmbeddedPointSet):
        return coordinate_ring(obj)
    if isinstance(obj, SampledCurve):
        return curve_ring(obj)
    raise TypeError(f"cannot build a Koszul complex on {type(obj).__name__}")


class KoszulComplex:
    """Koszul complexes of a graded function module, with cached ranks."""

    def __init__(self, module):
        self.module = _as_module(module)
        self.nvars = self.module.n + 1
        self._ranks: dict[tuple[int, int], int] = {}

    def dim(self, i: int, j: int) -> int:
        if i < 0 or i > self.nvars or j < 0:
            return 0
        return comb(self.nvars, i) * self.module.dim(j)

    def matrix_rows(self, i: int, j: int) -> np.ndarray:
        """δ_{i,j} in row convention: row = source basis element, column = target coordinate.

        Source basis: e_S ⊗ w_a ordered by (S colex, a); target likewise.
        """
        mod = self.module
        src_dim = self.dim(i, j)
        tgt_dim = self.dim(i - 1, j + 1)
        out = np.zeros((src_dim, tgt_dim), dtype=np.int64)
        if src_dim == 0 or tgt_dim == 0:
            return out
        B = mod.basis(j)
        T = mod.basis(j + 1)
        hs, ht = B.dim, T.dim
        # coordinates of X_s * (basis of N_j) in the basis of N_{j+1}
        coords = [T.coordinates(mod.multiply(s, B.vectors)) for s in range(self.nvars)]
        p = mod.p
        tindex = _subset_index(self.nvars, i - 1)
        for a, S in enumerate(colex_subsets(self.nvars, i)):
            for k, s in enumerate(S):
                b = tindex[S[:k] + S[k + 1 :]]
                block = coords[s] if k % 2 == 0 else (-coords[s]) % p
                out[a * hs : (a + 1) * hs, b * ht : (b + 1) * ht] = block
        return out

    def differential(self, i: int, j: int) -> MatrixGF:
        """Matrix of δ: ∧^iV⊗N_j -> ∧^{i-1}V⊗N_{j+1}, acting on column vectors."""
        return MatrixGF._wrap(self.matrix_rows(i, j).T, ffla.as_modulus(self.module.p))

    def rank(self, i: int, j: int) -> int:
        """Rank of δ out of ∧^iV⊗N_j (zero outside the valid range)."""
        if i <= 0 or i > self.nvars or j < 0:
            return 0
        key = (i, j)
        if key not in self._ranks:
            if self.dim(i, j) == 0 or self.dim(i - 1, j + 1) == 0:
                self._ranks[key] = 0
            else:
                self._ranks[key] = ffla.rank_array(self.matrix_rows(i, j), self.module.p)
        return self._ranks[key]

    def kernel_dim(self, i: int, j: int) -> int:
        return self.dim(i, j) - self.rank(i, j)

    def betti(self, i: int, j: int) -> int:
        if i < 0 or i > self.nvars or j < 0:
            return 0
        return self.dim(i, j) - self.rank(i, j) - self.rank(i + 1, j - 1)

    def diagram(self, rows: int, provenance: dict | None = None) -> "BettiDiagram":
        table = np.zeros((rows + 1, self.nvars + 1), dtype=np.int64)
        for j in range(rows + 1):
            for i in range(self.nvars + 1):
                table[j, i] = self.betti(i, j)
        return BettiDiagram(self.module.n, table, dict(provenance or {}))


_complexes: dict[int, tuple] = {}


def koszul_complex(obj) -> KoszulComplex:
    """Koszul complex with a rank cache shared per module object."""
    mod = _as_module(obj)
    hit = _complexes.get(id(mod))
    if hit is not None and hit[0] is mod:
        return hit[1]
    K = KoszulComplex(mod)
    if len(_complexes) > 256:
        _complexes.clear()
    _complexes[id(mod)] = (mod, K)
    return K


def koszul_differential(points, i: int, j: int) -> MatrixGF:
    return koszul_complex(points).differential(i, j)


def betti_number(points, i: int, j: int) -> int:
    return koszul_complex(points).betti(i, j)


def betti_diagram(points, rows: int) -> "BettiDiagram":
    prov = dict(getattr(points, "provenance", {}) or {})
    prov.setdefault("size", len(points) if isinstance(points, EmbeddedPointSet) else None)
    return koszul_complex(points).diagram(rows, prov)


def curve_betti_diagram(curve: SampledCurve, rows: int) -> "BettiDiagram":
    """Diagram of the curve's coordinate ring from all its rational points."""
    curve.check_degree(rows + 1)
    K = KoszulComplex(curve_ring(curve))
    return K.diagram(rows, {"curve": curve.name, "prime": curve.p})


# ----------------------------------------------------------- diagrams


@dataclass
class BettiDiagram:
    """Table of b_{i,j}: ``table[j, i]`` (row j, column i)."""

    n: int
    table: np.ndarray
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        self.table = np.asarray(self.table, dtype=np.int64).reshape(-1, self.n + 2)
        if (self.table < 0).any():
            raise ValueError("Betti numbers are nonnegative")

    @classmethod
    def from_rows(cls, rows, n: int | None = None, **provenance) -> "BettiDiagram":
        rows = [list(r) for r in rows]
        width = len(rows[0]) if rows else (n or 0) + 2
        n = width - 2 if n is None else n
        tab = np.zeros((len(rows), n + 2), dtype=np.int64)
        for j, r in enumerate(rows):
            tab[j, : len(r)] = [0 if x in (None, "--", "-") else int(x) for x in r]
        return cls(n, tab, provenance)

    @property
    def max_row(self) -> int:
        return self.table.shape[0] - 1

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if i < 0 or j < 0 or j > self.max_row or i > self.n + 1:
            return 0
        return int(self.table[j, i])

    def row(self, j: int) -> list[int]:
        return self.table[j].tolist() if 0 <= j <= self.max_row else [0] * (self.n + 2)

    def rows(self) -> list[list[int]]:
        return self.table.tolist()

    def truncated(self, rows: int) -> "BettiDiagram":
        return BettiDiagram(self.n, self.table[: rows + 1].copy(), dict(self.provenance))

    def columns(self) -> int:
        """Number of columns up to the last nonzero one (at least 1)."""
        nz = np.flatnonzero(self.table.any(axis=0))
        return int(nz[-1]) + 1 if nz.size else 1

    def last_nonzero_row(self) -> int:
        nz = np.flatnonzero(self.table.any(axis=1))
        return int(nz[-1]) if nz.size else -1

    def minimum(self, other: "BettiDiagram") -> "BettiDiagram":
        if other.n != self.n or other.table.shape != self.table.shape:
            raise ValueError("diagrams have different shapes")
        return BettiDiagram(self.n, np.minimum(self.table, other.table), dict(self.provenance))

    def __eq__(self, other):
        if not isinstance(other, BettiDiagram):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.table, other.table)

    def hilbert_values(self, t: int) -> int:
        """Σ (-1)^i b_{i,j} C(n+t-i-j, n): the Hilbert function the table implies."""
        total = 0
        for j in range(self.max_row + 1):
            for i in range(self.n + 2):
                b = int(self.table[j, i])
                if b:
                    k = t - i - j
                    total += (-1) ** i * b * (comb(self.n + k, self.n) if k >= 0 else 0)
        return total

    # serialization --------------------------------------------------

    def to_text(self, ncols: int | None = None) -> str:
        ncols = ncols or max(self.columns(), 1)
        w = max(2, len(str(int(self.table.max()))) if self.table.size else 1)
        head = "    " + " ".join(f"{i:>{w}}" for i in range(ncols))
        lines = [head]
        for j in range(self.max_row + 1):
            cells = [f"{int(b):>{w}}" if b else f"{'--':>{w}}" for b in self.table[j, :ncols]]
            lines.append(f"{j:>2} | " + " ".join(cells))
        return "\n".join(lines)

    @classmethod
    def from_text(cls, text: str, n: int) -> "BettiDiagram":
        rows = []
        for line in text.strip().splitlines():
            if "|" not in line:
                continue
            cells = line.split("|", 1)[1].split()
            rows.append([0 if c == "--" else int(c) for c in cells])
        return cls.from_rows(rows, n)

    def to_dict(self) -> dict:
        return {"n": self.n, "rows": self.rows(), "provenance": _jsonable(self.provenance)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "BettiDiagram":
        obj = json.loads(text)
        return cls.from_rows(obj["rows"], obj["n"], **obj.get("provenance", {}))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["j"] + [f"i{i}" for i in range(self.n + 2)])
        for j, r in enumerate(self.rows()):
            w.writerow([j] + r)
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "BettiDiagram":
        rows = list(csv.reader(io.StringIO(text)))
        return cls.from_rows([[int(x) for x in r[1:]] for r in rows[1:]], len(rows[0]) - 3)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    return obj

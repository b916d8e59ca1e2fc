"""JSON curve and experiment configurations.

Curve specs (all models are realized over a chosen prime)::

    {"model": "parametric_rational", "n": 3, "degree": 5, "forms": [[...], ...]}
    {"model": "complete_intersection", "n": 3, "genus": 4, "degree": 6, "regularity": 4,
     "equations": [[{"exps": [2, 0, 0, 0], "c": 1}, ...], ...]}
    {"model": "builtin", "name": "quintic_X"}
    {"model": "random_canonical", "genus": 5, "seed": 1}
    {"model": "random_plane", "degree": 4, "seed": 1}
    {"model": "reembed", "base": {...}, "k": 2, "base_points": 2, "seed": 1}

Experiment configs wrap a curve spec with prime, ladder, γ or γ-range,
samples, seed, rows, expected verdict and output format.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from . import golden
from .curves import (
    CompleteIntersectionCurve,
    ParametricRational,
    SampledCurve,
    random_canonical_curve,
    random_plane_curve,
    reembedded_curve,
)
from .errors import MrcLabError
from .mrc import DEFAULT_LADDER, with_regularity
from .polyring import HomogeneousForm


class ConfigError(MrcLabError, ValueError):
    pass


def read_spec(text_or_path) -> dict:
    """Inline JSON, a path to a JSON file, or a builtin curve name."""
    if isinstance(text_or_path, dict):
        return text_or_path
    s = str(text_or_path).strip()
    if s in golden.QUINTIC_FORMS:
        return {"model": "builtin", "name": s}
    try:
        if s.startswith("{"):
            return json.loads(s)
        return json.loads(Path(s).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read curve spec {s!r}: {exc}") from exc


def _forms(spec, n, p):
    eqs = []
    for terms in spec:
        d = {tuple(t["exps"]): int(t["c"]) for t in terms}
        degs = {sum(e) for e in d}
        if len(degs) != 1:
            raise ConfigError("each equation must be homogeneous")
        eqs.append(HomogeneousForm(n, degs.pop(), d, p))
    return eqs


def curve_from_spec(spec: dict, p: int, *, min_points: int = 0) -> SampledCurve:
    """Build the model over GF(p), enumerate its points and fix its regularity."""
    spec = read_spec(spec)
    model = spec.get("model")
    try:
        if model == "builtin":
            name = spec["name"]
            if name not in golden.QUINTIC_FORMS:
                raise ConfigError(f"unknown builtin curve {name!r}")
            C = ParametricRational(golden.QUINTIC_FORMS[name], name=name, regularity=golden.QUINTIC_REGULARITY)
            return C.sample(p, min_points=min_points)
        if model == "parametric_rational":
            C = ParametricRational(spec["forms"], name=spec.get("name", "parametric"),
                                   regularity=spec.get("regularity"))
            if "n" in spec and spec["n"] != C.n:
                raise ConfigError(f"n={spec['n']} but {C.n + 1} forms given")
            if "degree" in spec and spec["degree"] != C.degree:
                raise ConfigError(f"degree={spec['degree']} but forms have degree {C.degree}")
            S = C.sample(p, min_points=min_points)
        elif model == "complete_intersection":
            n = int(spec["n"])
            C = CompleteIntersectionCurve(_forms(spec["equations"], n, p), genus=int(spec["genus"]),
                                          degree=int(spec["degree"]), regularity=spec.get("regularity"),
                                          name=spec.get("name", "complete_intersection"))
            S = C.sample(p, min_points=min_points)
        elif model == "random_canonical":
            C = random_canonical_curve(int(spec["genus"]), p, int(spec.get("seed", 0)), min_points=min_points)
            S = C.sample(p, min_points=min_points)
        elif model == "random_plane":
            C = random_plane_curve(int(spec["degree"]), p, int(spec.get("seed", 0)), min_points=min_points)
            S = C.sample(p, min_points=min_points)
        elif model == "reembed":
            base = curve_from_spec(spec["base"], p)
            S = reembedded_curve(base, int(spec["k"]), int(spec.get("base_points", 0)), int(spec.get("seed", 0)))
        else:
            raise ConfigError(f"unknown curve model {model!r}")
    except KeyError as exc:
        raise ConfigError(f"curve spec is missing {exc}") from exc
    return with_regularity(S)


@dataclass
class ExperimentConfig:
    curve: dict
    prime: int = DEFAULT_LADDER[0]
    ladder: list[int] = field(default_factory=lambda: list(DEFAULT_LADDER))
    gammas: list[int] = field(default_factory=list)
    samples: int = 5
    seed: int = 0
    rows: int | None = None
    expected: str = "report-only"
    format: str = "text"
    output: str | None = None
    escalations: int = 1

    def __post_init__(self):
        if self.prime not in self.ladder:
            self.ladder = sorted(set(self.ladder) | {self.prime})
        if self.samples < 1:
            raise ConfigError("samples must be >= 1")
        if self.expected not in ("holds", "fails", "report-only"):
            raise ConfigError(f"expected must be holds, fails or report-only, not {self.expected!r}")
        if self.format not in ("text", "json", "csv"):
            raise ConfigError(f"unknown format {self.format!r}")

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        d = dict(d)
        gam = d.pop("gamma", None)
        if gam is None:
            gammas = list(d.pop("gammas", []))
        elif isinstance(gam, int):
            gammas = [gam]
        elif isinstance(gam, (list, tuple)) and len(gam) == 2:
            gammas = list(range(int(gam[0]), int(gam[1])))
        else:
            raise ConfigError("gamma must be an integer or a half-open range [lo, hi]")
        if not gammas:
            raise ConfigError("empty γ-range")
        known = set(cls.__dataclass_fields__)
        extra = set(d) - known
        if extra:
            raise ConfigError(f"unknown config keys: {sorted(extra)}")
        return cls(gammas=gammas, **d)

    @classmethod
    def load(cls, path) -> "ExperimentConfig":
        try:
            return cls.from_dict(json.loads(Path(path).read_text()))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc

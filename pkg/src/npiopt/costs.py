"""Stringency-cost models: fixed, random, and realistic.

Each model carries level-1 costs on two scales: `raw` (unit costs for the
fixed kind, the 1..10 survey scale for realistic, the unnormalized draws
for random) and `base` (raw normalized to sum to 1). The cost of holding a
plan at level l is l times its level-1 cost, so a whole assignment costs at
most 4 on the normalized scale.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .catalog import PlanCatalog, validate_assignment
from .errors import InvalidAssignment, MissingSeed

__all__ = ["COST_KINDS", "CostModel", "build_cost_model", "stringency_of", "raw_stringency_of"]

COST_KINDS = ("fixed", "random", "realistic")


@dataclass(frozen=True)
class CostModel:
    kind: str
    base: dict[str, float]
    raw: dict[str, float]
    seed: int | None = None

    def to_json(self) -> str:
        return json.dumps(
            {"kind": self.kind, "seed": self.seed, "base": self.base, "raw": self.raw},
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> "CostModel":
        data = json.loads(text)
        return cls(kind=data["kind"], base=data["base"], raw=data["raw"], seed=data["seed"])

    def save(self, path: Path) -> None:
        Path(path).write_text(self.to_json())

    @classmethod
    def load(cls, path: Path) -> "CostModel":
        return cls.from_json(Path(path).read_text())


def build_cost_model(kind: str, catalog: PlanCatalog, seed: int | None = None) -> CostModel:
    """Build one of the three cost models; `seed` is required for `random`."""
    codes = catalog.codes
    if kind == "fixed":
        raw = {code: 1.0 for code in codes}
    elif kind == "realistic":
        raw = {p.code: float(p.realistic_base_cost) for p in catalog.plans}
    elif kind == "random":
        if seed is None:
            raise MissingSeed("random cost model needs a seed")
        rng = np.random.default_rng(seed)
        draws = rng.uniform(0.5, 10.0, size=len(codes))
        raw = {code: float(v) for code, v in zip(codes, draws)}
    else:
        raise ValueError(f"unknown cost kind: {kind!r}")

    total = sum(raw.values())
    base = {code: raw[code] / total for code in codes}
    return CostModel(kind=kind, base=base, raw=raw, seed=seed if kind == "random" else None)


def stringency_of(model: CostModel, assignment: dict[str, int], catalog: PlanCatalog) -> float:
    """Normalized total stringency: sum over plans of level times level-1 cost."""
    if not validate_assignment(catalog, assignment):
        raise InvalidAssignment(f"invalid assignment: {assignment}")
    return sum(assignment[code] * model.base[code] for code in catalog.codes)


def raw_stringency_of(model: CostModel, assignment: dict[str, int], catalog: PlanCatalog) -> float:
    """Total stringency on the model's raw (unnormalized) cost scale."""
    if not validate_assignment(catalog, assignment):
        raise InvalidAssignment(f"invalid assignment: {assignment}")
    return sum(assignment[code] * model.raw[code] for code in catalog.codes)

from __future__ import annotations

import json
from dataclasses import dataclass, field

# default tolerances
ODE_TOL = 1e-10
NORM_TOL = 1e-10
OVERLAP_TOL = 1e-9
COMMUTATOR_TOL = 1e-9


@dataclass(frozen=True)
class QuadratureSpec:
    kind: str = "gauss-laguerre"  # or "adaptive"
    nodes: int = 64
    tolerance: float = NORM_TOL

    def __post_init__(self):
        if self.kind not in ("gauss-laguerre", "adaptive"):
            raise ValueError(f"unknown quadrature rule {self.kind!r}")
        if self.nodes < 1:
            raise ValueError("node count must be positive")

    def doubled(self) -> "QuadratureSpec":
        return QuadratureSpec(self.kind, 2 * self.nodes, self.tolerance)


@dataclass(frozen=True)
class ResidualReport:
    case: str
    residual: float
    tolerance: float
    detail: dict = field(default_factory=dict, compare=False)

    @property
    def passed(self) -> bool:
        return self.residual < self.tolerance

    def to_json(self) -> dict:
        out = {"case": self.case, "residual": self.residual, "tolerance": self.tolerance,
               "pass": self.passed}
        if self.detail:
            out["detail"] = self.detail
        return out


def reports_json(reports) -> str:
    items = sorted((r.to_json() for r in reports), key=lambda d: d["case"])
    return json.dumps(items, indent=2, sort_keys=True)

from __future__ import annotations

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from src.netpart.core.problem import PartitionProblem


class ScenarioBatch(BaseModel):
    """Demand realizations drawn uniformly from the box [(1 - rho) D, (1 + rho) D]."""
    model_config = ConfigDict(frozen=True)

    base: PartitionProblem
    samples: int = Field(ge=1)
    rho: float = Field(default=0.2, ge=0.0, le=1.0)
    seed: int = 0

    def demand_vectors(self) -> list[dict[str, float]]:
        rng = np.random.default_rng(self.seed)
        consumers = [m for b in self.base.blocks for m in b.consumers]
        nominal = np.array([m.demand for m in consumers], dtype=float)
        draws = rng.uniform((1.0 - self.rho) * nominal, (1.0 + self.rho) * nominal,
                            size=(self.samples, len(consumers)))
        return [{m.id: float(max(v, 0.0)) for m, v in zip(consumers, row)} for row in draws]

    def problems(self) -> list[PartitionProblem]:
        return [self.base.with_demands(d) for d in self.demand_vectors()]

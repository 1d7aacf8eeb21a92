from enum import StrEnum
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, Field

from pimlang.config import settings


class Engine(StrEnum):
    GENERATED = "generated"
    DIRECT = "direct"


class RunConfig(BaseModel):
    """Options of one command line invocation, defaults taken from settings"""

    command: Literal["validate", "compile", "simulate", "diff"]
    input: Path
    output: Path | None = None
    engine: Engine = Engine.DIRECT
    sample_time: float | None = Field(None, gt=0)
    points: int = Field(default_factory=lambda: settings.SAMPLE_POINTS, ge=1)
    population: int = Field(default_factory=lambda: settings.POPULATION, ge=0)
    counts: dict[str, int] = Field(default_factory=dict)
    seed: int = 0
    replicates: int = Field(default_factory=lambda: settings.REPLICATES, ge=1)
    workers: int = Field(default_factory=lambda: settings.WORKERS, ge=1)
    state_cap: int = Field(default_factory=lambda: settings.STATE_CAP, ge=1)
    threshold: float = Field(default_factory=lambda: settings.Z_THRESHOLD, gt=0)
    dump_map: bool = False


class ColumnDiff(BaseModel):
    column: str
    max_z: float


class DiffReport(BaseModel):
    """Largest z-score per column between the two engines' mean traces"""

    replicates: int
    threshold: float
    columns: tuple[ColumnDiff, ...]
    closed_form: dict[Engine, float] | None = None

    @property
    def max_z(self) -> float:
        return max((c.max_z for c in self.columns), default=0.0)

    @property
    def passed(self) -> bool:
        within = self.max_z <= self.threshold
        if self.closed_form is not None:
            within = within and all(z <= self.threshold for z in self.closed_form.values())
        return within

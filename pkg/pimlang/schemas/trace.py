import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator


class TraceTable(BaseModel):
    """Counts per column (species-state process name) at each sample time.

    `counts` has shape (len(times), len(columns)).
    """

    times: np.ndarray
    columns: tuple[str, ...]
    counts: np.ndarray

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    @model_validator(mode="after")
    def check_shape(self) -> "TraceTable":
        if self.counts.shape != (len(self.times), len(self.columns)):
            raise ValueError(
                f"counts shape {self.counts.shape} does not match "
                f"{len(self.times)} times x {len(self.columns)} columns"
            )
        return self

    def column(self, name: str) -> np.ndarray:
        return self.counts[:, self.columns.index(name)]

    def select(self, columns: tuple[str, ...]) -> "TraceTable":
        index = [self.columns.index(name) for name in columns]
        return TraceTable(times=self.times, columns=columns, counts=self.counts[:, index])

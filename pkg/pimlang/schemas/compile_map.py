from pydantic import BaseModel, ConfigDict, Field

from pimlang.schemas.model import StateSet


class Partner(BaseModel):
    """The other side of a binding sentence, seen from one species and site."""

    species: str
    site: str
    states: StateSet
    rate: float = Field(gt=0)
    label: int = Field(ge=1)

    model_config = ConfigDict(frozen=True)


class Transform(BaseModel):
    target: str | None
    rate: float = Field(gt=0)
    label: int = Field(ge=1)

    model_config = ConfigDict(frozen=True)


class StateActions(BaseModel):
    state: frozenset[str]
    assoc: dict[str, tuple[Partner, ...]] = {}
    dissoc: dict[str, tuple[Partner, ...]] = {}
    transform: tuple[Transform, ...] = ()

    model_config = ConfigDict(frozen=True)

    @property
    def is_empty(self) -> bool:
        return not (self.assoc or self.dissoc or self.transform)


class SpeciesActions(BaseModel):
    species: str
    sites: tuple[str, ...]
    actions: tuple[StateActions, ...]

    model_config = ConfigDict(frozen=True)

    def at(self, state: frozenset[str]) -> StateActions:
        for entry in self.actions:
            if entry.state == state:
                return entry
        raise KeyError(f"{self.species} has no state {sorted(state)}")


class CompileMap(BaseModel):
    species: dict[str, SpeciesActions]

    model_config = ConfigDict(frozen=True)

    def __getitem__(self, species: str) -> SpeciesActions:
        return self.species[species]
